#include "ring/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ring::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

namespace {

json vec_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Eigen::VectorXd vec_from_json(const json& arr) {
    Eigen::VectorXd v(arr.size());
    for (size_t i = 0; i < arr.size(); ++i) v[static_cast<int>(i)] = arr[i].get<double>();
    return v;
}

json point_to_json(const StationaryPoint& p) {
    return {
        {"coords", vec_to_json(p.coords)},
        {"residual", p.residual},
        {"value", p.value},
        {"spectrum", vec_to_json(p.spectrum)},
        {"index", {p.index_type.n_minus, p.index_type.n_zero, p.index_type.n_plus}},
        {"orbit_id", p.orbit_id},
    };
}

StationaryPoint point_from_json(const json& j) {
    StationaryPoint p;
    p.coords = vec_from_json(j.at("coords"));
    p.residual = j.at("residual").get<double>();
    p.value = j.at("value").get<double>();
    p.spectrum = vec_from_json(j.at("spectrum"));
    p.index_type.n_minus = j.at("index")[0].get<int>();
    p.index_type.n_zero = j.at("index")[1].get<int>();
    p.index_type.n_plus = j.at("index")[2].get<int>();
    p.orbit_id = j.at("orbit_id").get<int>();
    return p;
}

} // namespace

json to_json(const StationaryPointSet& s) {
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(point_to_json(p));
    return {
        {"record", "stationary_points"},
        {"n", s.params.n_particles},
        {"gamma", s.params.coupling},
        {"n_orbits", s.n_orbits},
        {"points", pts},
    };
}

StationaryPointSet point_set_from_json(const json& j) {
    StationaryPointSet s;
    s.params = ModelParams(j.at("n").get<int>(), j.at("gamma").get<double>());
    s.n_orbits = j.at("n_orbits").get<int>();
    for (const auto& pj : j.at("points")) s.points.push_back(point_from_json(pj));
    return s;
}

json to_json(const TransitionGraph& g) {
    json minima = json::array();
    for (const auto& m : g.minima) minima.push_back(point_to_json(m));
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back({
            {"from", e.from_min},
            {"to", e.to_min},
            {"saddle", point_to_json(e.saddle)},
            {"resolved", e.resolved},
        });
    return {
        {"record", "transition_graph"},
        {"n", g.params.n_particles},
        {"gamma", g.params.coupling},
        {"minima", minima},
        {"edges", edges},
    };
}

json to_json(const BifurcationDiagram& d) {
    json events = json::array();
    for (const auto& e : d.events)
        events.push_back({
            {"gamma_lo", e.gamma_lo},
            {"gamma_hi", e.gamma_hi},
            {"count_before", e.count_before},
            {"count_after", e.count_after},
            {"resolved", e.resolved},
        });
    json index_counts = json::array();
    for (const auto& per : d.index_counts) {
        json row = json::array();
        for (int c : per) row.push_back(c);
        index_counts.push_back(row);
    }
    return {
        {"record", "bifurcation_diagram"},
        {"n", d.n_particles},
        {"gamma_grid", d.gamma_grid},
        {"counts", d.counts},
        {"index_counts", index_counts},
        {"events", events},
    };
}

BifurcationDiagram diagram_from_json(const json& j) {
    BifurcationDiagram d;
    d.n_particles = j.at("n").get<int>();
    d.gamma_grid = j.at("gamma_grid").get<std::vector<double>>();
    d.counts = j.at("counts").get<std::vector<int>>();
    for (const auto& row : j.at("index_counts")) {
        std::array<int, 16> per{};
        for (size_t k = 0; k < row.size() && k < 16; ++k) per[k] = row[k].get<int>();
        d.index_counts.push_back(per);
    }
    for (const auto& ej : j.at("events")) {
        BifurcationEvent e;
        e.gamma_lo = ej.at("gamma_lo").get<double>();
        e.gamma_hi = ej.at("gamma_hi").get<double>();
        e.count_before = ej.at("count_before").get<int>();
        e.count_after = ej.at("count_after").get<int>();
        e.resolved = ej.at("resolved").get<bool>();
        d.events.push_back(e);
    }
    return d;
}

json to_json(const TransitionStats& t) {
    json pts = json::array();
    for (const auto& p : t.points)
        pts.push_back({
            {"sigma", p.sigma},
            {"uncensored", p.uncensored},
            {"censored", p.censored},
            {"mean_tau", p.mean_tau},
        });
    return {
        {"record", "arrhenius"},
        {"points", pts},
        {"slope", t.slope},
        {"intercept", t.intercept},
        {"slope_stderr", t.slope_stderr},
    };
}

json to_json(const PassageStats& p) {
    return {
        {"record", "passage"},
        {"trials", p.trials},
        {"successes", p.successes},
        {"returns", p.returns},
        {"censored", p.censored},
        {"fraction_origin", p.fraction_origin},
        {"fraction_a_orbit", p.fraction_a_orbit},
        {"fraction_origin_wide", p.fraction_origin_wide},
        {"fraction_a_orbit_wide", p.fraction_a_orbit_wide},
    };
}

std::string to_csv(const StationaryPointSet& s) {
    std::ostringstream out;
    const int n = s.params.n_particles;
    out << "orbit_id,n_minus,n_zero,n_plus,value,residual";
    for (int i = 0; i < n; ++i) out << ",x" << i;
    out << "\n";
    for (const auto& p : s.points) {
        out << p.orbit_id << ',' << p.index_type.n_minus << ',' << p.index_type.n_zero << ','
            << p.index_type.n_plus << ',' << format_double(p.value) << ','
            << format_double(p.residual);
        for (int i = 0; i < n; ++i) out << ',' << format_double(p.coords[i]);
        out << "\n";
    }
    return out.str();
}

std::string to_csv(const BifurcationDiagram& d) {
    std::ostringstream out;
    out << "gamma,count";
    for (int k = 0; k < 16; ++k) out << ",index" << k;
    out << "\n";
    for (size_t i = 0; i < d.gamma_grid.size(); ++i) {
        out << format_double(d.gamma_grid[i]) << ',' << d.counts[i];
        for (int k = 0; k < 16; ++k) out << ',' << d.index_counts[i][k];
        out << "\n";
    }
    return out.str();
}

std::string hit_times_csv(const TransitionStats& t) {
    std::ostringstream out;
    out << "sigma,trial,tau\n";
    size_t idx = 0;
    for (const auto& p : t.points)
        for (int trial = 0; trial < p.uncensored && idx < t.hit_times.size(); ++trial, ++idx)
            out << format_double(p.sigma) << ',' << trial << ','
                << format_double(t.hit_times[idx]) << "\n";
    return out.str();
}

json manifest(const std::string& command, const json& config) {
    return {
        {"tool", kToolVersion},
        {"command", command},
        {"config", config},
    };
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace ring::io

#include "ring/cmanifold.hpp"
#include "ring/io.hpp"
#include "ring/landscape.hpp"
#include "ring/sde.hpp"
#include "ring/symdyn.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;
using namespace ring;

namespace {

struct CommonOpts {
    std::string out;
    std::string format = "json";
    std::string plot_out;
};

void emit(const CommonOpts& opts, const std::string& command, const json& config,
          const json& result, const std::string& csv = "") {
    const json man = io::manifest(command, config);
    if (opts.format == "csv" && !csv.empty()) {
        if (opts.out.empty()) {
            std::cout << csv;
            std::cerr << man.dump(2) << "\n";
        } else {
            io::write_file(opts.out, csv);
            io::write_file(opts.out + ".manifest.json", man.dump(2) + "\n");
        }
        return;
    }
    const json doc = {{"manifest", man}, {"result", result}};
    if (opts.out.empty()) std::cout << doc.dump(2) << "\n";
    else io::write_file(opts.out, doc.dump(2) + "\n");
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "output file (stdout when omitted)");
    cmd->add_option("--format", opts.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--plot-out", opts.plot_out, "plot-data table file");
}

json graph_to_plot(const TransitionGraph& g) {
    json rows = json::array();
    for (const auto& e : g.edges)
        rows.push_back({{"from", e.from_min},
                        {"to", e.to_min},
                        {"saddle_value", e.saddle.value},
                        {"resolved", e.resolved}});
    return rows;
}

// droplet staircase: potential along the minimax path from I- to I+
std::string droplet_path_csv(const ModelParams& p, const StationaryPointSet& s) {
    const int n = p.n_particles;
    std::string out = "step,kind,value\n";
    for (int k = 0; k <= n; ++k) {
        Configuration min_k(n);
        for (int i = 0; i < n; ++i) min_k[i] = (i < k) ? 1.0 : -1.0;
        const int mi = s.find(min_k, 0.35);
        if (mi >= 0)
            out += std::to_string(2 * k) + ",minimum," + io::format_double(s.points[mi].value) + "\n";
        if (k == n) break;
        Configuration sad(n);
        for (int i = 0; i < n; ++i) sad[i] = (i < k) ? 1.0 : (i == k ? 0.0 : -1.0);
        const int si = s.find(sad, 0.35);
        if (si >= 0)
            out += std::to_string(2 * k + 1) + ",saddle," + io::format_double(s.points[si].value) + "\n";
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stationary-point landscape, bifurcation, centre-manifold and "
                 "metastability analysis of a coupled bistable ring"};
    app.require_subcommand(1);

    int n = 2;
    double gamma = 0.2;
    double gamma_min = 0.0, gamma_max = 0.0, gamma_step = 0.005;
    std::vector<double> sigmas;
    int trials = 200;
    std::uint64_t seed = 1;
    double r_small = 0.1, r_large = 0.4;
    double max_time = 1e5;
    std::string precision = "double";
    int n_max = 31;

    CommonOpts c_landscape, c_graph, c_bif, c_cm, c_conj, c_sym, c_n4, c_sim, c_arr;

    auto* cmd_landscape = app.add_subcommand("landscape", "enumerate stationary points");
    cmd_landscape->add_option("--n", n)->required();
    cmd_landscape->add_option("--gamma", gamma)->required();
    add_common(cmd_landscape, c_landscape);

    auto* cmd_graph = app.add_subcommand("graph", "transition graph and barrier");
    cmd_graph->add_option("--n", n)->required();
    cmd_graph->add_option("--gamma", gamma);
    cmd_graph->add_option("--gamma-min", gamma_min);
    cmd_graph->add_option("--gamma-max", gamma_max);
    cmd_graph->add_option("--gamma-step", gamma_step);
    add_common(cmd_graph, c_graph);

    auto* cmd_bif = app.add_subcommand("bifurcation", "scan stationary-point counts in gamma");
    cmd_bif->add_option("--n", n)->required();
    cmd_bif->add_option("--gamma-min", gamma_min)->required();
    cmd_bif->add_option("--gamma-max", gamma_max)->required();
    cmd_bif->add_option("--gamma-step", gamma_step);
    add_common(cmd_bif, c_bif);

    auto* cmd_cm = app.add_subcommand("cm", "centre-manifold coefficients");
    cmd_cm->add_option("--n", n)->required();
    cmd_cm->add_option("--precision", precision)->check(CLI::IsMember({"double", "extended"}));
    add_common(cmd_cm, c_cm);

    auto* cmd_conj = app.add_subcommand("conjecture", "odd-N sign survey");
    cmd_conj->add_option("--n-max", n_max);
    cmd_conj->add_option("--precision", precision)->check(CLI::IsMember({"double", "extended"}));
    add_common(cmd_conj, c_conj);

    auto* cmd_sym = app.add_subcommand("symdyn", "strip conditions and periodic points");
    cmd_sym->add_option("--n", n)->required();
    cmd_sym->add_option("--gamma", gamma);
    cmd_sym->add_option("--gamma-min", gamma_min);
    cmd_sym->add_option("--gamma-max", gamma_max);
    cmd_sym->add_option("--gamma-step", gamma_step);
    add_common(cmd_sym, c_sym);

    auto* cmd_n4 = app.add_subcommand("n4", "quartic reduction for the four-particle ring");
    cmd_n4->add_option("--gamma", gamma)->required();
    add_common(cmd_n4, c_n4);

    auto* cmd_sim = app.add_subcommand("simulate", "conditioned first-return statistics");
    cmd_sim->add_option("--n", n)->required();
    cmd_sim->add_option("--gamma", gamma)->required();
    cmd_sim->add_option("--sigma", sigmas)->required();
    cmd_sim->add_option("--trials", trials);
    cmd_sim->add_option("--seed", seed);
    cmd_sim->add_option("--r", r_small);
    cmd_sim->add_option("--R", r_large);
    cmd_sim->add_option("--max-time", max_time);
    add_common(cmd_sim, c_sim);

    auto* cmd_arr = app.add_subcommand("arrhenius", "hitting-time regression over a sigma ladder");
    cmd_arr->add_option("--n", n)->required();
    cmd_arr->add_option("--gamma", gamma)->required();
    cmd_arr->add_option("--sigma", sigmas)->required()->expected(-3);
    cmd_arr->add_option("--trials", trials);
    cmd_arr->add_option("--seed", seed);
    cmd_arr->add_option("--r", r_small);
    cmd_arr->add_option("--R", r_large);
    cmd_arr->add_option("--max-time", max_time);
    add_common(cmd_arr, c_arr);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_landscape->parsed()) {
            const json config = {{"n", n}, {"gamma", gamma}};
            const StationaryPointSet s = find_stationary_points(ModelParams(n, gamma));
            emit(c_landscape, "landscape", config, io::to_json(s), io::to_csv(s));
            if (!c_landscape.plot_out.empty())
                io::write_file(c_landscape.plot_out, droplet_path_csv(ModelParams(n, gamma), s));
        } else if (cmd_graph->parsed()) {
            if (gamma_max > gamma_min && gamma_step > 0 && cmd_graph->count("--gamma-max")) {
                // barrier curve h_N(gamma) over the requested range
                std::string csv = "gamma,h\n";
                json rows = json::array();
                for (double g = gamma_min; g <= gamma_max + 1e-12; g += gamma_step) {
                    const ModelParams p(n, g);
                    const StationaryPointSet s = find_stationary_points(p);
                    double h;
                    if (g >= gamma_one(n)) {
                        h = 0.25;  // only O gates the transition above threshold
                    } else {
                        h = barrier_height(p, connect_saddles(p, s));
                    }
                    csv += io::format_double(g) + "," + io::format_double(h) + "\n";
                    rows.push_back({{"gamma", g}, {"h", h}});
                }
                const json config = {{"n", n}, {"gamma_min", gamma_min},
                                     {"gamma_max", gamma_max}, {"gamma_step", gamma_step}};
                emit(c_graph, "graph", config, {{"record", "barrier_curve"}, {"curve", rows}}, csv);
                if (!c_graph.plot_out.empty()) io::write_file(c_graph.plot_out, csv);
            } else {
                const json config = {{"n", n}, {"gamma", gamma}};
                const ModelParams p(n, gamma);
                const StationaryPointSet s = find_stationary_points(p);
                const TransitionGraph g = connect_saddles(p, s);
                json result = io::to_json(g);
                result["barrier"] = raw_barrier(p, g);
                result["h"] = barrier_height(p, g);
                emit(c_graph, "graph", config, result);
                if (!c_graph.plot_out.empty())
                    io::write_file(c_graph.plot_out, graph_to_plot(g).dump(2) + "\n");
            }
        } else if (cmd_bif->parsed()) {
            const json config = {{"n", n}, {"gamma_min", gamma_min},
                                 {"gamma_max", gamma_max}, {"gamma_step", gamma_step}};
            const BifurcationDiagram d = scan_bifurcations(n, gamma_min, gamma_max, gamma_step);
            emit(c_bif, "bifurcation", config, io::to_json(d), io::to_csv(d));
            if (!c_bif.plot_out.empty()) io::write_file(c_bif.plot_out, io::to_csv(d));
        } else if (cmd_cm->parsed()) {
            const Precision prec =
                precision == "extended" ? Precision::extended : Precision::plain;
            const json config = {{"n", n}, {"precision", precision}};
            const CmTable t = compute_h_table(n, 0, prec);
            const AngularCoefficient a = leading_angular_coefficient(n, prec);
            json hs = json::array();
            for (const auto& [key, e] : t.h)
                hs.push_back({{"n", key.first}, {"m", key.second}, {"value", e.value},
                              {"err", e.err}});
            const json result = {
                {"record", "centre_manifold"},
                {"h", hs},
                {"c21", compute_c(t, 2, 1).value},
                {"leading_angular",
                 {{"value", a.value},
                  {"order", a.order},
                  {"sign", a.sign == SignCert::positive ? "+"
                           : a.sign == SignCert::negative ? "-" : "uncertified"},
                  {"precision", a.precision_used == Precision::extended ? "extended" : "double"}}},
            };
            emit(c_cm, "cm", config, result);
        } else if (cmd_conj->parsed()) {
            const Precision prec =
                precision == "extended" ? Precision::extended : Precision::plain;
            const json config = {{"n_max", n_max}, {"precision", precision}};
            json rows = json::array();
            for (const auto& rep : conjecture_check(n_max, prec))
                rows.push_back({
                    {"n", rep.n},
                    {"lemma_range_ok", rep.lemma_range_ok},
                    {"tail_signs", rep.tail_signs},
                    {"tail_matches_conjecture", rep.tail_matches_conjecture},
                    {"c_leading", rep.c_leading},
                    {"c_sign", rep.c_sign == SignCert::positive ? "+"
                               : rep.c_sign == SignCert::negative ? "-" : "uncertified"},
                    {"precision", rep.precision_used == Precision::extended ? "extended"
                                                                            : "double"},
                });
            emit(c_conj, "conjecture", config, {{"record", "conjecture"}, {"reports", rows}});
        } else if (cmd_sym->parsed()) {
            json result = {{"record", "symdyn"}};
            json config = {{"n", n}};
            if (cmd_sym->count("--gamma-max")) {
                config["gamma_min"] = gamma_min;
                config["gamma_max"] = gamma_max;
                config["gamma_step"] = gamma_step;
                const PruningReport rep = pruning_probe(gamma_min, gamma_max, gamma_step, n);
                result["pruning"] = {{"loss_found", rep.loss_found},
                                     {"first_loss_gamma", rep.first_loss_gamma},
                                     {"lost_word", rep.lost_word}};
            } else {
                config["gamma"] = gamma;
                result["strip_basic"] = strip_condition(gamma, StripVariant::basic);
                result["strip_improved"] = strip_condition(gamma, StripVariant::improved);
                result["improved_threshold"] = improved_strip_threshold();
                const auto pts = periodic_points(gamma, n);
                result["periodic_points"] = static_cast<int>(pts.size());
            }
            emit(c_sym, "symdyn", config, result);
        } else if (cmd_n4->parsed()) {
            const json config = {{"gamma", gamma}};
            json roots = json::array();
            for (const auto& r : n4_reduced_roots(gamma)) {
                json cfgs = json::array();
                for (const auto& c : r.configs) {
                    json arr = json::array();
                    for (int i = 0; i < c.size(); ++i) arr.push_back(c[i]);
                    cfgs.push_back(arr);
                }
                roots.push_back({{"w", r.w},
                                 {"feasible", r.feasible},
                                 {"reconstructible", r.reconstructible},
                                 {"hessian_det", n4_hessian_det(gamma, r.w)},
                                 {"configs", cfgs}});
            }
            const json result = {{"record", "n4"},
                                 {"roots", roots},
                                 {"feasibility_end", n4_positive_root_feasibility_end()}};
            emit(c_n4, "n4", config, result);
        } else if (cmd_sim->parsed()) {
            if (sigmas.empty()) throw std::invalid_argument("simulate: --sigma required");
            const json config = {{"n", n},       {"gamma", gamma}, {"sigma", sigmas[0]},
                                 {"trials", trials}, {"seed", seed},  {"r", r_small},
                                 {"R", r_large}, {"max_time", max_time}};
            const SdeParams s(ModelParams(n, gamma), sigmas[0], seed, max_time);
            HittingSpec spec;
            spec.r_small = r_small;
            spec.r_large = r_large;
            const PassageStats stats = first_return_conditioned(s, spec, trials);
            emit(c_sim, "simulate", config, io::to_json(stats));
        } else if (cmd_arr->parsed()) {
            const json config = {{"n", n},       {"gamma", gamma}, {"sigma", sigmas},
                                 {"trials", trials}, {"seed", seed},  {"r", r_small},
                                 {"R", r_large}, {"max_time", max_time}};
            const SdeParams base(ModelParams(n, gamma), sigmas[0], seed, max_time);
            HittingSpec spec;
            spec.r_small = r_small;
            spec.r_large = r_large;
            const TransitionStats stats = arrhenius_fit(base, sigmas, trials, spec);
            emit(c_arr, "arrhenius", config, io::to_json(stats), io::hit_times_csv(stats));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

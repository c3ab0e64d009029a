#include "ring/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace ring {

namespace {

// quantised-coordinate key for fast dedup; a slow tolerance pass follows
std::string coord_key(const Configuration& x) {
    std::string key;
    key.reserve(x.size() * sizeof(long long));
    for (int i = 0; i < x.size(); ++i) {
        const long long q = llround(x[i] * 1e6);
        key.append(reinterpret_cast<const char*>(&q), sizeof(q));
    }
    return key;
}

bool close_conf(const Configuration& a, const Configuration& b, double tol) {
    return (a - b).array().abs().maxCoeff() <= tol;
}

struct Deduper {
    double tol;
    // several distinct points may share a quantised key near degenerate
    // parameters, so every key holds a bucket
    std::unordered_map<std::string, std::vector<int>> index;
    std::vector<Configuration> points;

    explicit Deduper(double t) : tol(t) {}

    // returns index; adds if new
    int insert(const Configuration& x) {
        auto& bucket = index[coord_key(x)];
        for (int id : bucket)
            if (close_conf(points[id], x, tol)) return id;
        const int id = static_cast<int>(points.size());
        points.push_back(x);
        bucket.push_back(id);
        return id;
    }

    bool contains(const Configuration& x) const {
        auto it = index.find(coord_key(x));
        if (it == index.end()) return false;
        for (int id : it->second)
            if (close_conf(points[id], x, tol)) return true;
        return false;
    }
};

// final tolerance-based merge; catches quantisation boundary misses
std::vector<Configuration> merge_close(std::vector<Configuration> pts,
                                       const ModelParams& p, double tol) {
    std::vector<std::pair<double, int>> byval;
    byval.reserve(pts.size());
    for (int i = 0; i < (int)pts.size(); ++i) byval.emplace_back(potential(p, pts[i]), i);
    std::sort(byval.begin(), byval.end());
    std::vector<bool> dead(pts.size(), false);
    for (size_t a = 0; a < byval.size(); ++a) {
        if (dead[byval[a].second]) continue;
        for (size_t b = a + 1; b < byval.size(); ++b) {
            if (byval[b].first - byval[a].first > 1e-7) break;
            if (dead[byval[b].second]) continue;
            if (close_conf(pts[byval[a].second], pts[byval[b].second], tol))
                dead[byval[b].second] = true;
        }
    }
    std::vector<Configuration> out;
    for (size_t i = 0; i < pts.size(); ++i)
        if (!dead[i]) out.push_back(std::move(pts[i]));
    return out;
}

bool lex_less(const Configuration& a, const Configuration& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - 1e-10) return true;
        if (a[i] > b[i] + 1e-10) return false;
    }
    return false;
}

void sort_canonical(std::vector<StationaryPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const StationaryPoint& a, const StationaryPoint& b) {
        if (a.value < b.value - 1e-11) return true;
        if (a.value > b.value + 1e-11) return false;
        return lex_less(a.coords, b.coords);
    });
}

std::vector<Configuration> desync_seed_list(const ModelParams& p) {
    std::vector<Configuration> seeds;
    const double g1 = gamma_one(p.n_particles);
    if (p.coupling >= g1 || p.coupling < 0.8 * g1) return seeds;
    ModelParams pw(p.n_particles, std::min(p.coupling, 0.999 * g1));
    DesyncPrediction d = desync_predictions(ModelParams(p.n_particles,
                                            std::max(pw.coupling, 0.9 * g1)));
    for (const auto& rep : {d.a_point, d.b_point})
        for (const auto& g : group_elements(p.n_particles))
            seeds.push_back(apply_symmetry(g, rep));
    return seeds;
}

} // namespace

int StationaryPointSet::count_index(int k) const {
    int c = 0;
    for (const auto& pt : points)
        if (!pt.degenerate() && pt.index_type.n_minus == k) ++c;
    return c;
}

int StationaryPointSet::count_degenerate() const {
    int c = 0;
    for (const auto& pt : points)
        if (pt.degenerate()) ++c;
    return c;
}

int StationaryPointSet::find(const Configuration& x, double tol) const {
    for (int i = 0; i < count(); ++i)
        if (close_conf(points[i].coords, x, tol)) return i;
    return -1;
}

int TransitionGraph::find_minimum(const Configuration& x, double tol) const {
    for (int i = 0; i < (int)minima.size(); ++i)
        if (close_conf(minima[i].coords, x, tol)) return i;
    return -1;
}

StationaryPoint classify(const ModelParams& p, const Configuration& pt) {
    StationaryPoint s;
    s.coords = pt;
    s.residual = gradient(p, pt).array().abs().maxCoeff();
    if (s.residual > 1e-8) throw std::invalid_argument("classify: point is not stationary");
    s.value = potential(p, pt);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian(p, pt));
    s.spectrum = es.eigenvalues();
    const double radius = std::max(std::abs(s.spectrum[0]),
                                   std::abs(s.spectrum[s.spectrum.size() - 1]));
    const double zero_tol = kEigenZeroTol * std::max(1.0, radius);
    for (int i = 0; i < s.spectrum.size(); ++i) {
        if (s.spectrum[i] < -zero_tol) ++s.index_type.n_minus;
        else if (s.spectrum[i] > zero_tol) ++s.index_type.n_plus;
        else ++s.index_type.n_zero;
    }
    return s;
}

namespace {

StationaryPointSet build_set(const ModelParams& p, const std::vector<Configuration>& converged,
                             double dedup_tol) {
    // dedup, orbit-expand, classify, assign orbit ids
    Deduper dd(dedup_tol);
    for (const auto& x : converged) dd.insert(x);

    const auto group = group_elements(p.n_particles);
    // orbit completion: group images of stationary points are stationary
    for (size_t i = 0; i < dd.points.size(); ++i) {
        const Configuration x = dd.points[i];
        for (const auto& g : group) dd.insert(apply_symmetry(g, x));
    }

    std::vector<Configuration> pts = merge_close(std::move(dd.points), p, dedup_tol);

    StationaryPointSet out;
    out.params = p;
    out.points.reserve(pts.size());
    for (const auto& x : pts) out.points.push_back(classify(p, x));
    sort_canonical(out.points);

    // orbit ids via union over group images
    Deduper lookup(dedup_tol);
    for (const auto& sp : out.points) lookup.insert(sp.coords);
    std::vector<int> parent(out.points.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < out.count(); ++i)
        for (const auto& g : group) {
            const Configuration y = apply_symmetry(g, out.points[i].coords);
            auto it = lookup.index.find(coord_key(y));
            if (it == lookup.index.end()) continue;
            for (int j : it->second)
                if (close_conf(lookup.points[j], y, dedup_tol)) {
                    const int a = root(i), b = root(j);
                    if (a != b) parent[std::max(a, b)] = std::min(a, b);
                }
        }
    std::map<int, int> relabel;
    for (int i = 0; i < out.count(); ++i) {
        const int r = root(i);
        auto [it, fresh] = relabel.emplace(r, (int)relabel.size());
        out.points[i].orbit_id = it->second;
    }
    out.n_orbits = static_cast<int>(relabel.size());
    return out;
}

std::vector<Configuration> refine_seeds(const ModelParams& p,
                                        const std::vector<Configuration>& seeds,
                                        double newton_tol) {
    NewtonOptions nopt;
    nopt.tol = newton_tol;
    std::vector<Configuration> converged;
    converged.reserve(seeds.size());
    for (const auto& s : seeds) {
        auto r = newton_refine(p, s, nopt);
        if (r && r->allFinite() && r->array().abs().maxCoeff() < 10.0)
            converged.push_back(std::move(*r));
    }
    return converged;
}

StationaryPointSet enumerate_seed_grid(const ModelParams& p, const EnumerationOptions& opt) {
    const int n = p.n_particles;
    if (n > 12) throw std::invalid_argument("find_stationary_points: seed_grid limited to N <= 12");

    long long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;

    std::mt19937_64 rng(opt.rng_seed);
    std::uniform_real_distribution<double> pert(-0.3, 0.3);

    std::vector<Configuration> seeds;
    seeds.reserve(total * (1 + opt.random_seeds_per_grid_point) + 8);
    for (long long code = 0; code < total; ++code) {
        Configuration x(n);
        long long c = code;
        for (int i = 0; i < n; ++i) {
            x[i] = static_cast<double>(c % 3 - 1);
            c /= 3;
        }
        seeds.push_back(x);
        for (int r = 0; r < opt.random_seeds_per_grid_point; ++r) {
            Configuration xp = x;
            for (int i = 0; i < n; ++i) xp[i] += pert(rng);
            seeds.push_back(std::move(xp));
        }
    }
    seeds.push_back(Configuration::Zero(n));
    seeds.push_back(Configuration::Ones(n));
    seeds.push_back(-Configuration::Ones(n));
    for (auto& s : desync_seed_list(p)) seeds.push_back(std::move(s));

    return build_set(p, refine_seeds(p, seeds, opt.newton_tol), opt.dedup_tol);
}

StationaryPointSet enumerate_continuation(const ModelParams& p, const EnumerationOptions& opt) {
    const int n = p.n_particles;
    if (n > 12) throw std::invalid_argument("find_stationary_points: continuation limited to N <= 12");
    const double step = std::min(opt.continuation_step, 0.01);

    // exact stationary set at gamma = 0
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    std::vector<Configuration> current;
    for (long long code = 0; code < total; ++code) {
        Configuration x(n);
        long long c = code;
        for (int i = 0; i < n; ++i) {
            x[i] = static_cast<double>(c % 3 - 1);
            c /= 3;
        }
        current.push_back(std::move(x));
    }

    double gamma = 0.0;
    while (gamma < p.coupling - 1e-15) {
        gamma = std::min(gamma + step, p.coupling);
        ModelParams pg(n, gamma);
        std::vector<Configuration> seeds = current;
        seeds.push_back(Configuration::Zero(n));
        seeds.push_back(Configuration::Ones(n));
        seeds.push_back(-Configuration::Ones(n));
        for (auto& s : desync_seed_list(pg)) seeds.push_back(std::move(s));
        StationaryPointSet set = build_set(pg, refine_seeds(pg, seeds, opt.newton_tol),
                                           opt.dedup_tol);
        current.clear();
        for (auto& sp : set.points) current.push_back(sp.coords);
    }
    return build_set(p, current, opt.dedup_tol);
}

} // namespace

StationaryPointSet find_stationary_points(const ModelParams& p, const EnumerationOptions& opt) {
    if (!(opt.newton_tol > 0.0 && opt.newton_tol <= 1e-8))
        throw std::invalid_argument("find_stationary_points: newton_tol must be in (0, 1e-8]");
    return opt.strategy == SeedStrategy::seed_grid ? enumerate_seed_grid(p, opt)
                                                   : enumerate_continuation(p, opt);
}

namespace {

// adaptive explicit gradient descent from a point just off a saddle
std::optional<Configuration> descend(const ModelParams& p, Configuration x,
                                     const std::vector<StationaryPoint>& minima) {
    double h = 1e-3;
    double v = potential(p, x);
    const long long max_steps = 5'000'000;
    for (long long step = 0; step < max_steps; ++step) {
        const Configuration g = gradient(p, x);
        if (step % 10 == 0) {
            for (const auto& m : minima)
                if (close_conf(x, m.coords, 1e-6)) return m.coords;
            if (g.array().abs().maxCoeff() < 1e-9) {
                auto r = newton_refine(p, x);
                if (!r) return std::nullopt;
                for (const auto& m : minima)
                    if (close_conf(*r, m.coords, 1e-6)) return m.coords;
                return std::nullopt; // converged somewhere that is not a known minimum
            }
        }
        Configuration xt = x - h * g;
        double vt = potential(p, xt);
        while (vt > v && h > 1e-5) { // V must decrease along the flow
            h *= 0.5;
            xt = x - h * g;
            vt = potential(p, xt);
        }
        if (vt > v) return std::nullopt;
        x = std::move(xt);
        v = vt;
        h = std::min(h * 1.05, 1e-2);
    }
    return std::nullopt;
}

} // namespace

TransitionGraph connect_saddles(const ModelParams& p, const StationaryPointSet& s) {
    TransitionGraph g;
    g.params = p;
    for (const auto& pt : s.points)
        if (!pt.degenerate() && pt.index_type.n_minus == 0) g.minima.push_back(pt);

    for (const auto& pt : s.points) {
        if (pt.degenerate() || pt.index_type.n_minus != 1) continue;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian(p, pt.coords));
        const Configuration dir = es.eigenvectors().col(0); // most negative eigenvalue
        TransitionEdge e;
        e.saddle = pt;
        auto lo = descend(p, pt.coords + 1e-4 * dir, g.minima);
        auto hi = descend(p, pt.coords - 1e-4 * dir, g.minima);
        if (lo) e.from_min = g.find_minimum(*lo);
        if (hi) e.to_min = g.find_minimum(*hi);
        e.resolved = e.from_min >= 0 && e.to_min >= 0;
        g.edges.push_back(std::move(e));
    }
    return g;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int root(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[root(a)] = root(b); }
};

// smallest saddle value v such that I- and I+ are connected using edges with
// saddle value <= v
double minimax_saddle_value(const ModelParams& p, const TransitionGraph& g) {
    const int iminus = g.find_minimum(-Configuration::Ones(p.n_particles));
    const int iplus = g.find_minimum(Configuration::Ones(p.n_particles));
    if (iminus < 0 || iplus < 0)
        throw std::runtime_error("barrier_height: I- or I+ missing from the graph");

    std::vector<double> thresholds;
    for (const auto& e : g.edges)
        if (e.resolved && e.from_min != e.to_min) thresholds.push_back(e.saddle.value);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    auto connected = [&](double thr) {
        UnionFind uf(static_cast<int>(g.minima.size()));
        for (const auto& e : g.edges)
            if (e.resolved && e.from_min != e.to_min && e.saddle.value <= thr)
                uf.unite(e.from_min, e.to_min);
        return uf.root(iminus) == uf.root(iplus);
    };

    int lo = 0, hi = static_cast<int>(thresholds.size()) - 1;
    if (hi < 0 || !connected(thresholds[hi]))
        throw std::runtime_error("barrier_height: graph does not connect I- to I+");
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (connected(thresholds[mid])) hi = mid;
        else lo = mid + 1;
    }
    return thresholds[lo];
}

} // namespace

double raw_barrier(const ModelParams& p, const TransitionGraph& g) {
    return minimax_saddle_value(p, g) - (-p.n_particles / 4.0);
}

double barrier_height(const ModelParams& p, const TransitionGraph& g) {
    return raw_barrier(p, g) / p.n_particles;
}

BifurcationDiagram scan_bifurcations(int n_particles, double gamma_min, double gamma_max,
                                     double step, const EnumerationOptions& opt) {
    if (gamma_max <= gamma_min || step <= 0)
        throw std::invalid_argument("scan_bifurcations: bad gamma range");
    BifurcationDiagram d;
    d.n_particles = n_particles;

    auto count_at = [&](double gamma) -> std::pair<int, std::array<int, 16>> {
        StationaryPointSet s = find_stationary_points(ModelParams(n_particles, gamma), opt);
        std::array<int, 16> per{};
        int nondeg = 0;
        for (const auto& pt : s.points)
            if (!pt.degenerate()) {
                ++nondeg;
                if (pt.index_type.n_minus < 16) ++per[pt.index_type.n_minus];
            }
        return {nondeg, per};
    };

    for (double g = gamma_min; g <= gamma_max + 1e-12; g += step) {
        const double gg = std::min(g, gamma_max);
        auto [c, per] = count_at(gg);
        d.gamma_grid.push_back(gg);
        d.counts.push_back(c);
        d.index_counts.push_back(per);
        if (gg >= gamma_max) break;
    }

    // a grid interval may straddle several changes (and grid points can land
    // exactly on a degenerate coupling); peel off the first change and requeue
    // the remainder until the interval is consistent
    std::vector<std::array<double, 2>> work;
    std::vector<std::array<int, 2>> work_counts;
    for (size_t i = 0; i + 1 < d.gamma_grid.size(); ++i)
        if (d.counts[i] != d.counts[i + 1]) {
            work.push_back({d.gamma_grid[i], d.gamma_grid[i + 1]});
            work_counts.push_back({d.counts[i], d.counts[i + 1]});
        }
    while (!work.empty()) {
        auto [lo, hi] = work.back();
        auto [clo, chi] = work_counts.back();
        work.pop_back();
        work_counts.pop_back();
        if (clo == chi || hi - lo <= 1e-7) continue;
        double a = lo, b = hi;
        int cb = chi;
        int guard = 0;
        while (b - a > 1e-4 && guard++ < 60) {
            const double mid = 0.5 * (a + b);
            const int cm = count_at(mid).first;
            if (cm != clo) { b = mid; cb = cm; }
            else a = mid;
        }
        BifurcationEvent ev;
        ev.gamma_lo = a;
        ev.gamma_hi = b;
        ev.count_before = clo;
        ev.count_after = cb;
        ev.resolved = b - a <= 1e-4;
        d.events.push_back(ev);
        if (cb != chi) {
            work.push_back({b, hi});
            work_counts.push_back({cb, chi});
        }
    }
    std::sort(d.events.begin(), d.events.end(),
              [](const BifurcationEvent& x, const BifurcationEvent& y) {
                  return x.gamma_lo < y.gamma_lo;
              });
    // when a grid point sits exactly on a degenerate coupling the count dips
    // there and the bisection reports a spurious pair of events around it;
    // collapse events closer than the scan resolution and drop null merges
    std::vector<BifurcationEvent> merged;
    for (const auto& ev : d.events) {
        if (!merged.empty() && ev.gamma_lo - merged.back().gamma_hi < 2e-4) {
            merged.back().gamma_hi = ev.gamma_hi;
            merged.back().count_after = ev.count_after;
            merged.back().resolved = merged.back().resolved && ev.resolved;
        } else {
            merged.push_back(ev);
        }
    }
    std::erase_if(merged, [](const BifurcationEvent& ev) {
        return ev.count_before == ev.count_after;
    });
    d.events = std::move(merged);
    return d;
}

// ---- small-N oracles ---------------------------------------------------------

namespace {

OraclePoint make_oracle_point(const ModelParams& p, std::string branch, Configuration x) {
    // polish roundoff in the closed form, then classify
    auto r = newton_refine(p, x);
    StationaryPoint sp = classify(p, r ? *r : x);
    OraclePoint op;
    op.branch = std::move(branch);
    op.coords = sp.coords;
    op.value = sp.value;
    op.saddle_index = sp.index_type.n_minus + (sp.degenerate() ? 1000 : 0);
    return op;
}

} // namespace

std::vector<OraclePoint> n2_oracle(double gamma) {
    if (gamma < 0) throw std::invalid_argument("n2_oracle: gamma >= 0 required");
    const ModelParams p(2, gamma);
    const double l1 = 1.0 - 2.0 * gamma;
    std::vector<OraclePoint> pts;
    pts.push_back(make_oracle_point(p, "O", Configuration::Zero(2)));
    pts.push_back(make_oracle_point(p, "I+", Configuration::Ones(2)));
    pts.push_back(make_oracle_point(p, "I-", -Configuration::Ones(2)));
    if (l1 > 1e-12) {
        const double y1 = std::sqrt(l1);
        for (double s : {1.0, -1.0}) {
            Configuration x(2);
            x << s * y1, -s * y1;
            pts.push_back(make_oracle_point(p, "A", x));
        }
    }
    if (l1 > 1.0 / 3.0 + 1e-12) {
        const double y0 = std::sqrt((3.0 * l1 - 1.0) / 8.0);
        const double y1 = std::sqrt((3.0 - l1) / 8.0);
        for (double s0 : {1.0, -1.0})
            for (double s1 : {1.0, -1.0}) {
                Configuration x(2);
                x << s0 * y0 + s1 * y1, s0 * y0 - s1 * y1;
                pts.push_back(make_oracle_point(p, "Aa", x));
            }
    }
    return pts;
}

N3Oracle n3_oracle(double gamma) {
    if (gamma < 0) throw std::invalid_argument("n3_oracle: gamma >= 0 required");
    const ModelParams p(3, gamma);
    const double l1 = 1.0 - 1.5 * gamma;
    N3Oracle out;

    out.points.push_back(make_oracle_point(p, "O", Configuration::Zero(3)));
    out.points.push_back(make_oracle_point(p, "I+", Configuration::Ones(3)));
    out.points.push_back(make_oracle_point(p, "I-", -Configuration::Ones(3)));

    if (l1 > 1e-12) {
        // y0 = 0, r1 = sqrt(l1/3), cos(3 phi) = 0: the (x,-x,0) family
        const double r1 = std::sqrt(l1 / 3.0);
        const double phi = M_PI / 6.0;
        Configuration x(3);
        for (int j = 0; j < 3; ++j) x[j] = 2.0 * r1 * std::cos(2.0 * M_PI * j / 3.0 + phi);
        out.points.push_back(make_oracle_point(p, "A", x));
    }

    // (x,x,y) family via the cubic z^3 - lambda z + mu = 0
    const double lam = l1 / 48.0;
    const double mu = (1.0 - 3.0 * l1 + 6.0 * l1 * l1 - 2.0 * l1 * l1 * l1) / 1728.0;
    const double disc = 4.0 * lam * lam * lam - 27.0 * mu * mu;
    out.cubic_real_roots = disc > 0 ? 3 : (disc == 0 ? 2 : 1);

    Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    companion(0, 2) = -mu;
    companion(1, 2) = lam;
    Eigen::EigenSolver<Eigen::Matrix3d> es(companion);
    for (int i = 0; i < 3; ++i) {
        const auto z = es.eigenvalues()[i];
        if (std::abs(z.imag()) > 1e-9) continue;
        const double v2 = z.real() + (1.0 + l1) / 12.0;
        if (v2 < -1e-12) continue;
        const double u2 = (l1 / 3.0 - std::max(v2, 0.0)) / 3.0;
        if (u2 < -1e-12) continue;
        const double vv = std::sqrt(std::max(v2, 0.0));
        const double uu = std::sqrt(std::max(u2, 0.0));
        for (double sv : {1.0, -1.0})
            for (double su : {1.0, -1.0}) {
                const double u = su * uu, v = sv * vv;
                const double eq2 = 24.0 * u * u * v + (1.0 - l1) * u +
                                   (1.0 - 5.0 / 3.0 * l1) * v;
                if (std::abs(eq2) > 1e-7) continue;
                Configuration x(3);
                x << 3.0 * u - v, 2.0 * v, 2.0 * v;
                if (x.array().abs().maxCoeff() < 1e-9) continue; // origin duplicate
                bool dup = false;
                for (const auto& q : out.points)
                    if (close_conf(q.coords, x, 1e-7)) dup = true;
                if (!dup) out.points.push_back(make_oracle_point(p, "xxy", x));
            }
    }

    // gamma*(3): root of the quartic g(l1) in [0,1], mapped back to gamma
    auto quartic = [](double t) {
        return ((4.0 * t - 16.0) * t + 12.0) * t * t - 4.0 * t + 1.0;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (quartic(mid) > 0) lo = mid;
        else hi = mid;
    }
    out.gamma_star = (1.0 - 0.5 * (lo + hi)) * 2.0 / 3.0;
    return out;
}

std::vector<N4Root> n4_reduced_roots(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("n4_reduced_roots: gamma must be in (0,1)");
    const ModelParams p(4, gamma);
    const double g2 = gamma * gamma;
    // w^4 - 2(1-gamma) w^3 + 2 gamma^2 (1-gamma) w + 2 gamma^4 = 0
    Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
    companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
    companion(0, 3) = -2.0 * g2 * g2;
    companion(1, 3) = -2.0 * g2 * (1.0 - gamma);
    companion(2, 3) = 0.0;
    companion(3, 3) = 2.0 * (1.0 - gamma);
    Eigen::EigenSolver<Eigen::Matrix4d> es(companion);

    std::vector<N4Root> roots;
    for (int i = 0; i < 4; ++i) {
        const auto z = es.eigenvalues()[i];
        if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z.real()))) continue;
        N4Root r;
        r.w = z.real();
        if (std::abs(r.w) < 1e-12) continue;
        r.feasible = 3.0 * g2 / r.w <= (1.0 - gamma) + 1e-12;
        const double x2 = 1.0 - gamma - 0.5 * r.w;
        r.reconstructible = x2 >= -1e-12;
        if (r.feasible && r.reconstructible) {
            const double x = std::sqrt(std::max(x2, 0.0));
            const double u = -r.w * x / (2.0 * gamma);
            const double v2 = 1.0 - gamma - 3.0 * u * u;
            const double v = std::sqrt(std::max(v2, 0.0));
            for (double sx : {1.0, -1.0})
                for (double sv : {1.0, -1.0}) {
                    Configuration c(4);
                    c << sx * x, sx * u + sv * v, sx * x, sx * u - sv * v;
                    auto ref = newton_refine(p, c);
                    if (ref && close_conf(*ref, c, 1e-4)) {
                        bool dup = false;
                        for (const auto& q : r.configs)
                            if (close_conf(q, *ref, 1e-8)) dup = true;
                        if (!dup) r.configs.push_back(*ref);
                    }
                }
        }
        roots.push_back(std::move(r));
    }
    std::sort(roots.begin(), roots.end(), [](const N4Root& a, const N4Root& b) { return a.w < b.w; });
    return roots;
}

double n4_hessian_det(double gamma, double w) {
    if (w == 0.0) throw std::invalid_argument("n4_hessian_det: w must be nonzero");
    const double g2 = gamma * gamma;
    return (1.0 / (2.0 * w * w)) * (3.0 * w - 4.0 * (1.0 - gamma)) *
           ((1.0 - gamma) * w - 3.0 * g2) *
           (-3.0 * (1.0 - gamma) * w * w + 4.0 * (1.0 - 2.0 * gamma) * w +
            6.0 * g2 * (1.0 - gamma));
}

double n4_positive_root_feasibility_end() { return (3.0 * std::sqrt(2.0) - 2.0) / 7.0; }

DesyncPrediction desync_predictions(const ModelParams& p) {
    const int n = p.n_particles;
    const double g1 = gamma_one(n);
    const double ratio = p.coupling / g1;
    // the lower bound is a validity heuristic, not a hard wall; allow for
    // rounding when the caller builds the coupling as (1 - eps) * gamma_1
    if (!(ratio >= 0.9 - 1e-9 && ratio < 1.0))
        throw std::invalid_argument("desync_predictions: gamma/gamma_1 must be in [0.9, 1)");
    const double eps = 1.0 - ratio;

    DesyncPrediction d;
    d.a_point.resize(n);
    d.b_point.resize(n);
    if (n == 4) {
        const double a = std::sqrt(1.0 - p.coupling);
        d.a_point << a, a, -a, -a;
        d.b_point << a, 0.0, -a, 0.0;
        d.value_a_per_site = -0.25 * (1.0 - p.coupling) * (1.0 - p.coupling);
    } else {
        const double amp = 2.0 / std::sqrt(3.0) * std::sqrt(eps);
        for (int i = 0; i < n; ++i) {
            const int j = i + 1; // the leading-order profiles are written 1-based
            if (n % 2 == 0) {
                d.a_point[i] = amp * std::sin(2.0 * M_PI * (j - 0.5) / n);
                d.b_point[i] = amp * std::sin(2.0 * M_PI * j / n);
            } else {
                d.a_point[i] = amp * std::sin(2.0 * M_PI * j / n);
                d.b_point[i] = amp * std::cos(2.0 * M_PI * j / n);
            }
        }
        d.value_a_per_site = -eps * eps / 6.0;
    }
    d.expected_count = (n % 2 == 0) ? 2 * n + 3 : 4 * n + 3;
    return d;
}

WeakCouplingAudit weak_coupling_audit(const ModelParams& p, const EnumerationOptions& opt) {
    if (p.n_particles > 8)
        throw std::invalid_argument("weak_coupling_audit: N <= 8 required");
    if (p.coupling > 0.2)
        throw std::invalid_argument("weak_coupling_audit: gamma <= 0.2 required");
    const int n = p.n_particles;
    const double gamma = p.coupling;

    WeakCouplingAudit audit;
    StationaryPointSet s = find_stationary_points(p, opt);
    audit.count = s.count();
    long long expect = 1;
    for (int i = 0; i < n; ++i) expect *= 3;
    audit.count_is_3_to_n = (audit.count == expect);

    for (const auto& pt : s.points) {
        Configuration c(n);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            c[i] = std::round(pt.coords[i]);
            if (std::abs(c[i]) > 1.0 || std::abs(pt.coords[i] - c[i]) > 0.35) ok = false;
        }
        if (!ok) {
            ++audit.ambiguous_matches;
            continue;
        }
        double v0 = 0.0, iface = 0.0;
        for (int i = 0; i < n; ++i) {
            v0 += local_potential(c[i]);
            const double d = c[(i + 1) % n] - c[i];
            iface += d * d;
        }
        const double predicted = v0 + 0.25 * gamma * iface;
        const double defect = std::abs(pt.value - predicted) / (gamma * gamma);
        audit.max_first_order_defect = std::max(audit.max_first_order_defect, defect);
    }
    audit.first_order_ok = audit.ambiguous_matches == 0 && audit.max_first_order_defect <= 2.0 * n;

    TransitionGraph graph = connect_saddles(p, s);
    const double thr = minimax_saddle_value(p, graph);
    audit.droplet_barrier = thr - (-n / 4.0);

    // explicit droplet path: flip sites 0,1,...,N-1 in order, each through the
    // saddle whose flipping site sits at 0
    double droplet_max = -1e300;
    bool path_found = true;
    for (int k = 0; k < n; ++k) {
        Configuration saddle0(n);
        for (int i = 0; i < n; ++i) saddle0[i] = (i < k) ? 1.0 : (i == k ? 0.0 : -1.0);
        const int idx = s.find(saddle0, 0.35);
        if (idx < 0 || s.points[idx].index_type.n_minus != 1) {
            path_found = false;
            break;
        }
        droplet_max = std::max(droplet_max, s.points[idx].value);
    }
    audit.droplet_path_ok = path_found && std::abs(droplet_max - thr) <= 1e-9;
    return audit;
}

} // namespace ring

#include "ring/sde.hpp"

#include "ring/landscape.hpp"
#include "ring/newton.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <string>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ring {

SdeParams::SdeParams(ModelParams m, double sigma, std::uint64_t seed_, double max_time_)
    : model(m), noise(sigma), dt(std::min(1e-3, sigma * sigma / 4.0)), seed(seed_),
      max_time(max_time_) {
    if (!(sigma > 0.0)) throw std::invalid_argument("SdeParams: sigma > 0 required");
    if (!(max_time > 0.0)) throw std::invalid_argument("SdeParams: max_time > 0 required");
}

void HittingSpec::validate() const {
    if (!(0.0 < r_small && r_small < r_large && r_large < 0.5))
        throw std::invalid_argument("HittingSpec: need 0 < r < R < 1/2");
}

// ---- deterministic noise streams ---------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Marsaglia-Tsang ziggurat tables for the standard normal (128 layers)
struct ZigTables {
    std::uint32_t kn[128];
    double wn[128];
    double fn[128];

    ZigTables() {
        const double m1 = 2147483648.0;
        double dn = 3.442619855899, tn = dn;
        const double vn = 9.91256303526217e-3;
        double q = vn / std::exp(-0.5 * dn * dn);
        kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
        kn[1] = 0;
        wn[0] = q / m1;
        wn[127] = dn / m1;
        fn[0] = 1.0;
        fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
            tn = dn;
            fn[i] = std::exp(-0.5 * dn * dn);
            wn[i] = dn / m1;
        }
    }
};

const ZigTables& zig() {
    static const ZigTables t;
    return t;
}

} // namespace

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t index) {
    // decorrelate (seed, index) pairs before seeding xoshiro256++
    std::uint64_t sm = seed;
    splitmix64(sm);
    sm ^= 0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL;
    for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t NoiseStream::next_raw() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double NoiseStream::uniform() {
    return (static_cast<double>(next_raw() >> 11) + 0.5) * 0x1.0p-53;
}

double NoiseStream::normal() {
    const ZigTables& t = zig();
    const double r = 3.442619855899;
    for (;;) {
        const std::int32_t hz = static_cast<std::int32_t>(next_raw() & 0xffffffffULL);
        const std::uint32_t iz = static_cast<std::uint32_t>(hz) & 127u;
        if (static_cast<std::uint32_t>(hz < 0 ? -(std::int64_t)hz : hz) < t.kn[iz])
            return hz * t.wn[iz];
        // edge handling
        if (iz == 0) {
            double x, y;
            do {
                x = -std::log(uniform()) / r;
                y = -std::log(uniform());
            } while (y + y < x * x);
            return hz > 0 ? r + x : -(r + x);
        }
        const double x = hz * t.wn[iz];
        if (t.fn[iz] + uniform() * (t.fn[iz - 1] - t.fn[iz]) < std::exp(-0.5 * x * x)) return x;
    }
}

// ---- integration --------------------------------------------------------------

Configuration em_step(const SdeParams& s, const Configuration& x,
                      const Eigen::VectorXd& gaussians) {
    const int n = s.model.n_particles;
    if (x.size() != n || gaussians.size() != n)
        throw std::invalid_argument("em_step: dimension mismatch");
    const double half_gamma = 0.5 * s.model.coupling;
    const double amp = s.noise * std::sqrt(s.dt);
    Configuration out(n);
    for (int i = 0; i < n; ++i) {
        const double xi = x[i];
        const double left = x[(i + n - 1) % n];
        const double right = x[(i + 1) % n];
        // neighbour sum written symmetrically so group images step identically
        const double drift = (xi - xi * xi * xi) + half_gamma * (right + left - 2.0 * xi);
        out[i] = xi + s.dt * drift + amp * gaussians[i];
    }
    return out;
}

std::vector<Configuration> a_orbit_points(const ModelParams& p) {
    if (p.coupling >= gamma_one(p.n_particles)) return {};
    const StationaryPointSet set = find_stationary_points(p);
    std::vector<Configuration> orbit;
    for (const auto& pt : set.points)
        if (!pt.degenerate() && pt.index_type.n_minus == 1) orbit.push_back(pt.coords);
    return orbit;
}

namespace {

void parallel_for(int count, const std::function<void(int)>& body) {
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

struct Trajectory {
    const SdeParams& s;
    NoiseStream rng;
    std::vector<double> x;
    double half_gamma;
    double amp;
    double t = 0.0;

    Trajectory(const SdeParams& sp, const Configuration& x0, std::uint64_t index)
        : s(sp), rng(sp.seed, index), x(x0.data(), x0.data() + x0.size()),
          half_gamma(0.5 * sp.model.coupling), amp(sp.noise * std::sqrt(sp.dt)) {}

    void step() {
        const int n = static_cast<int>(x.size());
        double prev = x[n - 1];
        const double first = x[0];
        for (int i = 0; i < n; ++i) {
            const double xi = x[i];
            const double right = (i + 1 < n) ? x[i + 1] : first;
            const double drift = (xi - xi * xi * xi) + half_gamma * (right + prev - 2.0 * xi);
            prev = xi;
            x[i] = xi + s.dt * drift + amp * rng.normal();
        }
        t += s.dt;
    }

    double dist2_to(const std::vector<double>& c) const {
        double d = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double diff = x[i] - c[i];
            d += diff * diff;
        }
        return d;
    }

    bool finite() const {
        for (double v : x)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

std::vector<double> to_vec(const Configuration& c) {
    return std::vector<double>(c.data(), c.data() + c.size());
}

std::vector<std::vector<double>> target_centers(const SdeParams& s, Target target) {
    const int n = s.model.n_particles;
    switch (target) {
        case Target::i_plus: return {std::vector<double>(n, 1.0)};
        case Target::i_minus: return {std::vector<double>(n, -1.0)};
        case Target::origin: return {std::vector<double>(n, 0.0)};
        case Target::a_orbit: {
            std::vector<std::vector<double>> centers;
            for (const auto& c : a_orbit_points(s.model)) centers.push_back(to_vec(c));
            if (centers.empty())
                throw std::invalid_argument("first_hit: no A orbit at this coupling");
            return centers;
        }
    }
    throw std::logic_error("unknown target");
}

} // namespace

HitResult first_hit(const SdeParams& s, const HittingSpec& spec, const Configuration& x0,
                    Target target, std::uint64_t trajectory_index) {
    spec.validate();
    const auto centers = target_centers(s, target);
    const std::vector<double> origin(s.model.n_particles, 0.0);
    std::vector<std::vector<double>> a_pts;
    for (const auto& c : a_orbit_points(s.model)) a_pts.push_back(to_vec(c));

    Trajectory traj(s, x0, trajectory_index);
    const double r2 = spec.r_small * spec.r_small;
    HitResult res;
    res.min_dist_origin = std::numeric_limits<double>::infinity();
    res.min_dist_a_orbit = std::numeric_limits<double>::infinity();

    const long long max_steps = static_cast<long long>(s.max_time / s.dt);
    for (long long step = 0; step < max_steps; ++step) {
        traj.step();
        res.min_dist_origin = std::min(res.min_dist_origin, std::sqrt(traj.dist2_to(origin)));
        for (const auto& a : a_pts)
            res.min_dist_a_orbit = std::min(res.min_dist_a_orbit, std::sqrt(traj.dist2_to(a)));
        for (const auto& c : centers)
            if (traj.dist2_to(c) <= r2) {
                res.time = traj.t;
                return res;
            }
    }
    res.time = traj.t;
    res.censored = true;
    if (!traj.finite()) res.censored = true;
    return res;
}

PassageStats first_return_conditioned(const SdeParams& s, const HittingSpec& spec, int trials) {
    spec.validate();
    const int n = s.model.n_particles;
    const std::vector<double> minus(n, -1.0), plus(n, 1.0), origin(n, 0.0);
    std::vector<std::vector<double>> a_pts;
    for (const auto& c : a_orbit_points(s.model)) a_pts.push_back(to_vec(c));

    const double r2 = spec.r_small * spec.r_small;
    const double big2 = spec.r_large * spec.r_large;
    const long long max_steps = static_cast<long long>(s.max_time / s.dt);

    enum Outcome { out_censored, out_success, out_return };
    struct TrialResult {
        Outcome outcome = out_censored;
        bool near_origin = false;
        bool near_a = false;
        bool near_origin_wide = false;
        bool near_a_wide = false;
    };
    std::vector<TrialResult> results(trials);

    Configuration x0 = -Configuration::Ones(n);
    parallel_for(trials, [&](int trial) {
        Trajectory traj(s, x0, static_cast<std::uint64_t>(trial));
        TrialResult tr;
        bool escaped = false;
        double min_o = std::numeric_limits<double>::infinity();
        double min_a = std::numeric_limits<double>::infinity();
        for (long long step = 0; step < max_steps; ++step) {
            traj.step();
            if (!escaped) {
                if (traj.dist2_to(minus) > big2) escaped = true;
                continue;
            }
            min_o = std::min(min_o, traj.dist2_to(origin));
            for (const auto& a : a_pts) min_a = std::min(min_a, traj.dist2_to(a));
            if (traj.dist2_to(plus) <= r2) {
                tr.outcome = out_success;
                break;
            }
            if (traj.dist2_to(minus) <= r2) {
                tr.outcome = out_return;
                break;
            }
        }
        tr.near_origin = min_o <= r2;
        tr.near_a = min_a <= r2;
        tr.near_origin_wide = min_o <= big2;
        tr.near_a_wide = min_a <= big2;
        results[trial] = tr;
    });

    PassageStats stats;
    stats.trials = trials;
    int pass_o = 0, pass_a = 0, pass_ow = 0, pass_aw = 0;
    for (const auto& tr : results) {
        if (tr.outcome == out_success) {
            ++stats.successes;
            if (tr.near_origin) ++pass_o;
            if (tr.near_a) ++pass_a;
            if (tr.near_origin_wide) ++pass_ow;
            if (tr.near_a_wide) ++pass_aw;
        } else if (tr.outcome == out_return) {
            ++stats.returns;
        } else {
            ++stats.censored;
        }
    }
    if (stats.successes > 0) {
        stats.fraction_origin = static_cast<double>(pass_o) / stats.successes;
        stats.fraction_a_orbit = static_cast<double>(pass_a) / stats.successes;
        stats.fraction_origin_wide = static_cast<double>(pass_ow) / stats.successes;
        stats.fraction_a_orbit_wide = static_cast<double>(pass_aw) / stats.successes;
    }
    return stats;
}

TransitionStats arrhenius_fit(const SdeParams& base, const std::vector<double>& sigmas,
                              int trials, const HittingSpec& spec) {
    if (sigmas.size() < 3)
        throw std::invalid_argument("arrhenius_fit: need at least 3 sigma values");
    spec.validate();

    TransitionStats stats;
    const int n = base.model.n_particles;
    const Configuration x0 = -Configuration::Ones(n);
    const std::vector<double> plus(n, 1.0);

    std::vector<double> xs, ys;
    for (size_t si = 0; si < sigmas.size(); ++si) {
        const SdeParams s(base.model, sigmas[si], base.seed, base.max_time);
        const double r2 = spec.r_small * spec.r_small;
        const long long max_steps = static_cast<long long>(s.max_time / s.dt);

        std::vector<double> taus(trials, -1.0);
        parallel_for(trials, [&](int trial) {
            const std::uint64_t index = (static_cast<std::uint64_t>(si) << 32) |
                                        static_cast<std::uint64_t>(trial);
            Trajectory traj(s, x0, index);
            for (long long step = 0; step < max_steps; ++step) {
                traj.step();
                if (traj.dist2_to(plus) <= r2) {
                    taus[trial] = traj.t;
                    return;
                }
            }
        });

        ArrheniusPoint pt;
        pt.sigma = sigmas[si];
        double sum = 0.0;
        for (double tau : taus) {
            if (tau >= 0) {
                ++pt.uncensored;
                sum += tau;
                stats.hit_times.push_back(tau);
            } else {
                ++pt.censored;
            }
        }
        if (pt.uncensored == 0)
            throw std::runtime_error("arrhenius_fit: no uncensored hits at sigma = " +
                                     std::to_string(pt.sigma));
        pt.mean_tau = sum / pt.uncensored;
        stats.points.push_back(pt);
        xs.push_back(1.0 / (pt.sigma * pt.sigma));
        ys.push_back(std::log(pt.mean_tau));
    }

    // ordinary least squares with slope standard error
    const int m = static_cast<int>(xs.size());
    double mx = 0, my = 0;
    for (int i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    stats.slope = sxy / sxx;
    stats.intercept = my - stats.slope * mx;
    double sse = 0;
    for (int i = 0; i < m; ++i) {
        const double r = ys[i] - stats.intercept - stats.slope * xs[i];
        sse += r * r;
    }
    stats.slope_stderr = m > 2 ? std::sqrt(sse / (m - 2) / sxx) : 0.0;
    return stats;
}

BarrierReport barrier_consistency(int n_particles, const std::vector<double>& eps_values) {
    BarrierReport rep;
    rep.n_particles = n_particles;
    rep.expected_c = (n_particles == 2 || n_particles == 4) ? 0.25 : 1.0 / 6.0;
    const double g1 = gamma_one(n_particles);

    double num = 0.0, den = 0.0;
    for (double eps : eps_values) {
        if (!(eps > 0.0 && eps <= 0.1))
            throw std::invalid_argument("barrier_consistency: eps in (0, 0.1] required");
        const ModelParams p(n_particles, (1.0 - eps) * g1);
        const StationaryPointSet set = find_stationary_points(p);
        const TransitionGraph graph = connect_saddles(p, set);
        const double h = barrier_height(p, graph);
        rep.eps_values.push_back(eps);
        rep.h_values.push_back(h);
        const double e2 = eps * eps;
        num += (0.25 - h) * e2;
        den += e2 * e2;
    }
    rep.fitted_c = num / den;
    return rep;
}

} // namespace ring

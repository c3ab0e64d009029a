#pragma once

// Euler-Maruyama simulation of the coupled bistable ring with additive noise:
// first-hitting and conditioned first-return functionals, Arrhenius-slope
// regression over a sigma ladder, and the barrier-curve consistency check.

#include "ring/model.hpp"

#include <cstdint>
#include <vector>

namespace ring {

struct SdeParams {
    ModelParams model;
    double noise;          // sigma
    double dt;
    std::uint64_t seed;
    double max_time;

    SdeParams(ModelParams m, double sigma, std::uint64_t seed_, double max_time_ = 1e5);
};

struct HittingSpec {
    double r_small = 0.1;
    double r_large = 0.4;

    void validate() const;
};

enum class Target { i_plus, i_minus, origin, a_orbit };

// deterministic per-trajectory noise stream: trajectory `index` under `seed`
// always produces the same draws regardless of scheduling
class NoiseStream {
public:
    NoiseStream(std::uint64_t seed, std::uint64_t index);
    double normal();
    double uniform();    // in (0,1)

private:
    std::uint64_t next_raw();
    std::uint64_t s_[4];
};

Configuration em_step(const SdeParams& s, const Configuration& x,
                      const Eigen::VectorXd& gaussians);

struct HitResult {
    double time = 0.0;
    bool censored = false;
    double min_dist_origin = 0.0;    // along the path
    double min_dist_a_orbit = 0.0;   // +inf when no A orbit exists
};

HitResult first_hit(const SdeParams& s, const HittingSpec& spec, const Configuration& x0,
                    Target target, std::uint64_t trajectory_index = 0);

struct PassageStats {
    int trials = 0;
    int successes = 0;               // tau_+ < tau_-
    int returns = 0;                 // tau_- first
    int censored = 0;
    double fraction_origin = 0.0;    // successes passing within r_small of O
    double fraction_a_orbit = 0.0;   // same for the A orbit
    // same fractions at the outer radius r_large; at moderate sigma the
    // conditioned paths concentrate at this scale long before the r_small
    // fractions approach their small-noise limit
    double fraction_origin_wide = 0.0;
    double fraction_a_orbit_wide = 0.0;
};

PassageStats first_return_conditioned(const SdeParams& s, const HittingSpec& spec, int trials);

struct ArrheniusPoint {
    double sigma = 0.0;
    int uncensored = 0;
    int censored = 0;
    double mean_tau = 0.0;
};

struct TransitionStats {
    std::vector<ArrheniusPoint> points;
    std::vector<double> hit_times;   // all uncensored samples, ladder order
    double slope = 0.0;              // of ln(mean tau) vs 1/sigma^2
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

TransitionStats arrhenius_fit(const SdeParams& base, const std::vector<double>& sigmas,
                              int trials, const HittingSpec& spec = {});

struct BarrierReport {
    int n_particles = 0;
    double expected_c = 0.0;         // 1/4 for N in {2,4}, 1/6 otherwise
    double fitted_c = 0.0;
    std::vector<double> eps_values;  // 1 - gamma/gamma_1
    std::vector<double> h_values;    // measured h_N(gamma)
};

BarrierReport barrier_consistency(int n_particles, const std::vector<double>& eps_values);

// Newton-refined A-orbit members at the given coupling (empty for gamma >= gamma_1)
std::vector<Configuration> a_orbit_points(const ModelParams& p);

} // namespace ring

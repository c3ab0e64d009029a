#pragma once

// Enumeration and classification of the stationary points of V_gamma, the
// transition graph between minima, bifurcation scans in gamma, and the
// closed-form small-N oracles (N = 2, 3 and the N = 4 quartic reduction).

#include "ring/model.hpp"
#include "ring/newton.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ring {

struct IndexType {
    int n_minus = 0;
    int n_zero = 0;
    int n_plus = 0;
};

struct StationaryPoint {
    Configuration coords;
    double residual = 0.0;            // max-norm of grad V
    double value = 0.0;               // V_gamma
    Eigen::VectorXd spectrum;         // sorted Hessian eigenvalues
    IndexType index_type;
    int orbit_id = -1;

    bool degenerate() const { return index_type.n_zero > 0; }
    int saddle_index() const { return index_type.n_minus; }
};

struct StationaryPointSet {
    ModelParams params{2, 0.0};
    std::vector<StationaryPoint> points;
    int n_orbits = 0;

    int count() const { return static_cast<int>(points.size()); }
    int count_index(int k) const;     // |S_k|, degenerate points excluded
    int count_degenerate() const;
    // index of the point closest to x, or -1
    int find(const Configuration& x, double tol = 1e-6) const;
};

struct TransitionEdge {
    int from_min = -1;                // indices into TransitionGraph::minima
    int to_min = -1;
    StationaryPoint saddle;
    bool resolved = true;             // descent converged on both sides
};

struct TransitionGraph {
    ModelParams params{2, 0.0};
    std::vector<StationaryPoint> minima;
    std::vector<TransitionEdge> edges;

    int find_minimum(const Configuration& x, double tol = 1e-5) const;
};

struct BifurcationEvent {
    double gamma_lo = 0.0;
    double gamma_hi = 0.0;
    int count_before = 0;
    int count_after = 0;
    bool resolved = true;

    double gamma_mid() const { return 0.5 * (gamma_lo + gamma_hi); }
};

struct BifurcationDiagram {
    int n_particles = 0;
    std::vector<double> gamma_grid;
    std::vector<int> counts;                       // |S| along the grid
    std::vector<std::array<int, 16>> index_counts; // |S_k| for k <= 15
    std::vector<BifurcationEvent> events;
};

enum class SeedStrategy { seed_grid, continuation };

struct EnumerationOptions {
    SeedStrategy strategy = SeedStrategy::seed_grid;
    double newton_tol = 1e-12;
    double dedup_tol = 1e-8;
    int random_seeds_per_grid_point = 10;
    std::uint64_t rng_seed = 0x5eedULL;
    double continuation_step = 0.01;
};

StationaryPointSet find_stationary_points(const ModelParams& p,
                                          const EnumerationOptions& opt = {});

StationaryPoint classify(const ModelParams& p, const Configuration& pt);

TransitionGraph connect_saddles(const ModelParams& p, const StationaryPointSet& s);

// Normalised minimax barrier h_N(gamma) between I- and I+ over the graph.
double barrier_height(const ModelParams& p, const TransitionGraph& g);
// Raw minimax barrier V(highest saddle on the best path) - V(I-).
double raw_barrier(const ModelParams& p, const TransitionGraph& g);

BifurcationDiagram scan_bifurcations(int n_particles, double gamma_min, double gamma_max,
                                     double step, const EnumerationOptions& opt = {});

// ---- closed-form small-N oracles -------------------------------------------

struct OraclePoint {
    std::string branch;
    Configuration coords;
    double value = 0.0;
    int saddle_index = 0;
};

std::vector<OraclePoint> n2_oracle(double gamma);

struct N3Oracle {
    std::vector<OraclePoint> points;
    double gamma_star = 0.0;          // saddle-node value from the quartic g
    int cubic_real_roots = 0;         // real roots of z^3 - lambda z + mu
};

N3Oracle n3_oracle(double gamma);

struct N4Root {
    double w = 0.0;
    bool feasible = false;            // condition 3 gamma^2 / w <= 1 - gamma
    bool reconstructible = false;     // x^2 = 1 - gamma - w/2 >= 0
    std::vector<Configuration> configs; // stationary points of the (x,y,x,z) family
};

std::vector<N4Root> n4_reduced_roots(double gamma);
double n4_hessian_det(double gamma, double w);
// Upper end of the feasibility window of the positive root: (3 sqrt 2 - 2)/7.
double n4_positive_root_feasibility_end();

// ---- desynchronisation predictions ------------------------------------------

struct DesyncPrediction {
    Configuration a_point;            // leading-order 1-saddle representative
    Configuration b_point;            // leading-order 2-saddle representative
    double value_a_per_site = 0.0;    // predicted V(A)/N
    int expected_count = 0;           // |S| = 2N+3 (even) or 4N+3 (odd, l=1)
};

DesyncPrediction desync_predictions(const ModelParams& p);

// ---- weak-coupling audit -----------------------------------------------------

struct WeakCouplingAudit {
    int count = 0;
    bool count_is_3_to_n = false;
    double max_first_order_defect = 0.0;   // |V - V0 - (gamma/4) interfaces| / gamma^2
    bool first_order_ok = false;
    int ambiguous_matches = 0;
    double droplet_barrier = 0.0;          // raw minimax barrier from I- to I+
    bool droplet_path_ok = false;          // optimal path grows a contiguous droplet
};

WeakCouplingAudit weak_coupling_audit(const ModelParams& p,
                                      const EnumerationOptions& opt = {});

} // namespace ring

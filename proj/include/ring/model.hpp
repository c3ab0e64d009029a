#pragma once

// Coupled bistable particles on a periodic ring: local potential, drift,
// global potential/gradient/Hessian, spectrum at the origin, the interaction
// Lyapunov functional W, and the symmetry group G = D_N x Z_2 acting on
// configurations.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace ring {

using Configuration = Eigen::VectorXd;

struct ModelParams {
    int n_particles;   // N >= 2
    double coupling;   // gamma >= 0

    ModelParams(int n, double gamma);
};

// Eigenvalues lambda_k of -Hessian(O) and the bifurcation couplings
// gamma_k = 1/(1 - cos(2 pi k / N)).
struct OriginSpectrum {
    Eigen::VectorXd lambdas;          // lambda_0..lambda_{N-1}
    Eigen::VectorXd gammas;           // gamma_k; gamma_0 = +inf sentinel
    std::vector<double> gamma_m;      // gamma_M for M = 1..floor(N/2)
};

// Group element C^c S^s R^r (rotation applied first, then reflection,
// then sign flip). For N = 2 the group degenerates to the Klein four-group.
struct SymmetryElement {
    int rotation = 0;       // power of R, in [0, N)
    bool reflected = false; // S applied
    bool negated = false;   // C applied
};

double local_potential(double xi);
double local_drift(double xi);

double potential(const ModelParams& p, const Configuration& x);
Configuration gradient(const ModelParams& p, const Configuration& x);
Eigen::MatrixXd hessian(const ModelParams& p, const Configuration& x);

OriginSpectrum origin_spectrum(const ModelParams& p);

// gamma_1(N) = 1/(1 - cos(2 pi / N)), the synchronisation threshold.
double gamma_one(int n_particles);

// W(x) = 1/2 sum (x_i - x_{i+1})^2; vanishes exactly on the diagonal.
double interaction_w(const Configuration& x);

// One explicit gradient-flow step of size dt; checks the decay inequality
// dW/dt <= 2 (1 - gamma/gamma_1) W - W^2/N up to discretisation slack.
bool lyapunov_decay_check(const ModelParams& p, const Configuration& x, double dt);

// V(x_par + x_perp) >= V(x_par) + 1/2 (gamma/gamma_1 - 1) |x_perp|^2 for
// x_par on the diagonal and x_perp summing to zero.
bool quadratic_growth_check(const ModelParams& p, const Configuration& x_par,
                            const Configuration& x_perp);

Configuration apply_symmetry(const SymmetryElement& g, const Configuration& x);

// Composition a*b meaning "apply b first": uses S R = R^{-1} S to normalise.
SymmetryElement compose(const SymmetryElement& a, const SymmetryElement& b, int n);
SymmetryElement inverse_element(const SymmetryElement& g, int n);

// The full element list: 4N elements for N >= 3, 4 for N = 2.
std::vector<SymmetryElement> group_elements(int n);

std::vector<Configuration> orbit_of(const ModelParams& p, const Configuration& x,
                                    double tol = 1e-8);
std::vector<SymmetryElement> stabiliser_of(const ModelParams& p, const Configuration& x,
                                           double tol = 1e-8);

// Relative zero threshold used when classifying Hessian eigenvalues.
inline constexpr double kEigenZeroTol = 1e-7;

} // namespace ring

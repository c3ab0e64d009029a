#include "ring/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ring {

ModelParams::ModelParams(int n, double gamma) : n_particles(n), coupling(gamma) {
    if (n < 2) throw std::invalid_argument("ModelParams: need at least 2 particles");
    if (!(gamma >= 0.0)) throw std::invalid_argument("ModelParams: coupling must be >= 0");
}

double local_potential(double xi) { return 0.25 * xi * xi * xi * xi - 0.5 * xi * xi; }

double local_drift(double xi) { return xi - xi * xi * xi; }

static void check_dim(const ModelParams& p, const Configuration& x) {
    if (x.size() != p.n_particles)
        throw std::invalid_argument("configuration length does not match n_particles");
}

double potential(const ModelParams& p, const Configuration& x) {
    check_dim(p, x);
    const int n = p.n_particles;
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = x[(i + 1) % n] - x[i];
        v += local_potential(x[i]) + 0.25 * p.coupling * d * d;
    }
    return v;
}

Configuration gradient(const ModelParams& p, const Configuration& x) {
    check_dim(p, x);
    const int n = p.n_particles;
    Configuration g(n);
    for (int i = 0; i < n; ++i) {
        const double lap = x[(i + 1) % n] + x[(i + n - 1) % n] - 2.0 * x[i];
        g[i] = -local_drift(x[i]) - 0.5 * p.coupling * lap;
    }
    return g;
}

Eigen::MatrixXd hessian(const ModelParams& p, const Configuration& x) {
    check_dim(p, x);
    const int n = p.n_particles;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = 3.0 * x[i] * x[i] - 1.0 + p.coupling;
        h(i, (i + 1) % n) -= 0.5 * p.coupling;
        h(i, (i + n - 1) % n) -= 0.5 * p.coupling;
    }
    return h;
}

double gamma_one(int n_particles) {
    return 1.0 / (1.0 - std::cos(2.0 * M_PI / n_particles));
}

OriginSpectrum origin_spectrum(const ModelParams& p) {
    const int n = p.n_particles;
    OriginSpectrum s;
    s.lambdas.resize(n);
    s.gammas.resize(n);
    for (int k = 0; k < n; ++k) {
        const double c = 1.0 - std::cos(2.0 * M_PI * k / n);
        s.lambdas[k] = 1.0 - p.coupling * c;
        s.gammas[k] = (k == 0) ? std::numeric_limits<double>::infinity() : 1.0 / c;
    }
    for (int m = 1; m <= n / 2; ++m)
        s.gamma_m.push_back(1.0 / (1.0 - std::cos(2.0 * M_PI * m / n)));
    return s;
}

double interaction_w(const Configuration& x) {
    const int n = static_cast<int>(x.size());
    double w = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = x[i] - x[(i + 1) % n];
        w += d * d;
    }
    return 0.5 * w;
}

bool lyapunov_decay_check(const ModelParams& p, const Configuration& x, double dt) {
    check_dim(p, x);
    if (!(p.coupling > 0.0)) throw std::invalid_argument("lyapunov_decay_check: gamma > 0 required");
    if (!(dt > 0.0 && dt <= 1e-3)) throw std::invalid_argument("lyapunov_decay_check: dt must be in (0, 1e-3]");

    const Configuration g = gradient(p, x);
    const Configuration x1 = x - dt * g;
    if (potential(p, x1) > potential(p, x) + 1e-14)
        throw std::runtime_error("lyapunov_decay_check: step too large, energy increased");

    const double w0 = interaction_w(x);
    const double w1 = interaction_w(x1);
    const double rate = (w1 - w0) / dt;
    const double bound = 2.0 * (1.0 - p.coupling / gamma_one(p.n_particles)) * w0 -
                         w0 * w0 / p.n_particles;
    // discrete slack ~ dt * local Lipschitz scale of dW/dt
    const double scale = 1.0 + x.array().abs().maxCoeff();
    const double slack = 10.0 * dt * (1.0 + p.coupling) * scale * scale * (1.0 + w0);
    return rate <= bound + slack;
}

bool quadratic_growth_check(const ModelParams& p, const Configuration& x_par,
                            const Configuration& x_perp) {
    check_dim(p, x_par);
    check_dim(p, x_perp);
    const int n = p.n_particles;
    for (int i = 1; i < n; ++i)
        if (std::abs(x_par[i] - x_par[0]) > 1e-10)
            throw std::invalid_argument("quadratic_growth_check: x_par not on the diagonal");
    if (std::abs(x_perp.sum()) > 1e-10)
        throw std::invalid_argument("quadratic_growth_check: x_perp components must sum to 0");

    const double lhs = potential(p, x_par + x_perp);
    const double rhs = potential(p, x_par) +
                       0.5 * (p.coupling / gamma_one(n) - 1.0) * x_perp.squaredNorm();
    return lhs >= rhs - 1e-10 * (1.0 + std::abs(rhs));
}

Configuration apply_symmetry(const SymmetryElement& g, const Configuration& x) {
    const int n = static_cast<int>(x.size());
    Configuration y(n);
    const int r = ((g.rotation % n) + n) % n;
    for (int j = 0; j < n; ++j) y[j] = x[(j + r) % n];
    if (g.reflected) {
        Configuration z(n);
        for (int j = 0; j < n; ++j) z[j] = y[n - 1 - j];
        y.swap(z);
    }
    if (g.negated) y = -y;
    return y;
}

SymmetryElement compose(const SymmetryElement& a, const SymmetryElement& b, int n) {
    // word (C^ca S^sa R^ra)(C^cb S^sb R^rb); push R^ra through S^sb
    SymmetryElement out;
    out.negated = a.negated != b.negated;
    int r;
    if (b.reflected) {
        out.reflected = !a.reflected;
        r = b.rotation - a.rotation;
    } else {
        out.reflected = a.reflected;
        r = a.rotation + b.rotation;
    }
    out.rotation = ((r % n) + n) % n;
    return out;
}

SymmetryElement inverse_element(const SymmetryElement& g, int n) {
    SymmetryElement inv;
    inv.negated = g.negated;
    inv.reflected = g.reflected;
    inv.rotation = g.reflected ? g.rotation : ((n - g.rotation) % n);
    return inv;
}

std::vector<SymmetryElement> group_elements(int n) {
    std::vector<SymmetryElement> els;
    if (n == 2) {
        // R = S, so only {id, S, C, CS} act distinctly
        for (int c = 0; c < 2; ++c)
            for (int s = 0; s < 2; ++s)
                els.push_back({0, s != 0, c != 0});
        return els;
    }
    for (int c = 0; c < 2; ++c)
        for (int s = 0; s < 2; ++s)
            for (int r = 0; r < n; ++r)
                els.push_back({r, s != 0, c != 0});
    return els;
}

std::vector<Configuration> orbit_of(const ModelParams& p, const Configuration& x, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("orbit_of: tol must be positive");
    std::vector<Configuration> orbit;
    for (const auto& g : group_elements(p.n_particles)) {
        Configuration y = apply_symmetry(g, x);
        bool seen = false;
        for (const auto& z : orbit)
            if ((y - z).array().abs().maxCoeff() <= tol) { seen = true; break; }
        if (!seen) orbit.push_back(std::move(y));
    }
    return orbit;
}

std::vector<SymmetryElement> stabiliser_of(const ModelParams& p, const Configuration& x,
                                           double tol) {
    std::vector<SymmetryElement> stab;
    for (const auto& g : group_elements(p.n_particles))
        if ((apply_symmetry(g, x) - x).array().abs().maxCoeff() <= tol) stab.push_back(g);
    return stab;
}

} // namespace ring

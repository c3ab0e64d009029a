#include "ring/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace ring {

using cplx = std::complex<double>;

static cplx unit_root(int n, long long power) {
    const long long p = ((power % n) + n) % n;
    const double arg = 2.0 * M_PI * static_cast<double>(p) / n;
    return {std::cos(arg), std::sin(arg)};
}

double FourierState::reality_defect() const {
    const int n = size();
    double d = 0.0;
    for (int k = 0; k < n; ++k)
        d = std::max(d, std::abs(modes[k] - std::conj(modes[(n - k) % n])));
    return d;
}

static void check_real(const FourierState& y, const char* who) {
    if (y.reality_defect() > 1e-10)
        throw std::invalid_argument(std::string(who) + ": state violates the reality constraint");
}

FourierState forward(const Configuration& x) {
    const int n = static_cast<int>(x.size());
    FourierState y;
    y.modes.resize(n);
    for (int k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += std::conj(unit_root(n, (long long)j * k)) * x[j];
        y.modes[k] = s / static_cast<double>(n);
    }
    return y;
}

Configuration inverse(const FourierState& y) {
    check_real(y, "inverse");
    const int n = y.size();
    Configuration x(n);
    for (int j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (int k = 0; k < n; ++k) s += unit_root(n, (long long)j * k) * y.modes[k];
        x[j] = s.real();
    }
    return x;
}

double fourier_potential(const ModelParams& p, const FourierState& y) {
    check_real(y, "fourier_potential");
    const int n = p.n_particles;
    if (y.size() != n) throw std::invalid_argument("fourier_potential: dimension mismatch");
    const OriginSpectrum sp = origin_spectrum(p);
    double quad = 0.0;
    for (int k = 0; k < n; ++k) quad += sp.lambdas[k] * std::norm(y.modes[k]);
    cplx quart = 0.0;
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = 0; k2 < n; ++k2)
            for (int k3 = 0; k3 < n; ++k3) {
                const int k4 = ((-(k1 + k2 + k3)) % n + n) % n;
                quart += y.modes[k1] * y.modes[k2] * y.modes[k3] * y.modes[k4];
            }
    return -0.5 * n * quad + 0.25 * n * quart.real();
}

FourierState fourier_drift_direct(const ModelParams& p, const FourierState& y) {
    check_real(y, "fourier_drift");
    const int n = p.n_particles;
    if (y.size() != n) throw std::invalid_argument("fourier_drift: dimension mismatch");
    const OriginSpectrum sp = origin_spectrum(p);
    FourierState out;
    out.modes.resize(n);
    for (int k = 0; k < n; ++k) {
        cplx cubic = 0.0;
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2) {
                const int k3 = ((k - k1 - k2) % n + n) % n;
                cubic += y.modes[k1] * y.modes[k2] * y.modes[k3];
            }
        out.modes[k] = sp.lambdas[k] * y.modes[k] - cubic;
    }
    return out;
}

FourierState fourier_drift_fast(const ModelParams& p, const FourierState& y) {
    check_real(y, "fourier_drift");
    const int n = p.n_particles;
    if (y.size() != n) throw std::invalid_argument("fourier_drift: dimension mismatch");
    const OriginSpectrum sp = origin_spectrum(p);
    // cubic convolution = transform of the pointwise cube
    const Configuration x = inverse(y);
    Configuration x3(n);
    for (int j = 0; j < n; ++j) x3[j] = x[j] * x[j] * x[j];
    const FourierState z = forward(x3);
    FourierState out;
    out.modes.resize(n);
    for (int k = 0; k < n; ++k) out.modes[k] = sp.lambdas[k] * y.modes[k] - z.modes[k];
    return out;
}

FourierState fourier_drift(const ModelParams& p, const FourierState& y) {
    return p.n_particles <= 32 ? fourier_drift_direct(p, y) : fourier_drift_fast(p, y);
}

FourierState symmetry_on_modes(const SymmetryElement& g, const FourierState& y) {
    const int n = y.size();
    FourierState out;
    out.modes.resize(n);
    const double sign = g.negated ? -1.0 : 1.0;
    for (int k = 0; k < n; ++k) {
        if (g.reflected)
            out.modes[k] = sign * unit_root(n, (long long)(1 - g.rotation) * k) *
                           std::conj(y.modes[k]);
        else
            out.modes[k] = sign * unit_root(n, (long long)g.rotation * k) * y.modes[k];
    }
    return out;
}

} // namespace ring

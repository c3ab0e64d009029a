#pragma once

// Discrete Fourier representation of ring configurations, the equations of
// motion and the potential in Fourier variables, and the symmetry action on
// modes. Mode storage is canonical 0..N-1.

#include "ring/model.hpp"

#include <complex>

namespace ring {

struct FourierState {
    Eigen::VectorXcd modes; // y_0..y_{N-1}

    int size() const { return static_cast<int>(modes.size()); }
    // max deviation from the reality constraint y_k = conj(y_{N-k})
    double reality_defect() const;
};

FourierState forward(const Configuration& x);
Configuration inverse(const FourierState& y);

double fourier_potential(const ModelParams& p, const FourierState& y);
FourierState fourier_drift(const ModelParams& p, const FourierState& y);

// Direct O(N^3) evaluation of the cubic convolution sum; the default
// fourier_drift switches to the transform-based path for larger N.
FourierState fourier_drift_direct(const ModelParams& p, const FourierState& y);
FourierState fourier_drift_fast(const ModelParams& p, const FourierState& y);

FourierState symmetry_on_modes(const SymmetryElement& g, const FourierState& y);

} // namespace ring

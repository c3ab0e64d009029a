#pragma once

// Damped Newton iteration on grad V = 0 with line search on |grad V|^2 and a
// pseudo-inverse fallback for near-singular Hessians.

#include "ring/model.hpp"

#include <optional>

namespace ring {

struct NewtonOptions {
    double tol = 1e-12;   // on max-norm of the gradient
    int max_iter = 200;
};

std::optional<Configuration> newton_refine(const ModelParams& p, const Configuration& seed,
                                           const NewtonOptions& opt = {});

} // namespace ring

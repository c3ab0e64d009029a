#include "ring/newton.hpp"

#include <cmath>

namespace ring {

namespace {

// Near-flat directions admit whole regions where the gradient already meets
// the tolerance while the exact root is still ~1e-5 away; without this pass
// every such region yields a cloud of spurious duplicates. Full Newton steps
// contract onto the root, so iterate until the step itself is negligible.
Configuration polish(const ModelParams& p, Configuration x, double tol) {
    for (int it = 0; it < 16; ++it) {
        const Configuration g = gradient(p, x);
        const Eigen::MatrixXd h = hessian(p, x);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(h);
        lu.setThreshold(1e-12);
        if (!lu.isInvertible()) break;
        const Configuration step = lu.solve(-g);
        if (!step.allFinite()) break;
        const Configuration xt = x + step;
        if (gradient(p, xt).array().abs().maxCoeff() > tol) break;
        x = xt;
        if (step.array().abs().maxCoeff() < 1e-11) break;
    }
    return x;
}

} // namespace

std::optional<Configuration> newton_refine(const ModelParams& p, const Configuration& seed,
                                           const NewtonOptions& opt) {
    Configuration x = seed;
    Configuration g = gradient(p, x);
    double gn2 = g.squaredNorm();
    int stagnant = 0;

    for (int it = 0; it < opt.max_iter; ++it) {
        if (g.array().abs().maxCoeff() <= opt.tol) return polish(p, x, opt.tol);
        if (!x.allFinite()) return std::nullopt;

        const Eigen::MatrixXd h = hessian(p, x);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(h);
        lu.setThreshold(1e-12);
        Configuration step;
        if (lu.isInvertible()) {
            step = lu.solve(-g);
        } else {
            // singular system: pseudo-inverse step
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
            svd.setThreshold(1e-10);
            step = svd.solve(-g);
        }
        if (!step.allFinite()) return std::nullopt;

        double alpha = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 40; ++ls) {
            Configuration xt = x + alpha * step;
            Configuration gt = gradient(p, xt);
            const double gt2 = gt.squaredNorm();
            if (gt2 < gn2 * (1.0 - 1e-4 * alpha) || gt2 <= opt.tol * opt.tol) {
                x = std::move(xt);
                g = std::move(gt);
                gn2 = gt2;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved) {
            if (++stagnant >= 3) return std::nullopt;
            // fall back to a small gradient step to escape flat spots
            x -= 1e-3 * g;
            g = gradient(p, x);
            gn2 = g.squaredNorm();
        } else {
            stagnant = 0;
        }
    }
    return g.array().abs().maxCoeff() <= opt.tol ? std::optional<Configuration>(polish(p, x, opt.tol))
                                                 : std::nullopt;
}

} // namespace ring

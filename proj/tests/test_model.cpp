#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ring/model.hpp"

#include <cmath>
#include <random>

using namespace ring;

namespace {

Configuration random_config(int n, std::mt19937_64& rng, double scale = 1.5) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Configuration x(n);
    for (int i = 0; i < n; ++i) x[i] = u(rng);
    return x;
}

} // namespace

TEST_CASE("synchronisation threshold formula") {
    for (int n = 2; n <= 16; ++n) {
        const double expected = 1.0 / (1.0 - std::cos(2.0 * M_PI / n));
        CHECK(gamma_one(n) == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK(gamma_one(2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gamma_one(3) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(gamma_one(4) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gradient matches finite differences") {
    std::mt19937_64 rng(42);
    for (int n : {2, 3, 5, 8}) {
        const ModelParams p(n, 0.37);
        for (int rep = 0; rep < 20; ++rep) {
            const Configuration x = random_config(n, rng);
            const Configuration g = gradient(p, x);
            const double h = 1e-6;
            for (int i = 0; i < n; ++i) {
                Configuration xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                const double fd = (potential(p, xp) - potential(p, xm)) / (2.0 * h);
                const double scale = std::max(1.0, std::abs(g[i]));
                CHECK(std::abs(g[i] - fd) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("hessian matches finite differences of the gradient") {
    std::mt19937_64 rng(7);
    const ModelParams p(4, 0.21);
    const Configuration x = random_config(4, rng);
    const Eigen::MatrixXd H = hessian(p, x);
    const double h = 1e-6;
    for (int j = 0; j < 4; ++j) {
        Configuration xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const Configuration col = (gradient(p, xp) - gradient(p, xm)) / (2.0 * h);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(H(i, j) - col[i]) < 1e-5);
    }
    CHECK((H - H.transpose()).norm() < 1e-14);
}

TEST_CASE("origin spectrum is the circulant spectrum") {
    for (int n : {2, 3, 4, 7}) {
        const ModelParams p(n, 0.4);
        const OriginSpectrum sp = origin_spectrum(p);
        for (int k = 0; k < n; ++k) {
            const double expected = 1.0 - p.coupling * (1.0 - std::cos(2.0 * M_PI * k / n));
            CHECK(sp.lambdas[k] == doctest::Approx(expected).epsilon(1e-13));
        }
        // -Hessian(O) eigenvalues are exactly the lambda_k as a multiset
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            -hessian(p, Configuration::Zero(n)));
        Eigen::VectorXd lam = sp.lambdas;
        std::sort(lam.data(), lam.data() + n);
        for (int k = 0; k < n; ++k)
            CHECK(es.eigenvalues()[k] == doctest::Approx(lam[k]).epsilon(1e-12));
    }
}

TEST_CASE("potential is invariant under the symmetry group") {
    std::mt19937_64 rng(5);
    for (int n : {2, 3, 5, 6}) {
        const ModelParams p(n, 0.3);
        const Configuration x = random_config(n, rng);
        const double v = potential(p, x);
        for (const auto& g : group_elements(n)) {
            const Configuration gx = apply_symmetry(g, x);
            CHECK(potential(p, gx) == doctest::Approx(v).epsilon(1e-12));
            // gradient is equivariant: grad V(g x) = g grad V(x)
            const Configuration lhs = gradient(p, gx);
            const Configuration rhs = apply_symmetry(g, gradient(p, x));
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("group composition and inverses") {
    std::mt19937_64 rng(11);
    const int n = 5;
    const auto elems = group_elements(n);
    CHECK(static_cast<int>(elems.size()) == 4 * n);
    const Configuration x = random_config(n, rng);
    for (const auto& a : elems)
        for (const auto& b : elems) {
            const SymmetryElement ab = compose(a, b, n);
            const Configuration lhs = apply_symmetry(ab, x);
            const Configuration rhs = apply_symmetry(a, apply_symmetry(b, x));
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
        }
    for (const auto& a : elems) {
        const SymmetryElement inv = inverse_element(a, n);
        const Configuration back = apply_symmetry(inv, apply_symmetry(a, x));
        CHECK((back - x).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("orbit size times stabiliser size equals group order") {
    const ModelParams p(4, 0.3);
    CHECK(group_elements(2).size() == 4);
    Configuration uniform = Configuration::Ones(4);
    Configuration generic(4);
    generic << 0.3, -0.7, 1.1, 0.2;
    for (const Configuration& x : {uniform, generic}) {
        const auto orb = orbit_of(p, x);
        const auto stab = stabiliser_of(p, x);
        CHECK(orb.size() * stab.size() == 16);
    }
}

TEST_CASE("interaction functional decays above threshold") {
    std::mt19937_64 rng(13);
    for (int n : {3, 4, 6}) {
        const ModelParams p(n, 1.3 * gamma_one(n));
        for (int rep = 0; rep < 50; ++rep) {
            const Configuration x = random_config(n, rng);
            CHECK(lyapunov_decay_check(p, x, 1e-5));
        }
    }
}

TEST_CASE("quadratic growth transverse to the diagonal") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n : {2, 3, 5}) {
        const ModelParams p(n, 0.8 * gamma_one(n));
        for (int rep = 0; rep < 1000; ++rep) {
            Configuration x_par = Configuration::Constant(n, u(rng));
            Configuration x_perp = random_config(n, rng);
            x_perp.array() -= x_perp.mean();
            CHECK(quadratic_growth_check(p, x_par, x_perp));
        }
    }
}

TEST_CASE("local drift is the negative local potential slope") {
    for (double xi : {-1.4, -0.5, 0.0, 0.3, 1.2}) {
        CHECK(local_drift(xi) == doctest::Approx(xi - xi * xi * xi).epsilon(1e-15));
        const double h = 1e-7;
        const double fd = -(local_potential(xi + h) - local_potential(xi - h)) / (2.0 * h);
        CHECK(local_drift(xi) == doctest::Approx(fd).epsilon(1e-6));
    }
}

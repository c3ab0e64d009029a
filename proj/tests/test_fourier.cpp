#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ring/fourier.hpp"

#include <random>

using namespace ring;

namespace {

Configuration random_config(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    Configuration x(n);
    for (int i = 0; i < n; ++i) x[i] = u(rng);
    return x;
}

} // namespace

TEST_CASE("round trip") {
    std::mt19937_64 rng(3);
    for (int n : {2, 3, 4, 8, 17}) {
        const Configuration x = random_config(n, rng);
        const FourierState y = forward(x);
        CHECK(y.reality_defect() < 1e-12);
        const Configuration back = inverse(y);
        CHECK((back - x).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("parseval with the 1/N-normalised transform") {
    std::mt19937_64 rng(9);
    const int n = 6;
    const Configuration x = random_config(n, rng);
    const FourierState y = forward(x);
    const double lhs = x.squaredNorm() / n;
    double rhs = 0.0;
    for (int k = 0; k < n; ++k) rhs += std::norm(y.modes[k]);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("potential agrees in both representations") {
    std::mt19937_64 rng(21);
    for (int n : {2, 3, 5, 9}) {
        const ModelParams p(n, 0.44);
        for (int rep = 0; rep < 20; ++rep) {
            const Configuration x = random_config(n, rng);
            const double direct = potential(p, x);
            const double viaModes = fourier_potential(p, forward(x));
            CHECK(std::abs(direct - viaModes) < 1e-10 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("drift agrees in both representations") {
    std::mt19937_64 rng(33);
    for (int n : {2, 4, 7}) {
        const ModelParams p(n, 0.6);
        for (int rep = 0; rep < 20; ++rep) {
            const Configuration x = random_config(n, rng);
            const FourierState dy = fourier_drift(p, forward(x));
            const Configuration lhs = inverse(dy);
            const Configuration rhs = -gradient(p, x);
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("direct and transform-based cubic sums agree") {
    std::mt19937_64 rng(55);
    for (int n : {3, 8, 16}) {
        const ModelParams p(n, 0.5);
        const FourierState y = forward(random_config(n, rng));
        const FourierState a = fourier_drift_direct(p, y);
        const FourierState b = fourier_drift_fast(p, y);
        CHECK((a.modes - b.modes).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("mode action matches the configuration action") {
    std::mt19937_64 rng(77);
    for (int n : {3, 4, 6}) {
        const Configuration x = random_config(n, rng);
        for (const auto& g : group_elements(n)) {
            const FourierState lhs = symmetry_on_modes(g, forward(x));
            const FourierState rhs = forward(apply_symmetry(g, x));
            CHECK((lhs.modes - rhs.modes).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("drift is equivariant on modes") {
    std::mt19937_64 rng(99);
    const int n = 5;
    const ModelParams p(n, 0.35);
    const FourierState y = forward(random_config(n, rng));
    for (const auto& g : group_elements(n)) {
        const FourierState lhs = fourier_drift(p, symmetry_on_modes(g, y));
        const FourierState rhs = symmetry_on_modes(g, fourier_drift(p, y));
        CHECK((lhs.modes - rhs.modes).cwiseAbs().maxCoeff() < 1e-11);
    }
}

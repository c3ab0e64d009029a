#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ring/sde.hpp"

#include <cmath>

using namespace ring;

TEST_CASE("noise streams are reproducible and decorrelated") {
    NoiseStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    int identical_c = 0, identical_d = 0;
    for (int i = 0; i < 1000; ++i) {
        const double va = a.normal();
        CHECK(va == b.normal());
        if (va == c.normal()) ++identical_c;
        if (va == d.normal()) ++identical_d;
    }
    CHECK(identical_c < 5);
    CHECK(identical_d < 5);
}

TEST_CASE("uniform draws live strictly inside the unit interval") {
    NoiseStream s(1, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 3e-3);
}

TEST_CASE("normal moments") {
    NoiseStream s(123, 5);
    const int n = 2000000;
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        m1 += z;
        m2 += z * z;
        m3 += z * z * z;
        m4 += z * z * z * z;
    }
    m1 /= n;
    m2 /= n;
    m3 /= n;
    m4 /= n;
    CHECK(std::abs(m1) < 5e-3);
    CHECK(std::abs(m2 - 1.0) < 5e-3);
    CHECK(std::abs(m3) < 2e-2);
    CHECK(std::abs(m4 - 3.0) < 5e-2);
}

TEST_CASE("step size respects the noise scale") {
    const SdeParams a(ModelParams(2, 0.4), 0.5, 1);
    CHECK(a.dt == doctest::Approx(1e-3).epsilon(1e-12));
    const SdeParams b(ModelParams(2, 0.4), 0.05, 1);
    CHECK(b.dt == doctest::Approx(0.05 * 0.05 / 4.0).epsilon(1e-12));
}

TEST_CASE("drift part of the step is the negative gradient") {
    const ModelParams p(5, 0.33);
    SdeParams s(p, 0.3, 9);
    Configuration x(5);
    x << 0.4, -1.1, 0.2, 0.9, -0.3;
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(5);
    const Configuration stepped = em_step(s, x, zero);
    const Configuration expected = x - s.dt * gradient(p, x);
    CHECK((stepped - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("the step commutes bitwise with the ring symmetries") {
    const ModelParams p(6, 0.48);
    SdeParams s(p, 0.4, 3);
    Configuration x(6);
    x << 0.3, -0.8, 1.2, 0.05, -1.4, 0.66;
    Eigen::VectorXd g(6);
    g << 0.9, -0.2, 0.11, -1.3, 0.45, 2.1;
    for (const auto& elem : group_elements(6)) {
        // the noise vector transforms exactly like the state
        const Eigen::VectorXd gg = apply_symmetry(elem, g);
        const Configuration lhs = em_step(s, apply_symmetry(elem, x), gg);
        const Configuration rhs = apply_symmetry(elem, em_step(s, x, g));
        for (int i = 0; i < 6; ++i) CHECK(lhs[i] == rhs[i]);
    }
}

TEST_CASE("hitting spec validation") {
    HittingSpec ok;
    CHECK_NOTHROW(ok.validate());
    HittingSpec bad;
    bad.r_small = 0.4;
    bad.r_large = 0.1;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("deterministic relaxation hits the nearby minimum") {
    // tiny noise: the path slides down to I- and stays, so the first hit of
    // I- is almost immediate and never censored
    SdeParams s(ModelParams(2, 0.3), 0.02, 11, 100.0);
    Configuration x0(2);
    x0 << -0.8, -0.9;
    const HitResult r = first_hit(s, HittingSpec{}, x0, Target::i_minus);
    CHECK_FALSE(r.censored);
    CHECK(r.time < 10.0);
}

TEST_CASE("conditioned return statistics are consistent") {
    SdeParams s(ModelParams(2, 0.6), 0.45, 21, 2000.0);
    const PassageStats stats = first_return_conditioned(s, HittingSpec{}, 60);
    CHECK(stats.trials == 60);
    CHECK(stats.successes + stats.returns + stats.censored == 60);
    CHECK(stats.successes + stats.returns > 0);
    if (stats.successes > 0) {
        CHECK(stats.fraction_origin >= 0.0);
        CHECK(stats.fraction_origin <= 1.0);
    }
}

TEST_CASE("expected quadratic coefficient by ring size") {
    CHECK(barrier_consistency(2, {0.05}).expected_c == doctest::Approx(0.25));
    CHECK(barrier_consistency(4, {0.05}).expected_c == doctest::Approx(0.25));
    CHECK(barrier_consistency(5, {0.05}).expected_c == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("a-orbit points exist only below threshold") {
    CHECK(a_orbit_points(ModelParams(2, 0.6)).empty());
    const auto pts = a_orbit_points(ModelParams(2, 0.4));
    CHECK(pts.size() == 2);
    for (const auto& c : pts) CHECK(gradient(ModelParams(2, 0.4), c).cwiseAbs().maxCoeff() < 1e-9);
}

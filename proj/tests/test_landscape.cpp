#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ring/landscape.hpp"

#include <cmath>
#include <set>

using namespace ring;

TEST_CASE("weak coupling counts") {
    CHECK(find_stationary_points(ModelParams(2, 0.2)).count() == 9);
    CHECK(find_stationary_points(ModelParams(3, 0.2)).count() == 27);
    CHECK(find_stationary_points(ModelParams(4, 0.05)).count() == 81);
}

TEST_CASE("only three points above threshold") {
    for (int n : {2, 3, 4, 6}) {
        const ModelParams p(n, 1.1 * gamma_one(n));
        const StationaryPointSet s = find_stationary_points(p);
        CHECK(s.count() == 3);
        CHECK(s.count_index(0) == 2);  // I+-
        CHECK(s.count_index(1) == 1);  // O
    }
}

TEST_CASE("closed-form agreement for two particles") {
    for (double gamma : {0.05, 0.2, 0.45}) {
        const ModelParams p(2, gamma);
        const StationaryPointSet s = find_stationary_points(p);
        for (const auto& op : n2_oracle(gamma)) {
            const int idx = s.find(op.coords, 1e-5);
            REQUIRE(idx >= 0);
            const StationaryPoint& pt = s.points[idx];
            CHECK((pt.coords - op.coords).cwiseAbs().maxCoeff() < 1e-8);
            CHECK(std::abs(pt.value - op.value) < 1e-8);
            CHECK(pt.saddle_index() == op.saddle_index);
        }
    }
}

TEST_CASE("closed-form agreement for three particles") {
    for (double gamma : {0.1, 0.2, 0.26}) {
        const ModelParams p(3, gamma);
        const StationaryPointSet s = find_stationary_points(p);
        const N3Oracle oracle = n3_oracle(gamma);
        CHECK(oracle.cubic_real_roots == 3);
        for (const auto& op : oracle.points) {
            const int idx = s.find(op.coords, 1e-5);
            REQUIRE(idx >= 0);
            const StationaryPoint& pt = s.points[idx];
            CHECK((pt.coords - op.coords).cwiseAbs().maxCoeff() < 1e-8);
            CHECK(std::abs(pt.value - op.value) < 1e-8);
            CHECK(pt.saddle_index() == op.saddle_index);
        }
    }
}

TEST_CASE("seed-grid and continuation enumerations agree") {
    for (double gamma : {0.15, 0.3}) {
        const ModelParams p(3, gamma);
        EnumerationOptions cont;
        cont.strategy = SeedStrategy::continuation;
        const StationaryPointSet a = find_stationary_points(p);
        const StationaryPointSet b = find_stationary_points(p, cont);
        REQUIRE(a.count() == b.count());
        for (const auto& pt : a.points) CHECK(b.find(pt.coords, 1e-6) >= 0);
    }
}

TEST_CASE("points are distinct and residuals tiny") {
    const ModelParams p(4, 0.15);
    const StationaryPointSet s = find_stationary_points(p);
    for (int i = 0; i < s.count(); ++i) {
        CHECK(s.points[i].residual < 1e-9);
        for (int j = i + 1; j < s.count(); ++j)
            CHECK((s.points[i].coords - s.points[j].coords).cwiseAbs().maxCoeff() > 1e-6);
    }
    // orbits partition the set: every group image of a point is in the set
    for (const auto& pt : s.points)
        for (const auto& img : orbit_of(p, pt.coords)) CHECK(s.find(img, 1e-6) >= 0);
}

TEST_CASE("transition graph above threshold has a single gate") {
    const ModelParams p(2, 0.6);
    const StationaryPointSet s = find_stationary_points(p);
    const TransitionGraph g = connect_saddles(p, s);
    REQUIRE(g.minima.size() == 2);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].saddle.coords.cwiseAbs().maxCoeff() < 1e-8);
    CHECK(raw_barrier(p, g) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(barrier_height(p, g) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("weak coupling audit for four particles") {
    const WeakCouplingAudit audit = weak_coupling_audit(ModelParams(4, 0.05));
    CHECK(audit.count == 81);
    CHECK(audit.count_is_3_to_n);
    CHECK(audit.first_order_ok);
    CHECK(audit.ambiguous_matches == 0);
    CHECK(audit.droplet_path_ok);
    // droplet barrier: 1/4 + 3 gamma / 2 to first order
    CHECK(std::abs(audit.droplet_barrier - (0.25 + 1.5 * 0.05)) < 0.01);
}

TEST_CASE("exact desynchronised branch for four particles") {
    const ModelParams p(4, 0.92);
    const DesyncPrediction pred = desync_predictions(p);
    CHECK(pred.expected_count == 11);
    Configuration exact(4);
    const double a = std::sqrt(1.0 - 0.92);
    exact << a, a, -a, -a;
    bool match = false;
    for (const auto& img : orbit_of(p, exact))
        if ((img - pred.a_point).cwiseAbs().maxCoeff() < 1e-10) match = true;
    CHECK(match);
    CHECK(gradient(p, exact).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("bifurcation scan finds the two-particle events") {
    const BifurcationDiagram d = scan_bifurcations(2, 0.25, 0.55, 0.01);
    REQUIRE(d.events.size() == 2);
    CHECK(std::abs(d.events[0].gamma_mid() - 1.0 / 3.0) < 1e-4);
    CHECK(std::abs(d.events[1].gamma_mid() - 0.5) < 1e-4);
    CHECK(d.events[0].count_before == 9);
    CHECK(d.events[1].count_after == 3);
}

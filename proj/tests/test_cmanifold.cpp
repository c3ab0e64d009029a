#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ring/cmanifold.hpp"
#include "ring/landscape.hpp"
#include "ring/newton.hpp"

#include <cmath>

using namespace ring;

TEST_CASE("structural support of the coefficient table") {
    const CmTable t = compute_h_table(6);
    CHECK(t.at(1, 0).value == 1.0);
    CHECK(t.at(0, 1).value == 1.0);
    CHECK(t.at(0, 0).value == 0.0);
    // entries with even total degree vanish identically
    for (const auto& [key, entry] : t.h)
        if ((key.first + key.second) % 2 == 0) CHECK(entry.value == 0.0);
}

TEST_CASE("known low-order coefficients") {
    const CmTable t6 = compute_h_table(6);
    CHECK(std::abs(t6.at(0, 3).value - (-1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(compute_c(t6, 2, 1).value - 3.0) < 1e-12);

    const CmTable t5 = compute_h_table(5);
    CHECK(std::abs(compute_c(t5, 2, 1).value - 3.0) < 1e-12);

    const CmTable t4 = compute_h_table(4);
    CHECK(std::abs(compute_c(t4, 0, 3).value - 1.0) < 1e-12);
}

TEST_CASE("double and extended precision agree") {
    const CmTable a = compute_h_table(5, 0, Precision::plain);
    const CmTable b = compute_h_table(5, 0, Precision::extended);
    for (const auto& [key, entry] : a.h) {
        const CmEntry other = b.at(key.first, key.second);
        const double scale = std::max(1.0, std::abs(entry.value));
        CHECK(std::abs(entry.value - other.value) / scale < 1e-9);
    }
}

TEST_CASE("leading angular signs alternate with the ring parity") {
    const AngularCoefficient c4 = leading_angular_coefficient(4);
    CHECK(c4.sign == SignCert::positive);
    CHECK(c4.order == 2);

    const AngularCoefficient c6 = leading_angular_coefficient(6);
    CHECK(c6.sign == SignCert::negative);
    CHECK(c6.order == 4);

    const AngularCoefficient c5 = leading_angular_coefficient(5);
    CHECK(c5.sign == SignCert::positive);
    CHECK(c5.order == 8);
}

TEST_CASE("odd sign survey certifies the small cases") {
    const auto reports = conjecture_check(7);
    REQUIRE(reports.size() == 3);  // N = 3, 5, 7
    for (const auto& rep : reports) {
        CHECK(rep.lemma_range_ok);
        CHECK(rep.c_sign == SignCert::positive);
        CHECK(rep.tail_matches_conjecture);
    }
}

TEST_CASE("reduced dynamics exposes the certified angular term") {
    const ReducedDynamics rd = reduced_dynamics(6);
    CHECK(rd.angular_order == 4);
    CHECK(rd.angular_sign == SignCert::negative);
    // cubic radial coefficient comes from c_21
    REQUIRE(rd.radial_coeffs.count(3) == 1);
    CHECK(std::abs(rd.radial_coeffs.at(3) + 3.0) < 1e-12);
}

TEST_CASE("onset prediction lands on true stationary points") {
    const int n = 6;
    const double lambda1 = 0.05;
    const OnsetPrediction pred = predict_onset(n, lambda1);
    CHECK(pred.certified);
    CHECK(pred.r1 == doctest::Approx(std::sqrt(lambda1 / 3.0)).epsilon(1e-12));
    CHECK(static_cast<int>(pred.angles.size()) == 2 * n);

    // lambda_1 = 1 - gamma/gamma_1, so the coupling is (1 - lambda1) gamma_1
    const ModelParams q(n, (1.0 - lambda1) * gamma_one(n));
    auto refined = newton_refine(q, pred.a_representative);
    REQUIRE(refined.has_value());
    const double amp = pred.a_representative.cwiseAbs().maxCoeff();
    CHECK((*refined - pred.a_representative).cwiseAbs().maxCoeff() < 0.15 * amp);
    const StationaryPoint sp = classify(q, *refined);
    CHECK(sp.saddle_index() == 1);

    auto refined_b = newton_refine(q, pred.b_representative);
    REQUIRE(refined_b.has_value());
    const StationaryPoint sb = classify(q, *refined_b);
    CHECK(sb.saddle_index() == 2);
}

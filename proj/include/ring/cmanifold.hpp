#pragma once

// Centre-manifold expansion at the desynchronisation threshold: the coefficient
// table h_{nm} (evaluated at lambda_1 = 0), the cubic-sum coefficients c_{nm},
// the leading angular coefficient with sign certification, the odd-N sign
// survey, and the onset prediction mapping (r_1, phi_1) back to configurations.

#include "ring/model.hpp"

#include <map>
#include <utility>
#include <vector>

namespace ring {

enum class Precision { plain, extended };

// value together with a heuristic propagated rounding bound
struct CmEntry {
    double value = 0.0;
    double err = 0.0;
};

struct CmTable {
    int n_particles = 0;
    int cutoff = 0;                 // K: entries of total degree < K are filled
    Precision precision = Precision::plain;
    std::map<std::pair<int, int>, CmEntry> h;
    OriginSpectrum lambda;          // spectrum at gamma = gamma_1

    // 0 for structurally-zero entries; throws if a needed entry is unfilled
    CmEntry at(int n, int m) const;
};

// cutoff defaults to 2N when passed as 0
CmTable compute_h_table(int n, int cutoff = 0, Precision prec = Precision::plain);

CmEntry compute_c(const CmTable& table, int n_idx, int m_idx);

enum class SignCert { positive, negative, uncertified };

struct AngularCoefficient {
    double value = 0.0;
    SignCert sign = SignCert::uncertified;
    int order = 0;                  // N-2 for even N, 2N-2 for odd N
    Precision precision_used = Precision::plain;
};

// c_{0,N-1} for even N, c_{0,2N-1} for odd N; escalates precision until the
// magnitude exceeds 1e3 times the propagated rounding bound
AngularCoefficient leading_angular_coefficient(int n, Precision start = Precision::plain);

struct OddSignReport {
    int n = 0;
    bool lemma_range_ok = false;          // sign(h_{0,2l+1}) = (-1)^l, l <= (N-1)/2 - 1
    std::vector<int> tail_signs;          // signs for l = (N-1)/2 .. N-2
    bool tail_matches_conjecture = false; // == (-1)^{l+1}
    double c_leading = 0.0;               // c_{0,2N-1}
    SignCert c_sign = SignCert::uncertified;
    Precision precision_used = Precision::plain;
};

std::vector<OddSignReport> conjecture_check(int n_max, Precision start = Precision::plain);

struct ReducedDynamics {
    std::map<int, double> radial_coeffs;  // degree -> coefficient in the r_1 equation
    double angular_coeff = 0.0;
    int angular_order = 0;
    SignCert angular_sign = SignCert::uncertified;
};

ReducedDynamics reduced_dynamics(int n, Precision prec = Precision::plain);

struct OnsetPrediction {
    double r1 = 0.0;                      // generic radius sqrt(lambda_1 / 3)
    std::vector<double> angles;           // stationary phi_1 values
    std::vector<int> saddle_index;        // predicted full-space index per angle
    Configuration a_representative;       // 1-saddle family member
    Configuration b_representative;       // 2-saddle family member
    bool certified = true;                // leading angular sign certified
};

OnsetPrediction predict_onset(int n, double lambda1);

} // namespace ring

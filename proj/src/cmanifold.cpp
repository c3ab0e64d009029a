#include "ring/cmanifold.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ring {

namespace {

using BigFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>>;

// general entries (n >= 1, or row 0 outside the simplified recursion range) are
// filled up to this total degree; the c-sums used downstream stay below it
constexpr int kGeneralDegree = 9;

int mod_n(int k, int n) { return ((k % n) + n) % n; }

// residue class of the housing mode; base classes +1/-1 hold the coordinate
// itself, so their higher-degree coefficients vanish by convention
template <typename T>
bool structural_value(int N, int n, int m, T& out) {
    out = T(0);
    if (n < 0 || m < 0) return true;
    if ((n + m) % 2 == 0) return true;                 // C-symmetry
    const int r = mod_n(n - m, N);
    if (r == 1) {
        out = (n == 1 && m == 0) ? T(1) : T(0);
        return true;
    }
    if (r == N - 1) {
        out = (n == 0 && m == 1) ? T(1) : T(0);
        return true;
    }
    return false;
}

template <typename T>
struct Tracked {
    T val = T(0);
    T err = T(0);
};

template <typename T>
struct Filler {
    int N;
    int K;
    std::vector<T> lambda;                              // at gamma = gamma_1
    std::map<std::pair<int, int>, Tracked<T>> h;        // canonical key: n <= m
    T eps = std::numeric_limits<T>::epsilon();

    Filler(int n_particles, int cutoff) : N(n_particles), K(cutoff) {
        using std::acos;
        using std::cos;
        const T pi = acos(T(-1));
        const T g1 = T(1) / (T(1) - cos(2 * pi / N));
        lambda.resize(N);
        for (int k = 0; k < N; ++k) lambda[k] = T(1) - g1 * (T(1) - cos(2 * pi * k / N));
    }

    Tracked<T> get(int n, int m, int current_degree) const {
        T sv;
        if (structural_value(N, n, m, sv)) return {sv, T(0)};
        if (n + m >= current_degree)
            throw std::logic_error("cm recursion referenced an entry of equal or higher degree");
        auto it = h.find({std::min(n, m), std::max(n, m)});
        if (it == h.end())
            throw std::runtime_error("cm table cutoff insufficient for requested coefficient");
        return it->second;
    }

    void acc(Tracked<T>& sum, const Tracked<T>& a, const Tracked<T>& b, const Tracked<T>& c,
             T scale = T(1)) const {
        using std::abs;
        const T term = scale * a.val * b.val * c.val;
        const T terr = scale * (abs(a.err * b.val * c.val) + abs(a.val * b.err * c.val) +
                                abs(a.val * b.val * c.err)) +
                       3 * eps * abs(term);
        sum.val += term;
        sum.err += terr + eps * abs(sum.val);
    }

    void acc4(Tracked<T>& sum, const Tracked<T>& a, const Tracked<T>& b, const Tracked<T>& c,
              const Tracked<T>& d, T scale) const {
        using std::abs;
        const T term = scale * a.val * b.val * c.val * d.val;
        const T terr =
            scale * (abs(a.err * b.val * c.val * d.val) + abs(a.val * b.err * c.val * d.val) +
                     abs(a.val * b.val * c.err * d.val) + abs(a.val * b.val * c.val * d.err)) +
            4 * eps * abs(term);
        sum.val += term;
        sum.err += terr + eps * abs(sum.val);
    }

    // full invariance recursion for h_{nm}
    Tracked<T> solve_general(int n, int m) const {
        const int d = n + m;
        Tracked<T> rhs;
        for (int n1 = 0; n1 <= n; ++n1)
            for (int n2 = 0; n2 + n1 <= n; ++n2)
                for (int m1 = 0; m1 <= m; ++m1)
                    for (int m2 = 0; m2 + m1 <= m; ++m2) {
                        // factors of full degree d pair with h_00 = 0
                        if (n1 + m1 >= d || n2 + m2 >= d || (n - n1 - n2) + (m - m1 - m2) >= d)
                            continue;
                        acc(rhs, get(n1, m1, d), get(n2, m2, d),
                            get(n - n1 - n2, m - m1 - m2, d));
                    }
        // terms where the extra factor (or one of the triple) reaches the
        // current degree always carry an h_00 = 0 factor; skip them so every
        // genuine reference has strictly lower degree
        for (int u = 1; u <= n + 1; ++u)
            for (int v = 0; v <= m && u + v < d; ++v) {
                if (mod_n(u - v - (n - m), N) != 0) continue;
                const Tracked<T> huv = get(u, v, d);
                if (huv.val == 0 && huv.err == 0) continue;
                const int ns = n + 1 - u, ms = m - v;
                for (int n1 = 0; n1 <= ns; ++n1)
                    for (int n2 = 0; n2 + n1 <= ns; ++n2)
                        for (int m1 = 0; m1 <= ms; ++m1)
                            for (int m2 = 0; m2 + m1 <= ms; ++m2) {
                                if (n1 + m1 >= d || n2 + m2 >= d ||
                                    (ns - n1 - n2) + (ms - m1 - m2) >= d)
                                    continue;
                                acc4(rhs, get(n1, m1, d), get(n2, m2, d),
                                     get(ns - n1 - n2, ms - m1 - m2, d), huv, T(-u));
                            }
            }
        for (int v = 1; v <= m + 1; ++v)
            for (int u = 0; u <= n && u + v < d; ++u) {
                if (mod_n(u - v - (n - m), N) != 0) continue;
                const Tracked<T> huv = get(u, v, d);
                if (huv.val == 0 && huv.err == 0) continue;
                const int ns = m + 1 - v, ms = n - u;
                for (int n1 = 0; n1 <= ns; ++n1)
                    for (int n2 = 0; n2 + n1 <= ns; ++n2)
                        for (int m1 = 0; m1 <= ms; ++m1)
                            for (int m2 = 0; m2 + m1 <= ms; ++m2) {
                                if (n1 + m1 >= d || n2 + m2 >= d ||
                                    (ns - n1 - n2) + (ms - m1 - m2) >= d)
                                    continue;
                                acc4(rhs, get(n1, m1, d), get(n2, m2, d),
                                     get(ns - n1 - n2, ms - m1 - m2, d), huv, T(-v));
                            }
            }
        using std::abs;
        const T lam = lambda[mod_n(n - m, N)];
        if (abs(lam) < T(1e-9))
            throw std::logic_error("cm recursion hit a vanishing eigenvalue");
        Tracked<T> out;
        out.val = rhs.val / lam;
        out.err = rhs.err / abs(lam) + eps * abs(out.val);
        return out;
    }

    // simplified recursion for h_{0m} in its validity range
    Tracked<T> solve_row0(int m) const {
        using std::abs;
        Tracked<T> rhs;
        for (int m1 = 1; m1 <= m - 2; m1 += 2)
            for (int m2 = 1; m1 + m2 <= m - 1; m2 += 2)
                acc(rhs, get(0, m1, m), get(0, m2, m), get(0, m - m1 - m2, m));
        const T lam = lambda[mod_n(m, N)];
        if (abs(lam) < T(1e-9))
            throw std::logic_error("cm recursion hit a vanishing eigenvalue");
        Tracked<T> out;
        out.val = rhs.val / lam;
        out.err = rhs.err / abs(lam) + eps * abs(out.val);
        return out;
    }

    void fill() {
        const int simplified_max = (N % 2 == 0) ? N - 3 : 2 * N - 3;
        for (int d = 3; d < K; d += 2) {
            if (d <= kGeneralDegree) {
                for (int n = 0; n <= d; ++n) {
                    const int m = d - n;
                    if (n > m) break;                   // symmetric half
                    T sv;
                    if (structural_value(N, n, m, sv)) continue;
                    h[{n, m}] = solve_general(n, m);
                }
            } else if (d <= simplified_max) {
                T sv;
                if (!structural_value(N, 0, d, sv)) h[{0, d}] = solve_row0(d);
            }
        }
    }
};

template <typename T>
CmTable to_table(const Filler<T>& f, Precision prec) {
    CmTable t;
    t.n_particles = f.N;
    t.cutoff = f.K;
    t.precision = prec;
    t.lambda = origin_spectrum(ModelParams(f.N, gamma_one(f.N)));
    for (const auto& [key, tr] : f.h)
        t.h[key] = {static_cast<double>(tr.val), static_cast<double>(tr.err)};
    return t;
}

void check_sign_lemmas(const CmTable& t) {
    const int N = t.n_particles;
    const int bound = (N % 2 == 0) ? N - 3 : 2 * ((N - 1) / 2 - 1) + 1;
    for (int l = 1; 2 * l + 1 <= bound; ++l) {
        const CmEntry e = t.at(0, 2 * l + 1);
        const double expected = (l % 2 == 0) ? 1.0 : -1.0;
        if (e.value * expected <= 0)
            throw std::logic_error("sign alternation of h_{0,2l+1} violated");
    }
}

} // namespace

CmEntry CmTable::at(int n, int m) const {
    double sv;
    if (structural_value(n_particles, n, m, sv)) return {sv, 0.0};
    auto it = h.find({std::min(n, m), std::max(n, m)});
    if (it == h.end())
        throw std::runtime_error("cm table cutoff insufficient for requested coefficient");
    return it->second;
}

CmTable compute_h_table(int n, int cutoff, Precision prec) {
    if (n < 3) throw std::invalid_argument("compute_h_table: n >= 3 required");
    if (cutoff == 0) cutoff = 2 * n;
    if (cutoff > 2 * n) throw std::invalid_argument("compute_h_table: cutoff <= 2n required");
    CmTable t;
    if (prec == Precision::plain) {
        Filler<double> f(n, cutoff);
        f.fill();
        t = to_table(f, prec);
    } else {
        Filler<BigFloat> f(n, cutoff);
        f.fill();
        t = to_table(f, prec);
    }
    check_sign_lemmas(t);
    return t;
}

CmEntry compute_c(const CmTable& table, int n_idx, int m_idx) {
    if (n_idx + m_idx >= table.cutoff)
        throw std::runtime_error("compute_c: cutoff insufficient");
    if ((n_idx + m_idx) % 2 == 0) return {0.0, 0.0};
    CmEntry sum{0.0, 0.0};
    const double eps = std::numeric_limits<double>::epsilon();
    for (int n1 = 0; n1 <= n_idx; ++n1)
        for (int n2 = 0; n2 + n1 <= n_idx; ++n2)
            for (int m1 = 0; m1 <= m_idx; ++m1)
                for (int m2 = 0; m2 + m1 <= m_idx; ++m2) {
                    const CmEntry a = table.at(n1, m1);
                    const CmEntry b = table.at(n2, m2);
                    const CmEntry c = table.at(n_idx - n1 - n2, m_idx - m1 - m2);
                    const double term = a.value * b.value * c.value;
                    sum.value += term;
                    sum.err += std::abs(a.err * b.value * c.value) +
                               std::abs(a.value * b.err * c.value) +
                               std::abs(a.value * b.value * c.err) + 4 * eps * std::abs(term);
                }
    sum.err += eps * std::abs(sum.value);
    return sum;
}

namespace {

SignCert certify(const CmEntry& e) {
    if (std::abs(e.value) > 1e3 * e.err && e.value != 0.0)
        return e.value > 0 ? SignCert::positive : SignCert::negative;
    return SignCert::uncertified;
}

} // namespace

AngularCoefficient leading_angular_coefficient(int n, Precision start) {
    if (n < 3) throw std::invalid_argument("leading_angular_coefficient: n >= 3 required");
    const bool even = n % 2 == 0;
    const int m_idx = even ? n - 1 : 2 * n - 1;

    AngularCoefficient out;
    out.order = m_idx - 1;
    Precision prec = start;
    for (;;) {
        const CmTable t = compute_h_table(n, 2 * n, prec);
        const CmEntry c = compute_c(t, 0, m_idx);
        out.value = c.value;
        out.sign = certify(c);
        out.precision_used = prec;
        if (out.sign != SignCert::uncertified || prec == Precision::extended) break;
        prec = Precision::extended;
    }
    if (even && out.sign != SignCert::uncertified) {
        const SignCert expected = (n % 4 == 0) ? SignCert::positive : SignCert::negative;
        if (out.sign != expected)
            throw std::logic_error("even-N angular coefficient sign contradicts theory");
    }
    return out;
}

std::vector<OddSignReport> conjecture_check(int n_max, Precision start) {
    if (n_max > 101) throw std::invalid_argument("conjecture_check: n_max <= 101");
    std::vector<OddSignReport> reports;
    for (int n = 3; n <= n_max; n += 2) {
        OddSignReport rep;
        rep.n = n;
        Precision prec = start;
        for (;;) {
            const CmTable t = compute_h_table(n, 2 * n, prec);
            rep.precision_used = prec;
            rep.lemma_range_ok = true;                   // enforced by compute_h_table
            rep.tail_signs.clear();
            rep.tail_matches_conjecture = true;
            for (int l = (n - 1) / 2; l <= n - 2; ++l) {
                const CmEntry e = t.at(0, 2 * l + 1);
                const int sign = e.value > 0 ? 1 : (e.value < 0 ? -1 : 0);
                rep.tail_signs.push_back(sign);
                const int conj = (l % 2 == 0) ? -1 : 1;  // (-1)^{l+1}
                if (sign != conj) rep.tail_matches_conjecture = false;
            }
            const CmEntry c = compute_c(t, 0, 2 * n - 1);
            rep.c_leading = c.value;
            rep.c_sign = certify(c);
            if (rep.c_sign != SignCert::uncertified || prec == Precision::extended) break;
            prec = Precision::extended;
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

ReducedDynamics reduced_dynamics(int n, Precision prec) {
    ReducedDynamics rd;
    const CmTable t = compute_h_table(n, 2 * n, prec);
    // r' = lambda_1 r - c_21 r^3 + ..., and c_21 = 3 for every N
    rd.radial_coeffs[3] = -compute_c(t, 2, 1).value;
    if (n == 4) {
        const CmEntry c03 = compute_c(t, 0, 3);
        rd.angular_coeff = c03.value;
        rd.angular_order = 2;
        rd.angular_sign = certify(c03);
    } else {
        const AngularCoefficient a = leading_angular_coefficient(n, prec);
        rd.angular_coeff = a.value;
        rd.angular_order = a.order;
        rd.angular_sign = a.sign;
    }
    return rd;
}

OnsetPrediction predict_onset(int n, double lambda1) {
    if (!(lambda1 > 0.0 && lambda1 <= 0.1))
        throw std::invalid_argument("predict_onset: lambda1 in (0, 0.1] required");
    const ReducedDynamics rd = reduced_dynamics(n);

    OnsetPrediction pred;
    pred.certified = rd.angular_sign != SignCert::uncertified;
    pred.r1 = std::sqrt(lambda1 / 3.0);

    // phase equation is c sin(q phi); zeros at k pi / q, stable when c q cos < 0
    const int q = (n == 4) ? 4 : (n % 2 == 0 ? n : 2 * n);
    const double c = rd.angular_coeff;
    auto radius_at = [&](double phi) {
        if (n == 4) return std::sqrt(lambda1 / (3.0 + std::cos(4.0 * phi)));
        return pred.r1;
    };
    int first_stable = -1, first_unstable = -1;
    for (int k = 0; k < 2 * q; ++k) {
        const double phi = k * M_PI / q;
        pred.angles.push_back(phi);
        const bool stable = c * std::cos(q * phi) < 0;
        pred.saddle_index.push_back(stable ? 1 : 2);
        if (stable && first_stable < 0) first_stable = k;
        if (!stable && first_unstable < 0) first_unstable = k;
    }

    auto to_config = [&](double phi) {
        Configuration x(n);
        for (int j = 0; j < n; ++j)
            x[j] = 2.0 * radius_at(phi) * std::cos(2.0 * M_PI * j / n + phi);
        return x;
    };
    if (first_stable >= 0) pred.a_representative = to_config(first_stable * M_PI / q);
    if (first_unstable >= 0) pred.b_representative = to_config(first_unstable * M_PI / q);
    return pred;
}

} // namespace ring

#include "ring/symdyn.hpp"

#include "ring/newton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ring {

HenonLikeMap::HenonLikeMap(double gamma) : coupling(gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("HenonLikeMap: gamma > 0 required");
}

PlanePoint map_apply(const HenonLikeMap& m, const PlanePoint& pt) {
    const double x = pt[0], y = pt[1];
    return {2.0 * x - (2.0 / m.coupling) * local_drift(x) - y, x};
}

PlanePoint map_inverse(const HenonLikeMap& m, const PlanePoint& pt) {
    // H^{-1} = S o H o S with S(x,y) = (y,x)
    const PlanePoint swapped{pt[1], pt[0]};
    const PlanePoint image = map_apply(m, swapped);
    return {image[1], image[0]};
}

double map_g(const HenonLikeMap& m, double x) {
    return 2.0 * x - (2.0 / m.coupling) * local_drift(x) + 1.0;
}

double strip_turning_point(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("strip_turning_point: gamma in (0,1) required");
    return std::sqrt((1.0 - gamma) / 3.0);
}

namespace {

// inverse of g on the increasing branch [-1, -z0]
double g_minus_inverse(const HenonLikeMap& m, double y) {
    const double z0 = strip_turning_point(m.coupling);
    double lo = -1.0, hi = -z0;
    if (y < map_g(m, lo) - 1e-14 || y > map_g(m, hi) + 1e-14)
        throw std::domain_error("g_minus_inverse: value outside branch range");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (map_g(m, mid) < y) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

bool strip_condition(double gamma, StripVariant variant) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("strip_condition: gamma in (0,1) required");
    const HenonLikeMap m(gamma);
    const double z0 = strip_turning_point(gamma);
    const double peak = map_g(m, -z0);
    if (variant == StripVariant::basic) return peak >= 3.0;
    // the crossing point solves g(x) = 2 - z0 on the increasing branch right of
    // z0; the symmetry g(-x) = 2 - g(x) turns that into -g_-^{-1}(z0)
    if (z0 < -1.0 || z0 > peak) return false;
    return peak - 2.0 >= -g_minus_inverse(m, z0);
}

double improved_strip_threshold(double tol) {
    double lo = 0.2, hi = 0.3;
    if (!strip_condition(lo, StripVariant::improved) ||
        strip_condition(hi, StripVariant::improved))
        throw std::runtime_error("improved_strip_threshold: bracket failure");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (strip_condition(mid, StripVariant::improved)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

std::vector<SymbolWord> all_words(int n) {
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    std::vector<SymbolWord> words;
    words.reserve(total);
    for (long long code = 0; code < total; ++code) {
        SymbolWord w(n);
        long long c = code;
        for (int i = 0; i < n; ++i) {
            w[i] = static_cast<int>(c % 3) - 1;
            c /= 3;
        }
        words.push_back(std::move(w));
    }
    return words;
}

std::vector<PeriodicPoint> solve_words(double gamma, int n) {
    // anchor each word deep in the shift regime and continue its branch in
    // gamma; plain Newton from the lattice seeds jumps branches shortly
    // before a genuine collision, which would misplace the pruning onset
    const double base = std::min(gamma, 0.2);
    std::vector<double> ladder{base};
    while (ladder.back() < gamma - 1e-12)
        ladder.push_back(std::min(gamma, ladder.back() + 0.005));

    std::vector<PeriodicPoint> out;
    for (auto& w : all_words(n)) {
        PeriodicPoint pp;
        pp.word = w;
        Configuration x(n);
        for (int i = 0; i < n; ++i) x[i] = static_cast<double>(w[i]);
        bool alive = true;
        for (double g : ladder) {
            auto r = newton_refine(ModelParams(n, g), x);
            if (r && r->allFinite()) {
                x = *r;
            } else {
                alive = false;
                break;
            }
        }
        if (alive) {
            pp.config = x;
            pp.converged = true;
        }
        out.push_back(std::move(pp));
    }
    const ModelParams p(n, gamma);
    // collision scan: identical stationary points have identical potential, so
    // a value-sorted window comparison finds all duplicates
    const int count = static_cast<int>(out.size());
    std::vector<std::pair<double, int>> byval;
    for (int i = 0; i < count; ++i)
        if (out[i].converged) byval.emplace_back(potential(p, out[i].config), i);
    std::sort(byval.begin(), byval.end());
    for (size_t a = 0; a < byval.size(); ++a)
        for (size_t b = a + 1; b < byval.size(); ++b) {
            if (byval[b].first - byval[a].first > 1e-7) break;
            const auto& ca = out[byval[a].second].config;
            const auto& cb = out[byval[b].second].config;
            if ((ca - cb).array().abs().maxCoeff() <= 1e-6) {
                out[byval[a].second].collided = true;
                out[byval[b].second].collided = true;
            }
        }
    return out;
}

bool all_distinct(double gamma, int n, SymbolWord* lost) {
    auto pts = solve_words(gamma, n);
    for (const auto& pp : pts)
        if (!pp.converged || pp.collided) {
            if (lost) *lost = pp.word;
            return false;
        }
    return true;
}

} // namespace

std::vector<PeriodicPoint> periodic_points(double gamma, int n) {
    if (n < 1 || n > 10) throw std::invalid_argument("periodic_points: 1 <= n <= 10 required");
    if (!strip_condition(gamma, StripVariant::improved))
        throw std::invalid_argument("periodic_points: improved strip condition fails");
    if (n == 1) {
        // fixed points sit on the diagonal where the local drift vanishes
        std::vector<PeriodicPoint> out;
        for (int s = -1; s <= 1; ++s) {
            PeriodicPoint pp;
            pp.word = {s};
            pp.config = Configuration::Constant(1, static_cast<double>(s));
            pp.converged = true;
            out.push_back(std::move(pp));
        }
        return out;
    }
    auto pts = solve_words(gamma, n);
    for (const auto& pp : pts)
        if (!pp.converged || pp.collided)
            throw std::runtime_error("periodic_points: symbolic seed lost in the shift regime");
    return pts;
}

PruningReport pruning_probe(double gamma_min, double gamma_max, double step, int n) {
    if (n > 8) throw std::invalid_argument("pruning_probe: n <= 8 required");
    if (!(gamma_min > 0 && gamma_max > gamma_min && step > 0))
        throw std::invalid_argument("pruning_probe: bad gamma range");

    PruningReport rep;
    double prev = gamma_min;
    if (!all_distinct(gamma_min, n, &rep.lost_word)) {
        rep.loss_found = true;
        rep.first_loss_gamma = gamma_min;
        return rep;
    }
    for (double g = gamma_min + step; g <= gamma_max + 1e-12; g += step) {
        if (!all_distinct(g, n, &rep.lost_word)) {
            // refine the loss location
            double lo = prev, hi = g;
            while (hi - lo > 1e-5) {
                const double mid = 0.5 * (lo + hi);
                if (all_distinct(mid, n, nullptr)) lo = mid;
                else {
                    hi = mid;
                    all_distinct(mid, n, &rep.lost_word);
                }
            }
            rep.loss_found = true;
            rep.first_loss_gamma = hi;
            return rep;
        }
        prev = g;
    }
    return rep;
}

} // namespace ring

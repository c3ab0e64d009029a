// Stochastic acceptance gate: Arrhenius slopes and conditioned saddle-passage
// statistics. One line per criterion, nonzero exit on failure.

#include "ring/sde.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ring;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& label,
                   const std::function<bool(std::ostream&)>& body) {
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << " exception: " << e.what();
    }
    if (!ok) ++g_failures;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label
              << detail.str() << "\n"
              << std::flush;
}

const std::vector<double> kSigmaLadder = {0.5, 0.45, 0.4, 0.35};

struct SlopeCase {
    int n;
    double gamma;
    double lo, hi;
    double max_time;
    std::uint64_t seed;
};

double mean_hit_time(const SdeParams& s, int trials, std::uint64_t index_base) {
    const Configuration x0 = -Configuration::Ones(s.model.n_particles);
    double sum = 0.0;
    int count = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const HitResult r = first_hit(s, HittingSpec{}, x0, Target::i_plus, index_base + trial);
        if (!r.censored) {
            sum += r.time;
            ++count;
        }
    }
    if (count == 0) throw std::runtime_error("mean_hit_time: all trials censored");
    return sum / count;
}

bool arrhenius_slopes(std::ostream& out) {
    const std::vector<SlopeCase> cases = {
        {2, 0.6, 0.8, 1.2, 1e5, 1001},
        {2, 0.4, 0.75, 1.15, 1e5, 1002},
        {3, 1.0, 1.2, 1.8, 3e6, 1003},
    };
    bool ok = true;
    for (const auto& c : cases) {
        const SdeParams base(ModelParams(c.n, c.gamma), kSigmaLadder[0], c.seed, c.max_time);
        const TransitionStats stats = arrhenius_fit(base, kSigmaLadder, 230);
        for (const auto& pt : stats.points)
            if (pt.uncensored < 200) {
                ok = false;
                out << " N=" << c.n << " gamma=" << c.gamma << " sigma=" << pt.sigma
                    << " only " << pt.uncensored << " uncensored;";
            }
        if (!(stats.slope >= c.lo && stats.slope <= c.hi)) {
            ok = false;
            out << " N=" << c.n << " gamma=" << c.gamma << " slope " << stats.slope << ";";
        }

        // discretisation control at the cheapest rung
        SdeParams coarse(ModelParams(c.n, c.gamma), 0.5, c.seed + 7, 1e5);
        SdeParams fine = coarse;
        fine.dt *= 0.5;
        const double m1 = mean_hit_time(coarse, 400, 1u << 20);
        const double m2 = mean_hit_time(fine, 400, 1u << 21);
        const double shift = std::abs(std::log(m1) - std::log(m2));
        if (shift >= 0.05 * std::max(1.0, std::abs(std::log(m1)))) {
            ok = false;
            out << " N=" << c.n << " gamma=" << c.gamma << " dt control shift " << shift << ";";
        }
    }
    return ok;
}

struct PassageCase {
    int n;
    double gamma;
    double sigma;
    bool via_origin;     // otherwise via the 1-saddle orbit
    int batch_trials;
    int max_batches;
    std::uint64_t seed;
};

bool saddle_passage(std::ostream& out) {
    // the conditioned-passage limit is gated at the outer radius of the
    // hitting spec; at these sigma values the inner-radius fractions are still
    // far from their small-noise limit (see the ledger note on this check)
    const std::vector<PassageCase> cases = {
        {2, 0.6, 0.35, true, 10000, 100, 2001},
        {2, 0.4, 0.30, false, 30000, 100, 2002},
        {3, 0.4, 0.30, false, 30000, 1600, 2003},
    };
    bool ok = true;
    for (const auto& c : cases) {
        long long successes = 0, passes = 0, passes_o_narrow = 0;
        for (int batch = 0; batch < c.max_batches && successes < 150; ++batch) {
            const SdeParams s(ModelParams(c.n, c.gamma), c.sigma, c.seed + batch, 1e4);
            const PassageStats stats = first_return_conditioned(s, HittingSpec{}, c.batch_trials);
            successes += stats.successes;
            const double frac =
                c.via_origin ? stats.fraction_origin_wide : stats.fraction_a_orbit_wide;
            passes += std::llround(frac * stats.successes);
            passes_o_narrow += std::llround(stats.fraction_origin * stats.successes);
        }
        if (successes < 100) {
            ok = false;
            out << " N=" << c.n << " gamma=" << c.gamma << " only " << successes
                << " successes;";
            continue;
        }
        const double frac = static_cast<double>(passes) / successes;
        if (frac < 0.9) {
            ok = false;
            out << " N=" << c.n << " gamma=" << c.gamma << " passage fraction " << frac << " ("
                << passes << "/" << successes << ");";
        }
        // below threshold the origin is a 2-saddle and should rarely gate the
        // transition even at the inner radius
        if (!c.via_origin && passes_o_narrow * 2 > successes) {
            ok = false;
            out << " N=" << c.n << " gamma=" << c.gamma << " origin passage not rare ("
                << passes_o_narrow << "/" << successes << ");";
        }
    }
    return ok;
}

} // namespace

int main() {
    run_criterion(10, "arrhenius slopes", arrhenius_slopes);
    run_criterion(11, "saddle passage", saddle_passage);
    return g_failures == 0 ? 0 : 1;
}

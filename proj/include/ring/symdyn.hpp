#pragma once

// Planar map whose period-N orbits are the stationary configurations, strip
// conditions guaranteeing the full 3-symbol shift at weak coupling, and
// symbolic-seeded enumeration of periodic points.

#include "ring/model.hpp"

#include <array>
#include <optional>
#include <vector>

namespace ring {

struct HenonLikeMap {
    double coupling;

    explicit HenonLikeMap(double gamma);
};

using PlanePoint = std::array<double, 2>;

PlanePoint map_apply(const HenonLikeMap& m, const PlanePoint& pt);
PlanePoint map_inverse(const HenonLikeMap& m, const PlanePoint& pt);

// g(x) = 2x - 2 f(x)/gamma + 1 and the turning point z0 = sqrt((1-gamma)/3)
double map_g(const HenonLikeMap& m, double x);
double strip_turning_point(double gamma);

enum class StripVariant { basic, improved };

bool strip_condition(double gamma, StripVariant variant);

// threshold where the improved condition fails, by bisection
double improved_strip_threshold(double tol = 1e-6);

using SymbolWord = std::vector<int>;   // entries in {-1, 0, +1}

struct PeriodicPoint {
    SymbolWord word;
    Configuration config;
    bool converged = false;
    bool collided = false;             // landed on another word's orbit
};

std::vector<PeriodicPoint> periodic_points(double gamma, int n);

struct PruningReport {
    bool loss_found = false;
    double first_loss_gamma = 0.0;
    SymbolWord lost_word;
};

PruningReport pruning_probe(double gamma_min, double gamma_max, double step, int n);

} // namespace ring

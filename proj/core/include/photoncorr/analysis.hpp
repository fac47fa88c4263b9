#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "photoncorr/correlations.hpp"
#include "photoncorr/geometry.hpp"

namespace photoncorr {

struct SweepMeta {
    int n = 0;
    int m = 0;
    double theta1 = 0.0;
    double kd = 0.0;
    Route route = Route::closed_form;  // route actually used
};

// G^(m)(theta1, ..., theta1, theta2) sampled over an angle grid, raw and
// normalized to the curve maximum.
struct SweepResult {
    std::vector<double> angles;
    std::vector<double> values;
    std::vector<double> normalized;
    SweepMeta meta;
};

// Uniform grid of `points` angles over [lo, hi]; for symmetric ranges and odd
// counts the center point is exact (so theta2 = 0 rows land on 0.0, not 1e-17).
std::vector<double> uniform_grid(int points, double lo = -kHalfPi, double hi = kHalfPi);

// Inserts the angles where the grating pattern vanishes, sin(theta) =
// sin(theta1) + 2 pi q / (N kd), into the grid. A uniform grid can straddle
// these zeros for large N, which biases any sampled minimum.
std::vector<double> augment_with_pattern_zeros(std::vector<double> grid, const EmitterChain& chain,
                                               double theta1);

// Pointwise evaluation of G^(m) with m-1 detectors pinned at theta1 and the
// last swept over the grid. auto_select resolves to closed_form (the pattern
// always matches here) except for single-emitter chains, which fall back to
// the path route.
SweepResult sweep(const EmitterChain& chain, int m, double theta1, const std::vector<double>& grid,
                  Route route = Route::auto_select);

// Width of the half-maximum interval around the curve peak nearest theta1,
// with linear interpolation at the two crossings. The grid must resolve the
// peak (spacing well below the expected width) for the estimate to mean much.
double estimate_fwhm(const SweepResult& sweep);

// (max - min)/(max + min) over the sampled values.
double estimate_visibility(const SweepResult& sweep);

struct RouteWorstCase {
    double rel_discrepancy = 0.0;
    int n = 0;
    int m = 0;
    double kd = 0.0;
    std::vector<double> angles;
    std::string route_a;
    std::string route_b;
    double value_a = 0.0;
    double value_b = 0.0;
};

struct VerifyReport {
    int n_max = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
    int comparisons = 0;
    double max_rel_discrepancy = 0.0;
    bool pass = false;
    RouteWorstCase worst;
};

// Seeded random cross-check of the correlation routes: per trial one general
// detector tuple (paths vs operator vs naive-permanent paths) and, where the
// closed form applies, one (m-1) x theta1 + theta2 tuple comparing all routes.
// Failures are reported, not thrown.
VerifyReport verify_routes(int n_max, int trials, std::uint64_t seed);

}  // namespace photoncorr

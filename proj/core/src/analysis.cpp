#include "photoncorr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "photoncorr/errors.hpp"

namespace photoncorr {

namespace {

double g_value(const EmitterChain& chain, int m, double theta1, double theta2, Route route) {
    switch (route) {
        case Route::closed_form:
            return g_m_closed_form(chain.n_emitters(), m, theta1, theta2, chain.kd()).value;
        case Route::paths:
        case Route::field_operator: {
            std::vector<double> angles(static_cast<std::size_t>(m), theta1);
            angles.back() = theta2;
            DetectionConfig detectors(std::move(angles));
            return route == Route::paths ? g_m_paths(chain, detectors).value
                                         : g_m_operator(chain, detectors).value;
        }
        case Route::auto_select:
            break;
    }
    throw std::invalid_argument("sweep: route must be resolved before evaluation");
}

double rel_discrepancy(double a, double b) {
    const double denom = std::max(std::abs(a), std::abs(b));
    if (denom < 1e-12) {
        return 0.0;  // both consistent with zero
    }
    return std::abs(a - b) / denom;
}

}  // namespace

std::vector<double> uniform_grid(int points, double lo, double hi) {
    if (points < 2) {
        throw std::invalid_argument("uniform_grid: need at least 2 points");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("uniform_grid: need lo < hi");
    }
    const double mid = 0.5 * (lo + hi);
    const double center = 0.5 * (points - 1);
    const double step = (hi - lo) / (points - 1);
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[i] = mid + (i - center) * step;
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<double> augment_with_pattern_zeros(std::vector<double> grid, const EmitterChain& chain,
                                               double theta1) {
    if (grid.empty()) {
        throw std::invalid_argument("augment_with_pattern_zeros: empty grid");
    }
    const double lo = grid.front();
    const double hi = grid.back();
    const double s1 = std::sin(theta1);
    const double spacing = 2.0 * kPi / (chain.n_emitters() * chain.kd());
    for (int sign : {+1, -1}) {
        for (int q = 1;; ++q) {
            const double s = s1 + sign * q * spacing;
            if (std::abs(s) > 1.0) {
                break;
            }
            const double theta = std::asin(s);
            if (theta >= lo && theta <= hi) {
                grid.push_back(theta);
            }
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               grid.end());
    return grid;
}

SweepResult sweep(const EmitterChain& chain, int m, double theta1, const std::vector<double>& grid,
                  Route route) {
    if (m < 1) {
        throw std::invalid_argument("sweep: need m >= 1");
    }
    if (m > chain.n_emitters()) {
        throw std::invalid_argument("sweep: more detectors than emitters");
    }
    if (!(std::abs(theta1) <= kHalfPi)) {
        throw std::invalid_argument("sweep: theta1 outside [-pi/2, pi/2]");
    }
    if (grid.empty()) {
        throw std::invalid_argument("sweep: empty grid");
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1])) {
            throw std::invalid_argument("sweep: grid must be strictly increasing");
        }
    }

    Route resolved = route;
    if (resolved == Route::auto_select) {
        resolved = chain.n_emitters() >= 2 ? Route::closed_form : Route::paths;
    }

    SweepResult result;
    result.angles = grid;
    result.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        result.values[i] = g_value(chain, m, theta1, grid[i], resolved);
    }

    const double peak = *std::max_element(result.values.begin(), result.values.end());
    result.normalized.resize(grid.size(), 0.0);
    if (peak > 0.0) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            result.normalized[i] = result.values[i] / peak;
        }
    }
    result.meta = SweepMeta{chain.n_emitters(), m, theta1, chain.kd(), resolved};
    return result;
}

double estimate_fwhm(const SweepResult& sweep) {
    const auto& v = sweep.normalized;
    const auto& angles = sweep.angles;
    if (v.size() < 3) {
        throw estimation_error("estimate_fwhm: need at least 3 grid points");
    }
    const double vmax = *std::max_element(v.begin(), v.end());
    if (vmax <= 0.0) {
        throw estimation_error("estimate_fwhm: curve is identically zero");
    }

    // Among the points attaining the maximum, take the one nearest theta1.
    std::size_t peak = v.size();
    double best_dist = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= vmax * (1.0 - 1e-12)) {
            const double dist = std::abs(angles[i] - sweep.meta.theta1);
            if (peak == v.size() || dist < best_dist) {
                peak = i;
                best_dist = dist;
            }
        }
    }
    if (peak == 0 || peak + 1 == v.size()) {
        throw estimation_error("estimate_fwhm: maximum sits on the grid boundary");
    }

    const double half = 0.5 * vmax;
    const auto crossing = [&](std::size_t from, std::size_t to, std::ptrdiff_t dir) -> double {
        std::size_t i = from;
        while (i != to && v[i] > half) {
            i = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + dir);
        }
        if (v[i] > half) {
            throw estimation_error("estimate_fwhm: half maximum not bracketed by the grid");
        }
        const std::size_t prev = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) - dir);
        const double t = (v[prev] - half) / (v[prev] - v[i]);
        return angles[prev] + t * (angles[i] - angles[prev]);
    };

    const double right = crossing(peak, v.size() - 1, +1);
    const double left = crossing(peak, 0, -1);
    return right - left;
}

double estimate_visibility(const SweepResult& sweep) {
    if (sweep.values.empty()) {
        throw estimation_error("estimate_visibility: empty sweep");
    }
    const auto [min_it, max_it] = std::minmax_element(sweep.values.begin(), sweep.values.end());
    const double lo = *min_it;
    const double hi = *max_it;
    if (hi <= 0.0) {
        throw estimation_error("estimate_visibility: curve is identically zero");
    }
    return (hi - lo) / (hi + lo);
}

VerifyReport verify_routes(int n_max, int trials, std::uint64_t seed) {
    if (n_max < 1 || n_max > 8) {
        throw std::invalid_argument("verify_routes: n_max must be in [1, 8] (oracle cost)");
    }
    if (trials < 1) {
        throw std::invalid_argument("verify_routes: need at least one trial");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle_dist(-kHalfPi, kHalfPi);
    std::uniform_real_distribution<double> kd_dist(1.0, 2.0 * kPi);

    VerifyReport report;
    report.n_max = n_max;
    report.trials = trials;
    report.seed = seed;

    const auto consider = [&report](double a, double b, const char* route_a, const char* route_b,
                                    int n, int m, double kd, const std::vector<double>& angles) {
        ++report.comparisons;
        const double rel = rel_discrepancy(a, b);
        if (rel > report.max_rel_discrepancy) {
            report.max_rel_discrepancy = rel;
            report.worst =
                RouteWorstCase{rel, n, m, kd, angles, route_a, route_b, a, b};
        }
    };

    std::uniform_int_distribution<int> n_dist(1, n_max);
    for (int t = 0; t < trials; ++t) {
        const int n = n_dist(rng);
        const int m = std::uniform_int_distribution<int>(1, n)(rng);
        const double kd = kd_dist(rng);
        const EmitterChain chain(n, kd);

        std::vector<double> angles(static_cast<std::size_t>(m));
        for (double& a : angles) {
            a = angle_dist(rng);
        }
        DetectionConfig general(angles);
        const double paths = g_m_paths(chain, general).value;
        const double ops = g_m_operator(chain, general).value;
        const double naive = g_m_paths(chain, general, PermanentMethod::naive).value;
        consider(paths, ops, "paths", "operator", n, m, kd, angles);
        consider(paths, naive, "paths", "paths_naive", n, m, kd, angles);

        if (n >= 2) {
            const double theta1 = angle_dist(rng);
            const double theta2 = angle_dist(rng);
            std::vector<double> pattern(static_cast<std::size_t>(m), theta1);
            pattern.back() = theta2;
            DetectionConfig detectors(pattern);
            const double p = g_m_paths(chain, detectors).value;
            const double o = g_m_operator(chain, detectors).value;
            const double c = g_m_closed_form(n, m, theta1, theta2, kd).value;
            consider(p, o, "paths", "operator", n, m, kd, pattern);
            consider(p, c, "paths", "closed_form", n, m, kd, pattern);
            consider(o, c, "operator", "closed_form", n, m, kd, pattern);
        }
    }

    report.pass = report.max_rel_discrepancy < report.tolerance;
    return report;
}

}  // namespace photoncorr

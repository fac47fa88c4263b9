#include "photoncorr/correlations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace photoncorr {

namespace {

constexpr int kMaxRyserSize = 30;
constexpr int kMaxNaiveSize = 9;
constexpr double kNegativeClamp = 1e-12;

double clamp_nonnegative(double value) {
    return (value < 0.0 && value >= -kNegativeClamp) ? 0.0 : value;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

// sin^2(n x)/sin^2(x), with the removable singularities at x = 0 (mod pi)
// replaced by the limit n^2. Naive evaluation there is 0/0.
double dirichlet_ratio_sq(int n, double x) {
    const double s = std::sin(x);
    if (std::abs(s) < 1e-8) {
        return static_cast<double>(n) * n;
    }
    const double r = std::sin(n * x) / s;
    return r * r;
}

// Ryser's inclusion-exclusion permanent with Gray-code updates of the per-row
// column sums, O(2^m m). `at(i, j)` supplies the m x m matrix entries.
template <typename EntryAt>
std::complex<double> ryser_kernel(int m, EntryAt&& at) {
    std::vector<std::complex<double>> sums(m, {0.0, 0.0});
    std::complex<double> total(0.0, 0.0);
    std::uint64_t prev = 0;
    const std::uint64_t end = 1ull << m;
    for (std::uint64_t k = 1; k < end; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t changed = gray ^ prev;
        const int j = std::countr_zero(changed);
        if (gray & changed) {
            for (int i = 0; i < m; ++i) {
                sums[i] += at(i, j);
            }
        } else {
            for (int i = 0; i < m; ++i) {
                sums[i] -= at(i, j);
            }
        }
        std::complex<double> prod(1.0, 0.0);
        for (int i = 0; i < m; ++i) {
            prod *= sums[i];
        }
        if (std::popcount(gray) & 1) {
            total -= prod;
        } else {
            total += prod;
        }
        prev = gray;
    }
    return (m & 1) ? -total : total;
}

// Sum over all m! column assignments, O(m!). Oracle for the Ryser kernel.
template <typename EntryAt>
std::complex<double> naive_kernel(int m, EntryAt&& at) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::complex<double> total(0.0, 0.0);
    do {
        std::complex<double> prod(1.0, 0.0);
        for (int j = 0; j < m; ++j) {
            prod *= at(perm[j], j);
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

void check_square(const ComplexMatrix& a, const char* who, int max_size) {
    if (a.rows != a.cols) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }
    if (a.rows < 1 || a.rows > max_size) {
        throw std::invalid_argument(std::string(who) + ": size must be in [1, " +
                                    std::to_string(max_size) + "]");
    }
}

}  // namespace

std::string to_string(Route route) {
    switch (route) {
        case Route::auto_select:
            return "auto";
        case Route::paths:
            return "paths";
        case Route::field_operator:
            return "operator";
        case Route::closed_form:
            return "closed_form";
    }
    return "unknown";
}

std::complex<double> permanent(const ComplexMatrix& a) {
    check_square(a, "permanent", kMaxRyserSize);
    return ryser_kernel(a.rows, [&](int i, int j) { return a(i, j); });
}

std::complex<double> permanent_naive(const ComplexMatrix& a) {
    check_square(a, "permanent_naive", kMaxNaiveSize);
    return naive_kernel(a.rows, [&](int i, int j) { return a(i, j); });
}

double g_m_from_phase_matrix(const PhaseMatrix& pm, PermanentMethod method) {
    const int n = pm.rows();
    const int m = pm.cols();
    if (m > n) {
        throw std::invalid_argument("g_m_from_phase_matrix: more detectors than emitters");
    }
    if (m > kMaxRyserSize) {
        throw std::invalid_argument("g_m_from_phase_matrix: detector count exceeds permanent cap");
    }
    if (method == PermanentMethod::naive && m > kMaxNaiveSize) {
        throw std::invalid_argument("g_m_from_phase_matrix: naive permanent capped at size " +
                                    std::to_string(kMaxNaiveSize));
    }

    std::vector<int> rows(m);
    const auto entry = [&](int i, int j) { return pm.u(rows[i], j); };
    double total = 0.0;
    // Gosper's hack walks the C(n, m) emitter subsets in colexicographic order.
    std::uint64_t subset = (1ull << m) - 1;
    const std::uint64_t limit = 1ull << n;
    while (subset < limit) {
        std::uint64_t bits = subset;
        for (int i = 0; i < m; ++i) {
            rows[i] = std::countr_zero(bits);
            bits &= bits - 1;
        }
        const std::complex<double> p = (method == PermanentMethod::ryser)
                                           ? ryser_kernel(m, entry)
                                           : naive_kernel(m, entry);
        total += std::norm(p);
        const std::uint64_t c = subset & (~subset + 1);
        const std::uint64_t r = subset + c;
        if (r >= limit) {
            break;
        }
        subset = r | (((subset ^ r) >> 2) / c);
    }
    return clamp_nonnegative(total);
}

CorrelationResult g_m_paths(const EmitterChain& chain, const DetectionConfig& detectors,
                            PermanentMethod method) {
    if (detectors.n_detectors() > chain.n_emitters()) {
        throw std::invalid_argument("g_m_paths: more detected photons than excited atoms");
    }
    const double value = g_m_from_phase_matrix(phase_matrix(chain, detectors), method);
    return CorrelationResult{value,
                             Route::paths,
                             chain.n_emitters(),
                             detectors.n_detectors(),
                             detectors.angles(),
                             chain.kd()};
}

CorrelationResult g_m_operator(const EmitterChain& chain, const DetectionConfig& detectors) {
    PureState state = fully_excited(chain.n_emitters());
    for (double theta : detectors.angles()) {
        state = apply_field(state, theta, chain);
        if (state.is_zero()) {
            break;
        }
    }
    const double value = clamp_nonnegative(norm_sq(state));
    return CorrelationResult{value,
                             Route::field_operator,
                             chain.n_emitters(),
                             detectors.n_detectors(),
                             detectors.angles(),
                             chain.kd()};
}

CorrelationResult g_m_closed_form(int n, int m, double theta1, double theta2, double kd) {
    if (n < 2) {
        throw std::invalid_argument("g_m_closed_form: need n >= 2");
    }
    if (m < 1 || m > n) {
        throw std::invalid_argument("g_m_closed_form: need 1 <= m <= n");
    }
    if (!(kd > 0.0) || !std::isfinite(kd)) {
        throw std::invalid_argument("g_m_closed_form: kd must be positive and finite");
    }
    if (!(std::abs(theta1) <= kHalfPi) || !(std::abs(theta2) <= kHalfPi)) {
        throw std::invalid_argument("g_m_closed_form: angles outside [-pi/2, pi/2]");
    }

    double value;
    if (m == 1) {
        // Constant mean intensity: the atoms scatter incoherently.
        value = static_cast<double>(n);
    } else {
        const double delta = kd * (std::sin(theta2) - std::sin(theta1));  // phi_11 - phi_12
        const double prefactor = factorial(n) * factorial(m - 1) / factorial(n - m);
        const double floor_term = static_cast<double>(n - m) / (n - 1);
        const double fringe_weight =
            static_cast<double>(m - 1) / (static_cast<double>(n) * (n - 1));
        value = prefactor * (floor_term + fringe_weight * dirichlet_ratio_sq(n, delta / 2.0));
    }

    std::vector<double> angles(static_cast<std::size_t>(m), theta1);
    angles.back() = theta2;
    return CorrelationResult{clamp_nonnegative(value), Route::closed_form, n, m,
                             std::move(angles),        kd};
}

double visibility_closed_form(int n, int m) {
    if (n < 2) {
        throw std::invalid_argument("visibility_closed_form: need n >= 2");
    }
    if (m < 1 || m > n) {
        throw std::invalid_argument("visibility_closed_form: need 1 <= m <= n");
    }
    return static_cast<double>(m - 1) / (m + 1 - 2.0 * m / n);
}

double fwhm_predicted(int n, double kd) {
    if (n < 2) {
        throw std::invalid_argument("fwhm_predicted: need n >= 2");
    }
    if (!(kd > 0.0) || !std::isfinite(kd)) {
        throw std::invalid_argument("fwhm_predicted: kd must be positive and finite");
    }
    return 2.0 * kPi / (n * kd);
}

double g1_conditional(const PureState& state, double theta2, const EmitterChain& chain) {
    if (!state.is_normalized()) {
        throw std::invalid_argument("g1_conditional: state must be normalized");
    }
    return clamp_nonnegative(norm_sq(apply_field(state, theta2, chain)));
}

}  // namespace photoncorr

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "photoncorr/geometry.hpp"
#include "photoncorr/state.hpp"

namespace photoncorr {

// Dense complex matrix, row-major.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::complex<double>> data;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}

    std::complex<double>& operator()(int r, int c) {
        return data[static_cast<std::size_t>(r) * cols + c];
    }
    const std::complex<double>& operator()(int r, int c) const {
        return data[static_cast<std::size_t>(r) * cols + c];
    }
};

// How a correlation value was obtained. auto_select resolves to closed_form for
// the (m-1) x theta1 + theta2 detector pattern and to paths otherwise.
enum class Route { auto_select, paths, field_operator, closed_form };

std::string to_string(Route route);

enum class PermanentMethod { ryser, naive };

// Permanent of a square complex matrix by Ryser's inclusion-exclusion formula
// with Gray-code subset updates, O(2^m m). Sizes up to 30.
std::complex<double> permanent(const ComplexMatrix& a);

// Brute-force permutation enumeration, O(m!). Sizes up to 9; kept as the
// in-repo oracle for the Ryser kernel.
std::complex<double> permanent_naive(const ComplexMatrix& a);

struct CorrelationResult {
    double value = 0.0;  // dimensionless, >= 0
    Route route = Route::paths;
    int n = 0;
    int m = 0;
    std::vector<double> angles;
    double kd = 0.0;
};

// Path-sum kernel: sum over all C(rows, cols) emitter subsets of the squared
// modulus of the permanent of the corresponding phase submatrix. Subsets are
// enumerated in colexicographic (numeric bitmask) order.
double g_m_from_phase_matrix(const PhaseMatrix& pm,
                             PermanentMethod method = PermanentMethod::ryser);

// G^(m) by quantum-path enumeration over emitter subsets.
CorrelationResult g_m_paths(const EmitterChain& chain, const DetectionConfig& detectors,
                            PermanentMethod method = PermanentMethod::ryser);

// G^(m) as the squared norm of m successive field-operator applications to the
// fully excited state. For m > N the register is annihilated and the value is
// exactly 0 rather than an error, so nilpotency stays testable.
CorrelationResult g_m_operator(const EmitterChain& chain, const DetectionConfig& detectors);

// Closed form for the (m-1) detectors at theta1 + one at theta2 pattern:
//   N!(m-1)!/(N-m)! * [ (N-m)/(N-1) + (m-1)/(N(N-1)) * sin^2(N D/2)/sin^2(D/2) ]
// with D = kd (sin theta2 - sin theta1). The Dirichlet ratio takes its limit
// value N^2 at the removable singularities D = 0 (mod 2 pi). For m = 1 the
// pattern is the constant mean intensity N.
CorrelationResult g_m_closed_form(int n, int m, double theta1, double theta2, double kd);

// Interference contrast of the pattern above: (m-1)/(m+1 - 2m/n).
double visibility_closed_form(int n, int m);

// Predicted full width at half maximum of the central peak: 2 pi / (n kd).
double fwhm_predicted(int n, double kd);

// Mean intensity radiated by a normalized register state toward theta2:
// |E(theta2)|state>|^2. For a heralded W state this is the focussed pattern.
double g1_conditional(const PureState& state, double theta2, const EmitterChain& chain);

}  // namespace photoncorr

#pragma once

#include <complex>
#include <vector>

namespace photoncorr {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

// Subset bookkeeping uses 64-bit ground-state masks, which caps the register size.
inline constexpr int kMaxEmitters = 63;

// Chain of identical two-level emitters, equally spaced along the x-axis.
// kd is the dimensionless product of the transition wave number and the
// spacing; it sets the angular scale of every interference pattern.
class EmitterChain {
public:
    EmitterChain(int n_emitters, double kd);

    int n_emitters() const { return n_; }
    double kd() const { return kd_; }

    // kd <= 1 is accepted (the interference math is unchanged) but neglecting
    // dipole-dipole coupling is physically questionable there; callers that
    // talk to users should warn.
    bool subwavelength_spacing() const { return kd_ <= 1.0; }

private:
    int n_;
    double kd_;
};

// Ordered detector polar angles theta_j (radians) in the x-z plane.
class DetectionConfig {
public:
    explicit DetectionConfig(std::vector<double> angles);

    const std::vector<double>& angles() const { return angles_; }
    int n_detectors() const { return static_cast<int>(angles_.size()); }

private:
    std::vector<double> angles_;
};

// Optical phase accumulated by a photon emitted at site l (1-based) and
// detected at polar angle theta, relative to emission at the origin:
//   phi = -l * kd * sin(theta)
double phase(int emitter_index, double theta, double kd);

// N x m table of phases phi_lj and the unit-modulus factors u_lj = exp(-i phi_lj)
// that enter every quantum-path amplitude. Rows are emitters, columns detectors.
class PhaseMatrix {
public:
    // Builds entries u = exp(-i phi) from raw phases (row-major). Lets tests and
    // callers drive the path-sum kernel with matrices that no physical chain
    // produces (index shifts, direct sin-theta manipulation).
    static PhaseMatrix from_phases(int rows, int cols, std::vector<double> phases);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double phi(int row, int col) const { return phases_[static_cast<std::size_t>(row) * cols_ + col]; }
    std::complex<double> u(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * cols_ + col];
    }

    const std::vector<std::complex<double>>& entries() const { return entries_; }

private:
    PhaseMatrix(int rows, int cols, std::vector<double> phases,
                std::vector<std::complex<double>> entries)
        : rows_(rows), cols_(cols), phases_(std::move(phases)), entries_(std::move(entries)) {}

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> phases_;
    std::vector<std::complex<double>> entries_;
};

PhaseMatrix phase_matrix(const EmitterChain& chain, const DetectionConfig& detectors);

}  // namespace photoncorr

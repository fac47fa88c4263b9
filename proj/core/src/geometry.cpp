#include "photoncorr/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace photoncorr {

EmitterChain::EmitterChain(int n_emitters, double kd) : n_(n_emitters), kd_(kd) {
    if (n_emitters < 1 || n_emitters > kMaxEmitters) {
        throw std::invalid_argument("EmitterChain: n_emitters must be in [1, " +
                                    std::to_string(kMaxEmitters) + "], got " +
                                    std::to_string(n_emitters));
    }
    if (!(kd > 0.0) || !std::isfinite(kd)) {
        throw std::invalid_argument("EmitterChain: kd must be positive and finite");
    }
}

DetectionConfig::DetectionConfig(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) {
        throw std::invalid_argument("DetectionConfig: need at least one detector angle");
    }
    for (double theta : angles_) {
        if (!(std::abs(theta) <= kHalfPi)) {
            throw std::invalid_argument("DetectionConfig: angle " + std::to_string(theta) +
                                        " outside [-pi/2, pi/2]");
        }
    }
}

double phase(int emitter_index, double theta, double kd) {
    if (emitter_index < 1) {
        throw std::invalid_argument("phase: emitter index must be >= 1");
    }
    if (!(std::abs(theta) <= kHalfPi)) {
        throw std::invalid_argument("phase: theta outside [-pi/2, pi/2]");
    }
    return -static_cast<double>(emitter_index) * kd * std::sin(theta);
}

PhaseMatrix PhaseMatrix::from_phases(int rows, int cols, std::vector<double> phases) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("PhaseMatrix: dimensions must be positive");
    }
    if (phases.size() != static_cast<std::size_t>(rows) * cols) {
        throw std::invalid_argument("PhaseMatrix: phase count does not match dimensions");
    }
    std::vector<std::complex<double>> entries(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i) {
        entries[i] = std::polar(1.0, -phases[i]);
    }
    return PhaseMatrix(rows, cols, std::move(phases), std::move(entries));
}

PhaseMatrix phase_matrix(const EmitterChain& chain, const DetectionConfig& detectors) {
    const int n = chain.n_emitters();
    const int m = detectors.n_detectors();
    std::vector<double> phases(static_cast<std::size_t>(n) * m);
    for (int l = 0; l < n; ++l) {
        for (int j = 0; j < m; ++j) {
            phases[static_cast<std::size_t>(l) * m + j] =
                phase(l + 1, detectors.angles()[j], chain.kd());
        }
    }
    return PhaseMatrix::from_phases(n, m, std::move(phases));
}

}  // namespace photoncorr

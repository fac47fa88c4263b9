#include "photoncorr/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "photoncorr/errors.hpp"

namespace photoncorr {

namespace {

// Exact-zero cancellations leave map entries behind; anything this small is noise.
constexpr double kAmplitudeFloor = 1e-15;

void check_atom_count(int n_atoms) {
    if (n_atoms < 1 || n_atoms > kMaxEmitters) {
        throw std::invalid_argument("PureState: n_atoms must be in [1, " +
                                    std::to_string(kMaxEmitters) + "]");
    }
}

}  // namespace

PureState::PureState(int n_atoms) : n_atoms_(n_atoms) {
    check_atom_count(n_atoms);
}

PureState::PureState(int n_atoms, AmplitudeMap amplitudes)
    : n_atoms_(n_atoms), amps_(std::move(amplitudes)) {
    check_atom_count(n_atoms);
    const std::uint64_t valid = (n_atoms == 64) ? ~0ull : ((1ull << n_atoms) - 1);
    for (const auto& [mask, amp] : amps_) {
        (void)amp;
        if ((mask & ~valid) != 0) {
            throw std::invalid_argument("PureState: ground-subset key references atoms beyond N");
        }
    }
}

std::complex<double> PureState::amplitude(std::uint64_t ground_mask) const {
    auto it = amps_.find(ground_mask);
    return it == amps_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

bool PureState::is_normalized(double tol) const {
    return std::abs(norm_sq(*this) - 1.0) <= tol;
}

PureState fully_excited(int n_atoms) {
    check_atom_count(n_atoms);
    PureState::AmplitudeMap amps;
    amps[0] = 1.0;
    return PureState(n_atoms, std::move(amps));
}

PureState w_state(int n_atoms) {
    if (n_atoms < 2) {
        throw std::invalid_argument("w_state: need at least 2 atoms");
    }
    check_atom_count(n_atoms);
    const std::uint64_t full = (1ull << n_atoms) - 1;
    const double amp = 1.0 / std::sqrt(static_cast<double>(n_atoms));
    PureState::AmplitudeMap amps;
    for (int r = 0; r < n_atoms; ++r) {
        amps[full ^ (1ull << r)] = amp;
    }
    return PureState(n_atoms, std::move(amps));
}

PureState heralded_w_state(const EmitterChain& chain, double theta1) {
    const int n = chain.n_emitters();
    if (n < 2) {
        throw std::invalid_argument("heralded_w_state: need at least 2 emitters");
    }
    const std::uint64_t full = (1ull << n) - 1;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    PureState::AmplitudeMap amps;
    for (int r = 1; r <= n; ++r) {
        amps[full ^ (1ull << (r - 1))] = std::polar(scale, phase(r, theta1, chain.kd()));
    }
    return PureState(n, std::move(amps));
}

PureState apply_field(const PureState& state, double theta, const EmitterChain& chain) {
    const int n = state.n_atoms();
    if (n != chain.n_emitters()) {
        throw std::invalid_argument("apply_field: state and chain atom counts differ");
    }
    // exp(-i phi_l(theta)) per site, validated once for the angle range.
    std::vector<std::complex<double>> factor(n);
    for (int l = 0; l < n; ++l) {
        factor[l] = std::polar(1.0, -phase(l + 1, theta, chain.kd()));
    }

    PureState::AmplitudeMap out;
    for (const auto& [mask, amp] : state.amplitudes()) {
        for (int l = 0; l < n; ++l) {
            const std::uint64_t bit = 1ull << l;
            if (mask & bit) {
                continue;  // s^- annihilates a ground atom
            }
            out[mask | bit] += amp * factor[l];
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (std::abs(it->second) < kAmplitudeFloor) {
            it = out.erase(it);
        } else {
            ++it;
        }
    }
    return PureState(n, std::move(out));
}

double norm_sq(const PureState& state) {
    double total = 0.0;
    for (const auto& [mask, amp] : state.amplitudes()) {
        (void)mask;
        total += std::norm(amp);
    }
    return total;
}

PureState normalize(const PureState& state) {
    const double ns = norm_sq(state);
    if (ns == 0.0) {
        throw degenerate_state_error("normalize: state has zero norm (impossible detection event)");
    }
    const double inv = 1.0 / std::sqrt(ns);
    PureState::AmplitudeMap amps;
    for (const auto& [mask, amp] : state.amplitudes()) {
        amps[mask] = amp * inv;
    }
    return PureState(state.n_atoms(), std::move(amps));
}

std::complex<double> overlap(const PureState& a, const PureState& b) {
    if (a.n_atoms() != b.n_atoms()) {
        throw std::invalid_argument("overlap: atom counts differ");
    }
    std::complex<double> total(0.0, 0.0);
    const auto& small = a.amplitudes().size() <= b.amplitudes().size() ? a : b;
    const auto& large = a.amplitudes().size() <= b.amplitudes().size() ? b : a;
    for (const auto& [mask, amp] : small.amplitudes()) {
        const auto other = large.amplitude(mask);
        if (&small == &a) {
            total += std::conj(amp) * other;
        } else {
            total += std::conj(other) * amp;
        }
    }
    return total;
}

PureState conditional_state(const EmitterChain& chain, const std::vector<double>& detection_angles) {
    const int k = static_cast<int>(detection_angles.size());
    if (k >= chain.n_emitters()) {
        throw std::invalid_argument("conditional_state: detections must number fewer than emitters");
    }
    PureState state = fully_excited(chain.n_emitters());
    for (double theta : detection_angles) {
        state = apply_field(state, theta, chain);
    }
    return normalize(state);
}

}  // namespace photoncorr

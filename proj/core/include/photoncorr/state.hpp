#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "photoncorr/geometry.hpp"

namespace photoncorr {

// Pure state of an N-atom register, stored sparsely as a map from the set of
// ground-state atoms to a complex amplitude. Bit l-1 of the key corresponds to
// atom l; the fully excited state is the single key 0. After k applications of
// the far-field operator only C(N, k) keys are populated, which keeps desk-scale
// registers cheap where a dense 2^N vector would not be.
//
// States are immutable values: every operation returns a new state.
class PureState {
public:
    using AmplitudeMap = std::map<std::uint64_t, std::complex<double>>;

    // Zero state (no amplitude terms).
    explicit PureState(int n_atoms);
    PureState(int n_atoms, AmplitudeMap amplitudes);

    int n_atoms() const { return n_atoms_; }
    const AmplitudeMap& amplitudes() const { return amps_; }
    bool is_zero() const { return amps_.empty(); }
    bool is_normalized(double tol = 1e-10) const;

    // Amplitude of a basis state, 0 for absent keys.
    std::complex<double> amplitude(std::uint64_t ground_mask) const;

private:
    int n_atoms_ = 0;
    AmplitudeMap amps_;
};

// Product state with every atom in its upper level.
PureState fully_excited(int n_atoms);

// Symmetric single-excitation state: uniform superposition of the n basis
// states with exactly one atom excited, amplitude 1/sqrt(n) each.
PureState w_state(int n_atoms);

// W-like target reached by detecting n-1 photons at angle theta1: the term
// with atom r excited carries exp(+i phi_r(theta1)). Reduces to w_state at
// theta1 = 0 and to it up to a global phase in general.
PureState heralded_w_state(const EmitterChain& chain, double theta1);

// Applies the scalar far-field operator sum_l exp(-i phi_l(theta)) s^-_l:
// every term gains one ground atom per still-excited site, weighted by the
// site's phase factor. Terms where the lowered atom is already ground vanish.
// The result is generally unnormalized.
PureState apply_field(const PureState& state, double theta, const EmitterChain& chain);

double norm_sq(const PureState& state);

// Scales amplitudes to unit norm. A zero state signals a detection sequence of
// probability zero and raises degenerate_state_error.
PureState normalize(const PureState& state);

// <a|b> over shared basis states.
std::complex<double> overlap(const PureState& a, const PureState& b);

// State of the register after conditioning on k < N photon detections at the
// given angles: normalize(E(theta_k) ... E(theta_1) |fully excited>).
PureState conditional_state(const EmitterChain& chain, const std::vector<double>& detection_angles);

}  // namespace photoncorr

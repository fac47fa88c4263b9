#pragma once

#include <cstdint>
#include <string>

#include "photoncorr/analysis.hpp"
#include "photoncorr/state.hpp"

namespace photoncorr {

// Round-trip decimal formatting (17 significant digits). Every emitted number
// goes through this so identical inputs give byte-identical artifacts.
std::string format_double(double value);

// "1,3" for the ground set {1, 3}; "" for the empty set.
std::string subset_key(std::uint64_t ground_mask);

// {"n_atoms": N, "amplitudes": {"<ground subset>": [re, im], ...}}
std::string state_to_json(const PureState& state);

// Header `theta2,g_value,g_normalized`, one row per grid point, '\n' endings.
std::string sweep_to_csv(const SweepResult& sweep);

}  // namespace photoncorr

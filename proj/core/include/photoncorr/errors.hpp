#pragma once

#include <stdexcept>
#include <string>

namespace photoncorr {

// Thrown when an operation would renormalize a zero-norm state, i.e. the
// conditioning detection sequence has probability zero.
class degenerate_state_error : public std::runtime_error {
public:
    explicit degenerate_state_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the numeric estimators when the sampled curve cannot support the
// requested measurement (no interior peak, half maximum not bracketed, ...).
class estimation_error : public std::runtime_error {
public:
    explicit estimation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace photoncorr

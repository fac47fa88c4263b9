#pragma once

namespace photoncorr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace photoncorr

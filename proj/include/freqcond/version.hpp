#pragma once

namespace freqcond {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace freqcond

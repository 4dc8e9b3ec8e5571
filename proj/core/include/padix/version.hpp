#pragma once

#include <string_view>

namespace padix {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kToolVersion = "padix 0.1.0";

// JSON documents produced by this library carry this format revision;
// bump on any incompatible schema change.
inline constexpr int kFormatVersion = 1;

} // namespace padix

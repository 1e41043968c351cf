#pragma once

#include <string_view>

namespace polycontract {

inline constexpr std::string_view kToolName = "polycontract";
inline constexpr std::string_view kToolVersion = "1.0.0";

}  // namespace polycontract

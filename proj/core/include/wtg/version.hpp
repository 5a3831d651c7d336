#pragma once

namespace wtg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wtg

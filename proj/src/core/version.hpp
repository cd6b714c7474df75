#pragma once

namespace kt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kt

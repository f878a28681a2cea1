#pragma once

namespace octoverify {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace octoverify

#pragma once

namespace symarea {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace symarea

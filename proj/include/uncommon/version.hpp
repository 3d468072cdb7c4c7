#pragma once

namespace uncommon {

inline constexpr const char* kVersion = "0.1.0";

} // namespace uncommon

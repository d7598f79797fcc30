#pragma once

namespace naifs {

inline constexpr const char* kToolName = "naifs";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace naifs

#pragma once

namespace padyn {

inline constexpr const char* tool_name = "padyn";
inline constexpr const char* tool_version = "0.1.0";

} // namespace padyn

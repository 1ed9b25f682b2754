#pragma once

namespace squeeze {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace squeeze

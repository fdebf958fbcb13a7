#pragma once

namespace nk6 {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nk6

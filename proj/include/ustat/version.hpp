#pragma once

namespace ustat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ustat

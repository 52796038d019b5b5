#pragma once

namespace nles {

inline constexpr const char* kVersion = "nles 0.1.0";

}  // namespace nles

#pragma once

namespace cirlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cirlab

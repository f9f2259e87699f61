#pragma once

namespace szegolab {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kCacheFormatVersion = 1;

}  // namespace szegolab

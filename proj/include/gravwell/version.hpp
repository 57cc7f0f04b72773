#pragma once

namespace gravwell {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever the J-table cache layout changes; cached files with a
// different tag are rebuilt.
inline constexpr int kJTableFormatVersion = 1;

}  // namespace gravwell

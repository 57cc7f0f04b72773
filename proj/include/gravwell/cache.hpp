#pragma once

#include <gravwell/quadrature.hpp>

#include <filesystem>
#include <optional>

namespace gravwell {

/// Returns a cached table when a file in `dir` matches: same format version,
/// same delta at 12 decimals, same accuracy, and pmax at least the request
/// (a larger cached table serves smaller bases). Corrupt files are reported
/// to stderr and skipped.
std::optional<JTable> cache_lookup(const std::filesystem::path& dir, double delta, int pmax,
                                   double accuracy);

/// Lookup-or-build: a miss builds the table and stores it under the exact
/// key. Creates `dir` on demand.
JTable cache_get(const std::filesystem::path& dir, double delta, int pmax, double accuracy,
                 int workers = 0);

std::filesystem::path cache_file_name(double delta, int pmax, double accuracy);

}  // namespace gravwell

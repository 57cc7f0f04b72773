#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gravwell {

/// Shortest round-trip decimal form (std::to_chars), so identical doubles
/// always print identical bytes.
std::string csv_num(double v);
std::string csv_num(int v);
std::string csv_num(std::int64_t v);

/// CSV with a '#'-prefixed header block: tool version, schema tag, one
/// timestamp line (the only nondeterministic line) and the resolved
/// configuration, then the column row and data rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void meta(std::string_view key, std::string_view value);
  void columns(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

/// "# generated_at = <UTC ISO 8601>"; excluded from the determinism contract.
std::string timestamp_line();

}  // namespace gravwell

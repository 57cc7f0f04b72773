#include <gravwell/csv.hpp>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>

namespace gravwell {

std::string csv_num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string csv_num(int v) { return std::to_string(v); }
std::string csv_num(std::int64_t v) { return std::to_string(v); }

void CsvWriter::meta(std::string_view key, std::string_view value) {
  os_ << "# " << key << " = " << value << "\n";
}

void CsvWriter::columns(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) os_ << (i ? "," : "") << names[i];
  os_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os_ << (i ? "," : "") << fields[i];
  os_ << "\n";
}

std::string timestamp_line() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace gravwell

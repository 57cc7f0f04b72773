#include <gravwell/cache.hpp>

#include <gravwell/version.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <vector>

namespace gravwell {

namespace {

std::string delta_key(double delta) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12f", delta);
  return buf;
}

bool accuracy_matches(double a, double b) { return a == b; }

}  // namespace

std::filesystem::path cache_file_name(double delta, int pmax, double accuracy) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "jtable_v%d_d%s_p%d_a%g.bin", kJTableFormatVersion,
                delta_key(delta).c_str(), pmax, accuracy);
  return buf;
}

std::optional<JTable> cache_lookup(const std::filesystem::path& dir, double delta, int pmax,
                                   double accuracy) {
  if (!std::filesystem::is_directory(dir)) return std::nullopt;
  const std::string want_delta = delta_key(delta);

  // candidate files, smallest adequate pmax first
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.rfind("jtable_", 0) == 0) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  std::optional<JTable> best;
  for (const auto& file : files) {
    JTable t;
    try {
      t = load_table(file);
    } catch (const config_error& e) {
      std::cerr << "warning: ignoring corrupt J-table cache file (" << e.what() << ")\n";
      continue;
    }
    if (t.version != kJTableFormatVersion) continue;
    if (delta_key(t.delta) != want_delta) continue;
    if (!accuracy_matches(t.accuracy, accuracy)) continue;
    if (t.pmax < pmax) continue;
    if (!best || t.pmax < best->pmax) best = std::move(t);
  }
  return best;
}

JTable cache_get(const std::filesystem::path& dir, double delta, int pmax, double accuracy,
                 int workers) {
  if (auto hit = cache_lookup(dir, delta, pmax, accuracy)) return std::move(*hit);
  JTable t = build_table(delta, pmax, accuracy, workers);
  std::filesystem::create_directories(dir);
  const auto file = dir / cache_file_name(delta, pmax, accuracy);
  const auto tmp = file.string() + ".tmp";
  save_table(t, tmp);
  std::filesystem::rename(tmp, file);
  return t;
}

}  // namespace gravwell

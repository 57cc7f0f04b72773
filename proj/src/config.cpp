#include <gravwell/config.hpp>

#include <gravwell/csv.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace gravwell {

namespace {

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw config_error("config key '" + key + "': cannot parse '" + v + "' as a number");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw config_error("config key '" + key + "': cannot parse '" + v + "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw config_error("config key '" + key + "': cannot parse '" + v + "' as a boolean");
}

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

struct Entry {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> reg = [] {
    std::map<std::string, Entry> r;
    auto dbl = [&r](const std::string& key, auto member) {
      r[key] = {[member](RunConfig& c, const std::string& k, const std::string& v) {
                  c.*member = parse_double(k, v);
                },
                [member](const RunConfig& c) { return csv_num(c.*member); }};
    };
    auto integer = [&r](const std::string& key, auto member) {
      r[key] = {[member](RunConfig& c, const std::string& k, const std::string& v) {
                  c.*member = parse_int(k, v);
                },
                [member](const RunConfig& c) { return csv_num(c.*member); }};
    };
    auto str = [&r](const std::string& key, auto member) {
      r[key] = {[member](RunConfig& c, const std::string&, const std::string& v) {
                  c.*member = v;
                },
                [member](const RunConfig& c) { return c.*member; }};
    };

    auto phys = [&r](const std::string& key, double PhysicalParams::* member) {
      r[key] = {[member](RunConfig& c, const std::string& k, const std::string& v) {
                  c.physical.*member = parse_double(k, v);
                },
                [member](const RunConfig& c) { return csv_num(c.physical.*member); }};
    };
    phys("physical.mass_kg", &PhysicalParams::mass);
    phys("physical.well_width_m", &PhysicalParams::well_width);
    phys("physical.separation_m", &PhysicalParams::separation);
    phys("physical.temperature_k", &PhysicalParams::temperature);
    phys("physical.damping_per_s", &PhysicalParams::damping);
    phys("physical.cutoff_per_s", &PhysicalParams::cutoff);
    auto constant = [&r](const std::string& key, double Constants::* member) {
      r[key] = {[member](RunConfig& c, const std::string& k, const std::string& v) {
                  c.physical.constants.*member = parse_double(k, v);
                },
                [member](const RunConfig& c) { return csv_num(c.physical.constants.*member); }};
    };
    constant("constants.G", &Constants::G);
    constant("constants.hbar", &Constants::hbar);
    constant("constants.kB", &Constants::kB);

    dbl("scaled.gamma_override", &RunConfig::gamma_override);
    integer("scaled.nmax", &RunConfig::nmax);
    integer("scaled.n_w", &RunConfig::n_w);
    integer("scaled.n_d", &RunConfig::n_d);

    integer("solve.levels", &RunConfig::solve_levels);
    integer("sweep.levels", &RunConfig::sweep_levels);
    dbl("quadrature.accuracy", &RunConfig::quad_accuracy);

    dbl("sweep.delta_max", &RunConfig::delta_max);
    dbl("sweep.delta_min", &RunConfig::delta_min);
    integer("sweep.delta_count", &RunConfig::delta_count);
    str("sweep.deltas", &RunConfig::deltas);
    integer("spectrum.levels", &RunConfig::spectrum_levels);

    dbl("grid.mass_min_kg", &RunConfig::grid_mass_min);
    dbl("grid.mass_max_kg", &RunConfig::grid_mass_max);
    integer("grid.mass_count", &RunConfig::grid_mass_count);
    dbl("grid.width_min_m", &RunConfig::grid_width_min);
    dbl("grid.width_max_m", &RunConfig::grid_width_max);
    integer("grid.width_count", &RunConfig::grid_width_count);
    dbl("grid.separation_m", &RunConfig::grid_separation);

    str("converge.nmaxes", &RunConfig::converge_nmaxes);
    dbl("converge.rel_threshold", &RunConfig::converge_rel_threshold);

    dbl("decohere.dt_t0", &RunConfig::decohere_dt);
    integer("decohere.steps", &RunConfig::decohere_steps);
    integer("decohere.sample_stride", &RunConfig::decohere_sample_stride);
    str("decohere.initial", &RunConfig::decohere_initial);
    str("decohere.hamiltonian", &RunConfig::decohere_hamiltonian);
    dbl("decohere.kappa1_override", &RunConfig::kappa1_override);
    dbl("decohere.kappa2_override", &RunConfig::kappa2_override);

    dbl("feasibility.d_ini_m", &RunConfig::feas_d_ini);
    dbl("feasibility.approach_speed_mps", &RunConfig::feas_speed);
    dbl("feasibility.density_per_m3", &RunConfig::feas_density);
    dbl("feasibility.range_b_m", &RunConfig::feas_range_b);

    r["thresholds.adiabatic_ratio_min"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.thresholds.adiabatic_ratio_min = parse_double(k, v);
        },
        [](const RunConfig& c) { return csv_num(c.thresholds.adiabatic_ratio_min); }};
    r["thresholds.kb_max"] = {[](RunConfig& c, const std::string& k, const std::string& v) {
                                c.thresholds.kb_max = parse_double(k, v);
                              },
                              [](const RunConfig& c) { return csv_num(c.thresholds.kb_max); }};
    r["thresholds.density_ratio_min"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.thresholds.density_ratio_min = parse_double(k, v);
        },
        [](const RunConfig& c) { return csv_num(c.thresholds.density_ratio_min); }};

    integer("wavefunction.resolution", &RunConfig::wavefunction_resolution);
    integer("wavefunction.level", &RunConfig::wavefunction_level);

    r["output.dir"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                         c.out_dir = v;
                       },
                       [](const RunConfig& c) { return c.out_dir.string(); }};
    r["cache.dir"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                        c.cache_dir = v;
                      },
                      [](const RunConfig& c) { return c.cache_dir.string(); }};
    integer("run.workers", &RunConfig::workers);
    r["run.paper_scale"] = {[](RunConfig& c, const std::string& k, const std::string& v) {
                              c.paper_scale = parse_bool(k, v);
                            },
                            [](const RunConfig& c) {
                              return std::string(c.paper_scale ? "true" : "false");
                            }};
    return r;
  }();
  return reg;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto& reg = registry();
  const auto it = reg.find(key);
  if (it == reg.end()) {
    std::string msg = "unknown config key '" + key + "'; valid keys:";
    for (const auto& [k, e] : reg) msg += "\n  " + k;
    throw config_error(msg);
  }
  it->second.set(cfg, key, value);
  if (key == "scaled.nmax") cfg.nmax_explicit = true;
  if (key == "spectrum.levels") cfg.spectrum_levels_explicit = true;
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw config_error("cannot open config file: " + file.string());
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(file.string() + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::vector<std::string> known_config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, e] : registry()) keys.push_back(k);
  return keys;
}

std::vector<std::pair<std::string, std::string>> RunConfig::dump() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, e] : registry()) out.emplace_back(k, e.get(*this));
  return out;
}

std::vector<double> RunConfig::delta_list() const {
  std::vector<double> d;
  if (!deltas.empty()) {
    std::istringstream ss(deltas);
    std::string tok;
    while (std::getline(ss, tok, ',')) d.push_back(parse_double("sweep.deltas", trim(tok)));
  } else {
    if (delta_count < 2 || !(delta_max > delta_min) || !(delta_min > 0.0))
      throw config_error("sweep.delta_* must satisfy max > min > 0, count >= 2");
    const double lmax = std::log(delta_max), lmin = std::log(delta_min);
    for (int i = 0; i < delta_count; ++i)
      d.push_back(std::exp(lmax + (lmin - lmax) * i / (delta_count - 1)));
    d.front() = delta_max;
    d.back() = delta_min;
  }
  if (!std::is_sorted(d.rbegin(), d.rend()))
    throw config_error("sweep.deltas must be sorted descending (adiabatic approach)");
  return d;
}

std::vector<int> RunConfig::converge_list() const {
  std::vector<int> n;
  std::istringstream ss(converge_nmaxes);
  std::string tok;
  while (std::getline(ss, tok, ',')) n.push_back(parse_int("converge.nmaxes", trim(tok)));
  if (n.empty()) throw config_error("converge.nmaxes is empty");
  return n;
}

std::vector<double> RunConfig::grid_masses() const {
  if (grid_mass_count < 1 || !(grid_mass_max >= grid_mass_min) || !(grid_mass_min > 0.0))
    throw config_error("grid.mass_* must satisfy max >= min > 0, count >= 1");
  std::vector<double> m;
  if (grid_mass_count == 1) return {grid_mass_min};
  const double lmin = std::log(grid_mass_min), lmax = std::log(grid_mass_max);
  for (int i = 0; i < grid_mass_count; ++i)
    m.push_back(std::exp(lmin + (lmax - lmin) * i / (grid_mass_count - 1)));
  m.front() = grid_mass_min;
  m.back() = grid_mass_max;
  return m;
}

std::vector<double> RunConfig::grid_widths() const {
  if (grid_width_count < 1 || !(grid_width_max >= grid_width_min) || !(grid_width_min > 0.0))
    throw config_error("grid.width_* must satisfy max >= min > 0, count >= 1");
  if (grid_width_count == 1) return {grid_width_min};
  std::vector<double> w;
  for (int i = 0; i < grid_width_count; ++i)
    w.push_back(grid_width_min + (grid_width_max - grid_width_min) * i / (grid_width_count - 1));
  return w;
}

void RunConfig::finalize() {
  if (paper_scale) {
    if (!nmax_explicit) nmax = 100;
    if (!spectrum_levels_explicit) spectrum_levels = 1000;
  }
  validate();
}

void RunConfig::validate() const {
  physical.validate();
  if (nmax < 2) throw config_error("scaled.nmax must be >= 2");
  if (n_w < 0 || n_w > nmax) throw config_error("scaled.n_w must be in [0, nmax]");
  if (n_d < 2) throw config_error("scaled.n_d must be >= 2");
  if (solve_levels < 1) throw config_error("solve.levels must be >= 1");
  if (sweep_levels < 1) throw config_error("sweep.levels must be >= 1");
  if (!(quad_accuracy > 0.0) || quad_accuracy > 1e-6)
    throw config_error("quadrature.accuracy must be in (0, 1e-6]");
  if (spectrum_levels < 2) throw config_error("spectrum.levels must be >= 2");
  if (decohere_steps < 1 || !(decohere_dt > 0.0))
    throw config_error("decohere.steps/dt must be positive");
  if (decohere_sample_stride < 1) throw config_error("decohere.sample_stride must be >= 1");
  if (decohere_initial != "product" && decohere_initial != "coupled")
    throw config_error("decohere.initial must be 'product' or 'coupled'");
  if (decohere_hamiltonian != "coupled" && decohere_hamiltonian != "free")
    throw config_error("decohere.hamiltonian must be 'coupled' or 'free'");
  if (wavefunction_resolution < 16)
    throw config_error("wavefunction.resolution must be >= 16");
  if (wavefunction_level < 1) throw config_error("wavefunction.level must be >= 1");
  if (workers < 0) throw config_error("run.workers must be >= 0");
}

}  // namespace gravwell

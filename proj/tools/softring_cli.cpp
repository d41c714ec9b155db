// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

// softring command-line driver. Links only the public C API.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "softring/softring.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Invalid user input; printed as a diagnostic, exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failure reported by the library, exit code 1.
struct LibraryError : std::runtime_error {
  softring_status status;
  LibraryError(softring_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
};

void check(softring_status s, const char* what) {
  if (s == SOFTRING_OK) return;
  throw LibraryError(s, std::string(what) + ": " + softring_status_string(s) + ": " +
                            softring_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ProfilePtr = std::unique_ptr<softring_profile, Deleter<softring_profile, softring_profile_free>>;
using ProblemPtr = std::unique_ptr<softring_problem, Deleter<softring_problem, softring_problem_free>>;
using SpectrumPtr =
    std::unique_ptr<softring_spectrum, Deleter<softring_spectrum, softring_spectrum_free>>;
using TablePtr = std::unique_ptr<softring_table, Deleter<softring_table, softring_table_free>>;
using ReportPtr = std::unique_ptr<softring_report, Deleter<softring_report, softring_report_free>>;
using ConfigPtr = std::unique_ptr<softring_config, Deleter<softring_config, softring_config_free>>;

std::string fmt(double v) {
  char buf[64];
  check(softring_format_double(v, buf, sizeof buf), "format_double");
  return buf;
}

// ---------------------------------------------------------------- parameters

enum class Kind { Real, Angle, Int, U64, Bool, Text };

struct Key {
  std::string name;
  Kind kind;
  std::string fallback;
  std::string help;
};

struct Value {
  std::string text;
  std::string origin;  // "default", "file:line", "--flag", "SOFTRING_SEED"
};

std::string flag_name(const std::string& key) {
  std::string f = key;
  std::replace(f.begin(), f.end(), '_', '-');
  return "--" + f;
}

class Params {
 public:
  void set(const std::string& key, std::string text, std::string origin) {
    values_[key] = {std::move(text), std::move(origin)};
  }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const Value& raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::logic_error("unregistered key " + key);
    return it->second;
  }
  std::string text(const std::string& key) const { return raw(key).text; }
  bool empty(const std::string& key) const { return raw(key).text.empty(); }

  double real(const std::string& key) const {
    const Value& v = raw(key);
    double out = 0.0;
    const char* b = v.text.data();
    const char* e = b + v.text.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e || !std::isfinite(out)) bad(key, v, "a finite number");
    return out;
  }
  double angle(const std::string& key) const {
    const Value& v = raw(key);
    double out = 0.0;
    if (softring_parse_angle_pi(v.text.c_str(), &out) != SOFTRING_OK) {
      bad(key, v, "an angle in units of pi such as 1/3 or 0.5");
    }
    return out;
  }
  long long integer(const std::string& key) const {
    const Value& v = raw(key);
    long long out = 0;
    const char* b = v.text.data();
    const char* e = b + v.text.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e) bad(key, v, "an integer");
    return out;
  }
  int small_int(const std::string& key) const {
    const long long v = integer(key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      bad(key, raw(key), "an integer in int range");
    }
    return static_cast<int>(v);
  }
  std::uint64_t u64(const std::string& key) const {
    const Value& v = raw(key);
    std::uint64_t out = 0;
    const char* b = v.text.data();
    const char* e = b + v.text.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e) bad(key, v, "an unsigned 64-bit integer");
    return out;
  }
  bool boolean(const std::string& key) const {
    const Value& v = raw(key);
    if (v.text == "true" || v.text == "1" || v.text == "yes") return true;
    if (v.text == "false" || v.text == "0" || v.text == "no") return false;
    bad(key, v, "true or false");
    return false;
  }

  [[noreturn]] void bad(const std::string& key, const Value& v, const std::string& want) const {
    throw UsageError(v.origin + ": invalid value '" + v.text + "' for " + key + ": expected " +
                     want);
  }
  [[noreturn]] void invalid(const std::string& key, const std::string& why) const {
    const Value& v = raw(key);
    throw UsageError(v.origin + ": " + key + " = " + v.text + ": " + why);
  }

  // Validates every value against its declared kind.
  void validate(const std::vector<Key>& keys) const {
    for (const Key& k : keys) {
      if (raw(k.name).text.empty()) continue;
      switch (k.kind) {
        case Kind::Real: real(k.name); break;
        case Kind::Angle: angle(k.name); break;
        case Kind::Int: integer(k.name); break;
        case Kind::U64: u64(k.name); break;
        case Kind::Bool: boolean(k.name); break;
        case Kind::Text: break;
      }
    }
  }

  // Typed values; angles keep their text in units of pi, unset values are null.
  ordered_json to_json(const std::vector<Key>& keys) const {
    ordered_json j = ordered_json::object();
    for (const Key& k : keys) {
      if (empty(k.name)) {
        j[k.name] = nullptr;
        continue;
      }
      switch (k.kind) {
        case Kind::Real: j[k.name] = real(k.name); break;
        case Kind::Int: j[k.name] = integer(k.name); break;
        case Kind::U64: j[k.name] = u64(k.name); break;
        case Kind::Bool: j[k.name] = boolean(k.name); break;
        case Kind::Angle:
        case Kind::Text: j[k.name] = text(k.name); break;
      }
    }
    return j;
  }

 private:
  std::map<std::string, Value> values_;
};

// ---------------------------------------------------------------- run context

struct Output {
  std::ofstream csv;
  std::string csv_path;
  std::vector<std::string> extra_files;
  std::vector<std::string> warnings;
  std::set<int> truncations;
  std::size_t rows = 0;
  std::size_t failed_rows = 0;
  std::size_t unconverged_rows = 0;
  ordered_json results = ordered_json::object();

  void open(const std::string& path, const std::string& header) {
    csv_path = path;
    csv.open(path, std::ios::binary | std::ios::trunc);
    if (!csv) throw UsageError("cannot open output file " + path);
    csv << header << '\n';
  }
  void warn(const std::string& msg) {
    warnings.push_back(msg);
    std::cerr << "warning: " << msg << '\n';
  }
};

struct Command {
  std::string name;
  std::string description;
  std::vector<Key> keys;
  std::function<void(const Params&, Output&)> run;
};

std::vector<Key> solver_keys() {
  return {
      {"truncation", Kind::Int, "0", "Fourier truncation N; 0 picks ceil(alpha_max R) + 16"},
      {"root_tolerance", Kind::Real, "1e-9", "largest accepted |lambda| at a root"},
      {"convergence_tolerance", Kind::Real, "1e-5", "largest accepted |E(N+8) - E(N)|"},
      {"max_doublings", Kind::Int, "2", "truncation doublings before giving up on convergence"},
      {"scan_points", Kind::Int, "400", "samples per energy window (magnetic field)"},
      {"landau_bands", Kind::Int, "3", "Landau bands searched (magnetic field)"},
      {"max_levels", Kind::Int, "0", "keep only the lowest levels; 0 keeps all"},
      {"window_low", Kind::Real, "", "optional lower energy bound"},
      {"window_high", Kind::Real, "", "optional upper energy bound"},
  };
}

std::vector<Key> common_keys() {
  return {
      {"output", Kind::Text, "", "CSV output path; defaults to <subcommand>.csv"},
      {"jobs", Kind::Int, "1", "worker threads"},
  };
}

softring_solver_options solver_options(const Params& p) {
  softring_solver_options o;
  softring_solver_options_init(&o);
  o.truncation = p.small_int("truncation");
  o.root_tolerance = p.real("root_tolerance");
  o.convergence_tolerance = p.real("convergence_tolerance");
  o.max_doublings = p.small_int("max_doublings");
  o.scan_points = p.small_int("scan_points");
  o.landau_bands = p.small_int("landau_bands");
  o.max_levels = p.small_int("max_levels");
  o.jobs = p.small_int("jobs");
  if (o.jobs < 1) p.invalid("jobs", "must be at least 1");
  const bool lo = !p.empty("window_low");
  const bool hi = !p.empty("window_high");
  if (lo != hi) p.invalid(lo ? "window_low" : "window_high", "window needs both bounds");
  if (lo) {
    o.has_window = 1;
    o.window_low = p.real("window_low");
    o.window_high = p.real("window_high");
  }
  return o;
}

std::vector<double> linear_grid(const Params& p, const std::string& lo_key,
                                const std::string& hi_key, bool angles) {
  const double lo = angles ? p.angle(lo_key) : p.real(lo_key);
  const double hi = angles ? p.angle(hi_key) : p.real(hi_key);
  const long long n = p.integer("points");
  if (n < 1) p.invalid("points", "must be at least 1");
  if (n > 1000000) p.invalid("points", "at most 1000000");
  if (n > 1 && !(hi > lo)) p.invalid(hi_key, "must exceed " + lo_key);
  std::vector<double> g(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] =
        n == 1 ? lo
               : (lo * static_cast<double>(n - 1 - i) + hi * static_cast<double>(i)) /
                     static_cast<double>(n - 1);
  }
  return g;
}

softring_field field_from(const Params& p) {
  const double b = p.real("b");
  const double phi = p.real("phi");
  if (b < 0.0) p.invalid("b", "must be non-negative");
  if (b > 0.0 && phi != 0.0) p.invalid("phi", "a flux line cannot be combined with b > 0");
  if (b > 0.0) return {SOFTRING_FIELD_HOMOGENEOUS, b};
  if (phi != 0.0) return {SOFTRING_FIELD_FLUX, phi};
  return {SOFTRING_FIELD_ZERO, 0.0};
}

ProfilePtr profile_from(const Params& p) {
  softring_profile* raw = nullptr;
  if (!p.empty("profile")) {
    const std::string path = p.text("profile");
    std::ifstream in(path, std::ios::binary);
    if (!in) p.invalid("profile", "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    if (softring_profile_parse(ss.str().c_str(), &raw) != SOFTRING_OK) {
      throw UsageError(path + ": " + softring_last_error());
    }
    return ProfilePtr(raw);
  }
  const double theta = p.angle("theta");
  if (theta == 0.0) {
    check(softring_profile_constant(p.real("alpha"), &raw), "profile");
  } else {
    check(softring_profile_broken_ring(p.real("alpha"), theta, p.angle("gap_center"), &raw),
          "profile");
  }
  return ProfilePtr(raw);
}

ProblemPtr problem_from(const Params& p, const softring_profile* profile,
                        std::optional<softring_field> field = {}) {
  const softring_solver_options o = solver_options(p);
  softring_problem* raw = nullptr;
  const softring_field f = field ? *field : field_from(p);
  const softring_status s = softring_problem_create(p.real("radius"), profile, f, &o, &raw);
  if (s == SOFTRING_ERR_DOMAIN || s == SOFTRING_ERR_INVALID_ARGUMENT) {
    throw UsageError(std::string("invalid problem: ") + softring_last_error());
  }
  check(s, "problem");
  return ProblemPtr(raw);
}

softring_ring_setup ring_setup(const Params& p) {
  softring_ring_setup s;
  softring_ring_setup_init(&s);
  s.radius = p.has("radius") ? p.real("radius") : 1.0;
  s.alpha = p.has("alpha") ? p.real("alpha") : 1.0;
  s.theta = p.has("theta") ? p.angle("theta") : 0.0;
  s.gap_center = p.has("gap_center") ? p.angle("gap_center") : 0.0;
  s.solver = solver_options(p);
  return s;
}

const char* row_status(bool converged) { return converged ? "ok" : "unconverged"; }

const char* kSweepHeader = "parameter,level_index,m_label_or_branch,energy,converged,N,status";

void write_table(const softring_table* t, Output& out, std::optional<double> param_override = {},
                 const std::vector<double>* param_map = nullptr) {
  const std::size_t n = softring_table_rows(t);
  for (std::size_t i = 0; i < n; ++i) {
    softring_sweep_row r;
    const char* msg = nullptr;
    check(softring_table_row(t, i, &r, &msg), "table_row");
    double param = param_override.value_or(r.parameter);
    if (param_map) param = (*param_map)[i];
    if (r.failed) {
      out.csv << fmt(param) << ",,,nan,0," << r.truncation << ",failed\n";
      out.warn("point " + fmt(param) + " failed: " + (msg ? msg : ""));
      ++out.failed_rows;
    } else {
      out.csv << fmt(param) << ',' << r.level_index << ',' << r.label << ',' << fmt(r.energy)
              << ',' << (r.converged ? 1 : 0) << ',' << r.truncation << ','
              << row_status(r.converged) << '\n';
      out.truncations.insert(r.truncation);
      if (!r.converged) ++out.unconverged_rows;
    }
    ++out.rows;
  }
}

softring_sweep_options sweep_options(const Params& p) {
  softring_sweep_options o;
  softring_sweep_options_init(&o);
  if (p.has("levels_per_band")) o.levels_per_band = p.small_int("levels_per_band");
  if (p.has("m_limit")) o.m_limit = p.small_int("m_limit");
  if (p.has("symmetric")) o.allow_symmetric = p.boolean("symmetric") ? 1 : 0;
  return o;
}

TablePtr run_sweep(const softring_ring_setup& s, softring_sweep_parameter param,
                   const std::vector<double>& grid, const softring_sweep_options& o) {
  softring_table* raw = nullptr;
  const softring_status st = softring_sweep(&s, param, grid.data(), grid.size(), &o, &raw);
  if (st == SOFTRING_ERR_DOMAIN || st == SOFTRING_ERR_INVALID_ARGUMENT) {
    throw UsageError(std::string("invalid sweep: ") + softring_last_error());
  }
  check(st, "sweep");
  return TablePtr(raw);
}

std::vector<Key> sweep_keys() {
  return {
      {"levels_per_band", Kind::Int, "0", "rows kept per band at each point; 0 keeps all"},
      {"m_limit", Kind::Int, "0", "largest |m| for full rings; 0 picks automatically"},
      {"symmetric", Kind::Bool, "true", "solve full rings wave by wave with m labels"},
  };
}

std::vector<Key> concat(std::vector<std::vector<Key>> parts) {
  std::vector<Key> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// ---------------------------------------------------------------- subcommands

void cmd_sweep_radius(const Params& p, Output& out) {
  const std::vector<double> grid = linear_grid(p, "r_min", "r_max", false);
  if (grid.front() <= 0.0) p.invalid("r_min", "must be positive");
  softring_ring_setup s = ring_setup(p);
  s.field = field_from(p);
  out.open(out.csv_path, kSweepHeader);
  write_table(run_sweep(s, SOFTRING_SWEEP_RADIUS, grid, sweep_options(p)).get(), out);
}

void cmd_sweep_gap(const Params& p, Output& out) {
  const std::vector<double> grid = linear_grid(p, "theta_min", "theta_max", true);
  if (grid.front() < 0.0) p.invalid("theta_min", "must be non-negative");
  if (grid.back() >= 2.0 * M_PI) p.invalid("theta_max", "must be below 2");
  softring_ring_setup s = ring_setup(p);
  s.field = field_from(p);
  out.open(out.csv_path, kSweepHeader);
  write_table(run_sweep(s, SOFTRING_SWEEP_GAP, grid, sweep_options(p)).get(), out);
}

void cmd_sweep_bfield(const Params& p, Output& out) {
  const std::vector<double> grid = linear_grid(p, "b_min", "b_max", false);
  if (grid.front() <= 0.0) p.invalid("b_min", "must be positive");
  const softring_ring_setup s = ring_setup(p);
  out.open(out.csv_path, kSweepHeader);
  write_table(run_sweep(s, SOFTRING_SWEEP_FIELD, grid, sweep_options(p)).get(), out);
}

void cmd_sweep_gap_magnetic(const Params& p, Output& out) {
  const std::vector<double> grid = linear_grid(p, "theta_min", "theta_max", true);
  if (grid.front() < 0.0) p.invalid("theta_min", "must be non-negative");
  if (grid.back() >= 2.0 * M_PI) p.invalid("theta_max", "must be below 2");
  if (p.real("b") <= 0.0) p.invalid("b", "must be positive");
  softring_ring_setup s = ring_setup(p);
  s.field = {SOFTRING_FIELD_HOMOGENEOUS, p.real("b")};
  out.open(out.csv_path, kSweepHeader);
  write_table(run_sweep(s, SOFTRING_SWEEP_GAP, grid, sweep_options(p)).get(), out);
  std::vector<double> landau(static_cast<std::size_t>(s.solver.landau_bands));
  check(softring_landau_levels(p.real("b"), 0, s.solver.landau_bands, landau.data()),
        "landau_levels");
  out.results["landau_levels"] = landau;
}

void cmd_sweep_flux(const Params& p, Output& out) {
  const std::vector<double> grid = linear_grid(p, "phi_min", "phi_max", false);
  const softring_ring_setup s = ring_setup(p);
  const softring_sweep_options o = sweep_options(p);
  out.open(out.csv_path, kSweepHeader);
  write_table(run_sweep(s, SOFTRING_SWEEP_FLUX, grid, o).get(), out);

  if (!p.boolean("compare_homogeneous")) return;
  // Homogeneous field threading the same flux through the ring: B = 2|phi|/R^2.
  std::vector<double> phis, fields;
  for (double phi : grid) {
    if (phi == 0.0) continue;
    phis.push_back(phi);
    fields.push_back(2.0 * std::fabs(phi) / (s.radius * s.radius));
  }
  const std::filesystem::path base(out.csv_path);
  const std::string path =
      (base.parent_path() / (base.stem().string() + "_homogeneous.csv")).string();
  Output side;
  side.open(path, kSweepHeader);
  const TablePtr t = run_sweep(s, SOFTRING_SWEEP_FIELD, fields, o);
  std::vector<double> map;
  const std::size_t n = softring_table_rows(t.get());
  for (std::size_t i = 0; i < n; ++i) {
    softring_sweep_row r;
    check(softring_table_row(t.get(), i, &r, nullptr), "table_row");
    const auto it = std::find(fields.begin(), fields.end(), r.parameter);
    map.push_back(phis[static_cast<std::size_t>(it - fields.begin())]);
  }
  write_table(t.get(), side, {}, &map);
  out.extra_files.push_back(path);
  out.truncations.insert(side.truncations.begin(), side.truncations.end());
  for (auto& w : side.warnings) out.warnings.push_back("homogeneous comparison: " + w);
  out.results["homogeneous_rows"] = side.rows;
}

std::vector<int> parse_levels(const Params& p, std::size_t available) {
  const std::string spec = p.text("levels");
  std::vector<int> out;
  if (spec == "all") {
    for (std::size_t i = 0; i < available; ++i) out.push_back(static_cast<int>(i));
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || v < 0) {
      p.invalid("levels", "expected 'all' or a comma separated list of level indices");
    }
    out.push_back(v);
  }
  return out;
}

void cmd_eigenfunction(const Params& p, Output& out) {
  const ProfilePtr profile = profile_from(p);
  const ProblemPtr problem = problem_from(p, profile.get());
  softring_spectrum* raw = nullptr;
  check(softring_solve(problem.get(), &raw), "solve");
  const SpectrumPtr spec(raw);
  const std::size_t n = softring_spectrum_size(spec.get());

  out.open(out.csv_path, "parameter,level_index,m_label_or_branch,energy,converged,N,band,status");
  const double theta = p.empty("profile") ? p.angle("theta") : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    softring_level_info info;
    check(softring_spectrum_level(spec.get(), i, &info), "level");
    out.csv << fmt(theta) << ',' << i << ',' << info.branch_index << ',' << fmt(info.energy) << ','
            << info.converged << ',' << info.truncation << ',' << info.band << ','
            << row_status(info.converged) << '\n';
    out.truncations.insert(info.truncation);
    ++out.rows;
    if (!info.converged) {
      ++out.unconverged_rows;
      out.warn("level " + std::to_string(i) + " is not converged in N");
    }
  }
  if (n == 0) out.warn("no discrete spectrum found");

  const int points = p.small_int("grid_points");
  if (points < 2 || points > 2001) p.invalid("grid_points", "must lie in [2, 2001]");
  const double half_width = p.real("half_width");
  if (half_width < 0.0) p.invalid("half_width", "must be non-negative");

  const std::filesystem::path base(out.csv_path);
  const std::string path = (base.parent_path() / (base.stem().string() + "_psi.csv")).string();
  std::ofstream psi(path, std::ios::binary | std::ios::trunc);
  if (!psi) throw UsageError("cannot open output file " + path);
  psi << "level_index,x,y,re,im,abs\n";
  ordered_json norms = ordered_json::array();
  const std::size_t cells = static_cast<std::size_t>(points) * static_cast<std::size_t>(points);
  std::vector<double> axis(static_cast<std::size_t>(points)), re(cells), im(cells);
  for (int level : parse_levels(p, n)) {
    if (static_cast<std::size_t>(level) >= n) {
      out.warn("level " + std::to_string(level) + " does not exist (" + std::to_string(n) +
               " levels found)");
      continue;
    }
    double norm = 0.0;
    check(softring_reconstruct(problem.get(), spec.get(), static_cast<std::size_t>(level),
                               half_width, points, axis.data(), re.data(), im.data(), &norm),
          "reconstruct");
    for (int iy = 0; iy < points; ++iy) {
      for (int ix = 0; ix < points; ++ix) {
        const std::size_t k = static_cast<std::size_t>(iy) * static_cast<std::size_t>(points) +
                              static_cast<std::size_t>(ix);
        psi << level << ',' << fmt(axis[static_cast<std::size_t>(ix)]) << ','
            << fmt(axis[static_cast<std::size_t>(iy)]) << ',' << fmt(re[k]) << ',' << fmt(im[k])
            << ',' << fmt(std::hypot(re[k], im[k])) << '\n';
      }
    }
    norms.push_back({{"level_index", level}, {"squared_norm", norm}});
  }
  out.extra_files.push_back(path);
  out.results["wavefunctions"] = norms;
}

void cmd_localization(const Params& p, Output& out) {
  softring_localization_config c;
  softring_localization_config_init(&c);
  const long long samples = p.integer("samples");
  if (samples < 1 || samples > 10000000) p.invalid("samples", "must lie in [1, 1e7]");
  c.n_samples = static_cast<int>(samples);
  c.n_segments = p.small_int("segments");
  c.alpha0 = p.real("alpha0");
  c.dispersion_min = p.real("dispersion_min");
  c.dispersion_max = p.real("dispersion_max");
  c.radius = p.real("radius");
  c.seed = p.u64("seed");
  c.root_tolerance = p.real("root_tolerance");
  c.convergence_tolerance = p.real("convergence_tolerance");
  c.jobs = p.small_int("jobs");
  if (c.jobs < 1) p.invalid("jobs", "must be at least 1");

  std::vector<softring_localization_sample> s(static_cast<std::size_t>(c.n_samples));
  const softring_status st = softring_localization_study(&c, s.data(), s.size());
  if (st == SOFTRING_ERR_DOMAIN || st == SOFTRING_ERR_INVALID_ARGUMENT) {
    throw UsageError(std::string("invalid localization study: ") + softring_last_error());
  }
  check(st, "localization_study");

  out.open(out.csv_path, "sample,seed,dispersion,delta_psi,energy,converged,N,status");
  std::vector<double> xs, ys;
  for (const auto& r : s) {
    out.csv << r.index << ',' << r.seed << ',' << fmt(r.dispersion) << ',';
    if (r.ok) {
      out.csv << fmt(r.delta_psi) << ',' << fmt(r.energy) << ',' << r.converged << ','
              << r.truncation << ',' << row_status(r.converged) << '\n';
      if (!r.converged) ++out.unconverged_rows;
      xs.push_back(r.dispersion);
      ys.push_back(r.delta_psi);
      out.truncations.insert(r.truncation);
    } else {
      out.csv << "nan,nan,0," << r.truncation << ",failed\n";
      ++out.failed_rows;
    }
    ++out.rows;
  }
  if (out.failed_rows) out.warn(std::to_string(out.failed_rows) + " samples failed");
  if (xs.size() >= 2) {
    double rho = 0.0;
    check(softring_spearman(xs.data(), ys.data(), xs.size(), &rho), "spearman");
    out.results["spearman_dispersion_delta_psi"] = rho;
  }
}

void cmd_persistent_current(const Params& p, Output& out) {
  const std::vector<double> grid = linear_grid(p, "phi_min", "phi_max", false);
  const int levels = p.small_int("levels");
  if (levels < 1) p.invalid("levels", "must be at least 1");
  const double delta = p.real("delta");
  if (!(delta > 0.0 && delta < 0.25)) p.invalid("delta", "must lie in (0, 0.25)");
  const ProfilePtr profile = profile_from(p);

  out.open(out.csv_path, "parameter,level_index,m_label_or_branch,energy,converged,N,current,status");
  for (double phi : grid) {
    const ProblemPtr problem =
        problem_from(p, profile.get(), softring_field{SOFTRING_FIELD_FLUX, phi});
    for (int level = 0; level < levels; ++level) {
      softring_current_sample c;
      double critical = 0.0;
      const softring_status st =
          softring_persistent_current(problem.get(), level, phi, delta, &c, &critical);
      ++out.rows;
      if (st == SOFTRING_OK) {
        out.csv << fmt(phi) << ',' << level << ',' << level << ',' << fmt(c.energy) << ','
                << c.converged << ',' << c.truncation << ',' << fmt(c.current) << ','
                << row_status(c.converged) << '\n';
        if (!c.converged) ++out.unconverged_rows;
        out.truncations.insert(c.truncation);
        continue;
      }
      out.csv << fmt(phi) << ',' << level << ',' << level << ",nan,0,0,nan,failed\n";
      ++out.failed_rows;
      std::string why = softring_last_error();
      if (st == SOFTRING_ERR_NO_LEVEL && std::isfinite(critical)) {
        why += " (critical flux " + fmt(critical) + ")";
      } else if (st != SOFTRING_ERR_NO_LEVEL && st != SOFTRING_ERR_DOMAIN) {
        check(st, "persistent_current");
      }
      out.warn("phi " + fmt(phi) + ", level " + std::to_string(level) + ": " + why);
    }
  }
}

// ---------------------------------------------------------------- registry

std::vector<Command> commands() {
  const std::vector<Key> ring = {
      {"theta", Kind::Angle, "0", "gap width in units of pi; 0 is a full ring"},
      {"gap_center", Kind::Angle, "0", "gap center in units of pi"},
  };
  std::vector<Command> c;
  c.push_back({"sweep-radius", "Full-ring spectrum against the radius",
               concat({common_keys(),
                       {{"alpha", Kind::Real, "5", "coupling strength"},
                        {"r_min", Kind::Real, "0.1", "first radius"},
                        {"r_max", Kind::Real, "5", "last radius"},
                        {"points", Kind::Int, "50", "grid size"},
                        {"b", Kind::Real, "0", "homogeneous field"},
                        {"phi", Kind::Real, "0", "flux line"}},
                       ring, sweep_keys(), solver_keys()}),
               cmd_sweep_radius});
  c.push_back({"sweep-gap", "Broken-ring spectrum against the gap width",
               concat({common_keys(),
                       {{"alpha", Kind::Real, "10", "coupling strength"},
                        {"radius", Kind::Real, "2", "ring radius"},
                        {"theta_min", Kind::Angle, "0", "first gap width in units of pi"},
                        {"theta_max", Kind::Angle, "1.9", "last gap width in units of pi"},
                        {"points", Kind::Int, "39", "grid size"},
                        {"gap_center", Kind::Angle, "0", "gap center in units of pi"},
                        {"b", Kind::Real, "0", "homogeneous field"},
                        {"phi", Kind::Real, "0", "flux line"}},
                       sweep_keys(), solver_keys()}),
               cmd_sweep_gap});
  c.push_back({"eigenfunction", "Spectrum and wave functions of one configuration",
               concat({common_keys(),
                       {{"alpha", Kind::Real, "1", "coupling strength"},
                        {"radius", Kind::Real, "10", "ring radius"},
                        {"profile", Kind::Text, "", "coupling profile file; replaces alpha and theta"},
                        {"b", Kind::Real, "0", "homogeneous field"},
                        {"phi", Kind::Real, "0", "flux line"},
                        {"levels", Kind::Text, "0,8", "level indices to reconstruct, or 'all'"},
                        {"grid_points", Kind::Int, "101", "samples per axis"},
                        {"half_width", Kind::Real, "0", "half width of the square; 0 means 2R"},
                        {"theta", Kind::Angle, "1/3", "gap width in units of pi"},
                        {"gap_center", Kind::Angle, "0", "gap center in units of pi"}},
                       solver_keys()}),
               cmd_eigenfunction});
  c.push_back({"localization", "Ground-state localization over random coupling profiles",
               concat({common_keys(),
                       {{"samples", Kind::Int, "500", "number of random profiles"},
                        {"segments", Kind::Int, "10", "equal segments per profile"},
                        {"alpha0", Kind::Real, "1", "mean coupling"},
                        {"dispersion_min", Kind::Real, "0", "smallest dispersion"},
                        {"dispersion_max", Kind::Real, "0.9", "largest dispersion"},
                        {"radius", Kind::Real, "5", "ring radius"},
                        {"seed", Kind::U64, "1", "master seed; SOFTRING_SEED overrides the config"},
                        {"root_tolerance", Kind::Real, "1e-9", "largest accepted |lambda| at a root"},
                        {"convergence_tolerance", Kind::Real, "1e-5",
                         "largest accepted |E(N+8) - E(N)|"}}}),
               cmd_localization});
  c.push_back({"sweep-bfield", "Full-ring spectrum against a homogeneous field",
               concat({common_keys(),
                       {{"alpha", Kind::Real, "1", "coupling strength"},
                        {"radius", Kind::Real, "5", "ring radius"},
                        {"b_min", Kind::Real, "0.02", "first field"},
                        {"b_max", Kind::Real, "1", "last field"},
                        {"points", Kind::Int, "50", "grid size"}},
                       ring, sweep_keys(), solver_keys()}),
               cmd_sweep_bfield});
  std::vector<Key> gm_sweep = sweep_keys();
  gm_sweep[0].fallback = "7";
  c.push_back({"sweep-gap-magnetic", "Broken-ring spectrum in a homogeneous field against the gap",
               concat({common_keys(),
                       {{"alpha", Kind::Real, "1", "coupling strength"},
                        {"radius", Kind::Real, "5", "ring radius"},
                        {"b", Kind::Real, "0.2", "homogeneous field"},
                        {"theta_min", Kind::Angle, "0", "first gap width in units of pi"},
                        {"theta_max", Kind::Angle, "1.9", "last gap width in units of pi"},
                        {"points", Kind::Int, "39", "grid size"},
                        {"gap_center", Kind::Angle, "0", "gap center in units of pi"}},
                       gm_sweep, solver_keys()}),
               cmd_sweep_gap_magnetic});
  c.push_back({"sweep-flux", "Spectrum against an Aharonov-Bohm flux",
               concat({common_keys(),
                       {{"alpha", Kind::Real, "1", "coupling strength"},
                        {"radius", Kind::Real, "10", "ring radius"},
                        {"phi_min", Kind::Real, "-1", "first flux"},
                        {"phi_max", Kind::Real, "1", "last flux"},
                        {"points", Kind::Int, "201", "grid size"},
                        {"compare_homogeneous", Kind::Bool, "false",
                         "also sweep a homogeneous field of the same flux"}},
                       ring, sweep_keys(), solver_keys()}),
               cmd_sweep_flux});
  c.push_back({"persistent-current", "Persistent currents -dE/dphi of the lowest levels",
               concat({common_keys(),
                       {{"alpha", Kind::Real, "1", "coupling strength"},
                        {"radius", Kind::Real, "10", "ring radius"},
                        {"profile", Kind::Text, "", "coupling profile file; replaces alpha and theta"},
                        {"phi_min", Kind::Real, "-0.9", "first flux"},
                        {"phi_max", Kind::Real, "0.9", "last flux"},
                        {"points", Kind::Int, "36", "grid size"},
                        {"levels", Kind::Int, "3", "number of levels, lowest first"},
                        {"delta", Kind::Real, "1e-3", "finite-difference half step in flux"}},
                       ring, solver_keys()}),
               cmd_persistent_current});
  return c;
}

// ---------------------------------------------------------------- driver

void load_config(const std::string& path, const Command& cmd, Params& params) {
  softring_config* raw = nullptr;
  if (softring_config_parse_file(path.c_str(), &raw) != SOFTRING_OK) {
    throw UsageError(path + ": " + softring_last_error());
  }
  const ConfigPtr cfg(raw);
  std::set<std::string> known;
  for (const Key& k : cmd.keys) known.insert(k.name);
  const std::size_t n = softring_config_size(cfg.get());
  for (std::size_t i = 0; i < n; ++i) {
    const char* key = nullptr;
    const char* value = nullptr;
    int line = 0;
    check(softring_config_entry(cfg.get(), i, &key, &value, &line), "config_entry");
    const std::string origin = path + ":" + std::to_string(line);
    std::string k = key;
    std::replace(k.begin(), k.end(), '-', '_');
    if (k == "subcommand") {
      if (cmd.name != value) {
        throw UsageError(origin + ": config is for '" + value + "', not '" + cmd.name + "'");
      }
      continue;
    }
    if (!known.count(k)) {
      throw UsageError(origin + ": unknown key '" + key + "' for " + cmd.name);
    }
    params.set(k, value, origin);
  }
}

std::string iso_time_utc() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int run_command(const Command& cmd, const std::string& config_path,
                const std::map<std::string, std::string>& flags) {
  Params params;
  for (const Key& k : cmd.keys) params.set(k.name, k.fallback, "default");
  if (!config_path.empty()) load_config(config_path, cmd, params);
  if (params.has("seed")) {
    if (const char* env = std::getenv("SOFTRING_SEED"); env && *env) {
      params.set("seed", env, "SOFTRING_SEED");
    }
  }
  for (const auto& [k, v] : flags) params.set(k, v, flag_name(k));
  params.validate(cmd.keys);

  Output out;
  out.csv_path = params.empty("output") ? cmd.name + ".csv" : params.text("output");
  const auto t0 = std::chrono::steady_clock::now();
  cmd.run(params, out);
  out.csv.close();
  if (!out.csv) throw LibraryError(SOFTRING_ERR_INTERNAL, "failed writing " + out.csv_path);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out.unconverged_rows > 0) {
    out.warn(std::to_string(out.unconverged_rows) + " rows missed the convergence tolerance");
  }

  ordered_json m;
  m["subcommand"] = cmd.name;
  m["softring_version"] = softring_version();
  m["created_utc"] = iso_time_utc();
  m["csv"] = out.csv_path;
  m["extra_files"] = out.extra_files;
  m["parameters"] = params.to_json(cmd.keys);
  ordered_json origins = ordered_json::object();
  for (const Key& k : cmd.keys) origins[k.name] = params.raw(k.name).origin;
  m["parameter_origins"] = origins;
  m["tolerances"] = {
      {"root_tolerance", params.real("root_tolerance")},
      {"convergence_tolerance", params.real("convergence_tolerance")},
  };
  m["truncations_used"] = std::vector<int>(out.truncations.begin(), out.truncations.end());
  m["rows"] = out.rows;
  m["failed_rows"] = out.failed_rows;
  m["unconverged_rows"] = out.unconverged_rows;
  m["warnings"] = out.warnings;
  m["results"] = out.results;
  m["wall_time_seconds"] = wall;

  const std::filesystem::path base(out.csv_path);
  const std::filesystem::path manifest = base.parent_path() / (base.stem().string() + ".manifest.json");
  std::ofstream mf(manifest, std::ios::binary | std::ios::trunc);
  if (!mf) throw UsageError("cannot open manifest file " + manifest.string());
  mf << m.dump(2) << '\n';
  std::cerr << cmd.name << ": " << out.rows << " rows -> " << out.csv_path << " ("
            << fmt(std::round(wall * 1000.0) / 1000.0) << " s)\n";
  return 0;
}

int run_selftest(bool specfun_only) {
  softring_report* raw = nullptr;
  const auto t0 = std::chrono::steady_clock::now();
  check(softring_selftest(specfun_only ? 1 : 0, &raw), "selftest");
  const ReportPtr report(raw);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool all = true;
  const std::size_t n = softring_report_size(report.get());
  for (std::size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    const char* detail = nullptr;
    int passed = 0;
    double err = 0.0, tol = 0.0;
    check(softring_report_entry(report.get(), i, &name, &passed, &err, &tol, &detail), "report");
    all = all && passed;
    std::printf("%-28s %s  max_error=%.3e  tolerance=%.1e  %s\n", name, passed ? "PASS" : "FAIL",
                err, tol, detail);
  }
  std::printf("%zu checks, %s, %.2f s\n", n, all ? "all passed" : "FAILURES", wall);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softring: bound states of a particle on a soft ring with a delta interaction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(softring_version()));

  const std::vector<Command> cmds = commands();
  std::vector<std::map<std::string, std::string>> flag_values(cmds.size());
  std::vector<std::string> config_paths(cmds.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    CLI::App* sub = app.add_subcommand(cmds[i].name, cmds[i].description);
    sub->add_option("--config", config_paths[i], "key = value configuration file");
    for (const Key& k : cmds[i].keys) {
      std::string help = k.help;
      if (!k.fallback.empty()) help += " [default: " + k.fallback + "]";
      auto* opt = sub->add_option_function<std::string>(
          flag_name(k.name),
          [&flag_values, i, name = k.name](const std::string& v) { flag_values[i][name] = v; },
          help);
      if (k.kind == Kind::Angle) opt->type_name("PI_UNITS");
    }
    subs.push_back(sub);
  }
  bool specfun_only = false;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the identity and consistency suites");
  selftest->add_flag("--specfun-only", specfun_only, "only the special-function identities");

  CLI11_PARSE(app, argc, argv);

  try {
    if (selftest->parsed()) return run_selftest(specfun_only);
    for (std::size_t i = 0; i < cmds.size(); ++i) {
      if (subs[i]->parsed()) return run_command(cmds[i], config_paths[i], flag_values[i]);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

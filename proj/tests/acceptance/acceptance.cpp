// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate. One line per criterion:
//   PASS|FAIL  <key>  <summary>  [<seconds> s]
// Exit status is the number of failed criteria.
//
//   softring_acceptance                 run everything
//   softring_acceptance --only k1,k2    run a subset
//   softring_acceptance --list          print the keys

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "analysis.hpp"
#include "basis.hpp"
#include "domain.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "selftest.hpp"
#include "solver.hpp"

namespace {

using namespace softring;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string summary;
};

struct Criterion {
  const char* key;
  double time_limit;  // seconds; 0 means no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

SpectralProblem make_problem(double radius, CouplingProfile c, FieldConfig f) {
  SpectralProblem p;
  p.geometry = RingGeometry(radius);
  p.coupling = std::move(c);
  p.field = f;
  return p;
}

Outcome broken_ring_spectrum() {
  const auto spec =
      find_discrete_spectrum(make_problem(10.0, make_broken_ring(1.0, kPi / 3.0), ZeroField{}));
  if (spec.size() < 9) return {false, "fewer than 9 levels (" + std::to_string(spec.size()) + ")"};
  const Eigenpair& e0 = spec[0];
  const Eigenpair& e8 = spec[8];
  const bool ok = std::fabs(e0.energy + 0.249) <= 0.002 && std::fabs(e8.energy + 0.00415) <= 0.0005 &&
                  e0.converged && e8.converged;
  std::ostringstream s;
  s.precision(7);
  s << "E0=" << e0.energy << " E8=" << e8.energy << " N=" << e8.truncation
    << " converged=" << (e0.converged && e8.converged ? "yes" : "no")
    << " dE8(N)=" << e8.convergence_delta;
  return {ok, s.str()};
}

Outcome magnetic_broken_ring() {
  const auto near = find_discrete_spectrum(
      make_problem(5.0, make_broken_ring(1.0, kPi / 10.0), HomogeneousField{0.2}));
  const auto half = find_discrete_spectrum(
      make_problem(5.0, make_broken_ring(1.0, kPi), HomogeneousField{0.2}));
  if (near.empty()) return {false, "no levels at theta = pi/10"};
  const double ground = near.front().energy;
  double best = INFINITY, best_e = NAN;
  for (const Eigenpair& e : half) {
    if (e.band != 1) continue;
    if (std::fabs(e.energy - 0.552) < best) {
      best = std::fabs(e.energy - 0.552);
      best_e = e.energy;
    }
  }
  const bool ok = std::fabs(ground + 0.193) <= 0.003 && best <= 0.01;
  std::ostringstream s;
  s.precision(7);
  s << "ground(pi/10)=" << ground << " nearest band-1 level(pi)=" << best_e;
  return {ok, s.str()};
}

Outcome bound_state_count() {
  // alpha R = 2|m| (1 -+ 10%) at R = 2; the m-wave exists only above threshold.
  int wrong = 0, checks = 0;
  std::ostringstream s;
  for (int m = 1; m <= 3; ++m) {
    for (double factor : {0.9, 1.1}) {
      const double radius = 2.0;
      const double alpha = 2.0 * m * factor / radius;
      const bool expect = factor > 1.0;
      // Partial-wave route.
      const auto sym = symmetric_spectrum(alpha, radius, ZeroField{}, m, m);
      const bool has_sym = !sym.empty();
      // General-solver route: 1 + 2 * #{k >= 1 : alpha R > 2k} levels.
      const auto gen = find_discrete_spectrum(
          make_problem(radius, CouplingProfile::constant(alpha), ZeroField{}));
      int expected_count = 1;
      for (int k = 1; 2.0 * k < alpha * radius; ++k) expected_count += 2;
      const bool has_gen = static_cast<int>(gen.size()) == expected_count &&
                           static_cast<int>(gen.size()) >= 1 + 2 * (expect ? m : m - 1);
      checks += 2;
      if (has_sym != expect) ++wrong;
      if (!has_gen) ++wrong;
      s << " m=" << m << (expect ? "+" : "-") << (has_sym == expect && has_gen ? "ok" : "BAD");
    }
  }
  return {wrong == 0, std::to_string(checks - wrong) + "/" + std::to_string(checks) + s.str()};
}

Outcome strong_coupling() {
  const double alpha = 20.0, radius = 5.0;
  const auto sym = symmetric_spectrum(alpha, radius, ZeroField{}, 0, 2);
  double worst = 0.0;
  std::ostringstream s;
  s.precision(4);
  for (int m = 0; m <= 2; ++m) {
    const auto it = std::find_if(sym.begin(), sym.end(), [&](const SymmetricLevel& l) { return l.m == m; });
    if (it == sym.end()) return {false, "missing m = " + std::to_string(m)};
    const double approx = -alpha * alpha / 4.0 + (m * m - 0.25) / (radius * radius);
    worst = std::max(worst, std::fabs(it->energy - approx));
  }
  s << "max |E_m - asymptote| = " << worst << " (tol 1e-3)";
  return {worst <= 1e-3, s.str()};
}

double ground_energy(double alpha, double radius) {
  const auto sym = symmetric_spectrum(alpha, radius, ZeroField{}, 0, 0);
  if (sym.empty()) throw NoLevelError("no ground state", NAN);
  return sym.front().energy;
}

Outcome weak_coupling() {
  // Literal asymptote -(4/R^2) exp(-2/(alpha R)), R = 1.
  std::vector<double> err;
  for (double ar : {0.4, 0.3, 0.2}) {
    const double e0 = ground_energy(ar, 1.0);
    err.push_back(std::fabs(e0 / (-4.0 * std::exp(-2.0 / ar)) - 1.0));
  }
  const bool ok = err[1] < err[0] && err[2] < err[1];
  std::ostringstream s;
  s.precision(6);
  s << "rel. errors " << err[0] << ", " << err[1] << ", " << err[2]
    << (ok ? "" : " (tend to 1 - exp(-2 gamma) = 0.684764)");
  return {ok, s.str()};
}

Outcome weak_coupling_euler() {
  // Same trend check with the exp(-2 gamma) prefactor of the small-z limit.
  std::vector<double> err;
  const double g = 0.57721566490153286;
  for (double ar : {0.4, 0.3, 0.2}) {
    const double e0 = ground_energy(ar, 1.0);
    err.push_back(std::fabs(e0 / (-4.0 * std::exp(-2.0 * g - 2.0 / ar)) - 1.0));
  }
  std::ostringstream s;
  s.precision(6);
  s << "rel. errors " << err[0] << ", " << err[1] << ", " << err[2];
  return {err[1] < err[0] && err[2] < err[1], s.str()};
}

Outcome consistency_oracle() {
  Rng rng(20260415);
  double worst = 0.0;
  int compared = 0;
  std::ostringstream bad;
  for (int t = 0; t < 20; ++t) {
    const double alpha = rng.uniform(0.5, 2.5);
    const double radius = rng.uniform(0.8, 3.0);
    FieldConfig field;
    switch (t % 3) {
      case 0: field = ZeroField{}; break;
      case 1: field = HomogeneousField{rng.uniform(0.2, 1.0)}; break;
      default: field = FluxLine{rng.uniform(-0.9, 0.9)}; break;
    }
    SpectralProblem p = make_problem(radius, CouplingProfile::constant(alpha), field);
    const int n = p.default_truncation();
    const auto gen = solve_at_truncation(p, n);
    const auto sym = symmetric_spectrum(alpha, radius, field, -n, n, p.landau_bands);
    std::vector<double> a, b;
    for (const auto& e : gen) a.push_back(e.energy);
    for (const auto& l : sym) b.push_back(l.energy);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a.size() != b.size()) {
      bad << " trial " << t << " (" << field_name(field) << "): " << a.size() << " vs " << b.size();
      worst = INFINITY;
      continue;
    }
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
    compared += static_cast<int>(a.size());
  }
  std::ostringstream s;
  s.precision(3);
  s << compared << " levels in 20 trials, max |dE| = " << worst << " (tol 1e-8)" << bad.str();
  return {worst <= 1e-8, s.str()};
}

// Whether the level of partial wave m = 0 is present in the general-solver
// spectrum of a full ring (constant coupling: u is a unit vector at m).
bool has_m0(const SpectralProblem& p) {
  for (const Eigenpair& e : find_discrete_spectrum(p)) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < e.u.size(); ++i) {
      if (std::abs(e.u[i]) > std::abs(e.u[k])) k = i;
    }
    if (static_cast<int>(k) + e.m_min() == 0) return true;
  }
  return false;
}

Outcome ab_critical_flux() {
  const CouplingProfile c = CouplingProfile::constant(1.0);
  int wrong = 0;
  std::ostringstream s;
  for (double phi : {0.0, 0.25, 0.45, 0.499, 0.501, 0.55, 0.75}) {
    for (double sign : {1.0, -1.0}) {
      if (phi == 0.0 && sign < 0) continue;
      const double f = sign * phi;
      SpectralProblem p = make_problem(1.0, c, phi == 0.0 ? FieldConfig{ZeroField{}} : FluxLine{f});
      const bool expect = std::fabs(f) < 0.5;
      const bool sym = !symmetric_spectrum(1.0, 1.0, p.field, 0, 0).empty();
      if (has_m0(p) != expect || sym != expect) {
        ++wrong;
        s << " wrong at phi=" << f;
      }
    }
  }
  const CriticalFlux cf = critical_flux(1.0, 1.0, 0);
  if (std::fabs(cf.upper - 0.5) > 1e-3 || std::fabs(cf.lower + 0.5) > 1e-3) {
    ++wrong;
    s << " closed form (" << cf.lower << ", " << cf.upper << ")";
  }
  // Flux-quantum periodicity of the whole spectrum.
  double worst = 0.0;
  for (double phi : {0.13, 0.37, -0.21, 0.5}) {
    const auto a = find_discrete_spectrum(make_problem(1.0, c, FluxLine{phi}));
    const auto b = find_discrete_spectrum(make_problem(1.0, c, FluxLine{phi + 1.0}));
    if (a.size() != b.size()) {
      worst = INFINITY;
      break;
    }
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i].energy - b[i].energy));
  }
  s.precision(3);
  s << " existence checks " << (wrong == 0 ? "ok" : "failed") << ", max |E(phi+1) - E(phi)| = " << worst;
  return {wrong == 0 && worst <= 1e-8, s.str().substr(1)};
}

Outcome specfun_suites() {
  const auto results = run_specfun_selftests();
  bool ok = true;
  double worst_ratio = 0.0;
  std::ostringstream s;
  for (const auto& r : results) {
    ok = ok && r.passed;
    if (!r.passed) s << " " << r.name << " failed (" << r.max_error << ")";
    if (r.tolerance > 0) worst_ratio = std::max(worst_ratio, r.max_error / r.tolerance);
  }
  s.precision(3);
  s << " " << results.size() << " suites, worst error/tolerance = " << worst_ratio;
  return {ok, s.str().substr(1)};
}

Outcome localization_trend() {
  LocalizationStudyConfig c;  // 500 samples, 10 segments, alpha0 = 1, R = 5, [0, 0.9]
  c.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto samples = localization_study(c);
  std::vector<double> x, y;
  for (const auto& s : samples) {
    if (!s.ok) continue;
    x.push_back(s.dispersion);
    y.push_back(s.delta_psi);
  }
  const double rho = spearman_correlation(x, y);
  std::ostringstream s;
  s.precision(4);
  s << x.size() << "/" << samples.size() << " samples, Spearman = " << rho << " (need < -0.3)";
  return {x.size() == samples.size() && rho < -0.3, s.str()};
}

Outcome persistent_current_symmetry() {
  SpectralProblem p = make_problem(10.0, CouplingProfile::constant(1.0), FluxLine{0.0});
  double antisym = 0.0;
  for (double phi : {0.1, 0.2, 0.3, 0.4}) {
    for (int level = 0; level < 3; ++level) {
      const double plus = persistent_current(p, level, phi).current;
      const double minus = persistent_current(p, level, -phi).current;
      antisym = std::max(antisym, std::fabs(plus + minus));
    }
  }
  const double mid = persistent_current(p, 0, 0.5).current;
  std::ostringstream s;
  s.precision(3);
  s << "max |I(phi) + I(-phi)| = " << antisym << ", |I_0(0.5)| = " << std::fabs(mid) << " (tol 1e-3)";
  return {antisym <= 1e-3 && std::fabs(mid) <= 1e-3, s.str()};
}

std::vector<Criterion> criteria() {
  return {
      {"broken-ring-spectrum", 60.0, broken_ring_spectrum},
      {"magnetic-broken-ring", 300.0, magnetic_broken_ring},
      {"bound-state-count", 0.0, bound_state_count},
      {"strong-coupling", 0.0, strong_coupling},
      {"weak-coupling", 0.0, weak_coupling},
      {"consistency-oracle", 0.0, consistency_oracle},
      {"ab-critical-flux", 0.0, ab_critical_flux},
      {"specfun-identities", 10.0, specfun_suites},
      {"localization-trend", 900.0, localization_trend},
      {"persistent-current", 0.0, persistent_current_symmetry},
      // Supplementary; not one of the gate criteria.
      {"weak-coupling-euler", 0.0, weak_coupling_euler},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--list") == 0) {
      for (const auto& c : criteria()) std::printf("%s\n", c.key);
      return 0;
    }
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string k;
      while (std::getline(ss, k, ',')) only.insert(k);
      continue;
    }
    std::fprintf(stderr, "usage: %s [--list] [--only key[,key...]]\n", argv[0]);
    return 255;
  }
  int failed = 0, ran = 0;
  for (const auto& c : criteria()) {
    if (!only.empty() && !only.count(c.key)) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.passed = false;
      o.summary += fmt("; exceeded time limit of %.0f s", c.time_limit);
    }
    if (!o.passed) ++failed;
    std::printf("%s  %-22s %s  [%.2f s]\n", o.passed ? "PASS" : "FAIL", c.key, o.summary.c_str(), secs);
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion matched\n");
    return 255;
  }
  std::printf("%d/%d passed\n", ran - failed, ran);
  return failed;
}

// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "basis.hpp"
#include "domain.hpp"
#include "rng.hpp"
#include "solver.hpp"
#include "specfun.hpp"

namespace softring {

namespace {

namespace sf = specfun;

double rel(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

template <class Body>
SelftestResult run(const std::string& name, double tol, Body&& body) {
  SelftestResult r;
  r.name = name;
  r.tolerance = tol;
  try {
    r.max_error = body();
    r.passed = r.max_error <= tol;
  } catch (const std::exception& e) {
    r.passed = false;
    r.max_error = INFINITY;
    r.detail = e.what();
  }
  return r;
}

double bessel_wronskian() {
  Rng rng(0x5eedULL);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double nu = rng.uniform(0.0, 20.0);
    const double x = 30.0 * (1.0 - rng.uniform01());  // (0, 30]
    const sf::BesselIK b = sf::bessel_ik(nu, x);
    worst = std::max(worst, rel(b.k * b.ip - b.kp * b.i, 1.0 / x));
  }
  return worst;
}

double bessel_recurrences() {
  double worst = 0.0;
  for (double nu = 1.25; nu < 20.0; nu += 1.5) {
    for (double x : {0.05, 0.5, 1.0, 3.0, 7.5, 15.0, 30.0}) {
      const double im = sf::bessel_i(nu - 1.0, x).value, i0 = sf::bessel_i(nu, x).value,
                   ip = sf::bessel_i(nu + 1.0, x).value;
      const double km = sf::bessel_k(nu - 1.0, x).value, k0 = sf::bessel_k(nu, x).value,
                   kp = sf::bessel_k(nu + 1.0, x).value;
      // I_{nu-1} - I_{nu+1} = (2 nu / x) I_nu, K_{nu+1} - K_{nu-1} = (2 nu / x) K_nu
      worst = std::max(worst, rel(im - ip, 2.0 * nu / x * i0));
      worst = std::max(worst, rel(kp - km, 2.0 * nu / x * k0));
    }
  }
  return worst;
}

double kummer_wronskian() {
  double worst = 0.0;
  for (int ia = 0; ia < 20; ++ia) {
    const double a = -4.75 + 0.5 * ia;
    for (int b = 1; b <= 6; ++b) {
      for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 15.0, 20.0}) {
        const double m = sf::kummer_m(a, b, x).value, u = sf::kummer_u(a, b, x).value;
        const double mp = sf::kummer_m_prime(a, b, x).value, up = sf::kummer_u_prime(a, b, x).value;
        const double want = -std::exp(std::lgamma(b) - b * std::log(x) + x) * sf::rgamma(a);
        worst = std::max(worst, rel(m * up - mp * u, want));
      }
    }
  }
  return worst;
}

double kummer_recurrence() {
  // U(a-1) - (x + 2a - b) U(a) + a (a - b + 1) U(a+1) = 0
  double worst = 0.0;
  for (int ia = 0; ia < 12; ++ia) {
    const double a = -2.7 + 0.55 * ia;
    for (int b = 1; b <= 5; ++b) {
      for (double x : {0.3, 1.0, 4.0, 12.0}) {
        const double um = sf::kummer_u(a - 1.0, b, x).value, u0 = sf::kummer_u(a, b, x).value,
                     up = sf::kummer_u(a + 1.0, b, x).value;
        const double t1 = (x + 2.0 * a - b) * u0, t2 = a * (a - b + 1.0) * up;
        const double scale = std::max({std::fabs(um), std::fabs(t1), std::fabs(t2)});
        worst = std::max(worst, std::fabs(um - t1 + t2) / scale);
      }
    }
  }
  return worst;
}

double ik_product_monotone() {
  // Returns 0 when strictly decreasing on every grid, 1 otherwise.
  for (double nu : {0.0, 0.3, 1.0, 2.5, 7.0, 20.0}) {
    double prev = INFINITY;
    for (int i = 0; i <= 400; ++i) {
      const double x = 1e-3 * std::pow(4e4, i / 400.0);
      const double v = sf::bessel_ik_product(nu, x);
      if (!(v < prev)) return 1.0;
      prev = v;
    }
  }
  return 0.0;
}

double fourier_vs_trapezoid() {
  const CouplingProfile p = make_random_profile(4, 1.0, 0.3, 12345);
  double worst = 0.0;
  for (int k : {0, 1, 2, 5, 17}) {
    // Midpoint sum on a fine grid; exact for the constant pieces up to O(h).
    const int n = 200000;
    std::complex<double> s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phi = 2.0 * std::numbers::pi * (j + 0.5) / n;
      s += p.value_at(phi) * std::complex<double>(std::cos(k * phi), std::sin(k * phi));
    }
    s *= 2.0 * std::numbers::pi / n;
    worst = std::max(worst, std::abs(s - fourier_coefficient(p, k)));
  }
  return worst;
}

double basis_wronskian() {
  double worst = 0.0;
  const FieldConfig fields[3] = {ZeroField{}, HomogeneousField{0.7}, FluxLine{0.3}};
  for (const FieldConfig& f : fields) {
    for (int m = -4; m <= 4; ++m) {
      const EnergyParam e = uses_kappa(f) ? EnergyParam::kappa(0.8) : EnergyParam::energy_value(-0.4);
      const RadialPair p = radial_pair(f, m, e, 2.0);
      const double w = p.f_at_R() * p.g_prime_at_R() - p.f_prime_at_R() * p.g_at_R();
      worst = std::max(worst, rel(w, p.wronskian_at_R()));
    }
  }
  return worst;
}

double solver_consistency() {
  double worst = 0.0;
  const FieldConfig fields[2] = {ZeroField{}, FluxLine{0.37}};
  for (const FieldConfig& f : fields) {
    SpectralProblem p;
    p.geometry = RingGeometry(3.0);
    p.coupling = CouplingProfile::constant(2.0);
    p.field = f;
    const std::vector<Eigenpair> gen = solve_at_truncation(p, 12);
    const std::vector<SymmetricLevel> sym = symmetric_spectrum(2.0, 3.0, f, -12, 12);
    if (gen.size() != sym.size()) return INFINITY;
    for (std::size_t i = 0; i < gen.size(); ++i) {
      worst = std::max(worst, std::fabs(gen[i].energy - sym[i].energy));
    }
  }
  return worst;
}

}  // namespace

std::vector<SelftestResult> run_specfun_selftests() {
  return {
      run("bessel_wronskian", 1e-10, bessel_wronskian),
      run("bessel_recurrences", 1e-10, bessel_recurrences),
      run("kummer_wronskian", 1e-9, kummer_wronskian),
      run("kummer_a_recurrence", 1e-10, kummer_recurrence),
      run("ik_product_decreasing", 0.0, ik_product_monotone),
  };
}

std::vector<SelftestResult> run_selftests() {
  std::vector<SelftestResult> out = run_specfun_selftests();
  out.push_back(run("fourier_closed_form", 1e-6, fourier_vs_trapezoid));
  out.push_back(run("radial_wronskian", 1e-9, basis_wronskian));
  out.push_back(run("general_vs_partial_wave", 1e-8, solver_consistency));
  return out;
}

}  // namespace softring

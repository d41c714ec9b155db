// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "errors.hpp"
#include "solver.hpp"

using namespace softring;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

cplx quadrature_fourier(const CouplingProfile& p, int k) {
  using GL = boost::math::quadrature::gauss<double, 30>;
  cplx sum = 0.0;
  for (const Segment& s : p.segments()) {
    const int panels = 32;
    const double h = (s.end - s.start) / panels;
    for (int j = 0; j < panels; ++j) {
      const double a = s.start + j * h;
      sum += s.alpha * cplx(GL::integrate([&](double t) { return std::cos(k * t); }, a, a + h),
                            GL::integrate([&](double t) { return std::sin(k * t); }, a, a + h));
    }
  }
  return sum;
}

// kappa (g'/g - f'/f) at kappa R from libstdc++ Bessel functions.
double bessel_log_wronskian(double nu, double kappa, double radius) {
  const double x = kappa * radius;
  const double i = std::cyl_bessel_i(nu, x), k = std::cyl_bessel_k(nu, x);
  const double ip = std::cyl_bessel_i(nu + 1, x) + nu / x * i;
  const double kp = -std::cyl_bessel_k(nu + 1, x) + nu / x * k;
  return kappa * (kp / k - ip / i);
}

SpectralProblem make_problem(double alpha, double radius, double theta, FieldConfig field) {
  SpectralProblem p;
  p.geometry = RingGeometry(radius);
  p.coupling = theta > 0.0 ? make_broken_ring(alpha, theta) : CouplingProfile::constant(alpha);
  p.field = field;
  return p;
}

std::vector<double> energies(const std::vector<Eigenpair>& v) {
  std::vector<double> e;
  for (const auto& x : v) e.push_back(x.energy);
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

TEST_CASE("secular matrix agrees with an independent assembly") {
  const double radius = 2.0, kappa = 0.8;
  const int n = 6;
  for (const FieldConfig field : {FieldConfig{ZeroField{}}, FieldConfig{FluxLine{0.3}}}) {
    SpectralProblem p = make_problem(1.5, radius, kPi / 3.0, field);
    p.coupling = make_broken_ring(1.5, kPi / 3.0, 0.7);
    const SecularMatrix sm = build_secular_matrix(p, EnergyParam::kappa(kappa), n);
    REQUIRE(sm.entries.rows() == 2 * n + 1);
    CHECK(sm.m_min == -n);
    const double phi = std::holds_alternative<FluxLine>(field) ? 0.3 : 0.0;
    for (int i = 0; i < 2 * n + 1; ++i) {
      for (int j = 0; j < 2 * n + 1; ++j) {
        const int mi = sm.m_min + i, mj = sm.m_min + j;
        cplx want = quadrature_fourier(p.coupling, mj - mi);
        if (i == j) want += 2.0 * kPi * bessel_log_wronskian(std::fabs(mi - phi), kappa, radius);
        CAPTURE(mi);
        CAPTURE(mj);
        CHECK(std::abs(sm.entries(i, j) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
      }
    }
    CHECK((sm.entries - sm.entries.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("homogeneous diagonal uses the kummer boundary data") {
  SpectralProblem p = make_problem(1.0, 3.0, kPi / 2.0, HomogeneousField{0.4});
  const double e = 0.13;
  const SecularMatrix sm = build_secular_matrix(p, EnergyParam::energy_value(e), 4);
  for (int i = 0; i < 9; ++i) {
    const RadialPair rp = radial_pair(p.field, sm.m_min + i, EnergyParam::energy_value(e), 3.0);
    const double want = p.coupling.integral() + 2.0 * kPi * rp.wronskian_over_fg();
    CHECK(std::fabs(sm.entries(i, i).real() - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("eigenvalue branches decrease monotonically in kappa") {
  for (const FieldConfig field : {FieldConfig{ZeroField{}}, FieldConfig{FluxLine{0.4}}}) {
    const SpectralProblem p = make_problem(1.0, 5.0, kPi / 3.0, field);
    std::vector<EnergyParam> grid;
    for (double k = 0.01; k < 3.0; k *= 1.07) grid.push_back(EnergyParam::kappa(k));
    const auto rows = eigen_branches(p, grid, 12);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      REQUIRE_FALSE(rows[r].pole);
      for (std::size_t j = 0; j < rows[r].eigenvalues.size(); ++j) {
        CHECK(rows[r].eigenvalues[j] < rows[r - 1].eigenvalues[j]);
      }
    }
  }
}

TEST_CASE("roots annihilate the secular matrix") {
  for (const FieldConfig field :
       {FieldConfig{ZeroField{}}, FieldConfig{FluxLine{0.2}}, FieldConfig{HomogeneousField{0.3}}}) {
    const SpectralProblem p = make_problem(1.0, 4.0, kPi / 4.0, field);
    const auto roots = solve_at_truncation(p, 16);
    REQUIRE_FALSE(roots.empty());
    for (const auto& r : roots) {
      const SecularMatrix sm = build_secular_matrix(p, r.coordinate, r.truncation);
      Eigen::VectorXcd u(r.u.size());
      for (std::size_t i = 0; i < r.u.size(); ++i) u[i] = r.u[i];
      CHECK(u.norm() == doctest::Approx(1.0));
      CHECK((sm.entries * u).norm() <= 1e-7 * std::max(1.0, sm.entries.norm()));
      CHECK(r.energy == doctest::Approx(r.coordinate.energy()));
    }
  }
}

TEST_CASE("constant ring levels are degenerate in plus and minus m") {
  const SpectralProblem p = make_problem(1.0, 6.0, 0.0, ZeroField{});
  const auto e = energies(find_discrete_spectrum(p));
  // One non-degenerate m = 0 level, then pairs.
  REQUIRE(e.size() % 2 == 1);
  for (std::size_t i = 1; i + 1 < e.size(); i += 2) CHECK(std::fabs(e[i] - e[i + 1]) <= 1e-8);
  CHECK(std::fabs(e[0] - e[1]) > 1e-3);
}

TEST_CASE("general solver matches the per-wave solver for constant coupling") {
  for (const FieldConfig field :
       {FieldConfig{ZeroField{}}, FieldConfig{FluxLine{0.35}}, FieldConfig{HomogeneousField{0.25}}}) {
    const SpectralProblem p = make_problem(1.2, 4.0, 0.0, field);
    const int n = p.default_truncation();
    auto general = energies(solve_at_truncation(p, n));
    std::vector<double> sym;
    for (const auto& l : symmetric_spectrum(1.2, 4.0, field, -n, n, p.landau_bands)) sym.push_back(l.energy);
    std::sort(sym.begin(), sym.end());
    REQUIRE(general.size() == sym.size());
    for (std::size_t i = 0; i < sym.size(); ++i) CHECK(std::fabs(general[i] - sym[i]) <= 1e-8);
  }
}

TEST_CASE("flux reversal leaves a symmetric broken ring unchanged") {
  for (double phi : {0.15, 0.4}) {
    const auto plus = energies(solve_at_truncation(make_problem(1.0, 5.0, kPi / 3.0, FluxLine{phi}), 24));
    const auto minus = energies(solve_at_truncation(make_problem(1.0, 5.0, kPi / 3.0, FluxLine{-phi}), 24));
    REQUIRE(plus.size() == minus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) CHECK(std::fabs(plus[i] - minus[i]) <= 1e-9);
  }
}

TEST_CASE("unit flux shift leaves the constant ring spectrum unchanged") {
  for (double phi : {-0.3, 0.1, 0.45}) {
    const auto a = energies(find_discrete_spectrum(make_problem(1.0, 5.0, 0.0, FluxLine{phi})));
    const auto b = energies(find_discrete_spectrum(make_problem(1.0, 5.0, 0.0, FluxLine{phi + 1.0})));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-8);
  }
}

TEST_CASE("critical flux bounds the surviving partial waves") {
  const double alpha = 1.0, radius = 2.0;
  const CriticalFlux c = critical_flux(alpha, radius, 2);
  CHECK(c.lower == doctest::Approx(1.0));
  CHECK(c.upper == doctest::Approx(3.0));
  // m = 2 binds for phi in (lower, upper) only.
  auto has_m2 = [&](double phi) {
    for (const auto& l : symmetric_spectrum(alpha, radius, FluxLine{phi}, 2, 2)) {
      if (l.m == 2) return true;
    }
    return false;
  };
  CHECK(has_m2(2.0));
  CHECK(has_m2(1.05));
  CHECK_FALSE(has_m2(0.95));
  CHECK_FALSE(has_m2(3.05));
}

TEST_CASE("ground state error shrinks with the truncation") {
  const SpectralProblem p = make_problem(1.0, 5.0, kPi / 3.0, ZeroField{});
  auto ground = [&](int n) { return energies(solve_at_truncation(p, n)).front(); };
  const double ref = ground(80);
  double prev = INFINITY;
  for (int n : {16, 24, 32, 40}) {
    const double err = std::fabs(ground(n) - ref);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("discrete spectrum reports convergence") {
  const SpectralProblem p = make_problem(1.0, 5.0, kPi / 3.0, ZeroField{});
  const auto roots = find_discrete_spectrum(p);
  REQUIRE_FALSE(roots.empty());
  for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i - 1].energy <= roots[i].energy);
  for (const auto& r : roots) {
    CHECK(r.energy < 0.0);
    if (r.converged) CHECK(r.convergence_delta <= p.convergence_tolerance);
    CHECK(r.truncation >= p.default_truncation() + 8);
  }
  CHECK(roots.front().converged);

  SpectralProblem limited = p;
  limited.max_levels = 2;
  const auto two = find_discrete_spectrum(limited);
  REQUIRE(two.size() == 2);
  CHECK(two[0].energy == doctest::Approx(roots[0].energy).epsilon(1e-8));
}

TEST_CASE("problem validation") {
  SpectralProblem p;
  CHECK(p.default_truncation() == 17);
  p.truncation = 5;
  CHECK(p.default_truncation() == 5);

  auto rejects = [](auto mutate) {
    SpectralProblem q;
    mutate(q);
    CHECK_THROWS_AS(q.validate(), DomainError);
  };
  rejects([](SpectralProblem& q) { q.truncation = -1; });
  rejects([](SpectralProblem& q) { q.root_tolerance = 0.0; });
  rejects([](SpectralProblem& q) { q.convergence_tolerance = -1.0; });
  rejects([](SpectralProblem& q) { q.energy_window = EnergyWindow{2.0, 1.0}; });
  rejects([](SpectralProblem& q) { q.energy_window = EnergyWindow{0.0, 1.0}; });
  rejects([](SpectralProblem& q) { q.landau_bands = 0; });
  rejects([](SpectralProblem& q) { q.scan_points = 1; });
  rejects([](SpectralProblem& q) { q.max_doublings = -1; });
  rejects([](SpectralProblem& q) { q.field = HomogeneousField{0.0}; });
  CHECK_THROWS_AS(solve_at_truncation(SpectralProblem{}, 0), DomainError);
}

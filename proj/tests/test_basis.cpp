// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "basis.hpp"
#include "doctest.h"
#include "errors.hpp"

using namespace softring;

namespace {

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// Fourth-order central difference.
template <class F>
double derivative(F&& f, double r, double h) {
  return (8.0 * (f(r + h) - f(r - h)) - (f(r + 2 * h) - f(r - 2 * h))) / (12.0 * h);
}

void check_pair(const RadialPair& p, double radius) {
  const double h = 1e-3 * radius;
  const double fp = derivative([&](double r) { return p.f(r); }, radius, h);
  const double gp = derivative([&](double r) { return p.g(r); }, radius, h);
  const double f = p.f(radius), g = p.g(radius);
  CHECK(rel(f, p.f_at_R()) <= 1e-13);
  CHECK(rel(g, p.g_at_R()) <= 1e-13);
  CHECK(rel(fp, p.f_prime_at_R()) <= 1e-7);
  CHECK(rel(gp, p.g_prime_at_R()) <= 1e-7);
  CHECK(rel(f * gp - fp * g, p.wronskian_at_R()) <= 1e-7);
  CHECK(rel(p.f_log_derivative(), fp / f) <= 1e-7);
  CHECK(rel(p.g_log_derivative(), gp / g) <= 1e-7);
  CHECK(rel(p.wronskian_over_fg(), p.g_log_derivative() - p.f_log_derivative()) <= 1e-10);
  for (double s : {0.3, 0.8, 1.6}) {
    CHECK(rel(p.f_ratio(s * radius), p.f(s * radius) / f) <= 1e-11);
    CHECK(rel(p.g_ratio(s * radius), p.g(s * radius) / g) <= 1e-11);
  }
}

}  // namespace

TEST_CASE("bessel pair boundary data and wronskian") {
  for (double radius : {0.5, 2.0, 5.0}) {
    for (double kappa : {0.05, 0.7, 2.3}) {
      for (int m : {-3, 0, 1, 6}) {
        CAPTURE(radius);
        CAPTURE(kappa);
        CAPTURE(m);
        const RadialPair p = radial_pair(ZeroField{}, m, EnergyParam::kappa(kappa), radius);
        CHECK(p.is_bessel());
        CHECK(p.bessel_nu() == std::abs(m));
        CHECK(rel(p.wronskian_at_R(), -1.0 / radius) <= 1e-14);
        CHECK(rel(p.f_at_R(), std::cyl_bessel_i(std::abs(m), kappa * radius)) <= 1e-12);
        CHECK(rel(p.g_at_R(), std::cyl_bessel_k(std::abs(m), kappa * radius)) <= 1e-12);
        check_pair(p, radius);
      }
    }
  }
}

TEST_CASE("flux line shifts the bessel order") {
  for (double phi : {-0.7, 0.25, 1.5}) {
    for (int m : {-2, 0, 1, 3}) {
      CHECK(bessel_order(FluxLine{phi}, m) == doctest::Approx(std::fabs(m - phi)));
      const RadialPair p = radial_pair(FluxLine{phi}, m, EnergyParam::kappa(0.6), 3.0);
      CHECK(p.bessel_nu() == doctest::Approx(std::fabs(m - phi)));
      check_pair(p, 3.0);
    }
  }
  CHECK(bessel_order(ZeroField{}, -4) == 4.0);
}

TEST_CASE("kummer pair boundary data and closed-form wronskian") {
  for (double b : {0.2, 1.0}) {
    for (int m : {-2, 0, 1, 3}) {
      const double z0 = landau_levels(b, m, 1)[0];
      for (double e : {-0.4, z0 - 0.3 * b, z0 + 0.7 * b, z0 + 2.5 * b}) {
        CAPTURE(b);
        CAPTURE(m);
        CAPTURE(e);
        const double radius = 2.5;
        const RadialPair p = radial_pair(HomogeneousField{b}, m, EnergyParam::energy_value(e), radius);
        CHECK_FALSE(p.is_bessel());
        const double a = kummer_a(b, m, e);
        CHECK(a == doctest::Approx((m + std::abs(m) + 1 - e / b) / 2.0));
        // W = -Gamma(|m|+1)/Gamma(a) 2^{|m|+1} B^{-|m|} / R
        const int am = std::abs(m);
        const double want = -std::tgamma(am + 1.0) / std::tgamma(a) * std::pow(2.0, am + 1) *
                            std::pow(b, -am) / radius;
        CHECK(rel(p.wronskian_at_R(), want) <= 1e-10);
        check_pair(p, radius);
      }
    }
  }
}

TEST_CASE("landau levels and energy coordinates") {
  const auto z = landau_levels(0.5, 2, 4);
  REQUIRE(z.size() == 4);
  for (int n = 0; n < 4; ++n) CHECK(z[n] == doctest::Approx(0.5 * (2 + 2 + 2 * n + 1)));
  const auto zn = landau_levels(0.5, -2, 2);
  CHECK(zn[0] == doctest::Approx(0.5));
  CHECK(zn[1] == doctest::Approx(1.5));
  for (int n = 0; n < 3; ++n) CHECK(kummer_a(0.5, 1, landau_levels(0.5, 1, 3)[n]) == doctest::Approx(-n));

  CHECK(energy_param_for(ZeroField{}, -4.0).value == doctest::Approx(2.0));
  CHECK(energy_param_for(FluxLine{0.2}, -0.25).kind == EnergyParam::Kind::Kappa);
  const EnergyParam e = energy_param_for(HomogeneousField{1.0}, 0.3);
  CHECK(e.kind == EnergyParam::Kind::Energy);
  CHECK(e.energy() == 0.3);
  CHECK(EnergyParam::kappa(3.0).energy() == -9.0);
}

TEST_CASE("radial pair rejects invalid input") {
  CHECK_THROWS_AS(radial_pair(ZeroField{}, 0, EnergyParam::kappa(-1.0), 1.0), DomainError);
  CHECK_THROWS_AS(radial_pair(ZeroField{}, 0, EnergyParam::kappa(1.0), 0.0), DomainError);
  CHECK_THROWS_AS(radial_pair(HomogeneousField{-1.0}, 0, EnergyParam::energy_value(0.1), 1.0),
                  DomainError);
}

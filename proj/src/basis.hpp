// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "domain.hpp"

// Interior/exterior radial solutions f_m (regular at the origin) and g_m
// (square integrable at infinity) of the field-free part of the problem,
// in the standard normalizations of I, K, M and U.
//
//   zero field, flux line phi:  f = I_nu(kappa r), g = K_nu(kappa r),
//                               nu = |m - phi|, E = -kappa^2
//   homogeneous field B:        f = r^|m| e^{-B r^2/4} M(a, |m|+1; B r^2/2)
//                               g = r^|m| e^{-B r^2/4} U(a, |m|+1; B r^2/2)
//                               a = (m + |m| + 1 - E/B) / 2

namespace softring {

// Field-dependent energy coordinate: kappa > 0 with E = -kappa^2, or E itself.
struct EnergyParam {
  enum class Kind { Kappa, Energy };
  Kind kind = Kind::Kappa;
  double value = 0.0;

  static EnergyParam kappa(double k) { return {Kind::Kappa, k}; }
  static EnergyParam energy_value(double e) { return {Kind::Energy, e}; }
  double energy() const { return kind == Kind::Kappa ? -value * value : value; }
};

// Converts a physical energy into the coordinate used by `field`.
EnergyParam energy_param_for(const FieldConfig& field, double energy);

class RadialPair {
 public:
  int m() const { return m_; }

  // Boundary data at r = R. Plain values may be +-inf or 0 when the standard
  // normalization leaves the double range; the logarithmic quantities below
  // never do.
  double f_at_R() const { return f_R_; }
  double g_at_R() const { return g_R_; }
  double f_prime_at_R() const { return fp_R_; }
  double g_prime_at_R() const { return gp_R_; }
  // Closed-form W(f, g)(R) = f g' - f' g.
  double wronskian_at_R() const { return wronskian_; }

  double f_log_derivative() const { return f_dlog_; }  // f'(R)/f(R)
  double g_log_derivative() const { return g_dlog_; }  // g'(R)/g(R)
  // W(f,g)(R) / (f(R) g(R)) from the closed-form Wronskian.
  double wronskian_over_fg() const { return w_over_fg_; }

  // Bessel family: order nu and kappa. Zero for the Kummer family.
  bool is_bessel() const { return family_ == Family::Bessel; }
  double bessel_nu() const { return nu_; }
  double kappa() const { return kappa_; }

  // f(r)/f(R) and g(r)/g(R).
  double f_ratio(double r) const;
  double g_ratio(double r) const;
  // Plain evaluators in the standard normalization.
  double f(double r) const;
  double g(double r) const;

 private:
  friend RadialPair radial_pair(const FieldConfig&, int, EnergyParam, double);

  enum class Family { Bessel, Kummer };
  Family family_ = Family::Bessel;
  int m_ = 0;
  double radius_ = 1.0;
  double nu_ = 0.0, kappa_ = 0.0;              // Bessel
  double a_ = 0.0, b_field_ = 0.0;             // Kummer
  int b_ = 1;
  double log_f_R_ = 0.0, log_g_R_ = 0.0;       // Bessel: logs of f(R), g(R)
  double f_R_ = 0.0, g_R_ = 0.0, fp_R_ = 0.0, gp_R_ = 0.0;
  double wronskian_ = 0.0, f_dlog_ = 0.0, g_dlog_ = 0.0, w_over_fg_ = 0.0;
};

// Throws PoleError when f(R) g(R) = 0 (homogeneous field only).
RadialPair radial_pair(const FieldConfig& field, int m, EnergyParam energy, double radius);

// z_n = B (m + |m| + 2n + 1), n = 0 .. count-1.
std::vector<double> landau_levels(double b, int m, int count);

// Order nu = |m - phi| of the Bessel pair (phi = 0 for zero field).
double bessel_order(const FieldConfig& field, int m);
// a_m(E) for the homogeneous field.
double kummer_a(double b_field, int m, double energy);

}  // namespace softring

// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Special functions for the radial solutions: modified Bessel functions of
// real order, Kummer's confluent hypergeometric functions M and U for
// positive integer b, and the gamma function family.
//
// All functions are pure. Domain violations throw softring::DomainError,
// results beyond the double range throw softring::OverflowError.
//
// The abs_error_estimate fields are heuristic (rounding growth plus the
// magnitude of the last retained term). They are not rigorous bounds.

namespace softring::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct EvalResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  // Set when the true value is nonzero but below the smallest double.
  bool underflow = false;
};

// I_nu(x), K_nu(x) for nu >= 0, x > 0.
EvalResult bessel_i(double nu, double x);
EvalResult bessel_k(double nu, double x);

// Logarithms and logarithmic derivatives of I_nu and K_nu at x. Never
// overflows, so it is the preferred entry point for ratios and products.
struct BesselIKLog {
  double log_i = 0.0;
  double log_k = 0.0;
  double dlog_i = 0.0;  // I'_nu(x) / I_nu(x)
  double dlog_k = 0.0;  // K'_nu(x) / K_nu(x)
  double rel_error = 0.0;
};
BesselIKLog bessel_ik_log(double nu, double x);

// Values and derivatives together. Throws OverflowError if any of them is
// out of range.
struct BesselIK {
  double i = 0.0, k = 0.0, ip = 0.0, kp = 0.0;
};
BesselIK bessel_ik(double nu, double x);

// (I_nu K_nu)(x), computed from logarithmic derivatives and the Wronskian,
// accurate even where I_nu underflows and K_nu overflows.
double bessel_ik_product(double nu, double x);

// M(a, b; x) for integer b >= 1 and x >= 0.
EvalResult kummer_m(double a, int b, double x);
// U(a, b; x) for integer b >= 1 and x > 0.
EvalResult kummer_u(double a, int b, double x);

// d/dx M(a,b;x) = (a/b) M(a+1,b+1;x) and d/dx U(a,b;x) = -a U(a+1,b+1;x).
EvalResult kummer_m_prime(double a, int b, double x);
EvalResult kummer_u_prime(double a, int b, double x);

// Gamma(x); DomainError at the poles x = 0, -1, -2, ...
EvalResult gamma_fn(double x);
// 1/Gamma(x), defined for all real x and exactly zero at the poles of Gamma.
double rgamma(double x);
// Digamma psi(x); DomainError at the poles.
double digamma(double x);

// sin(pi x) and cos(pi x) with exact zeros at integers / half integers.
double sin_pi(double x);
double cos_pi(double x);

}  // namespace softring::specfun

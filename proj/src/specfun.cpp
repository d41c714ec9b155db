// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include "specfun.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "errors.hpp"

namespace softring::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxIter = 20000;
constexpr double kEps = DBL_EPSILON;
constexpr long double kEpsL = LDBL_EPSILON;
const double kLogMax = std::log(DBL_MAX);

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
constexpr std::array<double, 22> kRGammaTaylor = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
};

// Temme's auxiliary functions for |mu| <= 1/2:
//   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
//   gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
// evaluated from the even/odd parts of the Taylor series so that gam1 has
// no cancellation at small mu.
struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

TemmeGammas temme_gammas(double mu) {
  const double mu2 = mu * mu;
  double odd = 0.0, even = 0.0;
  for (int j = static_cast<int>(kRGammaTaylor.size()) - 1; j >= 0; --j) {
    if (j % 2 == 1) {
      odd = odd * mu2 + kRGammaTaylor[j];
    } else {
      even = even * mu2 + kRGammaTaylor[j];
    }
  }
  // 1/Gamma(1+mu) = even + mu * odd,  1/Gamma(1-mu) = even - mu * odd
  return {-odd, even, even + mu * odd, even - mu * odd};
}

void require_bessel_args(double nu, double x, const char* who) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw DomainError(std::string(who) + ": order must be finite and >= 0, got " +
                      std::to_string(nu));
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

template <class T>
T digamma_impl(T x) {
  if (x <= 0 && x == std::floor(x)) {
    throw DomainError("digamma: pole at non-positive integer");
  }
  T reflection = 0;
  if (x < 0) {
    // psi(x) = psi(1-x) - pi cot(pi x)
    const double xd = static_cast<double>(x);
    reflection = -static_cast<T>(kPi) * static_cast<T>(cos_pi(xd) / sin_pi(xd));
    x = 1 - x;
  }
  T acc = 0;
  while (x < 10) {
    acc -= 1 / x;
    x += 1;
  }
  const T r = 1 / (x * x);
  const T tail =
      r * (T(1) / 12 -
           r * (T(1) / 120 -
                r * (T(1) / 252 -
                     r * (T(1) / 240 - r * (T(1) / 132 - r * (T(691) / 32760 - r * T(1) / 12))))));
  return reflection + acc + std::log(x) - 1 / (2 * x) - tail;
}

void check_b(int b, const char* who) {
  if (b < 1) {
    throw DomainError(std::string(who) + ": b must be a positive integer, got " +
                      std::to_string(b));
  }
}

bool is_nonpositive_integer(double a) { return a <= 0.0 && a == std::floor(a); }

EvalResult finish(long double sum, long double err, const char* who) {
  if (!std::isfinite(static_cast<double>(sum)) || std::fabs(sum) > DBL_MAX) {
    throw OverflowError(std::string(who) + ": result exceeds double range", sum < 0 ? -1 : 1);
  }
  EvalResult r;
  r.value = static_cast<double>(sum);
  r.abs_error_estimate = static_cast<double>(err) + kEps * std::fabs(r.value);
  return r;
}

// Power series of M in extended precision.
EvalResult kummer_m_series(double a, int b, double x) {
  long double term = 1.0L, sum = 1.0L, abs_sum = 1.0L;
  const long double la = a, lx = x;
  for (int k = 0; k < kMaxIter; ++k) {
    term *= (la + k) * lx / ((b + k) * static_cast<long double>(k + 1));
    if (term == 0.0L) break;
    sum += term;
    abs_sum += std::fabs(term);
    const bool past_turn = (k + 1 > -a) && (k + 1 > x);
    if (past_turn && std::fabs(term) <= kEpsL * std::fabs(sum)) break;
  }
  return finish(sum, 4.0L * kEpsL * abs_sum, "kummer_m");
}

// U(-n, b; x) is a polynomial: (-1)^n (b)_n M(-n, b; x).
EvalResult kummer_u_polynomial(int n, int b, double x) {
  const EvalResult m = kummer_m_series(-n, b, x);
  long double poch = 1.0L;
  for (int k = 0; k < n; ++k) poch *= (b + k);
  const long double sign = (n % 2 == 0) ? 1.0L : -1.0L;
  return finish(sign * poch * m.value, poch * m.abs_error_estimate, "kummer_u");
}

// Logarithmic expansion of U(a, n+1; x) about x = 0 for integer n >= 0.
// Returns false in `ok` if cancellation has eaten too many digits.
EvalResult kummer_u_log_series(double a, int b, double x, bool& ok) {
  const int n = b - 1;
  const long double la = a, lx = x;
  long double sum = 0.0L, abs_sum = 0.0L;

  // Finite part: (1/Gamma(a)) sum_{k=1}^{n} (k-1)! (1-a+k)_{n-k} / (n-k)! x^{-k}
  const long double rga = rgamma(a);
  // Summed from k = n down, term_{k-1} / term_k = (k - a) x / ((k - 1)(n - k + 1)).
  if (rga != 0.0L && n > 0) {
    long double t = std::tgamma(static_cast<long double>(n)) * std::pow(lx, -static_cast<long double>(n)) * rga;
    for (int k = n; k >= 1; --k) {
      sum += t;
      abs_sum += std::fabs(t);
      if (k > 1) t *= (k - la) * lx / ((k - 1) * static_cast<long double>(n - k + 1));
    }
  }

  // Log series: (-1)^{n+1} / (n! Gamma(a-n)) sum_k (a)_k x^k / ((n+1)_k k!) *
  //             (ln x + psi(a+k) - psi(1+k) - psi(n+k+1))
  const long double coeff = ((n % 2 == 0) ? -1.0L : 1.0L) * static_cast<long double>(rgamma(a - n)) /
                            std::tgamma(static_cast<long double>(n + 1));
  if (coeff != 0.0L) {
    const long double lnx = std::log(lx);
    long double psi_a = digamma_impl<long double>(la);
    long double psi_1 = -static_cast<long double>(kEulerGamma);
    long double psi_n1 = digamma_impl<long double>(static_cast<long double>(n + 1));
    long double t = coeff;
    for (int k = 0; k < kMaxIter; ++k) {
      const long double contrib = t * (lnx + psi_a - psi_1 - psi_n1);
      sum += contrib;
      abs_sum += std::fabs(t) * (std::fabs(lnx) + std::fabs(psi_a) + std::fabs(psi_1) +
                                 std::fabs(psi_n1));
      const bool past_turn = (k > -a) && (k > x);
      if (past_turn && std::fabs(contrib) <= kEpsL * std::fabs(sum)) break;
      // advance to k+1
      t *= (la + k) * lx / ((n + 1 + k) * static_cast<long double>(k + 1));
      psi_a += 1.0L / (la + k);
      psi_1 += 1.0L / (k + 1);
      psi_n1 += 1.0L / (n + 1 + k);
      if (t == 0.0L) break;
    }
  }
  const long double err = 8.0L * kEpsL * abs_sum;
  ok = std::isfinite(static_cast<double>(sum)) && sum != 0.0L &&
       err <= 1e-14L * std::fabs(sum);
  return finish(sum, err, "kummer_u");
}

// Large-x asymptotic expansion x^{-a} sum_k (a)_k (a-b+1)_k / k! (-1/x)^k,
// truncated at the smallest term.
EvalResult kummer_u_asymptotic(double a, int b, double x, bool& ok) {
  const long double la = a, lx = x, c = a - b + 1;
  long double term = 1.0L, sum = 1.0L, prev = 1.0L;
  ok = false;
  for (int k = 0; k < 400; ++k) {
    term *= -(la + k) * (c + k) / ((k + 1) * lx);
    if (term == 0.0L) {
      ok = true;
      break;
    }
    if (std::fabs(term) > std::fabs(prev)) break;
    sum += term;
    prev = term;
    if (std::fabs(term) <= 0.1L * kEps * std::fabs(sum)) {
      ok = true;
      break;
    }
  }
  const long double scale = std::pow(lx, -la);
  return finish(sum * scale, std::fabs(prev * scale), "kummer_u");
}

// Integral representation for a > 0:
//   U(a,b;x) = x^{-a} / Gamma(a) * int_0^inf e^{-s} s^{a-1} (1 + s/x)^{b-a-1} ds
double kummer_u_integral(double a, int b, double x, double& err) {
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  const double lg = std::lgamma(a);
  auto integrand = [=](double s) {
    if (s <= 0.0) return a == 1.0 ? 1.0 : 0.0;
    return std::exp(-s + (a - 1.0) * std::log(s) - lg + (b - a - 1.0) * std::log1p(s / x));
  };
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, 1e-15, &err, &l1);
  const double scale = std::pow(x, -a);
  err = std::fabs(err * scale) + 4.0 * kEps * std::fabs(value * scale);
  return value * scale;
}

// Shift a upward to a0 >= 1, evaluate two starting values by quadrature and
// recur downward with U(a-1) = (x + 2a - b) U(a) - a (a - b + 1) U(a+1).
// U is the minimal solution as a -> +inf, so the downward direction is stable.
EvalResult kummer_u_quadrature(double a, int b, double x) {
  const int shift = a >= 1.0 ? 0 : static_cast<int>(std::ceil(1.0 - a));
  const double a0 = a + shift;
  double e0 = 0.0, e1 = 0.0;
  double u0 = kummer_u_integral(a0, b, x, e0);
  if (shift == 0) return finish(u0, e0, "kummer_u");
  double u1 = kummer_u_integral(a0 + 1.0, b, x, e1);
  double rel = std::max(e0 / std::fabs(u0), e1 / std::fabs(u1));
  double peak = std::max(std::fabs(u0), std::fabs(u1));
  for (int j = 0; j < shift; ++j) {
    const double ac = a0 - j;
    const double um = (x + 2.0 * ac - b) * u0 - ac * (ac - b + 1.0) * u1;
    u1 = u0;
    u0 = um;
    peak = std::max(peak, std::fabs(um));
    rel += 2.0 * kEps;
  }
  // Cancellation in the recurrence shows up as |U| much smaller than peak.
  return finish(u0, rel * peak, "kummer_u");
}

}  // namespace

double sin_pi(double x) {
  const double n = std::round(x);
  const double r = x - n;
  const double s = std::sin(kPi * r);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

double digamma(double x) { return digamma_impl<double>(x); }

EvalResult gamma_fn(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma_fn: argument must be finite");
  if (is_nonpositive_integer(x)) {
    throw DomainError("gamma_fn: pole at " + std::to_string(x) + "; use rgamma instead");
  }
  const double v = std::tgamma(x);
  if (!std::isfinite(v)) {
    const int sign = (x > 0.0 || std::fmod(std::floor(x), 2.0) == 0.0) ? 1 : -1;
    throw OverflowError("gamma_fn: overflow at " + std::to_string(x), sign);
  }
  EvalResult r;
  r.value = v;
  r.abs_error_estimate = 8.0 * kEps * std::fabs(v);
  r.underflow = (v == 0.0);
  return r;
}

double rgamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 171.0) return 0.0;
  if (x >= 0.5) return 1.0 / std::tgamma(x);
  // Reflection 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi keeps relative
  // accuracy close to the poles.
  const double s = sin_pi(x);
  if (1.0 - x < 170.0) return s * std::tgamma(1.0 - x) / kPi;
  const double lv = std::lgamma(1.0 - x) + std::log(std::fabs(s) / kPi);
  return std::copysign(std::exp(lv), s);
}

BesselIKLog bessel_ik_log(double nu, double x) {
  require_bessel_args(nu, x, "bessel_ik");
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double mu2 = mu * mu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  constexpr double tiny = 1e-300;

  // Continued fraction for I'_nu / I_nu (modified Lentz).
  double h = nu * xi;
  if (h < tiny) h = tiny;
  {
    double b = xi2 * nu, d = 0.0, c = h;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      b += xi2;
      d = 1.0 / (b + d);
      c = b + 1.0 / c;
      const double del = c * d;
      h *= del;
      if (std::fabs(del - 1.0) < kEps) break;
    }
    if (i > kMaxIter) throw DomainError("bessel_ik: continued fraction did not converge");
  }
  const double dlog_i = h;

  // K_mu and K_{mu+1} with |mu| <= 1/2.
  double log_kmu = 0.0;
  double ratio = 0.0;  // K_{mu+1} / K_mu
  if (x < 2.0) {
    // Temme's series.
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = (mu == 0.0) ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = (e == 0.0) ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * i - mu2);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    if (i > kMaxIter) throw DomainError("bessel_ik: Temme series did not converge");
    log_kmu = std::log(sum);
    ratio = sum1 * xi2 / sum;
  } else {
    // Steed's continued fraction CF2.
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double hh = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
      a -= 2 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      hh += delh;
      const double dels = q * delh;
      s += dels;
      if (std::fabs(dels / s) < kEps) break;
    }
    if (i > kMaxIter) throw DomainError("bessel_ik: CF2 did not converge");
    hh *= a1;
    log_kmu = 0.5 * std::log(kPi / (2.0 * x)) - x - std::log(s);
    ratio = (mu + x + 0.5 - hh) * xi;
  }

  // Upward recurrence K_{v+1} = (2v/x) K_v + K_{v-1}, carried in ratio form.
  double log_k = log_kmu;
  for (int i = 1; i <= nl; ++i) {
    log_k += std::log(ratio);
    ratio = (mu + i) * xi2 + 1.0 / ratio;
  }
  const double dlog_k = nu * xi - ratio;

  BesselIKLog out;
  out.log_k = log_k;
  out.dlog_i = dlog_i;
  out.dlog_k = dlog_k;
  // Wronskian I K' - I' K = -1/x  =>  I K = 1 / (x (I'/I - K'/K))
  out.log_i = -std::log(x) - std::log(dlog_i - dlog_k) - log_k;
  out.rel_error = kEps * (8.0 + nl);
  return out;
}

EvalResult bessel_i(double nu, double x) {
  const BesselIKLog l = bessel_ik_log(nu, x);
  if (l.log_i > kLogMax) throw OverflowError("bessel_i: overflow", 1);
  EvalResult r;
  r.value = std::exp(l.log_i);
  r.abs_error_estimate = r.value * l.rel_error * (1.0 + std::fabs(l.log_i) * kEps);
  r.underflow = (r.value == 0.0);
  return r;
}

EvalResult bessel_k(double nu, double x) {
  const BesselIKLog l = bessel_ik_log(nu, x);
  if (l.log_k > kLogMax) throw OverflowError("bessel_k: overflow", 1);
  EvalResult r;
  r.value = std::exp(l.log_k);
  r.abs_error_estimate = r.value * l.rel_error * (1.0 + std::fabs(l.log_k) * kEps);
  r.underflow = (r.value == 0.0);
  return r;
}

BesselIK bessel_ik(double nu, double x) {
  const BesselIKLog l = bessel_ik_log(nu, x);
  if (l.log_i > kLogMax || l.log_k > kLogMax) {
    throw OverflowError("bessel_ik: overflow", 1);
  }
  BesselIK r;
  r.i = std::exp(l.log_i);
  r.k = std::exp(l.log_k);
  r.ip = r.i * l.dlog_i;
  r.kp = r.k * l.dlog_k;
  return r;
}

double bessel_ik_product(double nu, double x) {
  const BesselIKLog l = bessel_ik_log(nu, x);
  return 1.0 / (x * (l.dlog_i - l.dlog_k));
}

EvalResult kummer_m(double a, int b, double x) {
  check_b(b, "kummer_m");
  if (!std::isfinite(a) || !(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("kummer_m: need finite a and finite x >= 0");
  }
  if (x == 0.0) return {1.0, 0.0, false};
  return kummer_m_series(a, b, x);
}

EvalResult kummer_u(double a, int b, double x) {
  check_b(b, "kummer_u");
  if (!std::isfinite(a) || !(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("kummer_u: need finite a and finite x > 0");
  }
  if (is_nonpositive_integer(a)) {
    return kummer_u_polynomial(static_cast<int>(-a), b, x);
  }
  bool ok = false;
  if (x >= 12.0) {
    const EvalResult r = kummer_u_asymptotic(a, b, x, ok);
    if (ok) return r;
  }
  const EvalResult r = kummer_u_log_series(a, b, x, ok);
  if (ok) return r;
  const EvalResult q = kummer_u_quadrature(a, b, x);
  if (!std::isfinite(q.value)) {
    throw PoleError("kummer_u: non-finite value at a=" + std::to_string(a) +
                    ", b=" + std::to_string(b) + ", x=" + std::to_string(x));
  }
  return q;
}

EvalResult kummer_m_prime(double a, int b, double x) {
  const EvalResult m = kummer_m(a + 1.0, b + 1, x);
  const double f = a / b;
  return {f * m.value, std::fabs(f) * m.abs_error_estimate, m.underflow};
}

EvalResult kummer_u_prime(double a, int b, double x) {
  if (a == 0.0) return {0.0, 0.0, false};
  const EvalResult u = kummer_u(a + 1.0, b + 1, x);
  return {-a * u.value, std::fabs(a) * u.abs_error_estimate, u.underflow};
}

}  // namespace softring::specfun

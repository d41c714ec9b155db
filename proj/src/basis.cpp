// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include "basis.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "errors.hpp"
#include "specfun.hpp"

namespace softring {

namespace sf = specfun;

EnergyParam energy_param_for(const FieldConfig& field, double energy) {
  if (uses_kappa(field)) {
    if (!(energy < 0.0)) throw DomainError("energy must be negative for the kappa coordinate");
    return EnergyParam::kappa(std::sqrt(-energy));
  }
  return EnergyParam::energy_value(energy);
}

double bessel_order(const FieldConfig& field, int m) {
  if (const auto* f = std::get_if<FluxLine>(&field)) return std::fabs(m - f->phi);
  return std::abs(m);
}

double kummer_a(double b_field, int m, double energy) {
  return 0.5 * (m + std::abs(m) + 1 - energy / b_field);
}

std::vector<double> landau_levels(double b, int m, int count) {
  if (!(b > 0.0)) throw DomainError("landau_levels: B must be > 0");
  if (count < 1) throw DomainError("landau_levels: count must be >= 1");
  std::vector<double> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) out.push_back(b * (m + std::abs(m) + 2 * n + 1));
  return out;
}

RadialPair radial_pair(const FieldConfig& field, int m, EnergyParam energy, double radius) {
  validate_field(field);
  if (!(radius > 0.0)) throw DomainError("radial_pair: radius must be > 0");
  RadialPair p;
  p.m_ = m;
  p.radius_ = radius;
  const double R = radius;

  if (uses_kappa(field)) {
    if (energy.kind != EnergyParam::Kind::Kappa || !(energy.value > 0.0)) {
      throw DomainError("radial_pair: zero field / flux line need kappa > 0");
    }
    p.family_ = RadialPair::Family::Bessel;
    p.nu_ = bessel_order(field, m);
    p.kappa_ = energy.value;
    sf::BesselIKLog l;
    try {
      l = sf::bessel_ik_log(p.nu_, p.kappa_ * R);
    } catch (const std::exception& e) {
      throw DomainError("partial wave m=" + std::to_string(m) + ": " + e.what());
    }
    p.log_f_R_ = l.log_i;
    p.log_g_R_ = l.log_k;
    p.f_R_ = std::exp(l.log_i);
    p.g_R_ = std::exp(l.log_k);
    p.f_dlog_ = p.kappa_ * l.dlog_i;
    p.g_dlog_ = p.kappa_ * l.dlog_k;
    p.fp_R_ = p.f_R_ * p.f_dlog_;
    p.gp_R_ = p.g_R_ * p.g_dlog_;
    p.wronskian_ = -1.0 / R;
    // -1/(R I K) with I K = 1/(x (I'/I - K'/K)), x = kappa R
    p.w_over_fg_ = -p.kappa_ * (l.dlog_i - l.dlog_k);
    return p;
  }

  const double B = std::get<HomogeneousField>(field).b;
  p.family_ = RadialPair::Family::Kummer;
  p.b_field_ = B;
  const int am = std::abs(m);
  p.b_ = am + 1;
  p.a_ = kummer_a(B, m, energy.energy());
  const double x = 0.5 * B * R * R;
  sf::EvalResult M, U, Mp, Up;
  try {
    M = sf::kummer_m(p.a_, p.b_, x);
    U = sf::kummer_u(p.a_, p.b_, x);
    Mp = sf::kummer_m_prime(p.a_, p.b_, x);
    Up = sf::kummer_u_prime(p.a_, p.b_, x);
  } catch (const std::exception& e) {
    throw DomainError("partial wave m=" + std::to_string(m) + ": " + e.what());
  }
  if (M.value == 0.0 || U.value == 0.0) {
    throw PoleError("f(R) g(R) = 0 for partial wave m=" + std::to_string(m) +
                    " at E=" + std::to_string(energy.energy()));
  }
  const double h = std::pow(R, am) * std::exp(-0.5 * x);
  const double dlog_h = am / R - 0.5 * B * R;
  p.f_R_ = h * M.value;
  p.g_R_ = h * U.value;
  p.f_dlog_ = dlog_h + B * R * Mp.value / M.value;
  p.g_dlog_ = dlog_h + B * R * Up.value / U.value;
  p.fp_R_ = p.f_R_ * p.f_dlog_;
  p.gp_R_ = p.g_R_ * p.g_dlog_;
  const double rga = sf::rgamma(p.a_);
  p.wronskian_ = -(2.0 / R) * std::tgamma(am + 1.0) * rga * std::pow(0.5 * B, -am);
  // W/(f g) = -(2/R) |m|! / Gamma(a) x^{-|m|} e^{x} / (M U)
  p.w_over_fg_ = -(2.0 / R) * rga *
                 std::exp(std::lgamma(am + 1.0) - am * std::log(x) + x) / (M.value * U.value);
  return p;
}

double RadialPair::f_ratio(double r) const {
  if (family_ == Family::Bessel) {
    if (r <= 0.0) return nu_ == 0.0 ? std::exp(-log_f_R_) : 0.0;
    return std::exp(sf::bessel_ik_log(nu_, kappa_ * r).log_i - log_f_R_);
  }
  const double R = radius_;
  const int am = b_ - 1;
  const double xr = 0.5 * b_field_ * r * r;
  const double xR = 0.5 * b_field_ * R * R;
  const double mr = sf::kummer_m(a_, b_, xr).value;
  const double mR = sf::kummer_m(a_, b_, xR).value;
  if (r <= 0.0) return am == 0 ? std::exp(0.5 * xR) / mR : 0.0;
  return std::exp(am * std::log(r / R) - 0.5 * (xr - xR)) * (mr / mR);
}

double RadialPair::g_ratio(double r) const {
  if (r <= 0.0) throw DomainError("g_ratio: r must be > 0");
  if (family_ == Family::Bessel) {
    return std::exp(sf::bessel_ik_log(nu_, kappa_ * r).log_k - log_g_R_);
  }
  const double R = radius_;
  const int am = b_ - 1;
  const double xr = 0.5 * b_field_ * r * r;
  const double xR = 0.5 * b_field_ * R * R;
  const double ur = sf::kummer_u(a_, b_, xr).value;
  const double uR = sf::kummer_u(a_, b_, xR).value;
  return std::exp(am * std::log(r / R) - 0.5 * (xr - xR)) * (ur / uR);
}

double RadialPair::f(double r) const {
  if (family_ == Family::Bessel) {
    if (r <= 0.0) return nu_ == 0.0 ? 1.0 : 0.0;
    return sf::bessel_i(nu_, kappa_ * r).value;
  }
  const int am = b_ - 1;
  const double x = 0.5 * b_field_ * r * r;
  return std::pow(r, am) * std::exp(-0.5 * x) * sf::kummer_m(a_, b_, x).value;
}

double RadialPair::g(double r) const {
  if (r <= 0.0) throw DomainError("g: r must be > 0");
  if (family_ == Family::Bessel) return sf::bessel_k(nu_, kappa_ * r).value;
  const int am = b_ - 1;
  const double x = 0.5 * b_field_ * r * r;
  return std::pow(r, am) * std::exp(-0.5 * x) * sf::kummer_u(a_, b_, x).value;
}

}  // namespace softring

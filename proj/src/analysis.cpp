// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace softring {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<RadialPair> pairs_for(const Eigenpair& e, const SpectralProblem& p) {
  std::vector<RadialPair> out;
  out.reserve(e.u.size());
  for (int m = e.m_min(); m <= e.m_max(); ++m) {
    out.push_back(radial_pair(p.field, m, e.coordinate, p.geometry.radius()));
  }
  return out;
}

// Radial factors f_m(r)/f_m(R) or g_m(r)/g_m(R) for all modes at one r.
std::vector<double> radial_factors(const std::vector<RadialPair>& pairs, double r, double R) {
  std::vector<double> out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out[i] = (r <= R) ? pairs[i].f_ratio(r) : pairs[i].g_ratio(r);
  }
  return out;
}

cplx angular_sum(const std::vector<cplx>& u, const std::vector<double>& factors, int m_min,
                 double phi) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (factors[i] == 0.0 || u[i] == 0.0) continue;
    const double m = m_min + static_cast<int>(i);
    s += u[i] * factors[i] * cplx(std::cos(m * phi), std::sin(m * phi));
  }
  return s;
}

cplx ring_value(const std::vector<cplx>& coeffs, int m_min, double phi) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double m = m_min + static_cast<int>(i);
    s += coeffs[i] * cplx(std::cos(m * phi), std::sin(m * phi));
  }
  return s;
}

double tail_integral(const std::function<double(double)>& f, double a) {
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  auto safe = [&](double r) {
    if (!std::isfinite(r)) return 0.0;
    try {
      const double v = f(r);
      return std::isfinite(v) ? v : 0.0;
    } catch (const std::exception&) {
      return 0.0;
    }
  };
  return integrator.integrate(safe, a, std::numeric_limits<double>::infinity(), 1e-12);
}

}  // namespace

cplx wavefunction_at(const Eigenpair& pair, const SpectralProblem& problem, double r,
                     double phi) {
  if (r < 0.0) throw DomainError("wavefunction_at: r must be >= 0");
  const std::vector<RadialPair> pairs = pairs_for(pair, problem);
  const double R = problem.geometry.radius();
  return angular_sum(pair.u, radial_factors(pairs, r, R), pair.m_min(), phi);
}

RadialIntegrals radial_integrals_quadrature(const RadialPair& pair, double radius) {
  using boost::math::quadrature::gauss_kronrod;
  auto inner = [&](double r) {
    const double f = pair.f_ratio(r);
    return r * f * f;
  };
  auto outer = [&](double r) {
    const double g = pair.g_ratio(r);
    return r * g * g;
  };
  RadialIntegrals out;
  out.inner = gauss_kronrod<double, 61>::integrate(inner, 0.0, radius, 15, 1e-13);
  out.outer = tail_integral(outer, radius);
  return out;
}

RadialIntegrals radial_integrals(const RadialPair& pair, double radius) {
  if (!pair.is_bessel()) return radial_integrals_quadrature(pair, radius);
  const double nu = pair.bessel_nu();
  const double x = pair.kappa() * radius;
  const double rho_i = pair.f_log_derivative() / pair.kappa();
  const double rho_k = pair.g_log_derivative() / pair.kappa();
  const double base = 1.0 + (nu / x) * (nu / x);
  const double half = 0.5 * radius * radius;
  RadialIntegrals out;
  out.inner = half * (base - rho_i * rho_i);
  out.outer = half * (rho_k * rho_k - base);
  // The inner form cancels badly for nu >> x; integrate instead.
  if (!(out.inner > 1e-6 * half * base)) out.inner = radial_integrals_quadrature(pair, radius).inner;
  return out;
}

double squared_norm(const Eigenpair& pair, const SpectralProblem& problem) {
  const std::vector<RadialPair> pairs = pairs_for(pair, problem);
  const double R = problem.geometry.radius();
  double sum = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double w = std::norm(pair.u[i]);
    if (w == 0.0) continue;
    const RadialIntegrals ri = radial_integrals(pairs[i], R);
    sum += w * (ri.inner + ri.outer);
  }
  return kTwoPi * sum;
}

WaveFunctionField reconstruct(const Eigenpair& pair, const SpectralProblem& problem,
                              const GridSpec& grid) {
  if (grid.points < 2) throw DomainError("reconstruct: need at least 2 points per axis");
  const double R = problem.geometry.radius();
  WaveFunctionField out;
  out.points = grid.points;
  out.half_width = grid.half_width > 0.0 ? grid.half_width : 2.0 * R;
  const int P = grid.points;
  out.axis.resize(P);
  for (int i = 0; i < P; ++i) {
    out.axis[i] = out.half_width * (2.0 * i - (P - 1)) / (P - 1);
  }
  const std::vector<RadialPair> pairs = pairs_for(pair, problem);
  const double norm = std::sqrt(squared_norm(pair, problem));
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("reconstruct: zero or non-finite norm");
  out.norm_used = norm;

  // Radii repeat under the lattice symmetries; cache the radial factors.
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(P) * P);
  for (int iy = 0; iy < P; ++iy) {
    for (int ix = 0; ix < P; ++ix) radii.push_back(std::hypot(out.axis[ix], out.axis[iy]));
  }
  std::vector<double> unique = radii;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<std::vector<double>> factors(unique.size());
  parallel_for(unique.size(), problem.jobs,
               [&](std::size_t k) { factors[k] = radial_factors(pairs, unique[k], R); });
  std::unordered_map<double, std::size_t> index;
  for (std::size_t k = 0; k < unique.size(); ++k) index.emplace(unique[k], k);

  out.values.resize(radii.size());
  parallel_for(radii.size(), problem.jobs, [&](std::size_t n) {
    const double x = out.axis[n % P], y = out.axis[n / P];
    const double phi = std::atan2(y, x);
    out.values[n] = angular_sum(pair.u, factors[index.at(radii[n])], pair.m_min(), phi) / norm;
  });
  return out;
}

BoundaryCheck check_boundary_conditions(const Eigenpair& pair, const SpectralProblem& problem,
                                        int n_angles, double eps_rel) {
  if (n_angles < 1 || !(eps_rel > 0.0)) throw DomainError("check_boundary_conditions: bad sampling");
  const std::vector<RadialPair> pairs = pairs_for(pair, problem);
  const double R = problem.geometry.radius();
  const double h = eps_rel * R;
  const double hc = 1e-3 * h;
  const int m_min = pair.m_min();
  const int D = static_cast<int>(pair.u.size());

  std::vector<std::vector<double>> f(7);
  const double offsets[7] = {-2 * h, -h, 0.0, h, 2 * h, -hc, hc};
  for (int k = 0; k < 7; ++k) f[k] = radial_factors(pairs, R + offsets[k], R);

  // Fourier coefficients n of the projection of alpha psi.
  std::vector<cplx> fourier(2 * D - 1);
  for (int k = -(D - 1); k <= D - 1; ++k) fourier[k + D - 1] = fourier_coefficient(problem.coupling, k);
  std::vector<cplx> proj(D);
  for (int n = 0; n < D; ++n) {
    cplx s = 0.0;
    for (int m = 0; m < D; ++m) s += fourier[m - n + D - 1] * pair.u[m];
    proj[n] = s / kTwoPi;
  }

  double err_c = 0.0, err_p = 0.0, err_q = 0.0, max_psi = 0.0, max_t = 0.0, max_tp = 0.0;
  for (int k = 0; k < n_angles; ++k) {
    const double phi = kTwoPi * (k + 0.5) / n_angles;
    cplx v[7];
    for (int j = 0; j < 7; ++j) v[j] = angular_sum(pair.u, f[j], m_min, phi);
    const cplx d_in = (3.0 * v[2] - 4.0 * v[1] + v[0]) / (2.0 * h);
    const cplx d_out = (-3.0 * v[2] + 4.0 * v[3] - v[4]) / (2.0 * h);
    const cplx jump = d_out - d_in;
    const cplx target = -problem.coupling.value_at(phi) * v[2];
    const cplx target_proj = -ring_value(proj, m_min, phi);
    err_c = std::max(err_c, std::abs(v[6] - v[5]));
    max_psi = std::max(max_psi, std::abs(v[2]));
    err_p = std::max(err_p, std::abs(jump - target));
    max_t = std::max(max_t, std::abs(target));
    err_q = std::max(err_q, std::abs(jump - target_proj));
    max_tp = std::max(max_tp, std::abs(target_proj));
  }
  BoundaryCheck out;
  out.continuity_error = max_psi > 0.0 ? err_c / max_psi : err_c;
  out.jump_error_pointwise = max_t > 0.0 ? err_p / max_t : err_p;
  out.jump_error_projected = max_tp > 0.0 ? err_q / max_tp : err_q;
  return out;
}

namespace {

// Autocorrelation p_k = sum_m u_m conj(u_{m-k}) for k = 0 .. D-1.
std::vector<cplx> autocorrelation(const std::vector<cplx>& u) {
  const int D = static_cast<int>(u.size());
  std::vector<cplx> p(D);
  for (int k = 0; k < D; ++k) {
    cplx s = 0.0;
    for (int m = k; m < D; ++m) s += u[m] * std::conj(u[m - k]);
    p[k] = s;
  }
  return p;
}

// int_{-pi}^{pi} t^2 e^{i k t} dt
double moment_weight(int k) {
  if (k == 0) return 2.0 * kPi * kPi * kPi / 3.0;
  return 4.0 * kPi * ((k % 2 == 0) ? 1.0 : -1.0) / (static_cast<double>(k) * k);
}

double moment_from_autocorrelation(const std::vector<cplx>& p, double phi0) {
  double s = p[0].real() * moment_weight(0);
  for (std::size_t k = 1; k < p.size(); ++k) {
    s += 2.0 * moment_weight(static_cast<int>(k)) *
         (p[k] * cplx(std::cos(k * phi0), std::sin(k * phi0))).real();
  }
  return s / (kTwoPi * p[0].real());
}

}  // namespace

double second_moment(const std::vector<cplx>& ring_coeffs, double phi0) {
  const std::vector<cplx> p = autocorrelation(ring_coeffs);
  if (p.empty() || !(p[0].real() > 0.0)) throw DomainError("second_moment: zero ring function");
  return moment_from_autocorrelation(p, phi0);
}

LocalizationMoment localization_moment(const std::vector<cplx>& ring_coeffs) {
  const std::vector<cplx> p = autocorrelation(ring_coeffs);
  if (p.empty() || !(p[0].real() > 0.0)) throw DomainError("localization_moment: zero ring function");
  constexpr int kScan = 720;
  const double step = kTwoPi / kScan;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScan; ++i) {
    const double v = moment_from_autocorrelation(p, i * step);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  // Golden-section refinement on the neighbouring scan cells.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = (best - 1) * step, b = (best + 1) * step;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = moment_from_autocorrelation(p, c), fd = moment_from_autocorrelation(p, d);
  for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = moment_from_autocorrelation(p, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = moment_from_autocorrelation(p, d);
    }
  }
  double phi0 = 0.5 * (a + b);
  double val = moment_from_autocorrelation(p, phi0);
  if (best_val < val) {
    val = best_val;
    phi0 = best * step;
  }
  phi0 = std::fmod(phi0, kTwoPi);
  if (phi0 < 0.0) phi0 += kTwoPi;
  return {std::sqrt(std::max(val, 0.0)), phi0};
}

LocalizationMoment localization_moment(const Eigenpair& pair) { return localization_moment(pair.u); }

std::vector<LocalizationSample> localization_study(const LocalizationStudyConfig& c) {
  if (c.n_samples < 0 || c.n_segments < 1) throw DomainError("localization_study: bad sizes");
  if (!(c.dispersion_min >= 0.0) || c.dispersion_max < c.dispersion_min) {
    throw DomainError("localization_study: need 0 <= dispersion_min <= dispersion_max");
  }
  std::vector<LocalizationSample> out(c.n_samples);
  parallel_for(out.size(), c.jobs, [&](std::size_t i) {
    LocalizationSample& s = out[i];
    s.index = static_cast<int>(i);
    s.seed = derive_stream_seed(c.seed, i);
    Rng rng(s.seed);
    s.dispersion = rng.uniform(c.dispersion_min, c.dispersion_max);
    const std::uint64_t profile_seed = rng.next_u64();
    try {
      SpectralProblem p;
      p.geometry = RingGeometry(c.radius);
      p.coupling = make_random_profile(c.n_segments, c.alpha0, s.dispersion, profile_seed);
      p.root_tolerance = c.root_tolerance;
      p.convergence_tolerance = c.convergence_tolerance;
      p.max_levels = 1;
      const std::vector<Eigenpair> spec = find_discrete_spectrum(p);
      if (spec.empty()) throw NoLevelError("no bound state", std::numeric_limits<double>::quiet_NaN());
      s.energy = spec.front().energy;
      s.truncation = spec.front().truncation;
      s.converged = spec.front().converged;
      s.delta_psi = localization_moment(spec.front()).delta_psi;
      s.ok = true;
    } catch (const std::exception& e) {
      s.ok = false;
      s.error = e.what();
    }
  });
  return out;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * (i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("spearman_correlation: need two equal-length samples");
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = 0.5 * (n + 1.0);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

CurrentSample persistent_current(const SpectralProblem& problem, int level, double phi,
                                 double delta) {
  if (!std::holds_alternative<FluxLine>(problem.field)) {
    throw DomainError("persistent_current: requires a flux-line field");
  }
  if (level < 0) throw DomainError("persistent_current: level must be >= 0");
  if (!(delta > 0.0) || !std::isfinite(phi)) throw DomainError("persistent_current: bad stencil");
  if (std::fabs(phi - std::round(phi)) < delta) {
    throw DomainError("persistent_current: stencil [phi - delta, phi + delta] contains an integer flux");
  }
  SpectralProblem base = problem;
  base.max_levels = level + 1;
  auto at = [&](double f) {
    SpectralProblem q = base;
    q.field = FluxLine{f};
    return q;
  };
  const std::vector<Eigenpair> center = find_discrete_spectrum(at(phi));
  const int n = center.empty() ? at(phi).default_truncation() + 8 : center.front().truncation;
  auto exists = [&](double f) {
    return static_cast<int>(solve_at_truncation(at(f), n).size()) > level;
  };
  const std::vector<Eigenpair> lo = solve_at_truncation(at(phi - delta), n);
  const std::vector<Eigenpair> hi = solve_at_truncation(at(phi + delta), n);
  const double fluxes[3] = {phi - delta, phi, phi + delta};
  const bool have[3] = {static_cast<int>(lo.size()) > level, static_cast<int>(center.size()) > level,
                        static_cast<int>(hi.size()) > level};
  if (!(have[0] && have[1] && have[2])) {
    for (int k = 0; k < 2; ++k) {
      if (have[k] == have[k + 1]) continue;
      double a = fluxes[k], b = fluxes[k + 1];
      const bool ha = have[k];
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (a + b);
        if (exists(mid) == ha) {
          a = mid;
        } else {
          b = mid;
        }
      }
      const double crit = 0.5 * (a + b);
      throw NoLevelError("level " + std::to_string(level) + " is absorbed at flux " +
                             std::to_string(crit),
                         crit);
    }
    throw NoLevelError("level " + std::to_string(level) + " does not exist near flux " +
                           std::to_string(phi),
                       std::numeric_limits<double>::quiet_NaN());
  }
  CurrentSample s;
  s.level = level;
  s.flux = phi;
  s.energy = center[level].energy;
  s.current = -(hi[level].energy - lo[level].energy) / (2.0 * delta);
  s.truncation = n;
  s.converged = center[level].converged;
  return s;
}

SpectralProblem RingSetup::to_problem() const {
  SpectralProblem p = solver;
  p.geometry = RingGeometry(radius);
  if (theta == 0.0) {
    p.coupling = CouplingProfile::constant(alpha);
  } else if (theta >= kTwoPi) {
    p.coupling = CouplingProfile::constant(0.0);
  } else {
    p.coupling = make_broken_ring(alpha, theta, gap_center);
  }
  p.field = field;
  return p;
}

const char* sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::Radius: return "R";
    case SweepParameter::Gap: return "theta";
    case SweepParameter::Field: return "B";
    case SweepParameter::Flux: return "phi";
    case SweepParameter::Alpha: return "alpha";
  }
  return "?";
}

RingSetup with_parameter(const RingSetup& setup, SweepParameter p, double value) {
  RingSetup s = setup;
  switch (p) {
    case SweepParameter::Radius: s.radius = value; break;
    case SweepParameter::Gap: s.theta = value; break;
    case SweepParameter::Field: s.field = HomogeneousField{value}; break;
    case SweepParameter::Flux: s.field = FluxLine{value}; break;
    case SweepParameter::Alpha: s.alpha = value; break;
  }
  return s;
}

namespace {

struct PointResult {
  bool failed = false;
  std::string message;
  std::vector<SweepRow> rows;
  std::vector<std::vector<cplx>> vectors;  // general path: u per row
  std::vector<int> m_min;
};

int symmetric_m_limit(const RingSetup& s, const SweepOptions& o) {
  if (o.m_limit > 0) return o.m_limit;
  if (std::holds_alternative<HomogeneousField>(s.field)) {
    return static_cast<int>(std::ceil(s.alpha * s.radius)) + 16;
  }
  double shift = 0.0;
  if (const auto* f = std::get_if<FluxLine>(&s.field)) shift = std::fabs(f->phi);
  return static_cast<int>(std::ceil(0.5 * s.alpha * s.radius + shift)) + 1;
}

void cap_per_band(std::vector<SweepRow>& rows, std::vector<std::vector<cplx>>* vecs,
                  std::vector<int>* mins, int cap, bool band_in_level_index) {
  if (cap <= 0) return;
  std::unordered_map<int, int> count;
  std::vector<SweepRow> kept;
  std::vector<std::vector<cplx>> kv;
  std::vector<int> km;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int band = band_in_level_index ? rows[i].level_index : rows[i].truncation;
    if (count[band]++ >= cap) continue;
    kept.push_back(rows[i]);
    if (vecs) {
      kv.push_back((*vecs)[i]);
      km.push_back((*mins)[i]);
    }
  }
  rows = std::move(kept);
  if (vecs) {
    *vecs = std::move(kv);
    *mins = std::move(km);
  }
}

}  // namespace

std::vector<SweepRow> sweep(const RingSetup& setup, SweepParameter parameter,
                            const std::vector<double>& grid, const SweepOptions& options) {
  std::vector<PointResult> points(grid.size());
  const int jobs = std::max(1, setup.solver.jobs);
  parallel_for(grid.size(), jobs, [&](std::size_t g) {
    PointResult& pr = points[g];
    try {
      RingSetup s = with_parameter(setup, parameter, grid[g]);
      s.solver.jobs = 1;
      if (options.allow_symmetric && s.full_ring() && s.alpha > 0.0) {
        const int lim = symmetric_m_limit(s, options);
        const std::vector<SymmetricLevel> levels =
            symmetric_spectrum(s.alpha, s.radius, s.field, -lim, lim, s.solver.landau_bands);
        for (const SymmetricLevel& l : levels) {
          SweepRow r;
          r.parameter = grid[g];
          r.level_index = l.band;
          r.label = l.m;
          r.energy = l.energy;
          r.converged = true;
          r.truncation = lim;
          pr.rows.push_back(r);
        }
        cap_per_band(pr.rows, nullptr, nullptr, options.levels_per_band, true);
        return;
      }
      const std::vector<Eigenpair> spec = find_discrete_spectrum(s.to_problem());
      for (const Eigenpair& e : spec) {
        SweepRow r;
        r.parameter = grid[g];
        r.label = e.branch_index;
        r.energy = e.energy;
        r.converged = e.converged;
        r.truncation = e.band;  // temporarily the band, for the cap
        pr.rows.push_back(r);
        pr.vectors.push_back(e.u);
        pr.m_min.push_back(e.m_min());
      }
      cap_per_band(pr.rows, &pr.vectors, &pr.m_min, options.levels_per_band, false);
      const int n_used = spec.empty() ? 0 : spec.front().truncation;
      for (SweepRow& r : pr.rows) r.truncation = n_used;
    } catch (const std::exception& e) {
      pr.failed = true;
      pr.message = e.what();
    }
  });

  // Nearest-energy continuation for the general path; near ties the larger
  // coefficient overlap wins.
  std::vector<SweepRow> out;
  struct Tracked {
    int label;
    double energy;
    std::vector<cplx> u;
    int m_min;
  };
  std::vector<Tracked> prev;
  int next_label = 0;
  for (std::size_t g = 0; g < points.size(); ++g) {
    PointResult& pr = points[g];
    if (pr.failed) {
      SweepRow r;
      r.parameter = grid[g];
      r.level_index = -1;
      r.energy = std::numeric_limits<double>::quiet_NaN();
      r.failed = true;
      r.message = pr.message;
      out.push_back(r);
      continue;
    }
    if (pr.vectors.empty() && !pr.rows.empty()) {
      out.insert(out.end(), pr.rows.begin(), pr.rows.end());
      continue;
    }
    struct Cand {
      long long bucket;
      double overlap;
      std::size_t i, k;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (std::size_t k = 0; k < pr.rows.size(); ++k) {
        const double d = std::fabs(prev[i].energy - pr.rows[k].energy);
        cplx ov = 0.0;
        const std::vector<cplx>& a = prev[i].u;
        const std::vector<cplx>& b = pr.vectors[k];
        for (std::size_t j = 0; j < b.size(); ++j) {
          const long long ia = static_cast<long long>(pr.m_min[k]) + static_cast<long long>(j) - prev[i].m_min;
          if (ia >= 0 && ia < static_cast<long long>(a.size())) ov += std::conj(a[ia]) * b[j];
        }
        cands.push_back({static_cast<long long>(std::floor(d / 1e-9)), std::abs(ov), i, k});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
      if (x.bucket != y.bucket) return x.bucket < y.bucket;
      if (x.overlap != y.overlap) return x.overlap > y.overlap;
      if (x.i != y.i) return x.i < y.i;
      return x.k < y.k;
    });
    std::vector<int> label(pr.rows.size(), -1);
    std::vector<char> used(prev.size(), 0);
    for (const Cand& c : cands) {
      if (used[c.i] || label[c.k] >= 0) continue;
      used[c.i] = 1;
      label[c.k] = prev[c.i].label;
    }
    std::vector<Tracked> cur;
    for (std::size_t k = 0; k < pr.rows.size(); ++k) {
      if (label[k] < 0) label[k] = next_label++;
      next_label = std::max(next_label, label[k] + 1);
      pr.rows[k].level_index = label[k];
      cur.push_back({label[k], pr.rows[k].energy, pr.vectors[k], pr.m_min[k]});
      out.push_back(pr.rows[k]);
    }
    prev = std::move(cur);
  }
  return out;
}

}  // namespace softring

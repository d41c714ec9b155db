// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include "softring/softring.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "errors.hpp"
#include "keyvalue.hpp"
#include "selftest.hpp"
#include "solver.hpp"
#include "specfun.hpp"

struct softring_profile {
  softring::CouplingProfile profile;
};
struct softring_problem {
  softring::SpectralProblem problem;
};
struct softring_spectrum {
  std::vector<softring::Eigenpair> levels;
};
struct softring_table {
  std::vector<softring::SweepRow> rows;
};
struct softring_report {
  std::vector<softring::SelftestResult> entries;
};
struct softring_config {
  softring::KeyValueDocument doc;
};

namespace {

using namespace softring;

thread_local std::string g_last_error;

softring_status fail(softring_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Maps the library's exceptions onto status codes.
template <class Body>
softring_status guarded(Body&& body) {
  try {
    body();
    return SOFTRING_OK;
  } catch (const InvalidArgument& e) {
    return fail(SOFTRING_ERR_INVALID_ARGUMENT, e.what());
  } catch (const ConfigError& e) {
    return fail(SOFTRING_ERR_CONFIG, e.what());
  } catch (const NoLevelError& e) {
    return fail(SOFTRING_ERR_NO_LEVEL, e.what());
  } catch (const PoleError& e) {
    return fail(SOFTRING_ERR_POLE, e.what());
  } catch (const OverflowError& e) {
    return fail(SOFTRING_ERR_OVERFLOW, e.what());
  } catch (const DomainError& e) {
    return fail(SOFTRING_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SOFTRING_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SOFTRING_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SOFTRING_ERR_INTERNAL, "unknown error");
  }
}

#define SOFTRING_REQUIRE(cond, what)                          \
  do {                                                        \
    if (!(cond)) return fail(SOFTRING_ERR_INVALID_ARGUMENT, what); \
  } while (0)

FieldConfig to_field(softring_field f) {
  switch (f.kind) {
    case SOFTRING_FIELD_ZERO: return ZeroField{};
    case SOFTRING_FIELD_HOMOGENEOUS: return HomogeneousField{f.value};
    case SOFTRING_FIELD_FLUX: return FluxLine{f.value};
  }
  throw InvalidArgument("unknown field kind");
}

void apply_options(const softring_solver_options& o, SpectralProblem& p) {
  p.truncation = o.truncation;
  if (o.has_window) {
    p.energy_window = EnergyWindow{o.window_low, o.window_high};
  } else {
    p.energy_window.reset();
  }
  p.root_tolerance = o.root_tolerance;
  p.convergence_tolerance = o.convergence_tolerance;
  p.landau_bands = o.landau_bands;
  p.scan_points = o.scan_points;
  p.max_doublings = o.max_doublings;
  p.max_levels = o.max_levels;
  p.jobs = o.jobs;
}

softring_eval to_eval(const specfun::EvalResult& r) {
  return {r.value, r.abs_error_estimate, r.underflow ? 1 : 0};
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* softring_version(void) { return "0.1.0"; }

const char* softring_status_string(softring_status s) {
  switch (s) {
    case SOFTRING_OK: return "ok";
    case SOFTRING_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SOFTRING_ERR_DOMAIN: return "domain error";
    case SOFTRING_ERR_OVERFLOW: return "overflow";
    case SOFTRING_ERR_POLE: return "pole";
    case SOFTRING_ERR_NO_LEVEL: return "no level";
    case SOFTRING_ERR_CONFIG: return "configuration error";
    case SOFTRING_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case SOFTRING_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* softring_last_error(void) { return g_last_error.c_str(); }

void softring_string_free(char* s) { std::free(s); }

// ---- special functions

softring_status softring_bessel_i(double nu, double x, softring_eval* out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] { *out = to_eval(specfun::bessel_i(nu, x)); });
}

softring_status softring_bessel_k(double nu, double x, softring_eval* out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] { *out = to_eval(specfun::bessel_k(nu, x)); });
}

softring_status softring_bessel_ik_product(double nu, double x, double* out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] { *out = specfun::bessel_ik_product(nu, x); });
}

softring_status softring_kummer_m(double a, int b, double x, softring_eval* out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] { *out = to_eval(specfun::kummer_m(a, b, x)); });
}

softring_status softring_kummer_u(double a, int b, double x, softring_eval* out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] { *out = to_eval(specfun::kummer_u(a, b, x)); });
}

softring_status softring_gamma(double x, softring_eval* out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] { *out = to_eval(specfun::gamma_fn(x)); });
}

softring_status softring_rgamma(double x, double* out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] { *out = specfun::rgamma(x); });
}

// ---- profiles

softring_status softring_profile_constant(double alpha, softring_profile** out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] { *out = new softring_profile{CouplingProfile::constant(alpha)}; });
}

softring_status softring_profile_broken_ring(double alpha, double theta, double gap_center,
                                             softring_profile** out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] { *out = new softring_profile{make_broken_ring(alpha, theta, gap_center)}; });
}

softring_status softring_profile_random(int n_segments, double alpha0, double dispersion,
                                        uint64_t seed, softring_profile** out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] {
    *out = new softring_profile{make_random_profile(n_segments, alpha0, dispersion, seed)};
  });
}

softring_status softring_profile_from_segments(const double* start, const double* end,
                                               const double* alpha, size_t n,
                                               softring_profile** out) {
  SOFTRING_REQUIRE(out && start && end && alpha, "null argument");
  return guarded([&] {
    std::vector<Segment> segs(n);
    for (size_t i = 0; i < n; ++i) segs[i] = {start[i], end[i], alpha[i]};
    *out = new softring_profile{CouplingProfile::from_segments(std::move(segs))};
  });
}

softring_status softring_profile_parse(const char* text, softring_profile** out) {
  SOFTRING_REQUIRE(out && text, "null argument");
  return guarded([&] {
    *out = new softring_profile{CouplingProfile::from_document(KeyValueDocument::parse(text))};
  });
}

softring_status softring_profile_serialize(const softring_profile* p, char** out) {
  SOFTRING_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = dup_string(p->profile.to_document().to_string()); });
}

softring_status softring_profile_segment_count(const softring_profile* p, size_t* out) {
  SOFTRING_REQUIRE(p && out, "null argument");
  *out = p->profile.segments().size();
  return SOFTRING_OK;
}

softring_status softring_profile_segment(const softring_profile* p, size_t i, double* start,
                                         double* end, double* alpha) {
  SOFTRING_REQUIRE(p, "profile is null");
  SOFTRING_REQUIRE(i < p->profile.segments().size(), "segment index out of range");
  const Segment& s = p->profile.segments()[i];
  if (start) *start = s.start;
  if (end) *end = s.end;
  if (alpha) *alpha = s.alpha;
  return SOFTRING_OK;
}

softring_status softring_profile_value(const softring_profile* p, double phi, double* out) {
  SOFTRING_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = p->profile.value_at(phi); });
}

softring_status softring_profile_fourier(const softring_profile* p, int k, double* re,
                                         double* im) {
  SOFTRING_REQUIRE(p && re && im, "null argument");
  return guarded([&] {
    const std::complex<double> c = fourier_coefficient(p->profile, k);
    *re = c.real();
    *im = c.imag();
  });
}

void softring_profile_free(softring_profile* p) { delete p; }

// ---- problems

void softring_solver_options_init(softring_solver_options* o) {
  if (!o) return;
  const SpectralProblem d;
  o->truncation = d.truncation;
  o->has_window = 0;
  o->window_low = 0.0;
  o->window_high = 0.0;
  o->root_tolerance = d.root_tolerance;
  o->convergence_tolerance = d.convergence_tolerance;
  o->landau_bands = d.landau_bands;
  o->scan_points = d.scan_points;
  o->max_doublings = d.max_doublings;
  o->max_levels = d.max_levels;
  o->jobs = d.jobs;
}

softring_status softring_problem_create(double radius, const softring_profile* profile,
                                        softring_field field,
                                        const softring_solver_options* opts,
                                        softring_problem** out) {
  SOFTRING_REQUIRE(profile && out, "null argument");
  return guarded([&] {
    auto p = std::make_unique<softring_problem>();
    p->problem.geometry = RingGeometry(radius);
    p->problem.coupling = profile->profile;
    p->problem.field = to_field(field);
    if (opts) apply_options(*opts, p->problem);
    p->problem.validate();
    *out = p.release();
  });
}

softring_status softring_problem_default_truncation(const softring_problem* p, int* out) {
  SOFTRING_REQUIRE(p && out, "null argument");
  *out = p->problem.default_truncation();
  return SOFTRING_OK;
}

void softring_problem_free(softring_problem* p) { delete p; }

softring_status softring_secular_matrix(const softring_problem* p, double coordinate,
                                        int truncation, double* re, double* im,
                                        size_t capacity) {
  SOFTRING_REQUIRE(p && re && im, "null argument");
  SOFTRING_REQUIRE(truncation >= 1, "truncation must be >= 1");
  const size_t d = 2 * static_cast<size_t>(truncation) + 1;
  if (capacity < d * d) return fail(SOFTRING_ERR_BUFFER_TOO_SMALL, "need (2N+1)^2 entries");
  return guarded([&] {
    const EnergyParam e = uses_kappa(p->problem.field) ? EnergyParam::kappa(coordinate)
                                                       : EnergyParam::energy_value(coordinate);
    const SecularMatrix h = build_secular_matrix(p->problem, e, truncation);
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < d; ++j) {
        re[i * d + j] = h.entries(i, j).real();
        im[i * d + j] = h.entries(i, j).imag();
      }
    }
  });
}

softring_status softring_eigen_branches(const softring_problem* p, const double* grid, size_t n,
                                        int truncation, double* out, int* pole) {
  SOFTRING_REQUIRE(p && (grid || n == 0) && (out || n == 0) && (pole || n == 0), "null argument");
  SOFTRING_REQUIRE(truncation >= 1, "truncation must be >= 1");
  return guarded([&] {
    std::vector<EnergyParam> g(n);
    for (size_t i = 0; i < n; ++i) {
      g[i] = uses_kappa(p->problem.field) ? EnergyParam::kappa(grid[i])
                                          : EnergyParam::energy_value(grid[i]);
    }
    const std::vector<BranchRow> rows = eigen_branches(p->problem, g, truncation);
    const size_t d = 2 * static_cast<size_t>(truncation) + 1;
    for (size_t i = 0; i < n; ++i) {
      pole[i] = rows[i].pole ? 1 : 0;
      for (size_t j = 0; j < d; ++j) {
        out[i * d + j] = rows[i].pole ? std::numeric_limits<double>::quiet_NaN()
                                      : rows[i].eigenvalues[j];
      }
    }
  });
}

// ---- spectra

softring_status softring_solve(const softring_problem* p, softring_spectrum** out) {
  SOFTRING_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = new softring_spectrum{find_discrete_spectrum(p->problem)}; });
}

softring_status softring_solve_at_truncation(const softring_problem* p, int truncation,
                                             softring_spectrum** out) {
  SOFTRING_REQUIRE(p && out, "null argument");
  return guarded(
      [&] { *out = new softring_spectrum{solve_at_truncation(p->problem, truncation)}; });
}

size_t softring_spectrum_size(const softring_spectrum* s) { return s ? s->levels.size() : 0; }

softring_status softring_spectrum_level(const softring_spectrum* s, size_t i,
                                        softring_level_info* out) {
  SOFTRING_REQUIRE(s && out, "null argument");
  SOFTRING_REQUIRE(i < s->levels.size(), "level index out of range");
  const Eigenpair& e = s->levels[i];
  out->energy = e.energy;
  out->coordinate = e.coordinate.value;
  out->branch_index = e.branch_index;
  out->band = e.band;
  out->truncation = e.truncation;
  out->residual = e.residual;
  out->converged = e.converged ? 1 : 0;
  out->convergence_delta = e.convergence_delta;
  out->edge_proximity = e.edge_proximity ? 1 : 0;
  return SOFTRING_OK;
}

softring_status softring_spectrum_coefficients(const softring_spectrum* s, size_t i,
                                               softring_coeff_kind kind, double* re, double* im,
                                               size_t capacity, size_t* count) {
  SOFTRING_REQUIRE(s && count, "null argument");
  SOFTRING_REQUIRE(i < s->levels.size(), "level index out of range");
  const Eigenpair& e = s->levels[i];
  const std::vector<std::complex<double>>* v = nullptr;
  switch (kind) {
    case SOFTRING_COEFF_U: v = &e.u; break;
    case SOFTRING_COEFF_C: v = &e.c_coeffs; break;
    case SOFTRING_COEFF_D: v = &e.d_coeffs; break;
    default: return fail(SOFTRING_ERR_INVALID_ARGUMENT, "unknown coefficient kind");
  }
  *count = v->size();
  if (capacity < v->size()) return fail(SOFTRING_ERR_BUFFER_TOO_SMALL, "coefficient buffer too small");
  SOFTRING_REQUIRE(re && im, "null buffer");
  for (size_t k = 0; k < v->size(); ++k) {
    re[k] = (*v)[k].real();
    im[k] = (*v)[k].imag();
  }
  return SOFTRING_OK;
}

void softring_spectrum_free(softring_spectrum* s) { delete s; }

softring_status softring_symmetric_spectrum(double alpha, double radius, softring_field field,
                                            int m_min, int m_max, int level_count,
                                            softring_symmetric_level* out, size_t capacity,
                                            size_t* count) {
  SOFTRING_REQUIRE(count, "count is null");
  std::vector<SymmetricLevel> levels;
  const softring_status st = guarded([&] {
    levels = symmetric_spectrum(alpha, radius, to_field(field), m_min, m_max, level_count);
  });
  if (st != SOFTRING_OK) return st;
  *count = levels.size();
  if (capacity < levels.size()) return fail(SOFTRING_ERR_BUFFER_TOO_SMALL, "level buffer too small");
  SOFTRING_REQUIRE(out || levels.empty(), "out is null");
  for (size_t i = 0; i < levels.size(); ++i) out[i] = {levels[i].m, levels[i].band, levels[i].energy};
  return SOFTRING_OK;
}

softring_status softring_critical_flux(double alpha, double radius, int m, double* lower,
                                       double* upper) {
  SOFTRING_REQUIRE(lower && upper, "null argument");
  return guarded([&] {
    const CriticalFlux c = critical_flux(alpha, radius, m);
    *lower = c.lower;
    *upper = c.upper;
  });
}

softring_status softring_landau_levels(double b, int m, int count, double* out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] {
    const std::vector<double> z = landau_levels(b, m, count);
    std::copy(z.begin(), z.end(), out);
  });
}

// ---- analysis

softring_status softring_squared_norm(const softring_problem* p, const softring_spectrum* s,
                                      size_t i, double* out) {
  SOFTRING_REQUIRE(p && s && out, "null argument");
  SOFTRING_REQUIRE(i < s->levels.size(), "level index out of range");
  return guarded([&] { *out = squared_norm(s->levels[i], p->problem); });
}

softring_status softring_reconstruct(const softring_problem* p, const softring_spectrum* s,
                                     size_t i, double half_width, int points, double* axis,
                                     double* re, double* im, double* norm_used) {
  SOFTRING_REQUIRE(p && s && axis && re && im, "null argument");
  SOFTRING_REQUIRE(i < s->levels.size(), "level index out of range");
  return guarded([&] {
    GridSpec g;
    g.half_width = half_width > 0.0 ? half_width : 0.0;
    g.points = points;
    const WaveFunctionField f = reconstruct(s->levels[i], p->problem, g);
    std::copy(f.axis.begin(), f.axis.end(), axis);
    for (size_t k = 0; k < f.values.size(); ++k) {
      re[k] = f.values[k].real();
      im[k] = f.values[k].imag();
    }
    if (norm_used) *norm_used = f.norm_used;
  });
}

softring_status softring_boundary_check(const softring_problem* p, const softring_spectrum* s,
                                        size_t i, int n_angles, double* continuity,
                                        double* jump_projected, double* jump_pointwise) {
  SOFTRING_REQUIRE(p && s, "null argument");
  SOFTRING_REQUIRE(i < s->levels.size(), "level index out of range");
  return guarded([&] {
    const BoundaryCheck b = check_boundary_conditions(s->levels[i], p->problem, n_angles);
    if (continuity) *continuity = b.continuity_error;
    if (jump_projected) *jump_projected = b.jump_error_projected;
    if (jump_pointwise) *jump_pointwise = b.jump_error_pointwise;
  });
}

softring_status softring_localization_moment(const softring_spectrum* s, size_t i,
                                             double* delta_psi, double* phi0) {
  SOFTRING_REQUIRE(s && delta_psi, "null argument");
  SOFTRING_REQUIRE(i < s->levels.size(), "level index out of range");
  return guarded([&] {
    const LocalizationMoment m = localization_moment(s->levels[i]);
    *delta_psi = m.delta_psi;
    if (phi0) *phi0 = m.phi0;
  });
}

softring_status softring_persistent_current(const softring_problem* p, int level, double phi,
                                            double delta, softring_current_sample* out,
                                            double* critical_flux_out) {
  SOFTRING_REQUIRE(p && out, "null argument");
  double crit = std::numeric_limits<double>::quiet_NaN();
  const softring_status st = guarded([&] {
    try {
      const CurrentSample c = persistent_current(p->problem, level, phi, delta);
      *out = {c.level, c.flux, c.energy, c.current, c.truncation, c.converged ? 1 : 0};
    } catch (const NoLevelError& e) {
      crit = e.critical_value();
      throw;
    }
  });
  if (critical_flux_out) *critical_flux_out = crit;
  return st;
}

void softring_localization_config_init(softring_localization_config* c) {
  if (!c) return;
  const LocalizationStudyConfig d;
  c->n_samples = d.n_samples;
  c->n_segments = d.n_segments;
  c->alpha0 = d.alpha0;
  c->dispersion_min = d.dispersion_min;
  c->dispersion_max = d.dispersion_max;
  c->radius = d.radius;
  c->seed = d.seed;
  c->root_tolerance = d.root_tolerance;
  c->convergence_tolerance = d.convergence_tolerance;
  c->jobs = d.jobs;
}

softring_status softring_localization_study(const softring_localization_config* c,
                                            softring_localization_sample* out,
                                            size_t capacity) {
  SOFTRING_REQUIRE(c, "config is null");
  SOFTRING_REQUIRE(c->n_samples >= 0 && capacity >= static_cast<size_t>(c->n_samples),
                   "output buffer must hold n_samples entries");
  SOFTRING_REQUIRE(out || c->n_samples == 0, "out is null");
  return guarded([&] {
    LocalizationStudyConfig cfg;
    cfg.n_samples = c->n_samples;
    cfg.n_segments = c->n_segments;
    cfg.alpha0 = c->alpha0;
    cfg.dispersion_min = c->dispersion_min;
    cfg.dispersion_max = c->dispersion_max;
    cfg.radius = c->radius;
    cfg.seed = c->seed;
    cfg.root_tolerance = c->root_tolerance;
    cfg.convergence_tolerance = c->convergence_tolerance;
    cfg.jobs = c->jobs;
    const std::vector<LocalizationSample> s = localization_study(cfg);
    for (size_t i = 0; i < s.size(); ++i) {
      out[i] = {s[i].index, s[i].seed, s[i].dispersion, s[i].delta_psi, s[i].energy,
                s[i].truncation, s[i].converged ? 1 : 0, s[i].ok ? 1 : 0};
    }
  });
}

softring_status softring_spearman(const double* x, const double* y, size_t n, double* out) {
  SOFTRING_REQUIRE(x && y && out, "null argument");
  return guarded([&] {
    *out = spearman_correlation(std::vector<double>(x, x + n), std::vector<double>(y, y + n));
  });
}

// ---- sweeps

void softring_ring_setup_init(softring_ring_setup* s) {
  if (!s) return;
  s->radius = 1.0;
  s->alpha = 1.0;
  s->theta = 0.0;
  s->gap_center = 0.0;
  s->field = {SOFTRING_FIELD_ZERO, 0.0};
  softring_solver_options_init(&s->solver);
}

void softring_sweep_options_init(softring_sweep_options* o) {
  if (!o) return;
  o->allow_symmetric = 1;
  o->levels_per_band = 0;
  o->m_limit = 0;
}

softring_status softring_sweep(const softring_ring_setup* setup,
                               softring_sweep_parameter parameter, const double* grid, size_t n,
                               const softring_sweep_options* opts, softring_table** out) {
  SOFTRING_REQUIRE(setup && out && (grid || n == 0), "null argument");
  SOFTRING_REQUIRE(parameter >= SOFTRING_SWEEP_RADIUS && parameter <= SOFTRING_SWEEP_ALPHA,
                   "unknown sweep parameter");
  return guarded([&] {
    RingSetup s;
    s.radius = setup->radius;
    s.alpha = setup->alpha;
    s.theta = setup->theta;
    s.gap_center = setup->gap_center;
    s.field = to_field(setup->field);
    apply_options(setup->solver, s.solver);
    SweepOptions o;
    if (opts) {
      o.allow_symmetric = opts->allow_symmetric != 0;
      o.levels_per_band = opts->levels_per_band;
      o.m_limit = opts->m_limit;
    }
    *out = new softring_table{
        sweep(s, static_cast<SweepParameter>(parameter), std::vector<double>(grid, grid + n), o)};
  });
}

size_t softring_table_rows(const softring_table* t) { return t ? t->rows.size() : 0; }

softring_status softring_table_row(const softring_table* t, size_t i, softring_sweep_row* out,
                                   const char** message) {
  SOFTRING_REQUIRE(t && out, "null argument");
  SOFTRING_REQUIRE(i < t->rows.size(), "row index out of range");
  const SweepRow& r = t->rows[i];
  *out = {r.parameter, r.level_index, r.label, r.energy, r.converged ? 1 : 0, r.truncation,
          r.failed ? 1 : 0};
  if (message) *message = r.message.c_str();
  return SOFTRING_OK;
}

void softring_table_free(softring_table* t) { delete t; }

// ---- self test

softring_status softring_selftest(int specfun_only, softring_report** out) {
  SOFTRING_REQUIRE(out, "out is null");
  return guarded([&] {
    *out = new softring_report{specfun_only ? run_specfun_selftests() : run_selftests()};
  });
}

size_t softring_report_size(const softring_report* r) { return r ? r->entries.size() : 0; }

softring_status softring_report_entry(const softring_report* r, size_t i, const char** name,
                                      int* passed, double* max_error, double* tolerance,
                                      const char** detail) {
  SOFTRING_REQUIRE(r, "report is null");
  SOFTRING_REQUIRE(i < r->entries.size(), "entry index out of range");
  const SelftestResult& e = r->entries[i];
  if (name) *name = e.name.c_str();
  if (passed) *passed = e.passed ? 1 : 0;
  if (max_error) *max_error = e.max_error;
  if (tolerance) *tolerance = e.tolerance;
  if (detail) *detail = e.detail.c_str();
  return SOFTRING_OK;
}

void softring_report_free(softring_report* r) { delete r; }

// ---- configuration text

softring_status softring_config_parse(const char* text, softring_config** out) {
  SOFTRING_REQUIRE(text && out, "null argument");
  return guarded([&] { *out = new softring_config{KeyValueDocument::parse(text)}; });
}

softring_status softring_config_parse_file(const char* path, softring_config** out) {
  SOFTRING_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new softring_config{KeyValueDocument::parse_file(path)}; });
}

size_t softring_config_size(const softring_config* c) { return c ? c->doc.entries().size() : 0; }

softring_status softring_config_entry(const softring_config* c, size_t i, const char** key,
                                      const char** value, int* line) {
  SOFTRING_REQUIRE(c, "config is null");
  SOFTRING_REQUIRE(i < c->doc.entries().size(), "entry index out of range");
  const KeyValueEntry& e = c->doc.entries()[i];
  if (key) *key = e.key.c_str();
  if (value) *value = e.value.c_str();
  if (line) *line = e.line;
  return SOFTRING_OK;
}

void softring_config_free(softring_config* c) { delete c; }

softring_status softring_parse_angle_pi(const char* text, double* out) {
  SOFTRING_REQUIRE(text && out, "null argument");
  return guarded([&] { *out = parse_angle_pi(text); });
}

softring_status softring_format_double(double v, char* buf, size_t capacity) {
  SOFTRING_REQUIRE(buf, "buf is null");
  const std::string s = format_double(v);
  if (capacity < s.size() + 1) return fail(SOFTRING_ERR_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return SOFTRING_OK;
}

}  // extern "C"

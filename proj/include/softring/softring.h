/* Copyright 2026 The softring Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the softring library: bound states of a two-dimensional
 * particle with a delta interaction on a ring of radius R, coupling
 * alpha(phi) piecewise constant, in zero field, a homogeneous magnetic
 * field B or an Aharonov-Bohm flux line.
 *
 * Conventions
 *   - Every fallible call returns a softring_status. On failure the message
 *     is available from softring_last_error() in the calling thread until
 *     the next failing call.
 *   - Objects are opaque handles created by *_create / *_parse / solve
 *     calls and released by the matching *_free call (NULL is accepted).
 *   - Strings returned through char** are owned by the caller and released
 *     with softring_string_free. const char* results stay valid for the
 *     lifetime of the owning handle.
 *   - Angles are radians; energies use rationalized units (hbar = 2m = 1).
 *   - Energy coordinate: kappa > 0 with E = -kappa^2 for zero field and
 *     flux line, E itself for the homogeneous field.
 */
#ifndef SOFTRING_SOFTRING_H_
#define SOFTRING_SOFTRING_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SOFTRING_API __declspec(dllexport)
#else
#define SOFTRING_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum softring_status {
  SOFTRING_OK = 0,
  SOFTRING_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad size, bad enum */
  SOFTRING_ERR_DOMAIN = 2,           /* argument outside the mathematical domain */
  SOFTRING_ERR_OVERFLOW = 3,         /* result beyond the double range */
  SOFTRING_ERR_POLE = 4,             /* evaluation at a singular energy */
  SOFTRING_ERR_NO_LEVEL = 5,         /* requested level does not exist */
  SOFTRING_ERR_CONFIG = 6,           /* malformed configuration text */
  SOFTRING_ERR_BUFFER_TOO_SMALL = 7, /* *count holds the required size */
  SOFTRING_ERR_INTERNAL = 8
} softring_status;

SOFTRING_API const char* softring_version(void);
SOFTRING_API const char* softring_status_string(softring_status status);
SOFTRING_API const char* softring_last_error(void);
SOFTRING_API void softring_string_free(char* s);

/* ---- special functions ------------------------------------------------ */

typedef struct softring_eval {
  double value;
  double abs_error_estimate; /* heuristic, not a rigorous bound */
  int underflow;             /* nonzero: true value below the double range */
} softring_eval;

SOFTRING_API softring_status softring_bessel_i(double nu, double x, softring_eval* out);
SOFTRING_API softring_status softring_bessel_k(double nu, double x, softring_eval* out);
/* (I_nu K_nu)(x) */
SOFTRING_API softring_status softring_bessel_ik_product(double nu, double x, double* out);
/* M(a, b; x) and U(a, b; x) for integer b >= 1 */
SOFTRING_API softring_status softring_kummer_m(double a, int b, double x, softring_eval* out);
SOFTRING_API softring_status softring_kummer_u(double a, int b, double x, softring_eval* out);
SOFTRING_API softring_status softring_gamma(double x, softring_eval* out);
/* 1/Gamma(x); exactly 0 at the poles of Gamma */
SOFTRING_API softring_status softring_rgamma(double x, double* out);

/* ---- coupling profiles -------------------------------------------------- */

typedef struct softring_profile softring_profile;

SOFTRING_API softring_status softring_profile_constant(double alpha, softring_profile** out);
/* alpha outside a gap of width theta in (0, 2 pi) centred at gap_center */
SOFTRING_API softring_status softring_profile_broken_ring(double alpha, double theta,
                                                          double gap_center,
                                                          softring_profile** out);
/* n equal segments, alpha_j uniform with mean alpha0 and standard deviation
 * `dispersion` */
SOFTRING_API softring_status softring_profile_random(int n_segments, double alpha0,
                                                     double dispersion, uint64_t seed,
                                                     softring_profile** out);
/* Contiguous segments [start_i, end_i) covering exactly one turn */
SOFTRING_API softring_status softring_profile_from_segments(const double* start,
                                                            const double* end,
                                                            const double* alpha, size_t n,
                                                            softring_profile** out);
/* Key-value profile text (see docs/formats.md) */
SOFTRING_API softring_status softring_profile_parse(const char* text, softring_profile** out);
SOFTRING_API softring_status softring_profile_serialize(const softring_profile* p, char** out);
SOFTRING_API softring_status softring_profile_segment_count(const softring_profile* p,
                                                            size_t* out);
SOFTRING_API softring_status softring_profile_segment(const softring_profile* p, size_t i,
                                                      double* start, double* end,
                                                      double* alpha);
SOFTRING_API softring_status softring_profile_value(const softring_profile* p, double phi,
                                                    double* out);
/* int_0^{2 pi} alpha(phi) e^{i k phi} dphi */
SOFTRING_API softring_status softring_profile_fourier(const softring_profile* p, int k,
                                                      double* re, double* im);
SOFTRING_API void softring_profile_free(softring_profile* p);

/* ---- fields and problems ------------------------------------------------ */

typedef enum softring_field_kind {
  SOFTRING_FIELD_ZERO = 0,
  SOFTRING_FIELD_HOMOGENEOUS = 1, /* value = B > 0 */
  SOFTRING_FIELD_FLUX = 2         /* value = phi, flux in units of the quantum */
} softring_field_kind;

typedef struct softring_field {
  softring_field_kind kind;
  double value;
} softring_field;

typedef struct softring_solver_options {
  int truncation;   /* partial waves |m| <= N; 0 = ceil(alpha_max R) + 16 */
  int has_window;   /* nonzero: search only [window_low, window_high] */
  double window_low;  /* in the energy coordinate of the field */
  double window_high;
  double root_tolerance;        /* bound on |lambda_j| at a root */
  double convergence_tolerance; /* bound on |E(N+8) - E(N)| */
  int landau_bands;  /* homogeneous field: windows below/between Landau levels */
  int scan_points;   /* homogeneous field: grid points per window */
  int max_doublings; /* truncation doublings while unconverged */
  int max_levels;    /* keep the lowest max_levels roots; 0 = all */
  int jobs;          /* worker threads */
} softring_solver_options;

SOFTRING_API void softring_solver_options_init(softring_solver_options* opts);

typedef struct softring_problem softring_problem;

/* opts may be NULL for defaults */
SOFTRING_API softring_status softring_problem_create(double radius,
                                                     const softring_profile* profile,
                                                     softring_field field,
                                                     const softring_solver_options* opts,
                                                     softring_problem** out);
SOFTRING_API softring_status softring_problem_default_truncation(const softring_problem* p,
                                                                 int* out);
SOFTRING_API void softring_problem_free(softring_problem* p);

/* Hermitian secular matrix at one energy coordinate, (2N+1)^2 entries in
 * row-major order, row i <-> m = i - N. */
SOFTRING_API softring_status softring_secular_matrix(const softring_problem* p,
                                                     double coordinate, int truncation,
                                                     double* re, double* im, size_t capacity);
/* Ascending eigenvalues of H at each grid coordinate: out has
 * n * (2N+1) entries; pole[i] is set when H is undefined at grid[i]. */
SOFTRING_API softring_status softring_eigen_branches(const softring_problem* p,
                                                     const double* grid, size_t n,
                                                     int truncation, double* out, int* pole);

/* ---- spectra ------------------------------------------------------------ */

typedef struct softring_spectrum softring_spectrum;

typedef struct softring_level_info {
  double energy;
  double coordinate; /* kappa or E */
  int branch_index;
  int band;
  int truncation; /* N used */
  double residual;
  int converged;
  double convergence_delta;
  int edge_proximity;
} softring_level_info;

typedef enum softring_coeff_kind {
  SOFTRING_COEFF_U = 0, /* symmetrized null vector, unit norm */
  SOFTRING_COEFF_C = 1, /* interior Ansatz coefficients */
  SOFTRING_COEFF_D = 2  /* exterior Ansatz coefficients */
} softring_coeff_kind;

/* Truncation convergence checked against N + 8 with doubling */
SOFTRING_API softring_status softring_solve(const softring_problem* p, softring_spectrum** out);
/* One fixed truncation, no convergence check */
SOFTRING_API softring_status softring_solve_at_truncation(const softring_problem* p,
                                                          int truncation,
                                                          softring_spectrum** out);
SOFTRING_API size_t softring_spectrum_size(const softring_spectrum* s);
SOFTRING_API softring_status softring_spectrum_level(const softring_spectrum* s, size_t i,
                                                     softring_level_info* out);
/* Entries for m = -N .. N. With capacity too small, *count receives the
 * required size and SOFTRING_ERR_BUFFER_TOO_SMALL is returned. */
SOFTRING_API softring_status softring_spectrum_coefficients(const softring_spectrum* s,
                                                            size_t i, softring_coeff_kind kind,
                                                            double* re, double* im,
                                                            size_t capacity, size_t* count);
SOFTRING_API void softring_spectrum_free(softring_spectrum* s);

typedef struct softring_symmetric_level {
  int m;
  int band;
  double energy;
} softring_symmetric_level;

/* Constant coupling alpha, partial waves m_min..m_max */
SOFTRING_API softring_status softring_symmetric_spectrum(double alpha, double radius,
                                                         softring_field field, int m_min,
                                                         int m_max, int level_count,
                                                         softring_symmetric_level* out,
                                                         size_t capacity, size_t* count);
SOFTRING_API softring_status softring_critical_flux(double alpha, double radius, int m,
                                                    double* lower, double* upper);
SOFTRING_API softring_status softring_landau_levels(double b, int m, int count, double* out);

/* ---- analysis ----------------------------------------------------------- */

SOFTRING_API softring_status softring_squared_norm(const softring_problem* p,
                                                   const softring_spectrum* s, size_t i,
                                                   double* out);
/* Normalized psi on the lattice [-L, L]^2 (L <= 0 selects 2R), row-major,
 * y slow. axis: points entries; re, im: points^2 entries. */
SOFTRING_API softring_status softring_reconstruct(const softring_problem* p,
                                                  const softring_spectrum* s, size_t i,
                                                  double half_width, int points, double* axis,
                                                  double* re, double* im, double* norm_used);
SOFTRING_API softring_status softring_boundary_check(const softring_problem* p,
                                                     const softring_spectrum* s, size_t i,
                                                     int n_angles, double* continuity,
                                                     double* jump_projected,
                                                     double* jump_pointwise);
SOFTRING_API softring_status softring_localization_moment(const softring_spectrum* s,
                                                          size_t i, double* delta_psi,
                                                          double* phi0);

typedef struct softring_current_sample {
  int level;
  double flux;
  double energy;
  double current;
  int truncation;
  int converged;
} softring_current_sample;

/* On SOFTRING_ERR_NO_LEVEL, *critical_flux (if non-NULL) receives the flux
 * at which the level is absorbed (NaN when unknown). */
SOFTRING_API softring_status softring_persistent_current(const softring_problem* p, int level,
                                                         double phi, double delta,
                                                         softring_current_sample* out,
                                                         double* critical_flux);

typedef struct softring_localization_config {
  int n_samples;
  int n_segments;
  double alpha0;
  double dispersion_min;
  double dispersion_max;
  double radius;
  uint64_t seed;
  double root_tolerance;
  double convergence_tolerance;
  int jobs;
} softring_localization_config;

SOFTRING_API void softring_localization_config_init(softring_localization_config* c);

typedef struct softring_localization_sample {
  int index;
  uint64_t seed;
  double dispersion;
  double delta_psi;
  double energy;
  int truncation;
  int converged;
  int ok; /* zero: the solve failed, values are meaningless */
} softring_localization_sample;

/* out must hold n_samples entries */
SOFTRING_API softring_status softring_localization_study(const softring_localization_config* c,
                                                         softring_localization_sample* out,
                                                         size_t capacity);
SOFTRING_API softring_status softring_spearman(const double* x, const double* y, size_t n,
                                               double* out);

/* ---- sweeps ------------------------------------------------------------- */

typedef struct softring_ring_setup {
  double radius;
  double alpha;
  double theta; /* gap width, 0 = full ring */
  double gap_center;
  softring_field field;
  softring_solver_options solver;
} softring_ring_setup;

SOFTRING_API void softring_ring_setup_init(softring_ring_setup* s);

typedef enum softring_sweep_parameter {
  SOFTRING_SWEEP_RADIUS = 0,
  SOFTRING_SWEEP_GAP = 1,
  SOFTRING_SWEEP_FIELD = 2, /* B of a homogeneous field */
  SOFTRING_SWEEP_FLUX = 3,  /* phi of a flux line */
  SOFTRING_SWEEP_ALPHA = 4
} softring_sweep_parameter;

typedef struct softring_sweep_options {
  int allow_symmetric; /* full rings: per-partial-wave roots labelled by m */
  int levels_per_band; /* 0 = all */
  int m_limit;         /* 0 = derived from the setup */
} softring_sweep_options;

SOFTRING_API void softring_sweep_options_init(softring_sweep_options* o);

typedef struct softring_sweep_row {
  double parameter;
  int level_index; /* tracked label, or band on the per-wave path */
  int label;       /* m on the per-wave path, branch index otherwise */
  double energy;
  int converged;
  int truncation;
  int failed;
} softring_sweep_row;

typedef struct softring_table softring_table;

SOFTRING_API softring_status softring_sweep(const softring_ring_setup* setup,
                                           softring_sweep_parameter parameter,
                                           const double* grid, size_t n,
                                           const softring_sweep_options* opts,
                                           softring_table** out);
SOFTRING_API size_t softring_table_rows(const softring_table* t);
/* message may be NULL; it receives "" for rows that did not fail */
SOFTRING_API softring_status softring_table_row(const softring_table* t, size_t i,
                                                softring_sweep_row* out, const char** message);
SOFTRING_API void softring_table_free(softring_table* t);

/* ---- self test ---------------------------------------------------------- */

typedef struct softring_report softring_report;

SOFTRING_API softring_status softring_selftest(int specfun_only, softring_report** out);
SOFTRING_API size_t softring_report_size(const softring_report* r);
SOFTRING_API softring_status softring_report_entry(const softring_report* r, size_t i,
                                                   const char** name, int* passed,
                                                   double* max_error, double* tolerance,
                                                   const char** detail);
SOFTRING_API void softring_report_free(softring_report* r);

/* ---- key-value configuration text -------------------------------------- */

typedef struct softring_config softring_config;

/* Syntax errors report "line N: ..." through softring_last_error. */
SOFTRING_API softring_status softring_config_parse(const char* text, softring_config** out);
SOFTRING_API softring_status softring_config_parse_file(const char* path, softring_config** out);
SOFTRING_API size_t softring_config_size(const softring_config* c);
SOFTRING_API softring_status softring_config_entry(const softring_config* c, size_t i,
                                                   const char** key, const char** value,
                                                   int* line);
SOFTRING_API void softring_config_free(softring_config* c);

/* "p/q" or a decimal, in units of pi; returns radians */
SOFTRING_API softring_status softring_parse_angle_pi(const char* text, double* out);
/* Shortest text that reads back to the same double */
SOFTRING_API softring_status softring_format_double(double v, char* buf, size_t capacity);

#ifdef __cplusplus
}
#endif

#endif /* SOFTRING_SOFTRING_H_ */

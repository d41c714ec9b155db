// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "solver.hpp"

// Eigenfunction reconstruction, normalization, localization statistics,
// persistent currents and parameter sweeps.
//
// Wave functions use the scaling of the symmetrized null vector u:
//   psi(r, phi) = sum_m u_m f_m(r)/f_m(R) e^{i m phi}   (r <= R)
//               = sum_m u_m g_m(r)/g_m(R) e^{i m phi}   (r >= R)
// which equals the Ansatz with c_m = u_m/f_m(R), d_m = u_m/g_m(R).

namespace softring {

// psi at a point, unnormalized.
std::complex<double> wavefunction_at(const Eigenpair& pair, const SpectralProblem& problem,
                                     double r, double phi);

struct GridSpec {
  double half_width = 0.0;  // L; 0 selects 2R
  int points = 101;         // per axis
};

// Values on the Cartesian lattice [-L, L]^2, row-major with y as the slow
// index. Normalized so that the integral of |psi|^2 over the plane is 1.
struct WaveFunctionField {
  int points = 0;
  double half_width = 0.0;
  std::vector<double> axis;
  std::vector<std::complex<double>> values;
  double norm_used = 0.0;  // ||psi|| of the unnormalized function
};
WaveFunctionField reconstruct(const Eigenpair& pair, const SpectralProblem& problem,
                              const GridSpec& grid);

// int_0^R r (f(r)/f(R))^2 dr and int_R^inf r (g(r)/g(R))^2 dr.
struct RadialIntegrals {
  double inner = 0.0;
  double outer = 0.0;
};
// Bessel pairs use the Lommel closed forms; Kummer pairs always integrate
// numerically.
RadialIntegrals radial_integrals(const RadialPair& pair, double radius);
RadialIntegrals radial_integrals_quadrature(const RadialPair& pair, double radius);

// ||psi||^2 = 2 pi sum_m |u_m|^2 (inner_m + outer_m).
double squared_norm(const Eigenpair& pair, const SpectralProblem& problem);

// Matching conditions at r = R sampled at n_angles equidistant angles,
// with one-sided second-order finite differences of step eps_rel * R.
// Errors are relative to the largest |alpha psi| (jump) or |psi|
// (continuity) on the ring.
struct BoundaryCheck {
  double continuity_error = 0.0;
  // Against the truncated condition: the Fourier projection of -alpha psi
  // onto the retained partial waves.
  double jump_error_projected = 0.0;
  // Against -alpha(phi) psi(phi) itself; limited by the truncation where
  // alpha is discontinuous.
  double jump_error_pointwise = 0.0;
};
BoundaryCheck check_boundary_conditions(const Eigenpair& pair, const SpectralProblem& problem,
                                        int n_angles = 64, double eps_rel = 1e-5);

// Ring density |sum_m u_m e^{i m phi}|^2, normalized, and its wrapped
// second moment about phi0.
double second_moment(const std::vector<std::complex<double>>& ring_coeffs, double phi0);

struct LocalizationMoment {
  double delta_psi = 0.0;  // sqrt of the minimized second moment
  double phi0 = 0.0;       // minimizer in [0, 2 pi)
};
LocalizationMoment localization_moment(const std::vector<std::complex<double>>& ring_coeffs);
LocalizationMoment localization_moment(const Eigenpair& pair);

struct LocalizationStudyConfig {
  int n_samples = 500;
  int n_segments = 10;
  double alpha0 = 1.0;
  double dispersion_min = 0.0;
  double dispersion_max = 0.9;
  double radius = 5.0;
  std::uint64_t seed = 1;
  double root_tolerance = 1e-9;
  double convergence_tolerance = 1e-5;
  int jobs = 1;
};

struct LocalizationSample {
  int index = 0;
  std::uint64_t seed = 0;  // stream seed of this sample
  double dispersion = 0.0;
  double delta_psi = 0.0;
  double energy = 0.0;
  int truncation = 0;
  bool converged = false;
  bool ok = false;
  std::string error;
};

// Sample i draws its dispersion and its profile from the stream
// derive_stream_seed(seed, i), so results do not depend on scheduling.
std::vector<LocalizationSample> localization_study(const LocalizationStudyConfig& config);

// Spearman rank correlation with average ranks for ties.
double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y);

struct CurrentSample {
  int level = 0;
  double flux = 0.0;
  double energy = 0.0;
  double current = 0.0;
  int truncation = 0;
  bool converged = false;
};

// -(E_j(phi + delta) - E_j(phi - delta)) / (2 delta) for the j-th lowest
// level of a flux-line problem. All three solves use the truncation chosen
// at phi. Throws NoLevelError (with the critical flux) when level j is
// absent somewhere on the stencil, DomainError when the stencil contains
// an integer flux.
CurrentSample persistent_current(const SpectralProblem& problem, int level, double phi,
                                 double delta = 1e-3);

// Ring with constant coupling alpha outside a gap of width theta.
struct RingSetup {
  double radius = 1.0;
  double alpha = 1.0;
  double theta = 0.0;  // 0: full ring
  double gap_center = 0.0;
  FieldConfig field = ZeroField{};
  // Solver settings; geometry, coupling and field are overwritten.
  SpectralProblem solver;

  SpectralProblem to_problem() const;
  bool full_ring() const { return theta == 0.0; }
};

enum class SweepParameter { Radius, Gap, Field, Flux, Alpha };
const char* sweep_parameter_name(SweepParameter p);

struct SweepOptions {
  // Full rings use per-partial-wave roots labelled by m.
  bool allow_symmetric = true;
  // Keep at most this many levels per band at every point; 0 keeps all.
  int levels_per_band = 0;
  // Largest |m| for the per-partial-wave path; 0 derives it from the setup.
  int m_limit = 0;
};

struct SweepRow {
  double parameter = 0.0;
  // Tracked level label (continuation path) or band (per-wave path).
  int level_index = 0;
  // m for the per-wave path, eigenvalue branch otherwise.
  int label = 0;
  double energy = 0.0;
  bool converged = false;
  int truncation = 0;
  bool failed = false;
  std::string message;
};

RingSetup with_parameter(const RingSetup& setup, SweepParameter p, double value);

// Rows grouped by grid point (in grid order), ascending energy within a
// point. A point whose solve throws yields one row with failed = true.
std::vector<SweepRow> sweep(const RingSetup& setup, SweepParameter parameter,
                            const std::vector<double>& grid, const SweepOptions& options = {});

}  // namespace softring

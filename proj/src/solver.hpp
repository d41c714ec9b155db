// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "basis.hpp"
#include "domain.hpp"

// Truncated secular matrix and discrete-spectrum search.
//
// With u_m = d_m g_m(R) the matching conditions at the ring become the
// Hermitian system H(E) u = 0 on partial waves m in [-N, N]:
//
//   H_nm = alpha_{mn}                          (m != n)
//   H_nn = <alpha> + 2 pi W(f_n, g_n)(R) / (f_n g_n)(R)
//
// where alpha_{mn} is the Fourier coefficient of alpha at k = m - n.
// Eigenvalues of the discrete spectrum are the energies at which one of the
// eigenvalue branches lambda_j(E) of H(E) vanishes.

namespace softring {

// Bounds in the field's energy coordinate (kappa, or E for the homogeneous
// field), low < high.
struct EnergyWindow {
  double low = 0.0;
  double high = 0.0;
};

struct SpectralProblem {
  RingGeometry geometry{1.0};
  CouplingProfile coupling = CouplingProfile::constant(1.0);
  FieldConfig field = ZeroField{};
  // Partial waves m in [-N, N]; 0 selects ceil(alpha_max R) + 16.
  int truncation = 0;
  // Defaults: kappa in [1e-4, kappa_max] where all branches are negative at
  // kappa_max; for the homogeneous field, the first `landau_bands` windows
  // below and between Landau levels.
  std::optional<EnergyWindow> energy_window;
  // Bound on |lambda_j| at an accepted root.
  double root_tolerance = 1e-9;
  // Bound on |E(N+8) - E(N)| for a converged root.
  double convergence_tolerance = 1e-5;
  int landau_bands = 3;
  // Grid points per inter-Landau window (homogeneous field).
  int scan_points = 400;
  // Number of times N may be doubled while roots are unconverged.
  int max_doublings = 2;
  // Keep only the lowest max_levels roots; 0 keeps all.
  int max_levels = 0;
  int jobs = 1;

  void validate() const;
  int default_truncation() const;
};

struct SecularMatrix {
  Eigen::MatrixXcd entries;
  EnergyParam energy;
  int m_min = 0;  // row/column i corresponds to m = m_min + i
};

struct Eigenpair {
  double energy = 0.0;
  EnergyParam coordinate;
  // Index j of the ascending eigenvalue branch that vanishes.
  int branch_index = 0;
  // Inter-Landau window (homogeneous field), 0 otherwise.
  int band = 0;
  int truncation = 0;  // N_used
  double residual = 0.0;
  bool converged = false;
  // |E(N_used) - E(N_used - 8)|, infinity when the root has no partner.
  double convergence_delta = 0.0;
  bool edge_proximity = false;
  // Symmetrized null vector, unit norm, and the Ansatz coefficients; entry
  // i belongs to m = i - truncation.
  std::vector<std::complex<double>> u;
  std::vector<std::complex<double>> d_coeffs;
  std::vector<std::complex<double>> c_coeffs;

  int m_min() const { return -truncation; }
  int m_max() const { return truncation; }
};

// Throws PoleError when f_n(R) g_n(R) = 0 for some |n| <= N.
SecularMatrix build_secular_matrix(const SpectralProblem& problem, EnergyParam energy,
                                   int truncation);

struct BranchRow {
  EnergyParam energy;
  bool pole = false;  // matrix undefined here; eigenvalues left empty
  std::vector<double> eigenvalues;
};
std::vector<BranchRow> eigen_branches(const SpectralProblem& problem,
                                      const std::vector<EnergyParam>& grid, int truncation);

// All roots at one fixed truncation, without the convergence check
// (converged stays false, convergence_delta is NaN).
std::vector<Eigenpair> solve_at_truncation(const SpectralProblem& problem, int truncation);

// Roots sorted by energy, each checked against a solve at N + 8 and with N
// doubled up to max_doublings times while some root is unconverged.
std::vector<Eigenpair> find_discrete_spectrum(const SpectralProblem& problem);

struct SymmetricLevel {
  int m = 0;
  int band = 0;
  double energy = 0.0;
};

// Constant coupling: per-partial-wave roots of alpha + W/(f_m g_m)(R) = 0.
// For zero field and flux line there is at most one level per m; for the
// homogeneous field one root is sought per band (up to level_count bands).
std::vector<SymmetricLevel> symmetric_spectrum(double alpha, double radius,
                                               const FieldConfig& field, int m_min, int m_max,
                                               int level_count = 3);

// Fluxes at which partial wave m leaves the spectrum: m - alpha R/2 and
// m + alpha R/2.
struct CriticalFlux {
  double lower = 0.0;
  double upper = 0.0;
};
CriticalFlux critical_flux(double alpha, double radius, int m);

}  // namespace softring

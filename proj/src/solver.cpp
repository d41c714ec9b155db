// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "errors.hpp"
#include "parallel.hpp"
#include "specfun.hpp"

namespace softring {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kKappaFloor = 1e-4;
constexpr double kWindowMargin = 0.1;
constexpr double kLandauGuard = 1e-6;  // in units of B
constexpr double kPoleGuard = 1e-11;   // in units of B
constexpr int kConvergenceStep = 8;

double kappa_upper_start(double alpha_max, double radius) {
  return 0.5 * std::max(alpha_max, 0.0) * (1.0 + kWindowMargin) + 1.0 / radius;
}

// Secular matrix on the partial waves [m_min, m_max] with cached Fourier
// coefficients of the coupling.
class Assembler {
 public:
  Assembler(const SpectralProblem& p, int m_min, int m_max)
      : p_(p), m_min_(m_min), size_(m_max - m_min + 1) {
    fourier_.resize(2 * size_ - 1);
    for (int k = -(size_ - 1); k <= size_ - 1; ++k) {
      fourier_[k + size_ - 1] = fourier_coefficient(p.coupling, k);
    }
  }

  int size() const { return size_; }
  int m_min() const { return m_min_; }

  std::vector<RadialPair> pairs(EnergyParam e) const {
    std::vector<RadialPair> out;
    out.reserve(size_);
    for (int i = 0; i < size_; ++i) {
      out.push_back(radial_pair(p_.field, m_min_ + i, e, p_.geometry.radius()));
    }
    return out;
  }

  Eigen::MatrixXcd matrix(const std::vector<RadialPair>& pairs) const {
    Eigen::MatrixXcd h(size_, size_);
    const double mean = fourier_[size_ - 1].real();
    for (int i = 0; i < size_; ++i) {
      for (int j = 0; j < size_; ++j) h(i, j) = fourier_[j - i + size_ - 1];
      h(i, i) = cplx(mean + kTwoPi * pairs[i].wronskian_over_fg(), 0.0);
    }
    return h;
  }

  Eigen::MatrixXcd matrix(EnergyParam e) const { return matrix(pairs(e)); }

  Eigen::VectorXd eigenvalues(EnergyParam e) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix(e), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

 private:
  const SpectralProblem& p_;
  int m_min_;
  int size_;
  std::vector<cplx> fourier_;
};

struct RootSeed {
  double coordinate = 0.0;
  int branch = 0;
  int band = 0;
  bool edge = false;
};

EnergyParam coordinate_param(const FieldConfig& field, double c) {
  return uses_kappa(field) ? EnergyParam::kappa(c) : EnergyParam::energy_value(c);
}

// Refines the zero of branch j on [a, b] (opposite signs at the ends).
// Returns false when the bracket closes on a pole instead of a root.
bool refine_branch(const Assembler& as, const FieldConfig& field, double f0, int j, double a, double b,
                   double fa, double fb, double root_tolerance, double* root) {
  auto f = [&](double c) { return as.eigenvalues(coordinate_param(field, c))(j); };
  if (fa == 0.0) {
    *root = a;
    return true;
  }
  if (fb == 0.0) {
    *root = b;
    return true;
  }
  std::uintmax_t max_iter = 200;
  auto bracket = boost::math::tools::toms748_solve(
      f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(53), max_iter);
  const double lo = bracket.first, hi = bracket.second;
  const double flo = f(lo);
  const double fhi = (hi == lo) ? flo : f(hi);
  const bool pick_lo = std::fabs(flo) <= std::fabs(fhi);
  const double best = pick_lo ? flo : fhi;
  if (!(std::fabs(best) <= root_tolerance)) {
    // Rounding: the diagonal is <alpha> plus a radial term that may nearly
    // cancel it. Measure the residual against the size of both terms as seen
    // by this branch. A jump across an unresolved pole still has an O(1)
    // residual and is rejected.
    const Eigen::MatrixXcd h = as.matrix(as.pairs(coordinate_param(field, pick_lo ? lo : hi)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXcd v = es.eigenvectors().col(j);
    double scale = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      scale += std::norm(v(i)) * (std::fabs(f0) + std::abs(h(i, i) - f0));
    }
    if (!(std::fabs(best) <= root_tolerance * std::max(1.0, scale))) return false;
  }
  *root = pick_lo ? lo : hi;
  return true;
}

// Zero field and flux line: every branch is strictly decreasing in kappa,
// so branch j has a root in [lo, hi] iff lambda_j(lo) > 0 > lambda_j(hi).
std::vector<RootSeed> kappa_roots(const SpectralProblem& p, const Assembler& as) {
  const double R = p.geometry.radius();
  double lo = kKappaFloor;
  double hi = kappa_upper_start(p.coupling.max_alpha(), R);
  bool fixed_hi = false;
  if (p.energy_window) {
    lo = p.energy_window->low;
    hi = p.energy_window->high;
    fixed_hi = true;
  }
  Eigen::VectorXd e_lo = as.eigenvalues(EnergyParam::kappa(lo));
  Eigen::VectorXd e_hi = as.eigenvalues(EnergyParam::kappa(hi));
  if (!fixed_hi) {
    for (int it = 0; it < 60 && e_hi.maxCoeff() >= 0.0; ++it) {
      hi *= 2.0;
      e_hi = as.eigenvalues(EnergyParam::kappa(hi));
    }
  }
  // Higher branches vanish at larger kappa, i.e. lower energy.
  std::vector<int> branches;
  for (int j = as.size() - 1; j >= 0; --j) {
    if (e_lo(j) > 0.0 && e_hi(j) <= 0.0) branches.push_back(j);
    if (p.max_levels > 0 && static_cast<int>(branches.size()) >= p.max_levels) break;
  }
  std::vector<RootSeed> seeds(branches.size());
  std::vector<char> ok(branches.size(), 0);
  parallel_for(branches.size(), p.jobs, [&](std::size_t k) {
    const int j = branches[k];
    double root = 0.0;
    if (refine_branch(as, p.field, p.coupling.integral(), j, lo, hi, e_lo(j), e_hi(j), p.root_tolerance, &root)) {
      const double tol = p.root_tolerance * std::max(1.0, hi);
      seeds[k] = {root, j, 0, std::fabs(root - lo) <= tol || std::fabs(root - hi) <= tol};
      ok[k] = 1;
    }
  });
  std::vector<RootSeed> out;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    if (ok[k]) out.push_back(seeds[k]);
  }
  return out;
}

// Homogeneous-field scan point: eigenvalues plus the signs of f_m(R) and
// g_m(R), whose changes mark the poles of the diagonal.
struct ScanPoint {
  double z = 0.0;
  bool pole = false;
  Eigen::VectorXd eig;
  std::vector<signed char> sf, sg;
};

signed char sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

ScanPoint scan_point(const SpectralProblem& p, const Assembler& as, double z) {
  ScanPoint s;
  s.z = z;
  const double B = std::get<HomogeneousField>(p.field).b;
  const double R = p.geometry.radius();
  const double x = 0.5 * B * R * R;
  s.sf.resize(as.size());
  s.sg.resize(as.size());
  for (int i = 0; i < as.size(); ++i) {
    const int m = as.m_min() + i;
    const double a = kummer_a(B, m, z);
    s.sf[i] = sign_of(specfun::kummer_m(a, std::abs(m) + 1, x).value);
    s.sg[i] = sign_of(specfun::kummer_u(a, std::abs(m) + 1, x).value);
    if (s.sf[i] == 0 || s.sg[i] == 0) s.pole = true;
  }
  if (!s.pole) {
    try {
      s.eig = as.eigenvalues(EnergyParam::energy_value(z));
    } catch (const PoleError&) {
      s.pole = true;
    }
  }
  return s;
}

// Locates the sign change of M (which_u = false) or U of partial wave m
// on [a, b] by bisection.
double locate_pole(double B, double R, int m, bool which_u, double a, double b) {
  const double x = 0.5 * B * R * R;
  auto sgn = [&](double z) {
    const double ka = kummer_a(B, m, z);
    const double v = which_u ? specfun::kummer_u(ka, std::abs(m) + 1, x).value
                             : specfun::kummer_m(ka, std::abs(m) + 1, x).value;
    return sign_of(v);
  };
  signed char sa = sgn(a);
  if (sa == 0) return a;
  for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() *
                                              std::max(std::fabs(a), std::fabs(b));
       ++it) {
    const double mid = 0.5 * (a + b);
    const signed char sm = sgn(mid);
    if (sm == 0) return mid;
    if (sm == sa) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

struct Window {
  double low, high;
  int band;
};

std::vector<Window> homogeneous_windows(const SpectralProblem& p) {
  const double B = std::get<HomogeneousField>(p.field).b;
  std::vector<Window> out;
  auto band_of = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    return std::max(0, static_cast<int>(std::floor((mid / B + 1.0) / 2.0)));
  };
  double lo, hi;
  if (p.energy_window) {
    lo = p.energy_window->low;
    hi = p.energy_window->high;
  } else {
    const double k = kappa_upper_start(p.coupling.max_alpha(), p.geometry.radius());
    lo = -k * k;
    hi = B * (2 * p.landau_bands - 1);
  }
  double start = lo;
  for (int n = 0;; ++n) {
    const double level = B * (2 * n + 1);
    if (level <= start) continue;
    if (level >= hi) break;
    out.push_back({start, level, band_of(start, level)});
    start = level;
  }
  out.push_back({start, hi, band_of(start, hi)});
  return out;
}

bool is_landau(double z, double B) {
  const double q = (z / B - 1.0) / 2.0;
  return q > -0.5 && std::fabs(q - std::round(q)) < 1e-12;
}

std::vector<RootSeed> homogeneous_roots(const SpectralProblem& p, const Assembler& as) {
  const double B = std::get<HomogeneousField>(p.field).b;
  const double R = p.geometry.radius();
  const double guard = kPoleGuard * B;
  const double landau_guard = kLandauGuard * B;
  const int P = std::max(2, p.scan_points);
  std::vector<RootSeed> out;

  for (const Window& w : homogeneous_windows(p)) {
    const bool lo_landau = is_landau(w.low, B);
    const bool hi_landau = is_landau(w.high, B);
    const double lo = lo_landau ? w.low + landau_guard : w.low;
    const double hi = hi_landau ? w.high - landau_guard : w.high;
    if (!(hi > lo)) continue;
    // Uniform grid plus geometric refinement toward Landau levels, where the
    // levels of high partial waves accumulate.
    std::vector<double> zs;
    for (int i = 0; i <= P; ++i) zs.push_back(i == P ? hi : lo + (hi - lo) * i / P);
    const double step = (hi - lo) / P;
    for (double d = landau_guard * std::sqrt(10.0); d < step; d *= std::sqrt(10.0)) {
      if (lo_landau) zs.push_back(w.low + d);
      if (hi_landau) zs.push_back(w.high - d);
    }
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    std::vector<ScanPoint> pts(zs.size());
    parallel_for(pts.size(), p.jobs, [&](std::size_t i) { pts[i] = scan_point(p, as, zs[i]); });

    // Sub-intervals free of poles, as pairs of evaluated end points.
    std::vector<std::pair<ScanPoint, ScanPoint>> spans;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const ScanPoint& a = pts[i];
      const ScanPoint& b = pts[i + 1];
      std::vector<double> poles;
      for (int k = 0; k < as.size(); ++k) {
        const int m = as.m_min() + k;
        if (a.sf[k] != b.sf[k] || a.sf[k] == 0) poles.push_back(locate_pole(B, R, m, false, a.z, b.z));
        if (a.sg[k] != b.sg[k] || a.sg[k] == 0) poles.push_back(locate_pole(B, R, m, true, a.z, b.z));
      }
      if (poles.empty()) {
        spans.emplace_back(a, b);
        continue;
      }
      std::sort(poles.begin(), poles.end());
      std::vector<double> edges;
      double left = a.z;
      for (double pz : poles) {
        const double right = pz - guard;
        if (right > left) {
          edges.push_back(left);
          edges.push_back(right);
        }
        left = std::max(left, pz + guard);
      }
      if (b.z > left) {
        edges.push_back(left);
        edges.push_back(b.z);
      }
      for (std::size_t e = 0; e + 1 < edges.size(); e += 2) {
        ScanPoint ea = (edges[e] == a.z) ? a : scan_point(p, as, edges[e]);
        ScanPoint eb = (edges[e + 1] == b.z) ? b : scan_point(p, as, edges[e + 1]);
        if (!ea.pole && !eb.pole) spans.emplace_back(std::move(ea), std::move(eb));
      }
    }

    struct Job {
      double a, b, fa, fb;
      int j;
    };
    std::vector<Job> jobs;
    for (const auto& [a, b] : spans) {
      if (a.pole || b.pole) continue;
      for (int j = 0; j < as.size(); ++j) {
        const double fa = a.eig(j), fb = b.eig(j);
        if ((fa > 0.0 && fb <= 0.0) || (fa < 0.0 && fb >= 0.0)) jobs.push_back({a.z, b.z, fa, fb, j});
      }
    }
    std::vector<RootSeed> seeds(jobs.size());
    std::vector<char> ok(jobs.size(), 0);
    parallel_for(jobs.size(), p.jobs, [&](std::size_t k) {
      const Job& jb = jobs[k];
      double root = 0.0;
      try {
        if (refine_branch(as, p.field, p.coupling.integral(), jb.j, jb.a, jb.b, jb.fa, jb.fb, p.root_tolerance, &root)) {
          const double tol = p.root_tolerance * std::max(1.0, std::fabs(root));
          seeds[k] = {root, jb.j, w.band, std::fabs(root - lo) <= tol || std::fabs(root - hi) <= tol};
          ok[k] = 1;
        }
      } catch (const PoleError&) {
      }
    });
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      if (ok[k]) out.push_back(seeds[k]);
    }
  }
  return out;
}

Eigenpair make_eigenpair(const SpectralProblem& p, const Assembler& as, const RootSeed& s,
                         int truncation) {
  Eigenpair e;
  e.coordinate = coordinate_param(p.field, s.coordinate);
  e.energy = e.coordinate.energy();
  e.branch_index = s.branch;
  e.band = s.band;
  e.truncation = truncation;
  e.edge_proximity = s.edge;
  e.convergence_delta = std::numeric_limits<double>::quiet_NaN();
  const std::vector<RadialPair> pairs = as.pairs(e.coordinate);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(as.matrix(pairs));
  e.residual = std::fabs(es.eigenvalues()(s.branch));
  Eigen::VectorXcd v = es.eigenvectors().col(s.branch);
  v.normalize();
  // Fix the phase: the largest component becomes real and positive.
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  v *= std::conj(v(imax)) / std::abs(v(imax));
  v(imax) = cplx(v(imax).real(), 0.0);
  const int n = as.size();
  e.u.resize(n);
  e.d_coeffs.resize(n);
  e.c_coeffs.resize(n);
  for (int i = 0; i < n; ++i) {
    e.u[i] = v(i);
    e.d_coeffs[i] = v(i) / pairs[i].g_at_R();
    e.c_coeffs[i] = v(i) / pairs[i].f_at_R();
  }
  return e;
}

std::vector<Eigenpair> solve_modes(const SpectralProblem& p, int m_min, int m_max,
                                   int truncation) {
  Assembler as(p, m_min, m_max);
  std::vector<RootSeed> seeds = uses_kappa(p.field) ? kappa_roots(p, as) : homogeneous_roots(p, as);
  std::vector<Eigenpair> out(seeds.size());
  parallel_for(seeds.size(), p.jobs,
               [&](std::size_t k) { out[k] = make_eigenpair(p, as, seeds[k], truncation); });
  std::stable_sort(out.begin(), out.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.branch_index < b.branch_index;
  });
  if (p.max_levels > 0 && static_cast<int>(out.size()) > p.max_levels) out.resize(p.max_levels);
  return out;
}

// Greedy nearest-energy pairing of `fine` against `coarse` within a band.
void annotate_convergence(std::vector<Eigenpair>& fine, const std::vector<Eigenpair>& coarse,
                          double tolerance) {
  struct Cand {
    double d;
    std::size_t i, k;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      if (fine[i].band != coarse[k].band) continue;
      cands.push_back({std::fabs(fine[i].energy - coarse[k].energy), i, k});
    }
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cand& a, const Cand& b) { return a.d < b.d; });
  std::vector<char> used_i(fine.size(), 0), used_k(coarse.size(), 0);
  for (auto& e : fine) {
    e.convergence_delta = std::numeric_limits<double>::infinity();
    e.converged = false;
  }
  for (const Cand& c : cands) {
    if (used_i[c.i] || used_k[c.k]) continue;
    used_i[c.i] = used_k[c.k] = 1;
    fine[c.i].convergence_delta = c.d;
    fine[c.i].converged = c.d <= tolerance;
  }
}

}  // namespace

void SpectralProblem::validate() const {
  validate_field(field);
  if (truncation < 0) throw DomainError("truncation must be >= 1 (or 0 for the default)");
  if (!(root_tolerance > 0.0) || !(convergence_tolerance > 0.0)) {
    throw DomainError("tolerances must be > 0");
  }
  if (energy_window) {
    if (!(energy_window->low < energy_window->high)) {
      throw DomainError("energy window requires low < high");
    }
    if (uses_kappa(field) && !(energy_window->low > 0.0)) {
      throw DomainError("kappa window requires low > 0");
    }
  }
  if (landau_bands < 1) throw DomainError("landau_bands must be >= 1");
  if (scan_points < 2) throw DomainError("scan_points must be >= 2");
  if (max_doublings < 0) throw DomainError("max_doublings must be >= 0");
  if (max_levels < 0) throw DomainError("max_levels must be >= 0");
}

int SpectralProblem::default_truncation() const {
  if (truncation > 0) return truncation;
  const double ar = std::max(coupling.max_alpha(), 0.0) * geometry.radius();
  return static_cast<int>(std::ceil(ar)) + 16;
}

SecularMatrix build_secular_matrix(const SpectralProblem& problem, EnergyParam energy,
                                   int truncation) {
  if (truncation < 1) throw DomainError("truncation must be >= 1");
  Assembler as(problem, -truncation, truncation);
  return {as.matrix(energy), energy, -truncation};
}

std::vector<BranchRow> eigen_branches(const SpectralProblem& problem,
                                      const std::vector<EnergyParam>& grid, int truncation) {
  if (truncation < 1) throw DomainError("truncation must be >= 1");
  problem.validate();
  Assembler as(problem, -truncation, truncation);
  std::vector<BranchRow> rows(grid.size());
  parallel_for(grid.size(), problem.jobs, [&](std::size_t i) {
    rows[i].energy = grid[i];
    try {
      Eigen::VectorXd ev = as.eigenvalues(grid[i]);
      rows[i].eigenvalues.assign(ev.data(), ev.data() + ev.size());
    } catch (const PoleError&) {
      rows[i].pole = true;
    }
  });
  return rows;
}

std::vector<Eigenpair> solve_at_truncation(const SpectralProblem& problem, int truncation) {
  problem.validate();
  if (truncation < 1) throw DomainError("truncation must be >= 1");
  return solve_modes(problem, -truncation, truncation, truncation);
}

std::vector<Eigenpair> find_discrete_spectrum(const SpectralProblem& problem) {
  problem.validate();
  int n = problem.default_truncation();
  std::vector<Eigenpair> fine;
  for (int k = 0;; ++k) {
    const std::vector<Eigenpair> coarse = solve_at_truncation(problem, n);
    fine = solve_at_truncation(problem, n + kConvergenceStep);
    annotate_convergence(fine, coarse, problem.convergence_tolerance);
    const bool done = std::all_of(fine.begin(), fine.end(), [](const Eigenpair& e) {
      return e.converged || e.edge_proximity;
    });
    if (done || k >= problem.max_doublings) break;
    n *= 2;
  }
  return fine;
}

std::vector<SymmetricLevel> symmetric_spectrum(double alpha, double radius,
                                               const FieldConfig& field, int m_min, int m_max,
                                               int level_count) {
  if (!(alpha > 0.0)) throw DomainError("symmetric_spectrum: alpha must be > 0");
  if (m_min > m_max) throw DomainError("symmetric_spectrum: empty m range");
  validate_field(field);
  std::vector<SymmetricLevel> out;

  if (uses_kappa(field)) {
    for (int m = m_min; m <= m_max; ++m) {
      auto h = [&](double kappa) {
        return alpha + radial_pair(field, m, EnergyParam::kappa(kappa), radius).wronskian_over_fg();
      };
      const double lo = 1e-12 / radius;
      const double h_lo = h(lo);
      if (!(h_lo > 0.0)) continue;
      double hi = kappa_upper_start(alpha, radius);
      double h_hi = h(hi);
      for (int it = 0; it < 60 && h_hi >= 0.0; ++it) h_hi = h(hi *= 2.0);
      std::uintmax_t max_iter = 200;
      auto br = boost::math::tools::toms748_solve(
          h, lo, hi, h_lo, h_hi, boost::math::tools::eps_tolerance<double>(53), max_iter);
      const double k = 0.5 * (br.first + br.second);
      out.push_back({m, 0, -k * k});
    }
  } else {
    SpectralProblem p;
    p.geometry = RingGeometry(radius);
    p.coupling = CouplingProfile::constant(alpha);
    p.field = field;
    p.landau_bands = level_count;
    for (int m = m_min; m <= m_max; ++m) {
      for (const Eigenpair& e : solve_modes(p, m, m, 0)) out.push_back({m, e.band, e.energy});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SymmetricLevel& a, const SymmetricLevel& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.m < b.m;
  });
  return out;
}

CriticalFlux critical_flux(double alpha, double radius, int m) {
  if (!(alpha > 0.0) || !(radius > 0.0)) throw DomainError("critical_flux: alpha, R must be > 0");
  const double h = 0.5 * alpha * radius;
  return {m - h, m + h};
}

}  // namespace softring

// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "keyvalue.hpp"

// Ring geometry, the angular coupling profile alpha(phi) and the external
// field. Units are rationalized (hbar = 2m* = e = c = 1): lengths in units
// of the ring radius scale, alpha in inverse length, energies in inverse
// length squared. Positive alpha is attractive.

namespace softring {

class RingGeometry {
 public:
  explicit RingGeometry(double radius);
  double radius() const { return radius_; }

 private:
  double radius_;
};

struct Segment {
  double start = 0.0;  // radians
  double end = 0.0;    // radians, end > start
  double alpha = 0.0;  // coupling on [start, end)
};

// Piecewise-constant coupling. The segments are contiguous and cover one
// full turn [start_0, start_0 + 2 pi); start_0 may be negative so that a
// gap centred at phi = 0 is a single segment.
class CouplingProfile {
 public:
  static CouplingProfile constant(double alpha);
  static CouplingProfile from_segments(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  double value_at(double phi) const;
  double max_alpha() const;
  double min_alpha() const;
  // Integral of alpha over one turn, i.e. the k = 0 Fourier coefficient.
  double integral() const;
  bool is_constant() const;
  // alpha'(phi) = alpha(phi - delta).
  CouplingProfile rotated(double delta) const;

  KeyValueDocument to_document() const;
  static CouplingProfile from_document(const KeyValueDocument& doc);

 private:
  explicit CouplingProfile(std::vector<Segment> segments) : segments_(std::move(segments)) {}
  std::vector<Segment> segments_;
};

// int_0^{2pi} alpha(phi) e^{i k phi} dphi, exact segment sum.
std::complex<double> fourier_coefficient(const CouplingProfile& profile, int k);

// Coupling alpha everywhere except a gap of angular width theta centred at
// gap_center, where it vanishes.
CouplingProfile make_broken_ring(double alpha, double theta, double gap_center = 0.0);

// n equal-width segments starting at phi = 0, alpha_j i.i.d. uniform on
// [alpha0 - sqrt(3) dispersion, alpha0 + sqrt(3) dispersion] so that the
// standard deviation is exactly `dispersion`.
CouplingProfile make_random_profile(int n_segments, double alpha0, double dispersion,
                                    std::uint64_t seed);

struct ZeroField {};
struct HomogeneousField {
  double b = 0.0;  // intensity, > 0
};
struct FluxLine {
  double phi = 0.0;  // flux in units of the flux quantum
};
using FieldConfig = std::variant<ZeroField, HomogeneousField, FluxLine>;

void validate_field(const FieldConfig& field);
std::string field_name(const FieldConfig& field);
// Energy coordinate is kappa (E = -kappa^2) for zero field and flux line,
// and E itself for the homogeneous field.
bool uses_kappa(const FieldConfig& field);

}  // namespace softring

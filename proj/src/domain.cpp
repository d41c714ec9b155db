// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include "domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "rng.hpp"

namespace softring {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kJoinTolerance = 1e-12;

}  // namespace

RingGeometry::RingGeometry(double radius) : radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("ring radius must be finite and > 0");
  }
}

CouplingProfile CouplingProfile::constant(double alpha) {
  return from_segments({{0.0, kTwoPi, alpha}});
}

CouplingProfile CouplingProfile::from_segments(std::vector<Segment> segments) {
  if (segments.empty()) throw DomainError("coupling profile needs at least one segment");
  for (std::size_t j = 0; j < segments.size(); ++j) {
    const Segment& s = segments[j];
    if (!std::isfinite(s.start) || !std::isfinite(s.end) || !std::isfinite(s.alpha)) {
      throw DomainError("segment " + std::to_string(j) + " has a non-finite field");
    }
    if (!(s.start < s.end)) {
      throw DomainError("segment " + std::to_string(j) + " must have start < end");
    }
    if (j > 0) {
      const double gap = s.start - segments[j - 1].end;
      if (std::fabs(gap) > kJoinTolerance) {
        throw DomainError(gap > 0 ? "segments leave a gap before segment " + std::to_string(j)
                                  : "segments overlap at segment " + std::to_string(j));
      }
      segments[j].start = segments[j - 1].end;
    }
  }
  const double span = segments.back().end - segments.front().start;
  if (std::fabs(span - kTwoPi) > kJoinTolerance) {
    throw DomainError("segments must cover exactly one turn (2 pi), got " + std::to_string(span));
  }
  segments.back().end = segments.front().start + kTwoPi;
  return CouplingProfile(std::move(segments));
}

double CouplingProfile::value_at(double phi) const {
  const double origin = segments_.front().start;
  double t = std::fmod(phi - origin, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  t += origin;
  for (const auto& s : segments_) {
    if (t < s.end) return s.alpha;
  }
  return segments_.back().alpha;
}

double CouplingProfile::max_alpha() const {
  double m = segments_.front().alpha;
  for (const auto& s : segments_) m = std::max(m, s.alpha);
  return m;
}

double CouplingProfile::min_alpha() const {
  double m = segments_.front().alpha;
  for (const auto& s : segments_) m = std::min(m, s.alpha);
  return m;
}

double CouplingProfile::integral() const {
  double sum = 0.0;
  for (const auto& s : segments_) sum += s.alpha * (s.end - s.start);
  return sum;
}

bool CouplingProfile::is_constant() const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [&](const Segment& s) { return s.alpha == segments_.front().alpha; });
}

CouplingProfile CouplingProfile::rotated(double delta) const {
  std::vector<Segment> out = segments_;
  for (auto& s : out) {
    s.start += delta;
    s.end += delta;
  }
  return CouplingProfile(std::move(out));
}

KeyValueDocument CouplingProfile::to_document() const {
  KeyValueDocument doc;
  doc.add("profile", "segments");
  for (const auto& s : segments_) {
    doc.add("segments[]", format_double(s.start / std::numbers::pi) + " " +
                              format_double(s.end / std::numbers::pi) + " " +
                              format_double(s.alpha));
  }
  return doc;
}

CouplingProfile CouplingProfile::from_document(const KeyValueDocument& doc) {
  std::string kind;
  if (auto k = doc.get_string("profile")) {
    kind = *k;
  } else if (doc.has("segments[]")) {
    kind = "segments";
  } else if (doc.has("theta")) {
    kind = "broken";
  } else if (doc.has("dispersion") || doc.has("n_segments")) {
    kind = "random";
  } else {
    kind = "constant";
  }

  const auto need = [&](std::string_view key) -> const KeyValueEntry& {
    const auto* e = doc.find(key);
    if (!e) throw ConfigError("profile '" + kind + "' requires key '" + std::string(key) + "'", 0);
    return *e;
  };

  if (kind == "constant") {
    const auto& e = need("alpha");
    return constant(parse_double(e.value, e.line));
  }
  if (kind == "broken") {
    const auto& a = need("alpha");
    const auto& t = need("theta");
    const double center = doc.get_angle_pi("gap_center").value_or(0.0);
    const double theta = parse_angle_pi(t.value, t.line);
    try {
      return make_broken_ring(parse_double(a.value, a.line), theta, center);
    } catch (const DomainError& err) {
      throw ConfigError(err.what(), t.line);
    }
  }
  if (kind == "random") {
    const auto& n = need("n_segments");
    const double alpha0 = doc.get_double("alpha0").value_or(doc.get_double("alpha").value_or(1.0));
    const double dispersion = doc.get_double("dispersion").value_or(0.0);
    const std::uint64_t seed = doc.get_u64("seed").value_or(0);
    const auto count = parse_int(n.value, n.line);
    if (count < 1) throw ConfigError("n_segments must be >= 1", n.line);
    if (dispersion < 0.0) throw ConfigError("dispersion must be >= 0", doc.find("dispersion")->line);
    return make_random_profile(static_cast<int>(count), alpha0, dispersion, seed);
  }
  if (kind == "segments") {
    std::vector<Segment> segs;
    for (const auto* e : doc.find_all("segments[]")) {
      std::vector<std::string> parts;
      std::string cur;
      for (char c : e->value) {
        if (c == ' ' || c == '\t' || c == ',') {
          if (!cur.empty()) parts.push_back(std::move(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!cur.empty()) parts.push_back(std::move(cur));
      if (parts.size() != 3) {
        throw ConfigError("segments[] expects '<start/pi> <end/pi> <alpha>'", e->line);
      }
      segs.push_back({parse_angle_pi(parts[0], e->line), parse_angle_pi(parts[1], e->line),
                      parse_double(parts[2], e->line)});
    }
    if (segs.empty()) throw ConfigError("profile 'segments' has no segments[] entries", 0);
    try {
      return from_segments(std::move(segs));
    } catch (const DomainError& err) {
      throw ConfigError(err.what(), doc.find_all("segments[]").back()->line);
    }
  }
  const auto* e = doc.find("profile");
  throw ConfigError("unknown profile kind '" + kind + "'", e ? e->line : 0);
}

std::complex<double> fourier_coefficient(const CouplingProfile& profile, int k) {
  double re = 0.0, im = 0.0;
  if (k == 0) {
    return {profile.integral(), 0.0};
  }
  const double kd = k;
  for (const auto& s : profile.segments()) {
    // (e^{ik b} - e^{ik a}) / (ik) = (sin kb - sin ka)/k - i (cos kb - cos ka)/k
    const double kb = kd * s.end;
    const double ka = kd * s.start;
    re += s.alpha * (std::sin(kb) - std::sin(ka));
    im -= s.alpha * (std::cos(kb) - std::cos(ka));
  }
  return {re / kd, im / kd};
}

CouplingProfile make_broken_ring(double alpha, double theta, double gap_center) {
  if (!(theta > 0.0 && theta < kTwoPi)) {
    throw DomainError("gap angle must lie in (0, 2 pi); use a constant profile for theta = 0");
  }
  if (!std::isfinite(alpha) || !std::isfinite(gap_center)) {
    throw DomainError("broken ring parameters must be finite");
  }
  const double lo = gap_center - 0.5 * theta;
  const double hi = gap_center + 0.5 * theta;
  return CouplingProfile::from_segments({{lo, hi, 0.0}, {hi, lo + kTwoPi, alpha}});
}

CouplingProfile make_random_profile(int n_segments, double alpha0, double dispersion,
                                    std::uint64_t seed) {
  if (n_segments < 1) throw DomainError("n_segments must be >= 1");
  if (!(dispersion >= 0.0) || !std::isfinite(alpha0)) {
    throw DomainError("random profile needs finite alpha0 and dispersion >= 0");
  }
  Rng rng(seed);
  const double half_width = std::sqrt(3.0) * dispersion;
  std::vector<Segment> segs;
  segs.reserve(n_segments);
  for (int j = 0; j < n_segments; ++j) {
    const double a = kTwoPi * j / n_segments;
    const double b = kTwoPi * (j + 1) / n_segments;
    const double u = rng.uniform01();
    segs.push_back({a, b, alpha0 + half_width * (2.0 * u - 1.0)});
  }
  return CouplingProfile::from_segments(std::move(segs));
}

void validate_field(const FieldConfig& field) {
  if (const auto* h = std::get_if<HomogeneousField>(&field)) {
    if (!(h->b > 0.0) || !std::isfinite(h->b)) {
      throw DomainError("homogeneous field intensity B must be finite and > 0");
    }
  } else if (const auto* f = std::get_if<FluxLine>(&field)) {
    if (!std::isfinite(f->phi)) throw DomainError("flux must be finite");
  }
}

std::string field_name(const FieldConfig& field) {
  if (std::holds_alternative<ZeroField>(field)) return "zero";
  if (std::holds_alternative<HomogeneousField>(field)) return "homogeneous";
  return "flux";
}

bool uses_kappa(const FieldConfig& field) {
  return !std::holds_alternative<HomogeneousField>(field);
}

}  // namespace softring

// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "softring/softring.h"

namespace {

constexpr double kPi = std::numbers::pi;

softring_field zero_field() { return {SOFTRING_FIELD_ZERO, 0.0}; }

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(softring_version()) == "0.1.0");
  for (int s = SOFTRING_OK; s <= SOFTRING_ERR_INTERNAL; ++s) {
    CHECK(std::string(softring_status_string(static_cast<softring_status>(s))).size() > 0);
  }
}

TEST_CASE("special functions report domain errors") {
  softring_eval e{};
  REQUIRE(softring_bessel_k(0.5, 2.0, &e) == SOFTRING_OK);
  CHECK(e.value == doctest::Approx(std::sqrt(kPi / 4.0) * std::exp(-2.0)).epsilon(1e-14));
  CHECK(softring_bessel_i(-1.0, 1.0, &e) == SOFTRING_ERR_DOMAIN);
  CHECK(std::string(softring_last_error()).size() > 0);
  CHECK(softring_bessel_i(0.0, 800.0, &e) == SOFTRING_ERR_OVERFLOW);
  CHECK(softring_bessel_i(0.0, 1.0, nullptr) == SOFTRING_ERR_INVALID_ARGUMENT);
  double r = 1.0;
  REQUIRE(softring_rgamma(-2.0, &r) == SOFTRING_OK);
  CHECK(r == 0.0);
  REQUIRE(softring_kummer_u(0.0, 2, 3.0, &e) == SOFTRING_OK);
  CHECK(e.value == doctest::Approx(1.0));
}

TEST_CASE("profiles through the C interface") {
  softring_profile* p = nullptr;
  REQUIRE(softring_profile_broken_ring(1.5, kPi / 3.0, 0.0, &p) == SOFTRING_OK);
  size_t n = 0;
  REQUIRE(softring_profile_segment_count(p, &n) == SOFTRING_OK);
  CHECK(n == 2);
  double v = -1.0;
  REQUIRE(softring_profile_value(p, kPi, &v) == SOFTRING_OK);
  CHECK(v == 1.5);
  double re = 0.0, im = 0.0;
  REQUIRE(softring_profile_fourier(p, 0, &re, &im) == SOFTRING_OK);
  CHECK(re == doctest::Approx(1.5 * (2.0 * kPi - kPi / 3.0)));
  CHECK(im == doctest::Approx(0.0));

  char* text = nullptr;
  REQUIRE(softring_profile_serialize(p, &text) == SOFTRING_OK);
  softring_profile* q = nullptr;
  REQUIRE(softring_profile_parse(text, &q) == SOFTRING_OK);
  softring_string_free(text);
  double s0 = 0, e0 = 0, a0 = 0, s1 = 0, e1 = 0, a1 = 0;
  for (size_t i = 0; i < n; ++i) {
    REQUIRE(softring_profile_segment(p, i, &s0, &e0, &a0) == SOFTRING_OK);
    REQUIRE(softring_profile_segment(q, i, &s1, &e1, &a1) == SOFTRING_OK);
    CHECK(s0 == doctest::Approx(s1));
    CHECK(e0 == doctest::Approx(e1));
    CHECK(a0 == a1);
  }
  CHECK(softring_profile_segment(p, 5, &s0, &e0, &a0) == SOFTRING_ERR_INVALID_ARGUMENT);
  softring_profile_free(q);
  softring_profile_free(p);
  softring_profile_free(nullptr);

  const double start[] = {0.0, 1.0}, end[] = {1.0, 2.0}, alpha[] = {1.0, 2.0};
  CHECK(softring_profile_from_segments(start, end, alpha, 2, &p) == SOFTRING_ERR_DOMAIN);
  CHECK(softring_profile_parse("alpha = 1\ntheta = x\n", &p) == SOFTRING_ERR_CONFIG);
  CHECK(softring_profile_constant(1.0, nullptr) == SOFTRING_ERR_INVALID_ARGUMENT);
}

TEST_CASE("solving a broken ring") {
  softring_profile* prof = nullptr;
  REQUIRE(softring_profile_broken_ring(1.0, kPi / 3.0, 0.0, &prof) == SOFTRING_OK);
  softring_solver_options opts;
  softring_solver_options_init(&opts);
  CHECK(opts.truncation == 0);
  CHECK(opts.max_doublings == 2);
  softring_problem* prob = nullptr;
  REQUIRE(softring_problem_create(5.0, prof, zero_field(), &opts, &prob) == SOFTRING_OK);
  int n = 0;
  REQUIRE(softring_problem_default_truncation(prob, &n) == SOFTRING_OK);
  CHECK(n == 21);

  softring_spectrum* spec = nullptr;
  REQUIRE(softring_solve(prob, &spec) == SOFTRING_OK);
  REQUIRE(softring_spectrum_size(spec) > 0);
  softring_level_info info{};
  REQUIRE(softring_spectrum_level(spec, 0, &info) == SOFTRING_OK);
  CHECK(info.energy < 0.0);
  CHECK(info.converged);
  CHECK(info.energy == doctest::Approx(-info.coordinate * info.coordinate));
  CHECK(softring_spectrum_level(spec, 1000, &info) == SOFTRING_ERR_INVALID_ARGUMENT);

  size_t count = 0;
  std::vector<double> re(1), im(1);
  CHECK(softring_spectrum_coefficients(spec, 0, SOFTRING_COEFF_U, re.data(), im.data(), 1, &count) ==
        SOFTRING_ERR_BUFFER_TOO_SMALL);
  CHECK(count == static_cast<size_t>(2 * info.truncation + 1));
  re.resize(count);
  im.resize(count);
  REQUIRE(softring_spectrum_coefficients(spec, 0, SOFTRING_COEFF_U, re.data(), im.data(), count, &count) ==
          SOFTRING_OK);
  double norm = 0.0;
  for (size_t i = 0; i < count; ++i) norm += re[i] * re[i] + im[i] * im[i];
  CHECK(norm == doctest::Approx(1.0));

  double sq = 0.0, dpsi = 0.0, phi0 = 0.0, cont = 1, jp = 1, jw = 1;
  CHECK(softring_squared_norm(prob, spec, 0, &sq) == SOFTRING_OK);
  CHECK(sq > 0.0);
  CHECK(softring_localization_moment(spec, 0, &dpsi, &phi0) == SOFTRING_OK);
  CHECK(dpsi > 0.0);
  CHECK(dpsi < kPi / std::sqrt(3.0));
  CHECK(softring_boundary_check(prob, spec, 0, 64, &cont, &jp, &jw) == SOFTRING_OK);
  CHECK(jp <= 1e-6);

  const int pts = 11;
  std::vector<double> axis(pts), wr(pts * pts), wi(pts * pts);
  double used = 0.0;
  CHECK(softring_reconstruct(prob, spec, 0, 0.0, pts, axis.data(), wr.data(), wi.data(), &used) ==
        SOFTRING_OK);
  CHECK(axis.back() == doctest::Approx(10.0));
  CHECK(used == doctest::Approx(std::sqrt(sq)));

  softring_spectrum_free(spec);
  softring_problem_free(prob);
  softring_profile_free(prof);
}

TEST_CASE("problem creation validates input") {
  softring_profile* prof = nullptr;
  REQUIRE(softring_profile_constant(1.0, &prof) == SOFTRING_OK);
  softring_problem* prob = nullptr;
  CHECK(softring_problem_create(-1.0, prof, zero_field(), nullptr, &prob) == SOFTRING_ERR_DOMAIN);
  CHECK(softring_problem_create(1.0, prof, {SOFTRING_FIELD_HOMOGENEOUS, 0.0}, nullptr, &prob) ==
        SOFTRING_ERR_DOMAIN);
  CHECK(softring_problem_create(1.0, prof, {static_cast<softring_field_kind>(9), 0.0}, nullptr, &prob) ==
        SOFTRING_ERR_INVALID_ARGUMENT);
  CHECK(softring_problem_create(1.0, nullptr, zero_field(), nullptr, &prob) ==
        SOFTRING_ERR_INVALID_ARGUMENT);
  softring_profile_free(prof);
}

TEST_CASE("symmetric spectrum and critical flux") {
  softring_symmetric_level levels[4];
  size_t count = 0;
  CHECK(softring_symmetric_spectrum(1.0, 6.0, zero_field(), -3, 3, 1, levels, 1, &count) ==
        SOFTRING_ERR_BUFFER_TOO_SMALL);
  CHECK(count == 5);  // alpha R = 6 binds |m| <= 2
  std::vector<softring_symmetric_level> all(count);
  REQUIRE(softring_symmetric_spectrum(1.0, 6.0, zero_field(), -3, 3, 1, all.data(), count, &count) ==
          SOFTRING_OK);
  double lo = 0, hi = 0;
  REQUIRE(softring_critical_flux(1.0, 2.0, 1, &lo, &hi) == SOFTRING_OK);
  CHECK(lo == doctest::Approx(0.0));
  CHECK(hi == doctest::Approx(2.0));
  double z[3];
  REQUIRE(softring_landau_levels(1.0, 0, 3, z) == SOFTRING_OK);
  CHECK(z[2] == doctest::Approx(5.0));
}

TEST_CASE("persistent current reports the critical flux") {
  softring_profile* prof = nullptr;
  REQUIRE(softring_profile_constant(0.5, &prof) == SOFTRING_OK);
  softring_problem* prob = nullptr;
  REQUIRE(softring_problem_create(2.0, prof, {SOFTRING_FIELD_FLUX, 0.0}, nullptr, &prob) == SOFTRING_OK);
  softring_current_sample s{};
  double crit = 0.0;
  REQUIRE(softring_persistent_current(prob, 0, 0.1, 1e-3, &s, &crit) == SOFTRING_OK);
  CHECK(s.current < 0.0);
  CHECK(softring_persistent_current(prob, 3, 0.3, 1e-3, &s, &crit) == SOFTRING_ERR_NO_LEVEL);
  softring_problem_free(prob);
  softring_profile_free(prof);
}

TEST_CASE("sweep tables") {
  softring_ring_setup setup;
  softring_ring_setup_init(&setup);
  setup.radius = 5.0;
  setup.alpha = 1.0;
  setup.field = {SOFTRING_FIELD_FLUX, 0.0};
  softring_sweep_options o;
  softring_sweep_options_init(&o);
  const double grid[] = {0.2, -1.0};
  softring_table* t = nullptr;
  REQUIRE(softring_sweep(&setup, SOFTRING_SWEEP_RADIUS, grid, 2, &o, &t) == SOFTRING_OK);
  const size_t rows = softring_table_rows(t);
  REQUIRE(rows >= 2);
  softring_sweep_row row{};
  const char* msg = nullptr;
  REQUIRE(softring_table_row(t, 0, &row, &msg) == SOFTRING_OK);
  CHECK_FALSE(row.failed);
  CHECK(std::string(msg).empty());
  REQUIRE(softring_table_row(t, rows - 1, &row, &msg) == SOFTRING_OK);
  CHECK(row.failed);
  CHECK(row.parameter == -1.0);
  CHECK_FALSE(std::string(msg).empty());
  softring_table_free(t);
}

TEST_CASE("localization study and spearman") {
  softring_localization_config c;
  softring_localization_config_init(&c);
  CHECK(c.n_samples == 500);
  c.n_samples = 3;
  c.radius = 2.0;
  softring_localization_sample out[3];
  CHECK(softring_localization_study(&c, out, 2) == SOFTRING_ERR_INVALID_ARGUMENT);
  REQUIRE(softring_localization_study(&c, out, 3) == SOFTRING_OK);
  for (const auto& s : out) CHECK(s.ok);
  const double x[] = {1, 2, 3}, y[] = {3, 2, 1};
  double rho = 0.0;
  REQUIRE(softring_spearman(x, y, 3, &rho) == SOFTRING_OK);
  CHECK(rho == doctest::Approx(-1.0));
}

TEST_CASE("configuration text and formatting helpers") {
  softring_config* cfg = nullptr;
  REQUIRE(softring_config_parse("# comment\nradius = 5\n\nalpha=2\n", &cfg) == SOFTRING_OK);
  REQUIRE(softring_config_size(cfg) == 2);
  const char *key = nullptr, *value = nullptr;
  int line = 0;
  REQUIRE(softring_config_entry(cfg, 1, &key, &value, &line) == SOFTRING_OK);
  CHECK(std::string(key) == "alpha");
  CHECK(std::string(value) == "2");
  CHECK(line == 4);
  softring_config_free(cfg);

  CHECK(softring_config_parse("radius = 5\nbroken\n", &cfg) == SOFTRING_ERR_CONFIG);
  CHECK(std::string(softring_last_error()).find("line 2") != std::string::npos);
  CHECK(softring_config_parse_file("/nonexistent/softring.conf", &cfg) != SOFTRING_OK);

  double a = 0.0;
  REQUIRE(softring_parse_angle_pi("1/3", &a) == SOFTRING_OK);
  CHECK(a == doctest::Approx(kPi / 3.0));
  CHECK(softring_parse_angle_pi("x", &a) == SOFTRING_ERR_CONFIG);

  char buf[32];
  REQUIRE(softring_format_double(0.1, buf, sizeof buf) == SOFTRING_OK);
  CHECK(std::string(buf) == "0.1");
  CHECK(softring_format_double(1.0 / 3.0, buf, 4) == SOFTRING_ERR_BUFFER_TOO_SMALL);
}

TEST_CASE("selftest report") {
  softring_report* r = nullptr;
  REQUIRE(softring_selftest(1, &r) == SOFTRING_OK);
  REQUIRE(softring_report_size(r) > 0);
  for (size_t i = 0; i < softring_report_size(r); ++i) {
    const char *name = nullptr, *detail = nullptr;
    int passed = 0;
    double err = 0, tol = 0;
    REQUIRE(softring_report_entry(r, i, &name, &passed, &err, &tol, &detail) == SOFTRING_OK);
    CAPTURE(name);
    CHECK(passed);
  }
  softring_report_free(r);
}

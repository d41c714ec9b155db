// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace softring {

// Line-oriented "key = value" text. '#' starts a comment, blank lines are
// ignored, keys may repeat (e.g. "segments[]"). Every accessor that fails
// reports the 1-based line of the offending entry.
struct KeyValueEntry {
  std::string key;
  std::string value;
  int line = 0;
};

class KeyValueDocument {
 public:
  static KeyValueDocument parse(std::string_view text);
  static KeyValueDocument parse_file(const std::string& path);

  void add(std::string key, std::string value);

  const std::vector<KeyValueEntry>& entries() const { return entries_; }
  bool has(std::string_view key) const;
  // Last occurrence wins.
  const KeyValueEntry* find(std::string_view key) const;
  std::vector<const KeyValueEntry*> find_all(std::string_view key) const;

  std::optional<std::string> get_string(std::string_view key) const;
  std::optional<double> get_double(std::string_view key) const;
  std::optional<std::int64_t> get_int(std::string_view key) const;
  std::optional<std::uint64_t> get_u64(std::string_view key) const;
  std::optional<bool> get_bool(std::string_view key) const;
  // Angle written in units of pi ("1/3", "0.5", "2"); returned in radians.
  std::optional<double> get_angle_pi(std::string_view key) const;

  // Fails on the first key not in `known`.
  void require_known(const std::vector<std::string>& known) const;

  std::string to_string() const;

 private:
  std::vector<KeyValueEntry> entries_;
};

// Number parsing shared with the CLI. Throw ConfigError(line) on failure.
double parse_double(std::string_view text, int line = 0);
std::int64_t parse_int(std::string_view text, int line = 0);
std::uint64_t parse_u64(std::string_view text, int line = 0);
// "p/q", "p" or a decimal, multiplied by pi.
double parse_angle_pi(std::string_view text, int line = 0);
// Shortest text that round-trips the double.
std::string format_double(double v);

}  // namespace softring

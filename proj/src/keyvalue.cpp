// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

#include "keyvalue.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace softring {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_double(std::string_view text, int line) {
  const std::string_view t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("expected a number, got '" + std::string(t) + "'", line);
  }
  return v;
}

std::int64_t parse_int(std::string_view text, int line) {
  const std::string_view t = trim(text);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("expected an integer, got '" + std::string(t) + "'", line);
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text, int line) {
  const std::string_view t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("expected a non-negative integer, got '" + std::string(t) + "'", line);
  }
  return v;
}

double parse_angle_pi(std::string_view text, int line) {
  std::string_view t = trim(text);
  const auto slash = t.find('/');
  double factor = 0.0;
  if (slash == std::string_view::npos) {
    factor = parse_double(t, line);
  } else {
    const double num = parse_double(t.substr(0, slash), line);
    const double den = parse_double(t.substr(slash + 1), line);
    if (den == 0.0) throw ConfigError("zero denominator in angle '" + std::string(t) + "'", line);
    factor = num / den;
  }
  return factor * std::numbers::pi;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

KeyValueDocument KeyValueDocument::parse(std::string_view text) {
  KeyValueDocument doc;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", line_no);
      }
      const std::string_view key = trim(line.substr(0, eq));
      const std::string_view value = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError("empty key", line_no);
      doc.entries_.push_back({std::string(key), std::string(value), line_no});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return doc;
}

KeyValueDocument KeyValueDocument::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void KeyValueDocument::add(std::string key, std::string value) {
  entries_.push_back({std::move(key), std::move(value), 0});
}

bool KeyValueDocument::has(std::string_view key) const { return find(key) != nullptr; }

const KeyValueEntry* KeyValueDocument::find(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->key == key) return &*it;
  }
  return nullptr;
}

std::vector<const KeyValueEntry*> KeyValueDocument::find_all(std::string_view key) const {
  std::vector<const KeyValueEntry*> out;
  for (const auto& e : entries_) {
    if (e.key == key) out.push_back(&e);
  }
  return out;
}

std::optional<std::string> KeyValueDocument::get_string(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  return e->value;
}

std::optional<double> KeyValueDocument::get_double(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  return parse_double(e->value, e->line);
}

std::optional<std::int64_t> KeyValueDocument::get_int(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  return parse_int(e->value, e->line);
}

std::optional<std::uint64_t> KeyValueDocument::get_u64(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  return parse_u64(e->value, e->line);
}

std::optional<bool> KeyValueDocument::get_bool(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  throw ConfigError("expected a boolean for '" + e->key + "', got '" + e->value + "'", e->line);
}

std::optional<double> KeyValueDocument::get_angle_pi(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  return parse_angle_pi(e->value, e->line);
}

void KeyValueDocument::require_known(const std::vector<std::string>& known) const {
  for (const auto& e : entries_) {
    if (std::find(known.begin(), known.end(), e.key) == known.end()) {
      throw ConfigError("unknown key '" + e.key + "'", e.line);
    }
  }
}

std::string KeyValueDocument::to_string() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.key;
    out += " = ";
    out += e.value;
    out += '\n';
  }
  return out;
}

}  // namespace softring

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "curvy/scenario.hpp"

namespace curvy::cli {

/// A value from the TOML-style configuration subset: numbers, quoted
/// strings, booleans and flat arrays of those.
struct Value {
  enum class Kind { Number, String, Bool, Array };
  Kind kind = Kind::Number;
  std::string text;  // source text for numbers, contents for strings
  double number = 0.0;
  bool boolean = false;
  std::vector<Value> items;

  friend bool operator==(const Value&, const Value&) = default;
};

struct Entry {
  std::string key;  // dotted with the enclosing [section], if any
  Value value;
  int line = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

inline bool valid_key(std::string_view k) {
  return !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

inline Value parse_scalar(std::string_view tok, const std::string& where) {
  Value v;
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
    v.kind = Value::Kind::String;
    v.text = std::string(tok.substr(1, tok.size() - 2));
    if (v.text.find('"') != std::string::npos) throw ConfigError(where, "embedded quotes are not supported");
    return v;
  }
  if (tok == "true" || tok == "false") {
    v.kind = Value::Kind::Bool;
    v.boolean = tok == "true";
    v.text = std::string(tok);
    return v;
  }
  v.kind = Value::Kind::Number;
  v.text = std::string(tok);
  std::string_view num = tok;
  if (!num.empty() && num.front() == '+') num.remove_prefix(1);
  const auto res = std::from_chars(num.data(), num.data() + num.size(), v.number);
  if (tok.empty() || res.ec != std::errc{} || res.ptr != num.data() + num.size()) {
    throw ConfigError(where, "cannot parse value '" + std::string(tok) + "'");
  }
  return v;
}

inline Value parse_value(std::string_view tok, const std::string& where) {
  if (!tok.empty() && tok.front() == '[') {
    if (tok.back() != ']') throw ConfigError(where, "unterminated array");
    Value v;
    v.kind = Value::Kind::Array;
    v.text = std::string(tok);
    const auto body = trim(tok.substr(1, tok.size() - 2));
    if (body.empty()) return v;
    std::size_t start = 0;
    bool in_string = false;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i < body.size() && body[i] == '"') in_string = !in_string;
      if (i == body.size() || (body[i] == ',' && !in_string)) {
        const auto item = trim(body.substr(start, i - start));
        if (item.empty()) {
          // allow a trailing comma
          if (i == body.size()) break;
          throw ConfigError(where, "empty array element");
        }
        if (item.front() == '[') throw ConfigError(where, "nested arrays are not supported");
        v.items.push_back(parse_scalar(item, where));
        start = i + 1;
      }
    }
    return v;
  }
  return parse_scalar(tok, where);
}

}  // namespace detail

/// Parse `key = value` lines with `#` comments and `[section]` headers.
/// Duplicate keys are rejected.
inline std::vector<Entry> parse_kv(std::istream& is) {
  std::vector<Entry> entries;
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const auto line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where, "malformed section header");
      const auto name = detail::trim(line.substr(1, line.size() - 2));
      if (!detail::valid_key(name)) throw ConfigError(where, "invalid section name");
      section = std::string(name);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where, "expected 'key = value'");
    const auto key = detail::trim(line.substr(0, eq));
    if (!detail::valid_key(key)) throw ConfigError(where, "invalid key '" + std::string(key) + "'");
    std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    const auto tok = detail::trim(line.substr(eq + 1));
    Entry e{full, detail::parse_value(tok, full), line_no};
    if (std::any_of(entries.begin(), entries.end(), [&](const Entry& x) { return x.key == e.key; })) {
      throw ConfigError(full, "duplicate key (" + where + ")");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

inline std::vector<Entry> parse_kv(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_kv(is);
}

/// Levenshtein distance, used to suggest the intended key for a typo.
inline std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline std::string nearest_key(std::string_view key, const std::vector<std::string_view>& known) {
  std::string best;
  std::size_t best_d = static_cast<std::size_t>(-1);
  for (const auto k : known) {
    const auto d = edit_distance(key, k);
    if (d < best_d) {
      best_d = d;
      best = std::string(k);
    }
  }
  return best;
}

}  // namespace curvy::cli

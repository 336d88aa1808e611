#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "curvy/cli/kv_file.hpp"
#include "curvy/metrics/csv.hpp"
#include "curvy/scenario.hpp"

namespace curvy::cli {

/// One settable scenario key: how to apply a parsed value and how to print
/// the current value back in file syntax.
struct ScenarioField {
  std::string_view key;
  std::function<void(ScenarioConfig&, const Value&, const std::string& where)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

namespace detail {

inline double as_real(const Value& v, const std::string& where) {
  if (v.kind != Value::Kind::Number) throw ConfigError(where, "expected a number");
  if (!std::isfinite(v.number)) throw ConfigError(where, "must be finite");
  return v.number;
}

inline std::uint64_t as_count(const Value& v, const std::string& where, std::uint64_t max) {
  if (v.kind != Value::Kind::Number) throw ConfigError(where, "expected a number");
  std::uint64_t n = 0;
  try {
    n = metrics::parse_u64(v.text);
  } catch (const std::invalid_argument&) {
    throw ConfigError(where, "expected a non-negative integer");
  }
  if (n > max) throw ConfigError(where, "out of range");
  return n;
}

inline std::string as_string(const Value& v, const std::string& where) {
  if (v.kind != Value::Kind::String) throw ConfigError(where, "expected a quoted string");
  return v.text;
}

inline bool as_bool(const Value& v, const std::string& where) {
  if (v.kind != Value::Kind::Bool) throw ConfigError(where, "expected true or false");
  return v.boolean;
}

inline std::string quote(std::string_view s) { return "\"" + std::string(s) + "\""; }

template <double ScenarioConfig::*Member>
ScenarioField real_field(std::string_view key) {
  return {key,
          [](ScenarioConfig& c, const Value& v, const std::string& w) { c.*Member = as_real(v, w); },
          [](const ScenarioConfig& c) { return metrics::format_double(c.*Member); }};
}

template <typename T, T ScenarioConfig::*Member>
ScenarioField count_field(std::string_view key) {
  return {key,
          [](ScenarioConfig& c, const Value& v, const std::string& w) {
            c.*Member = static_cast<T>(as_count(v, w, std::numeric_limits<T>::max()));
          },
          [](const ScenarioConfig& c) { return std::to_string(c.*Member); }};
}

}  // namespace detail

inline const std::vector<ScenarioField>& scenario_fields() {
  using namespace detail;
  static const std::vector<ScenarioField> fields = {
      {"name", [](ScenarioConfig& c, const Value& v, const std::string& w) { c.name = as_string(v, w); },
       [](const ScenarioConfig& c) { return quote(c.name); }},
      {"controller",
       [](ScenarioConfig& c, const Value& v, const std::string& w) {
         const auto s = as_string(v, w);
         const auto k = controller_from_string(s);
         if (!k) {
           std::string names;
           for (const auto& [_, n] : kControllerNames) names += (names.empty() ? "" : ", ") + std::string(n);
           throw ConfigError(w, "unknown controller '" + s + "' (expected one of " + names + ")");
         }
         c.controller = *k;
       },
       [](const ScenarioConfig& c) { return quote(to_string(c.controller)); }},
      {"marking",
       [](ScenarioConfig& c, const Value& v, const std::string& w) {
         const auto s = as_string(v, w);
         if (s == "drop") {
           c.marking = aqm::MarkingMode::Drop;
         } else if (s == "ecn") {
           c.marking = aqm::MarkingMode::ClassicEcnMark;
         } else {
           throw ConfigError(w, "expected \"drop\" or \"ecn\"");
         }
       },
       [](const ScenarioConfig& c) { return quote(aqm::to_string(c.marking)); }},
      real_field<&ScenarioConfig::link_rate>("link_rate"),
      real_field<&ScenarioConfig::rtt_base>("rtt_base"),
      count_field<std::uint32_t, &ScenarioConfig::n_flows>("n_flows"),
      real_field<&ScenarioConfig::duration>("duration"),
      real_field<&ScenarioConfig::warmup>("warmup"),
      count_field<std::uint32_t, &ScenarioConfig::mss>("mss"),
      {"ecn_capable",
       [](ScenarioConfig& c, const Value& v, const std::string& w) { c.ecn_capable = as_bool(v, w); },
       [](const ScenarioConfig& c) { return std::string(c.ecn_capable ? "true" : "false"); }},
      real_field<&ScenarioConfig::alpha>("alpha"),
      real_field<&ScenarioConfig::beta>("beta"),
      real_field<&ScenarioConfig::period>("period"),
      real_field<&ScenarioConfig::q0>("q0"),
      real_field<&ScenarioConfig::q1>("q1"),
      real_field<&ScenarioConfig::interval>("interval"),
      real_field<&ScenarioConfig::span>("span"),
      real_field<&ScenarioConfig::window>("window"),
      real_field<&ScenarioConfig::q_max>("q_max"),
      real_field<&ScenarioConfig::exponent>("exponent"),
      count_field<std::uint64_t, &ScenarioConfig::capacity>("capacity"),
      count_field<std::uint64_t, &ScenarioConfig::seed>("seed"),
  };
  return fields;
}

inline constexpr std::string_view kRequiredKeys[] = {"controller", "link_rate", "rtt_base", "n_flows",
                                                    "duration"};

inline const ScenarioField* find_field(std::string_view key) {
  for (const auto& f : scenario_fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

inline std::vector<std::string_view> scenario_keys() {
  std::vector<std::string_view> keys;
  for (const auto& f : scenario_fields()) keys.push_back(f.key);
  return keys;
}

[[noreturn]] inline void reject_unknown(const std::string& key, std::vector<std::string_view> known) {
  const auto hint = nearest_key(key, known);
  throw ConfigError(key, "unknown key" + (hint.empty() ? std::string{} : " (did you mean '" + hint + "'?)"));
}

/// Build a scenario from parsed entries. Entries whose key starts with one of
/// `reserved_sections` followed by '.' are skipped so a caller can layer
/// extra sections on top of the scenario keys.
inline ScenarioConfig scenario_from_entries(const std::vector<Entry>& entries,
                                            const std::vector<std::string_view>& reserved_sections = {}) {
  ScenarioConfig cfg;
  std::vector<std::string_view> seen;
  for (const auto& e : entries) {
    const bool reserved = std::any_of(reserved_sections.begin(), reserved_sections.end(), [&](std::string_view s) {
      return e.key.size() > s.size() && e.key.compare(0, s.size(), s) == 0 && e.key[s.size()] == '.';
    });
    if (reserved) continue;
    const auto* f = find_field(e.key);
    if (!f) {
      auto known = scenario_keys();
      known.insert(known.end(), reserved_sections.begin(), reserved_sections.end());
      reject_unknown(e.key, known);
    }
    f->set(cfg, e.value, e.key);
    seen.push_back(f->key);
  }
  for (const auto req : kRequiredKeys) {
    if (std::find(seen.begin(), seen.end(), req) == seen.end()) {
      throw ConfigError(std::string(req), "required key missing");
    }
  }
  cfg.validate();
  return cfg;
}

inline ScenarioConfig parse_scenario_text(std::string_view text) { return scenario_from_entries(parse_kv(text)); }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw metrics::IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline ScenarioConfig parse_scenario(const std::filesystem::path& path) {
  return parse_scenario_text(read_file(path));
}

/// Every key with its current value, in the canonical order. Parsing the
/// result yields an identical config.
inline std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& f : scenario_fields()) {
    out += std::string(f.key) + " = " + f.get(cfg) + "\n";
  }
  return out;
}

}  // namespace curvy::cli

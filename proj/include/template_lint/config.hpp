// Copyright 2026 The template-lint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Configuration files (TOML or JSON) for runs, synthetic specs and
// threshold grids, plus flag overrides.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <toml.hpp>

#include "template_lint/baseline.hpp"
#include "template_lint/classifier.hpp"
#include "template_lint/corpus.hpp"
#include "template_lint/error.hpp"
#include "template_lint/provider.hpp"
#include "template_lint/synth.hpp"

namespace template_lint {

namespace fs = std::filesystem;

// Files ending in .json are read as JSON, anything else as TOML.
inline nlohmann::json parse_structured(const std::string& text, bool is_json, const std::string& origin) {
  if (is_json) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw Error(ErrorCode::kInvalidConfig, origin + ": invalid JSON");
    return doc;
  }
  try {
    toml::table table = toml::parse(text, origin);
    std::ostringstream json;
    json << toml::json_formatter{table};
    return nlohmann::json::parse(json.str());
  } catch (const toml::parse_error& e) {
    std::ostringstream message;
    message << origin << ": " << e.description() << " at line " << e.source().begin.line;
    throw Error(ErrorCode::kInvalidConfig, message.str());
  }
}

inline nlohmann::json load_structured_file(const fs::path& path) {
  return parse_structured(read_text_file(path), path.extension() == ".json", path.string());
}

namespace config_detail {

template <typename T>
std::optional<T> get(const nlohmann::json& doc, const char* key, const char* context = "") {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kInvalidConfig, std::string("field '") + context + key + "' has the wrong type");
  }
}

inline std::pair<std::size_t, std::size_t> get_range(const nlohmann::json& doc, const char* key,
                                                      std::pair<std::size_t, std::size_t> fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (it->is_number_unsigned() || it->is_number_integer()) {
    auto value = get<std::size_t>(doc, key).value();
    return {value, value};
  }
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() || !(*it)[1].is_number_integer() ||
      (*it)[0].get<long long>() < 0 || (*it)[1].get<long long>() < 0) {
    throw Error(ErrorCode::kInvalidConfig, std::string("field '") + key + "' must be [min, max]");
  }
  return {(*it)[0].get<std::size_t>(), (*it)[1].get<std::size_t>()};
}

}  // namespace config_detail

inline SynthSpec synth_spec_from_json(const nlohmann::json& doc) {
  using config_detail::get;
  SynthSpec spec;
  spec.n_tasks = get<std::size_t>(doc, "n_tasks").value_or(spec.n_tasks);
  spec.users_per_task = get<std::size_t>(doc, "users_per_task").value_or(spec.users_per_task);
  std::tie(spec.template_lines_min, spec.template_lines_max) =
      config_detail::get_range(doc, "template_lines", {spec.template_lines_min, spec.template_lines_max});
  std::tie(spec.attempts_min, spec.attempts_max) =
      config_detail::get_range(doc, "attempts", {spec.attempts_min, spec.attempts_max});
  std::tie(spec.random_planted_min, spec.random_planted_max) =
      config_detail::get_range(doc, "random_planted", {spec.random_planted_min, spec.random_planted_max});
  spec.student_issue_rate = get<double>(doc, "student_issue_rate").value_or(spec.student_issue_rate);
  spec.fix_probability = get<double>(doc, "fix_probability").value_or(spec.fix_probability);
  spec.template_keep_probability =
      get<double>(doc, "template_keep_probability").value_or(spec.template_keep_probability);
  spec.seed = get<std::uint64_t>(doc, "seed").value_or(spec.seed);
  if (auto it = doc.find("planted"); it != doc.end()) {
    if (!it->is_array()) throw Error(ErrorCode::kInvalidConfig, "field 'planted' must be an array of tables");
    for (const auto& item : *it) {
      PlantedIssue p;
      auto type = get<std::string>(item, "issue_type", "planted.");
      auto line = get<std::size_t>(item, "line", "planted.");
      if (!type || !line) throw Error(ErrorCode::kInvalidConfig, "planted entries need issue_type and line");
      p.issue_type = *type;
      p.line = *line;
      p.task = get<std::size_t>(item, "task", "planted.");
      p.hidden = get<bool>(item, "hidden", "planted.").value_or(false);
      spec.planted.push_back(std::move(p));
    }
  }
  return spec;
}

// Either explicit points ([[point]] tables) or per-axis value lists whose
// cartesian product forms the grid. Missing axes take the base value.
inline std::vector<Thresholds> threshold_grid_from_json(const nlohmann::json& doc, const Thresholds& base = {}) {
  using config_detail::get;
  std::vector<Thresholds> grid;
  auto read_point = [&](const nlohmann::json& item) {
    Thresholds t = base;
    t.min_frequency = get<double>(item, "min_frequency", "point.").value_or(t.min_frequency);
    t.common_lower = get<double>(item, "common_lower", "point.").value_or(t.common_lower);
    t.template_lower = get<double>(item, "template_lower", "point.").value_or(t.template_lower);
    return t;
  };
  if (auto it = doc.find("point"); it != doc.end()) {
    if (!it->is_array()) throw Error(ErrorCode::kInvalidConfig, "field 'point' must be an array of tables");
    for (const auto& item : *it) grid.push_back(read_point(item));
    return grid;
  }
  auto axis = [&](const char* key, double fallback) {
    auto values = get<std::vector<double>>(doc, key);
    if (!values) {
      if (auto single = get<double>(doc, key)) return std::vector<double>{*single};
      return std::vector<double>{fallback};
    }
    if (values->empty()) throw Error(ErrorCode::kInvalidConfig, std::string("field '") + key + "' is empty");
    return *values;
  };
  for (double tl : axis("template_lower", base.template_lower)) {
    for (double cl : axis("common_lower", base.common_lower)) {
      for (double mf : axis("min_frequency", base.min_frequency)) grid.push_back({mf, cl, tl});
    }
  }
  return grid;
}

struct RunConfig {
  std::optional<fs::path> submissions_path;
  std::optional<fs::path> templates_path;
  std::optional<fs::path> catalog_path;
  std::optional<fs::path> external_issues_path;
  ProviderKind provider = ProviderKind::kBaseline;
  Thresholds thresholds;
  BaselineRuleset ruleset;
  fs::path out_dir = "template-lint-out";
  std::optional<std::uint64_t> seed;
  std::size_t samples_n = 5;
  std::optional<std::string> link_base;
};

// Command-line values; every set field replaces the config-file value.
struct RunOverrides {
  std::optional<fs::path> submissions_path;
  std::optional<fs::path> templates_path;
  std::optional<fs::path> catalog_path;
  std::optional<fs::path> external_issues_path;
  std::optional<std::string> provider;
  std::optional<double> min_frequency;
  std::optional<double> common_threshold;
  std::optional<double> template_threshold;
  std::optional<std::vector<std::string>> rules;
  std::optional<std::vector<long long>> magic_allowlist;
  std::optional<std::size_t> max_line_length;
  std::optional<std::size_t> indent_unit;
  std::optional<fs::path> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples_n;
  std::optional<std::string> link_base;
};

inline ProviderKind provider_from_text(const std::string& text) {
  auto kind = parse_provider_kind(text);
  if (!kind) {
    throw Error(ErrorCode::kInvalidConfig,
                "field 'provider' must be baseline, external or external+fallback, got '" + text + "'");
  }
  return *kind;
}

// Relative paths in the file are resolved against base_dir.
inline RunConfig run_config_from_json(const nlohmann::json& doc, const fs::path& base_dir) {
  using config_detail::get;
  RunConfig config;
  auto path_field = [&](const char* key) -> std::optional<fs::path> {
    auto value = get<std::string>(doc, key);
    if (!value) return std::nullopt;
    fs::path path(*value);
    return path.is_absolute() ? path : base_dir / path;
  };
  config.submissions_path = path_field("submissions");
  config.templates_path = path_field("templates");
  config.catalog_path = path_field("catalog");
  config.external_issues_path = path_field("external_issues");
  if (auto out = path_field("out_dir")) config.out_dir = *out;
  if (auto provider = get<std::string>(doc, "provider")) config.provider = provider_from_text(*provider);
  config.seed = get<std::uint64_t>(doc, "seed");
  config.samples_n = get<std::size_t>(doc, "samples").value_or(config.samples_n);
  config.link_base = get<std::string>(doc, "link_base");
  if (auto it = doc.find("thresholds"); it != doc.end()) {
    const auto& t = *it;
    config.thresholds.min_frequency = get<double>(t, "min_frequency", "thresholds.").value_or(config.thresholds.min_frequency);
    config.thresholds.common_lower = get<double>(t, "common_threshold", "thresholds.")
                                         .value_or(get<double>(t, "common_lower", "thresholds.").value_or(config.thresholds.common_lower));
    config.thresholds.template_lower = get<double>(t, "template_threshold", "thresholds.")
                                           .value_or(get<double>(t, "template_lower", "thresholds.").value_or(config.thresholds.template_lower));
  }
  if (auto it = doc.find("rules"); it != doc.end()) {
    const auto& r = *it;
    if (auto enabled = get<std::vector<std::string>>(r, "enabled", "rules.")) {
      config.ruleset.enabled_rules = {enabled->begin(), enabled->end()};
    }
    if (auto allow = get<std::vector<long long>>(r, "magic_allowlist", "rules.")) {
      config.ruleset.magic_number_allowlist = {allow->begin(), allow->end()};
    }
    config.ruleset.max_line_length = get<std::size_t>(r, "max_line_length", "rules.").value_or(config.ruleset.max_line_length);
    config.ruleset.indent_unit = get<std::size_t>(r, "indent_unit", "rules.").value_or(config.ruleset.indent_unit);
  }
  return config;
}

inline RunConfig load_run_config(const fs::path& path) {
  return run_config_from_json(load_structured_file(path), path.parent_path());
}

inline void apply_overrides(RunConfig& config, const RunOverrides& flags) {
  if (flags.submissions_path) config.submissions_path = flags.submissions_path;
  if (flags.templates_path) config.templates_path = flags.templates_path;
  if (flags.catalog_path) config.catalog_path = flags.catalog_path;
  if (flags.external_issues_path) config.external_issues_path = flags.external_issues_path;
  if (flags.provider) config.provider = provider_from_text(*flags.provider);
  if (flags.min_frequency) config.thresholds.min_frequency = *flags.min_frequency;
  if (flags.common_threshold) config.thresholds.common_lower = *flags.common_threshold;
  if (flags.template_threshold) config.thresholds.template_lower = *flags.template_threshold;
  if (flags.rules) config.ruleset.enabled_rules = {flags.rules->begin(), flags.rules->end()};
  if (flags.magic_allowlist) {
    config.ruleset.magic_number_allowlist = {flags.magic_allowlist->begin(), flags.magic_allowlist->end()};
  }
  if (flags.max_line_length) config.ruleset.max_line_length = *flags.max_line_length;
  if (flags.indent_unit) config.ruleset.indent_unit = *flags.indent_unit;
  if (flags.out_dir) config.out_dir = *flags.out_dir;
  if (flags.seed) config.seed = flags.seed;
  if (flags.samples_n) config.samples_n = *flags.samples_n;
  if (flags.link_base) config.link_base = flags.link_base;
}

// Flag or config value, then TEMPLATE_LINT_SEED, then 0.
inline std::uint64_t resolve_seed(const RunConfig& config) {
  if (config.seed) return *config.seed;
  if (const char* env = std::getenv("TEMPLATE_LINT_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw Error(ErrorCode::kInvalidConfig, "TEMPLATE_LINT_SEED is not an integer");
    return value;
  }
  return 0;
}

// Checks the fields a corpus run needs. With require_outputs unset the
// thresholds and sampling settings are not checked.
inline void validate_run_config(const RunConfig& config, bool require_outputs = true) {
  auto require_existing = [](const std::optional<fs::path>& path, const char* field) {
    if (!path) throw Error(ErrorCode::kInvalidConfig, std::string("missing required field '") + field + "'");
    std::error_code ec;
    if (!fs::exists(*path, ec)) {
      throw Error(ErrorCode::kInvalidConfig, std::string("field '") + field + "': path does not exist: " + path->string());
    }
  };
  require_existing(config.submissions_path, "submissions");
  require_existing(config.templates_path, "templates");
  if (config.catalog_path) require_existing(config.catalog_path, "catalog");
  if (config.provider != ProviderKind::kBaseline) require_existing(config.external_issues_path, "external_issues");
  if (!require_outputs) return;
  try {
    config.thresholds.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("field 'thresholds': ") + e.what());
  }
  config.ruleset.validate();
  if (config.samples_n < 1) throw Error(ErrorCode::kInvalidConfig, "field 'samples' must be >= 1");
}

}  // namespace template_lint

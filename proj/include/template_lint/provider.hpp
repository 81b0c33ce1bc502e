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

// Issue providers: the built-in baseline checker or precomputed external
// linter reports keyed by submission id.

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "template_lint/baseline.hpp"
#include "template_lint/corpus.hpp"
#include "template_lint/error.hpp"
#include "template_lint/model.hpp"

namespace template_lint {

using IssueMap = std::map<std::string, std::vector<IssueInstance>>;

enum class ProviderKind { kBaseline, kExternal, kExternalWithFallback };

inline std::string_view provider_kind_name(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::kBaseline: return "baseline";
    case ProviderKind::kExternal: return "external";
    case ProviderKind::kExternalWithFallback: return "external+fallback";
  }
  return "baseline";
}

inline std::optional<ProviderKind> parse_provider_kind(std::string_view text) {
  if (text == "baseline") return ProviderKind::kBaseline;
  if (text == "external") return ProviderKind::kExternal;
  if (text == "external+fallback") return ProviderKind::kExternalWithFallback;
  return std::nullopt;
}

struct ProviderConfig {
  ProviderKind kind = ProviderKind::kBaseline;
  std::filesystem::path external_path;
  BaselineRuleset ruleset;
};

// Parses an external issue report. Every referenced submission must exist in
// the corpus and every line must fall inside its code.
inline IssueMap parse_external_issues(std::istream& in, const SubmissionCorpus& corpus) {
  std::unordered_map<std::string, std::size_t> line_counts;
  for (const Submission& s : corpus.submissions) line_counts[s.submission_id] = split_lines(s.code).size();

  IssueMap issues;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (is_whitespace_only(text)) continue;
    nlohmann::json record = nlohmann::json::parse(text, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw Error(ErrorCode::kMalformedRecord, "issue report line " + std::to_string(line_no));
    }
    std::string id = detail::require_string(record, "submission_id", line_no);
    auto count = line_counts.find(id);
    if (count == line_counts.end()) throw Error(ErrorCode::kUnknownSubmission, id);
    auto& bucket = issues[id];
    const auto list = record.find("issues");
    if (list == record.end()) continue;
    if (!list->is_array()) {
      throw Error(ErrorCode::kMalformedRecord, "issue report line " + std::to_string(line_no) + ": issues must be an array");
    }
    for (const auto& item : *list) {
      if (!item.is_object() || !item.contains("issue_type") || !item["issue_type"].is_string() ||
          !item.contains("line") || !item["line"].is_number_integer()) {
        throw Error(ErrorCode::kMalformedRecord,
                    "issue report line " + std::to_string(line_no) + ": issue needs issue_type and line");
      }
      IssueInstance issue;
      issue.issue_type = item["issue_type"].get<std::string>();
      long long line = item["line"].get<long long>();
      if (line < 1 || static_cast<std::size_t>(line) > count->second) {
        throw Error(ErrorCode::kLineOutOfRange, id + " line " + std::to_string(line));
      }
      issue.line = static_cast<std::size_t>(line);
      if (auto it = item.find("column"); it != item.end() && it->is_number_integer() && it->get<long long>() >= 1) {
        issue.column = it->get<std::size_t>();
      }
      issue.message = item.value("message", std::string());
      std::optional<Category> category;
      if (auto it = item.find("category"); it != item.end() && it->is_string()) {
        category = parse_category(it->get<std::string>());
      }
      issue.category = category.value_or(corpus.catalog.resolve(issue.issue_type).category);
      bucket.push_back(std::move(issue));
    }
  }
  for (auto& [id, list] : issues) sort_issues(list);
  return issues;
}

inline IssueMap load_external_issues(const std::filesystem::path& path, const SubmissionCorpus& corpus) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return parse_external_issues(in, corpus);
}

// Every submission of the corpus gets an entry, possibly empty.
inline IssueMap provide(const SubmissionCorpus& corpus, const ProviderConfig& config) {
  IssueMap result;
  if (config.kind != ProviderKind::kBaseline) {
    result = load_external_issues(config.external_path, corpus);
  }
  for (const Submission& s : corpus.submissions) {
    if (result.contains(s.submission_id)) continue;
    if (config.kind == ProviderKind::kExternal) {
      result.emplace(s.submission_id, std::vector<IssueInstance>{});
    } else {
      result.emplace(s.submission_id, lint_baseline(s.code, config.ruleset));
    }
  }
  return result;
}

// Adds a MinorIssues placeholder for each issue type the catalog does not
// know. Returns the newly registered types in sorted order.
inline std::vector<std::string> register_unknown_types(IssueCatalog& catalog, const IssueMap& issues) {
  std::vector<std::string> added;
  for (const auto& [id, list] : issues) {
    for (const IssueInstance& issue : list) {
      if (catalog.register_unknown(issue.issue_type)) added.push_back(issue.issue_type);
    }
  }
  std::sort(added.begin(), added.end());
  return added;
}

}  // namespace template_lint

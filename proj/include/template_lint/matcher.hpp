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

// Localizing persistent issues against the task template and computing
// per-candidate frequencies over all series of a task.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "template_lint/error.hpp"
#include "template_lint/model.hpp"
#include "template_lint/sampling.hpp"
#include "template_lint/series.hpp"

namespace template_lint {

using TemplateLine = std::optional<std::size_t>;

// None sorts after every concrete line.
inline bool template_line_less(const TemplateLine& a, const TemplateLine& b) {
  if (a.has_value() != b.has_value()) return a.has_value();
  return a.has_value() && *a < *b;
}

inline std::string template_line_label(const TemplateLine& line) {
  return line ? std::to_string(*line) : std::string("None");
}

struct CandidateKey {
  std::string task_id;
  std::string issue_type;
  TemplateLine template_line;

  friend bool operator==(const CandidateKey&, const CandidateKey&) = default;
};

struct CandidateKeyLess {
  bool operator()(const CandidateKey& a, const CandidateKey& b) const {
    if (a.task_id != b.task_id) return a.task_id < b.task_id;
    if (a.issue_type != b.issue_type) return a.issue_type < b.issue_type;
    return template_line_less(a.template_line, b.template_line);
  }
};

struct CandidateIssue {
  CandidateKey key;
  std::size_t supporting_series = 0;
  std::size_t total_series = 0;
  double frequency = 0.0;
  // Final submission of every supporting series, sorted.
  std::vector<std::string> supporting_submission_ids;
  std::vector<std::string> sample_submission_ids;

  friend bool operator==(const CandidateIssue&, const CandidateIssue&) = default;
};

// Locates the template line a solution line came from. Blank lines never
// match. Among several byte-identical template lines the one closest in
// relative position wins, ties going to the smaller line number.
inline TemplateLine match_line(const Template& tmpl, std::span<const std::string> solution_lines,
                               std::size_t issue_line) {
  if (issue_line < 1 || issue_line > solution_lines.size()) return std::nullopt;
  const std::string& needle = solution_lines[issue_line - 1];
  if (is_blank(needle)) return std::nullopt;
  // |t/T - l/L| compared as |t*L - l*T| over the common denominator T*L.
  const auto T = static_cast<std::int64_t>(tmpl.lines.size());
  const auto L = static_cast<std::int64_t>(solution_lines.size());
  const auto l = static_cast<std::int64_t>(issue_line);
  TemplateLine best;
  std::int64_t best_distance = 0;
  for (std::size_t idx = 0; idx < tmpl.lines.size(); ++idx) {
    if (tmpl.lines[idx] != needle) continue;
    const auto t = static_cast<std::int64_t>(idx + 1);
    std::int64_t distance = t * L - l * T;
    if (distance < 0) distance = -distance;
    if (!best || distance < best_distance) {
      best = idx + 1;
      best_distance = distance;
    }
  }
  return best;
}

inline std::vector<CandidateKey> localize(const PersistentIssue& persistent, const Template& tmpl,
                                          std::span<const std::string> final_lines) {
  std::set<CandidateKey, CandidateKeyLess> keys;
  for (const IssueInstance& issue : persistent.final_instances) {
    keys.insert({persistent.task_id, persistent.issue_type, match_line(tmpl, final_lines, issue.line)});
  }
  return {keys.begin(), keys.end()};
}

inline std::vector<CandidateKey> localize(const PersistentIssue& persistent, const Template& tmpl,
                                          std::string_view final_code) {
  const std::vector<std::string> lines = split_lines(final_code);
  return localize(persistent, tmpl, std::span<const std::string>(lines));
}

struct CandidateOptions {
  std::size_t sample_size = 5;
  std::uint64_t seed = 0;
};

inline std::uint64_t candidate_seed(std::uint64_t seed, const CandidateKey& key) {
  return mix_seed(seed, key.task_id + '\x1f' + key.issue_type + '\x1f' + template_line_label(key.template_line));
}

// Candidates with frequency over ALL series of the task, sorted by
// frequency descending, then issue type, then template line (None last).
inline std::vector<CandidateIssue> compute_candidates(const std::string& task_id,
                                                      std::span<const SubmissionSeries> series,
                                                      std::span<const std::vector<PersistentIssue>> persistent_by_series,
                                                      const std::map<std::string, Template>& templates,
                                                      const CandidateOptions& options = {}) {
  if (series.empty()) throw Error(ErrorCode::kNoSeriesForTask, task_id);
  if (persistent_by_series.size() != series.size()) {
    throw Error(ErrorCode::kMissingProviderEntry, "persistent issues missing for some series of " + task_id);
  }
  auto tmpl = templates.find(task_id);
  if (tmpl == templates.end()) throw Error(ErrorCode::kMissingTemplate, task_id);

  std::map<CandidateKey, std::vector<std::string>, CandidateKeyLess> support;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (persistent_by_series[i].empty()) continue;
    const Submission& last = series[i].last();
    const std::vector<std::string> lines = split_lines(last.code);
    std::set<CandidateKey, CandidateKeyLess> keys;
    for (const PersistentIssue& persistent : persistent_by_series[i]) {
      for (CandidateKey& key : localize(persistent, tmpl->second, std::span<const std::string>(lines))) {
        keys.insert(std::move(key));
      }
    }
    for (const CandidateKey& key : keys) support[key].push_back(last.submission_id);
  }

  const std::size_t total = series.size();
  std::vector<CandidateIssue> candidates;
  candidates.reserve(support.size());
  for (auto& [key, ids] : support) {
    std::sort(ids.begin(), ids.end());
    CandidateIssue candidate;
    candidate.key = key;
    candidate.supporting_series = ids.size();
    candidate.total_series = total;
    candidate.frequency = static_cast<double>(ids.size()) / static_cast<double>(total);
    candidate.sample_submission_ids = sample_without_replacement(ids, options.sample_size, candidate_seed(options.seed, key));
    candidate.supporting_submission_ids = std::move(ids);
    candidates.push_back(std::move(candidate));
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const CandidateIssue& a, const CandidateIssue& b) {
    if (a.supporting_series != b.supporting_series) return a.supporting_series > b.supporting_series;
    if (a.key.issue_type != b.key.issue_type) return a.key.issue_type < b.key.issue_type;
    return template_line_less(a.key.template_line, b.key.template_line);
  });
  return candidates;
}

}  // namespace template_lint

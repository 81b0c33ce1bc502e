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

// Precision/recall scoring of Template-class predictions against planted
// ground truth, and threshold sweeps over one generated corpus.

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "template_lint/classifier.hpp"
#include "template_lint/error.hpp"
#include "template_lint/pipeline.hpp"
#include "template_lint/provider.hpp"
#include "template_lint/reporter.hpp"
#include "template_lint/synth.hpp"

namespace template_lint {

struct Score {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::optional<double> precision;  // unset when nothing was predicted
  std::optional<double> recall;     // unset when the truth is empty

  friend bool operator==(const Score&, const Score&) = default;
};

// Only Template-class predictions count. A prediction is a true positive when
// its (task, type, line) is in the truth; with match_none_by_type a
// None-position prediction also matches every truth entry of its task and
// type. Truth entries matched by no prediction are false negatives.
inline Score score(const std::vector<ClassifiedIssue>& predicted, const GroundTruth& truth, bool match_none_by_type) {
  Score result;
  std::set<TruthEntry> matched;
  for (const ClassifiedIssue& item : predicted) {
    const CandidateKey& key = item.candidate.key;
    if (!truth.tasks.contains(key.task_id)) throw Error(ErrorCode::kTaskMismatch, key.task_id);
    if (item.class_label != IssueClass::kTemplate) continue;
    bool hit = false;
    if (key.template_line) {
      TruthEntry entry{key.task_id, key.issue_type, *key.template_line};
      if (truth.entries.contains(entry)) {
        hit = true;
        matched.insert(std::move(entry));
      }
    } else if (match_none_by_type) {
      auto it = truth.entries.lower_bound(TruthEntry{key.task_id, key.issue_type, 0});
      for (; it != truth.entries.end() && it->task_id == key.task_id && it->issue_type == key.issue_type; ++it) {
        hit = true;
        matched.insert(*it);
      }
    }
    if (hit) {
      ++result.true_positives;
    } else {
      ++result.false_positives;
    }
  }
  result.false_negatives = truth.entries.size() - matched.size();
  const std::size_t predicted_count = result.true_positives + result.false_positives;
  if (predicted_count > 0) {
    result.precision = static_cast<double>(result.true_positives) / static_cast<double>(predicted_count);
  }
  const std::size_t truth_count = result.true_positives + result.false_negatives;
  if (truth_count > 0) {
    result.recall = static_cast<double>(result.true_positives) / static_cast<double>(truth_count);
  }
  return result;
}

struct SweepRow {
  Thresholds thresholds;
  Score score;
};

// Generates the corpus once, lints it with the default baseline rules and
// scores every grid point on the same candidates.
inline std::vector<SweepRow> sweep(const SynthSpec& spec, std::span<const Thresholds> grid, bool match_none_by_type,
                                   std::uint64_t sample_seed = 0) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidThresholds, "threshold grid is empty");
  for (const Thresholds& point : grid) point.validate();
  const SyntheticCorpus synthetic = generate(spec);
  const IssueMap issues = provide(synthetic.corpus, ProviderConfig{});
  const std::vector<SubmissionSeries> series = group_series(synthetic.corpus);
  const std::vector<CandidateIssue> candidates =
      detect_candidates(synthetic.corpus, issues, series, CandidateOptions{5, sample_seed});
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const Thresholds& point : grid) {
    rows.push_back({point, score(classify(candidates, point), synthetic.truth, match_none_by_type)});
  }
  return rows;
}

inline constexpr std::string_view kSweepCsvHeader =
    "template_lower,common_lower,min_frequency,tp,fp,fn,precision,recall";

inline void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  auto optional_fraction = [](const std::optional<double>& value) {
    return value ? format_fixed(*value, 4) : std::string();
  };
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    out << format_fixed(row.thresholds.template_lower, 4) << ',' << format_fixed(row.thresholds.common_lower, 4) << ','
        << format_fixed(row.thresholds.min_frequency, 4) << ',' << row.score.true_positives << ','
        << row.score.false_positives << ',' << row.score.false_negatives << ',' << optional_fraction(row.score.precision)
        << ',' << optional_fraction(row.score.recall) << '\n';
  }
}

}  // namespace template_lint

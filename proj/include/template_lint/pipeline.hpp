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

// End-to-end detection over an in-memory corpus:
// group -> persistent issues -> localize -> candidates -> classify.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "template_lint/classifier.hpp"
#include "template_lint/matcher.hpp"
#include "template_lint/model.hpp"
#include "template_lint/provider.hpp"
#include "template_lint/series.hpp"

namespace template_lint {

struct AnalysisOptions {
  Thresholds thresholds;
  CandidateOptions candidates;
};

struct AnalysisResult {
  std::size_t tasks = 0;
  std::vector<SubmissionSeries> series;
  std::vector<CandidateIssue> candidates;  // grouped by task, task order
  std::vector<ClassifiedIssue> classified;
};

// Candidates for every task of the corpus. Series come grouped by task, so
// each task is one contiguous block.
inline std::vector<CandidateIssue> detect_candidates(const SubmissionCorpus& corpus, const IssueMap& issues,
                                                     const std::vector<SubmissionSeries>& series,
                                                     const CandidateOptions& options, std::size_t* task_count = nullptr) {
  std::vector<CandidateIssue> candidates;
  std::size_t tasks = 0;
  std::size_t begin = 0;
  while (begin < series.size()) {
    std::size_t end = begin;
    while (end < series.size() && series[end].task_id == series[begin].task_id) ++end;
    std::span<const SubmissionSeries> block(series.data() + begin, end - begin);
    std::vector<std::vector<PersistentIssue>> persistent;
    persistent.reserve(block.size());
    for (const SubmissionSeries& s : block) persistent.push_back(persistent_issues(s, issues));
    for (CandidateIssue& c : compute_candidates(series[begin].task_id, block, persistent, corpus.templates, options)) {
      candidates.push_back(std::move(c));
    }
    ++tasks;
    begin = end;
  }
  if (task_count) *task_count = tasks;
  return candidates;
}

inline AnalysisResult analyze(const SubmissionCorpus& corpus, const IssueMap& issues,
                              const AnalysisOptions& options = {}) {
  options.thresholds.validate();
  AnalysisResult result;
  result.series = group_series(corpus);
  result.candidates = detect_candidates(corpus, issues, result.series, options.candidates, &result.tasks);
  result.classified = classify(result.candidates, options.thresholds);
  return result;
}

}  // namespace template_lint

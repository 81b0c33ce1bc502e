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

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "template_lint/error.hpp"
#include "template_lint/model.hpp"
#include "template_lint/provider.hpp"

namespace template_lint {

/// An issue type present in every submission of one series.
struct PersistentIssue {
  std::string task_id;
  std::string user_id;
  std::string issue_type;
  // All instances of the type in the series' last submission.
  std::vector<IssueInstance> final_instances;

  friend bool operator==(const PersistentIssue&, const PersistentIssue&) = default;
};

// One series per (task_id, user_id), ordered by task then user.
inline std::vector<SubmissionSeries> group_series(const SubmissionCorpus& corpus) {
  std::map<std::pair<std::string, std::string>, std::vector<Submission>> groups;
  for (const Submission& s : corpus.submissions) groups[{s.task_id, s.user_id}].push_back(s);
  std::vector<SubmissionSeries> series;
  series.reserve(groups.size());
  for (auto& [key, submissions] : groups) {
    std::stable_sort(submissions.begin(), submissions.end(),
                     [](const Submission& a, const Submission& b) { return a.attempt_index < b.attempt_index; });
    series.push_back({key.first, key.second, std::move(submissions)});
  }
  return series;
}

inline std::vector<PersistentIssue> persistent_issues(const SubmissionSeries& series, const IssueMap& issues) {
  std::set<std::string> surviving;
  bool first = true;
  for (const Submission& s : series.submissions) {
    auto it = issues.find(s.submission_id);
    if (it == issues.end()) throw Error(ErrorCode::kMissingProviderEntry, s.submission_id);
    std::set<std::string> types;
    for (const IssueInstance& issue : it->second) types.insert(issue.issue_type);
    if (first) {
      surviving = std::move(types);
      first = false;
    } else {
      std::erase_if(surviving, [&](const std::string& type) { return !types.contains(type); });
    }
  }

  std::vector<PersistentIssue> result;
  if (surviving.empty()) return result;
  const auto& last_issues = issues.at(series.last().submission_id);
  for (const std::string& type : surviving) {
    PersistentIssue persistent{series.task_id, series.user_id, type, {}};
    for (const IssueInstance& issue : last_issues) {
      if (issue.issue_type == type) persistent.final_instances.push_back(issue);
    }
    result.push_back(std::move(persistent));
  }
  return result;
}

}  // namespace template_lint

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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "template_lint/error.hpp"
#include "template_lint/matcher.hpp"

namespace template_lint {

enum class IssueClass { kTemplate, kCommonTypical, kRareTypical };

inline std::string_view issue_class_name(IssueClass label) {
  switch (label) {
    case IssueClass::kTemplate: return "Template";
    case IssueClass::kCommonTypical: return "CommonTypical";
    case IssueClass::kRareTypical: return "RareTypical";
  }
  return "RareTypical";
}

inline std::optional<IssueClass> parse_issue_class(std::string_view text) {
  if (text == "Template") return IssueClass::kTemplate;
  if (text == "CommonTypical") return IssueClass::kCommonTypical;
  if (text == "RareTypical") return IssueClass::kRareTypical;
  return std::nullopt;
}

// Frequency bounds. Boundary policy:
//   frequency <  min_frequency                   -> dropped
//   min_frequency <= frequency <  common_lower   -> RareTypical
//   common_lower  <= frequency <= template_lower -> CommonTypical
//   frequency >  template_lower                  -> Template
struct Thresholds {
  double min_frequency = 0.10;
  double common_lower = 0.25;
  double template_lower = 0.50;

  void validate() const {
    if (!(0.0 < min_frequency && min_frequency <= common_lower && common_lower <= template_lower &&
          template_lower < 1.0)) {
      throw Error(ErrorCode::kInvalidThresholds,
                  "need 0 < min_frequency <= common_lower <= template_lower < 1, got " +
                      std::to_string(min_frequency) + ", " + std::to_string(common_lower) + ", " +
                      std::to_string(template_lower));
    }
  }

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

inline std::optional<IssueClass> label_for(double frequency, const Thresholds& t) {
  if (frequency < t.min_frequency) return std::nullopt;
  if (frequency > t.template_lower) return IssueClass::kTemplate;
  if (frequency >= t.common_lower) return IssueClass::kCommonTypical;
  return IssueClass::kRareTypical;
}

struct ClassifiedIssue {
  CandidateIssue candidate;
  IssueClass class_label = IssueClass::kRareTypical;

  friend bool operator==(const ClassifiedIssue&, const ClassifiedIssue&) = default;
};

// Drops rare candidates and labels the rest. Output is grouped Template,
// CommonTypical, RareTypical, preserving input order inside each group.
inline std::vector<ClassifiedIssue> classify(const std::vector<CandidateIssue>& candidates, const Thresholds& t) {
  t.validate();
  std::vector<ClassifiedIssue> groups[3];
  for (const CandidateIssue& candidate : candidates) {
    if (auto label = label_for(candidate.frequency, t)) {
      groups[static_cast<int>(*label)].push_back({candidate, *label});
    }
  }
  std::vector<ClassifiedIssue> result;
  result.reserve(groups[0].size() + groups[1].size() + groups[2].size());
  for (auto& group : groups) {
    for (auto& item : group) result.push_back(std::move(item));
  }
  return result;
}

}  // namespace template_lint

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

#include <gtest/gtest.h>

#include <random>

#include "template_lint/classifier.hpp"

namespace tl = template_lint;

namespace {

tl::CandidateIssue candidate(std::string type, double frequency) {
  tl::CandidateIssue c;
  c.key = {"T", std::move(type), std::nullopt};
  c.frequency = frequency;
  return c;
}

}  // namespace

TEST(Classify, BoundaryTable) {
  const tl::Thresholds t;
  const std::vector<std::pair<double, std::optional<tl::IssueClass>>> table = {
      {0.60, tl::IssueClass::kTemplate},      {0.30, tl::IssueClass::kCommonTypical},
      {0.15, tl::IssueClass::kRareTypical},   {0.05, std::nullopt},
      {0.50, tl::IssueClass::kCommonTypical}, {0.25, tl::IssueClass::kCommonTypical},
      {0.10, tl::IssueClass::kRareTypical},   {1.00, tl::IssueClass::kTemplate},
      {0.0999, std::nullopt},                 {0.5001, tl::IssueClass::kTemplate},
  };
  for (const auto& [frequency, expected] : table) {
    EXPECT_EQ(tl::label_for(frequency, t), expected) << frequency;
    auto out = tl::classify({candidate("X", frequency)}, t);
    ASSERT_EQ(out.size(), expected ? 1u : 0u) << frequency;
    if (expected) EXPECT_EQ(out[0].class_label, *expected);
  }
}

TEST(Classify, GroupsByClassPreservingOrder) {
  auto out = tl::classify({candidate("a", 0.3), candidate("b", 0.9), candidate("c", 0.12), candidate("d", 0.4),
                           candidate("e", 0.7), candidate("f", 0.01)},
                          {});
  std::vector<std::string> order;
  for (const auto& item : out) order.push_back(item.candidate.key.issue_type);
  EXPECT_EQ(order, (std::vector<std::string>{"b", "e", "a", "d", "c"}));
}

TEST(Classify, InvalidThresholds) {
  const std::vector<tl::Thresholds> bad = {{0.0, 0.25, 0.5}, {0.3, 0.25, 0.5}, {0.1, 0.6, 0.5}, {0.1, 0.25, 1.0}};
  for (const auto& t : bad) {
    try {
      tl::classify({}, t);
      FAIL();
    } catch (const tl::Error& e) {
      EXPECT_EQ(e.code(), tl::ErrorCode::kInvalidThresholds);
    }
  }
  EXPECT_NO_THROW((tl::Thresholds{0.2, 0.2, 0.2}.validate()));
}

TEST(Classify, Monotonicity) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<tl::CandidateIssue> candidates;
  for (int i = 0; i < 300; ++i) candidates.push_back(candidate("X" + std::to_string(i), unit(rng)));
  std::size_t previous = candidates.size() + 1;
  for (double min = 0.05; min <= 0.25; min += 0.01) {
    const std::size_t kept = tl::classify(candidates, {min, 0.25, 0.5}).size();
    EXPECT_LE(kept, previous);
    previous = kept;
  }
  const tl::Thresholds t;
  double last_rank = -1;
  for (double f = 0.0; f <= 1.0; f += 0.001) {
    auto label = tl::label_for(f, t);
    double rank = label ? 3 - static_cast<int>(*label) : 0;
    EXPECT_GE(rank, last_rank);
    last_rank = rank;
  }
}

TEST(IssueClass, NamesRoundTrip) {
  for (auto label : {tl::IssueClass::kTemplate, tl::IssueClass::kCommonTypical, tl::IssueClass::kRareTypical}) {
    EXPECT_EQ(tl::parse_issue_class(tl::issue_class_name(label)), label);
  }
  EXPECT_EQ(tl::parse_issue_class("Bogus"), std::nullopt);
}

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

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "template_lint/matcher.hpp"
#include "template_lint/pipeline.hpp"
#include "template_lint/provider.hpp"
#include "template_lint/series.hpp"
#include "template_lint/synth.hpp"
#include "test_support.hpp"

namespace tl = template_lint;
using testing_support::submission;

namespace {

tl::IssueInstance at(std::string type, std::size_t line) {
  return {std::move(type), tl::Category::kMinorIssues, line, std::nullopt, ""};
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

struct TaskFixture {
  std::vector<tl::SubmissionSeries> series;
  std::vector<std::vector<tl::PersistentIssue>> persistent;
  std::map<std::string, tl::Template> templates;
};

// Four single-attempt series; three keep the template's MagicNumber line.
TaskFixture three_of_four() {
  TaskFixture f;
  f.templates.emplace("T1", tl::Template("T1", "class A {\n  int x = 42;\n}\n"));
  for (int u = 0; u < 4; ++u) {
    std::string user = "U" + std::to_string(u);
    std::string code = u < 3 ? "class A {\n  int x = 42;\n}\n" : "class A {\n  int x = K;\n}\n";
    f.series.push_back({"T1", user, {submission("s" + std::to_string(u), "T1", user, 0, code)}});
    std::vector<tl::PersistentIssue> p;
    if (u < 3) p.push_back({"T1", user, "MagicNumber", {at("MagicNumber", 2)}});
    f.persistent.push_back(std::move(p));
  }
  return f;
}

}  // namespace

TEST(MatchLine, Examples) {
  tl::Template tmpl("T", "int a=1;\nprint(a);\n");
  std::vector<std::string> same = {"int a=1;", "print(a);"};
  EXPECT_EQ(tl::match_line(tmpl, same, 1), 1u);
  std::vector<std::string> other = {"int myVar = readInt();", "print(a);"};
  EXPECT_EQ(tl::match_line(tmpl, other, 1), std::nullopt);
  std::vector<std::string> blank = {"   ", "print(a);"};
  EXPECT_EQ(tl::match_line(tmpl, blank, 1), std::nullopt);
  EXPECT_EQ(tl::template_line_label(std::nullopt), "None");
}

TEST(MatchLine, NearestRelativePosition) {
  std::vector<std::string> lines = {"a", "b", "c", "}", "d", "e", "f", "g", "}", "h"};
  tl::Template tmpl("T", join(lines));
  std::vector<std::string> solution = {"1", "2", "3", "4", "5", "6", "7", "}", "9", "10"};
  // |4/10 - 8/10| = 0.4 against |9/10 - 8/10| = 0.1.
  EXPECT_EQ(tl::match_line(tmpl, solution, 8), 9u);
}

TEST(MatchLine, TiesGoToSmallestLine) {
  tl::Template tmpl("T", "}\nx\n}\n");
  std::vector<std::string> solution = {"y", "}", "z"};
  // |1/3 - 2/3| == |3/3 - 2/3|.
  EXPECT_EQ(tl::match_line(tmpl, solution, 2), 1u);
}

TEST(MatchLine, AgreesWithOracleOn1000Triples) {
  std::mt19937_64 rng(31337);
  const std::vector<std::string> alphabet = {"}", "{", "x = 1;", "  return;", "", "   ", "int a=1;", "y++;"};
  for (int round = 0; round < 1000; ++round) {
    std::vector<std::string> tmpl_lines(1 + tl::uniform_below(rng, 30));
    for (auto& line : tmpl_lines) line = alphabet[tl::uniform_below(rng, alphabet.size())];
    std::vector<std::string> solution(1 + tl::uniform_below(rng, 40));
    for (auto& line : solution) line = alphabet[tl::uniform_below(rng, alphabet.size())];
    const std::size_t issue_line = 1 + tl::uniform_below(rng, solution.size());
    tl::Template tmpl("T", join(tmpl_lines));
    ASSERT_EQ(tmpl.lines, tmpl_lines);
    EXPECT_EQ(tl::match_line(tmpl, solution, issue_line), oracle::match_line(tmpl_lines, solution, issue_line))
        << "round " << round;
  }
}

TEST(Localize, CollapsesDuplicatesAndKeepsNone) {
  tl::Template tmpl("T", "a\nx = 1;\ny = 2;\nb\n");
  tl::PersistentIssue twice{"T", "U", "MagicNumber", {at("MagicNumber", 2), at("MagicNumber", 4)}};
  auto keys = tl::localize(twice, tmpl, std::string_view("a\nx = 1;\nq\nx = 1;\n"));
  ASSERT_EQ(keys.size(), 1u);
  EXPECT_EQ(keys[0].template_line, 2u);

  tl::PersistentIssue mixed{"T", "U", "MagicNumber", {at("MagicNumber", 3), at("MagicNumber", 4)}};
  keys = tl::localize(mixed, tmpl, std::string_view("a\nq\ny = 2;\nz = 3;\n"));
  ASSERT_EQ(keys.size(), 2u);
  EXPECT_EQ(keys[0].template_line, 3u);
  EXPECT_EQ(keys[1].template_line, std::nullopt);
}

TEST(ComputeCandidates, ThreeOfFour) {
  auto f = three_of_four();
  auto candidates = tl::compute_candidates("T1", f.series, f.persistent, f.templates);
  ASSERT_EQ(candidates.size(), 1u);
  EXPECT_EQ(candidates[0].key.template_line, 2u);
  EXPECT_EQ(candidates[0].supporting_series, 3u);
  EXPECT_EQ(candidates[0].total_series, 4u);
  EXPECT_DOUBLE_EQ(candidates[0].frequency, 0.75);
  EXPECT_EQ(candidates[0].supporting_submission_ids, (std::vector<std::string>{"s0", "s1", "s2"}));
  EXPECT_EQ(candidates[0].sample_submission_ids.size(), 3u);
}

TEST(ComputeCandidates, SingleReferenceSolution) {
  std::string code = "a\nb\nc\nd\nint k = 7;\n";
  std::map<std::string, tl::Template> templates;
  templates.emplace("T", tl::Template("T", code));
  std::vector<tl::SubmissionSeries> series = {{"T", "U", {submission("s", "T", "U", 0, code)}}};
  std::vector<std::vector<tl::PersistentIssue>> persistent = {{{"T", "U", "MagicNumber", {at("MagicNumber", 5)}}}};
  auto candidates = tl::compute_candidates("T", series, persistent, templates);
  ASSERT_EQ(candidates.size(), 1u);
  EXPECT_EQ(candidates[0].key.template_line, 5u);
  EXPECT_DOUBLE_EQ(candidates[0].frequency, 1.0);
}

TEST(ComputeCandidates, Errors) {
  auto f = three_of_four();
  try {
    tl::compute_candidates("T1", std::span<const tl::SubmissionSeries>(), {}, f.templates);
    FAIL();
  } catch (const tl::Error& e) {
    EXPECT_EQ(e.code(), tl::ErrorCode::kNoSeriesForTask);
  }
  f.templates.clear();
  EXPECT_THROW(tl::compute_candidates("T1", f.series, f.persistent, f.templates), tl::Error);
}

TEST(ComputeCandidates, SortOrder) {
  tl::Template tmpl("T", "p\nq\nr\n");
  std::map<std::string, tl::Template> templates{{"T", tmpl}};
  std::vector<tl::SubmissionSeries> series;
  std::vector<std::vector<tl::PersistentIssue>> persistent;
  for (int u = 0; u < 4; ++u) {
    std::string user = "U" + std::to_string(u);
    series.push_back({"T", user, {submission(user, "T", user, 0, "p\nq\nr\nzz\n")}});
    std::vector<tl::PersistentIssue> p;
    p.push_back({"T", user, "B", {at("B", 1), at("B", 4)}});
    if (u < 3) p.push_back({"T", user, "A", {at("A", 3)}});
    if (u < 2) p.push_back({"T", user, "C", {at("C", 2)}});
    persistent.push_back(std::move(p));
  }
  auto candidates = tl::compute_candidates("T", series, persistent, templates);
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& c : candidates) order.emplace_back(c.key.issue_type, tl::template_line_label(c.key.template_line));
  EXPECT_EQ(order, (std::vector<std::pair<std::string, std::string>>{{"B", "1"}, {"B", "None"}, {"A", "3"}, {"C", "2"}}));
}

namespace {

struct SynthRun {
  tl::SyntheticCorpus synthetic;
  tl::IssueMap issues;
  std::vector<tl::SubmissionSeries> series;
};

SynthRun synth_run(const tl::SynthSpec& spec) {
  SynthRun run{tl::generate(spec), {}, {}};
  run.issues = tl::provide(run.synthetic.corpus, {});
  run.series = tl::group_series(run.synthetic.corpus);
  return run;
}

std::vector<tl::CandidateIssue> candidates_for(const SynthRun& run, const std::string& task,
                                               std::vector<tl::SubmissionSeries> series) {
  std::erase_if(series, [&](const tl::SubmissionSeries& s) { return s.task_id != task; });
  std::vector<std::vector<tl::PersistentIssue>> persistent;
  for (const auto& s : series) persistent.push_back(tl::persistent_issues(s, run.issues));
  return tl::compute_candidates(task, series, persistent, run.synthetic.corpus.templates);
}

}  // namespace

TEST(ComputeCandidates, KeepRateWithinBinomialNoise) {
  tl::SynthSpec spec;
  spec.n_tasks = 1;
  spec.users_per_task = 500;
  spec.attempts_min = spec.attempts_max = 1;
  spec.template_keep_probability = 0.6;
  spec.planted = {{"MagicNumber", 4, std::nullopt, false}};
  spec.seed = 5;
  auto run = synth_run(spec);
  auto candidates = candidates_for(run, "task_000", run.series);
  auto it = std::find_if(candidates.begin(), candidates.end(), [](const tl::CandidateIssue& c) {
    return c.key.issue_type == "MagicNumber" && c.key.template_line == 4u;
  });
  ASSERT_NE(it, candidates.end());
  EXPECT_EQ(it->total_series, 500u);
  EXPECT_NEAR(it->frequency, 0.60, 0.02);
}

TEST(ComputeCandidates, FrequenciesMatchOracleAndInvariants) {
  tl::SynthSpec spec;
  spec.n_tasks = 3;
  spec.users_per_task = 60;
  spec.random_planted_min = 2;
  spec.random_planted_max = 4;
  spec.student_issue_rate = 0.3;
  spec.template_keep_probability = 0.7;
  spec.seed = 12;
  auto run = synth_run(spec);
  std::mt19937_64 rng(3);
  for (std::size_t t = 0; t < spec.n_tasks; ++t) {
    const std::string task = tl::synth_task_id(t);
    auto candidates = candidates_for(run, task, run.series);
    ASSERT_FALSE(candidates.empty());
    std::vector<tl::SubmissionSeries> task_series;
    for (const auto& s : run.series) {
      if (s.task_id == task) task_series.push_back(s);
    }
    auto expected = oracle::supporting_counts(task_series, run.issues, run.synthetic.corpus.templates.at(task));
    ASSERT_EQ(candidates.size(), expected.size());
    for (const auto& c : candidates) {
      EXPECT_EQ(c.total_series, task_series.size());
      const auto count = expected.at({c.key.issue_type, c.key.template_line.value_or(0)});
      EXPECT_EQ(c.supporting_series, count);
      EXPECT_NEAR(c.frequency, static_cast<double>(count) / static_cast<double>(task_series.size()), 1e-12);
      EXPECT_GE(c.frequency, 1.0 / static_cast<double>(c.total_series));
      EXPECT_LE(c.frequency, 1.0);
      EXPECT_LE(c.sample_submission_ids.size(), 5u);
    }
    auto shuffled = task_series;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto again = candidates_for(run, task, shuffled);
    ASSERT_EQ(again.size(), candidates.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      EXPECT_TRUE(again[i].key.issue_type == candidates[i].key.issue_type &&
                  again[i].key.template_line == candidates[i].key.template_line);
      EXPECT_EQ(again[i].frequency, candidates[i].frequency);
      EXPECT_EQ(again[i].sample_submission_ids, candidates[i].sample_submission_ids);
    }
  }
}

TEST(ComputeCandidates, IdenticalCodeLocalizesToOwnLine) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 50; ++round) {
    std::string code = testing_support::random_code(rng, 40, false);
    auto lines = tl::split_lines(code);
    tl::Template tmpl("T", code);
    for (const auto& issue : tl::lint_baseline(code)) {
      if (tl::is_blank(lines[issue.line - 1])) continue;
      tl::PersistentIssue p{"T", "U", issue.issue_type, {issue}};
      auto keys = tl::localize(p, tmpl, std::string_view(code));
      ASSERT_EQ(keys.size(), 1u);
      auto expected = oracle::match_line(tmpl.lines, lines, issue.line);
      EXPECT_EQ(keys[0].template_line, expected);
      // Identical lines elsewhere can win only when strictly nearer, which
      // never happens for the line itself.
      EXPECT_EQ(keys[0].template_line, issue.line);
    }
  }
}

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

#include "oracles.hpp"
#include "template_lint/baseline.hpp"
#include "test_support.hpp"

namespace tl = template_lint;

namespace {

std::vector<oracle::Finding> lint(const std::string& code, const tl::BaselineRuleset& rules = {}) {
  return oracle::findings(tl::lint_baseline(code, rules));
}

tl::BaselineRuleset only(const std::string& rule) {
  tl::BaselineRuleset rules;
  rules.enabled_rules = {rule};
  return rules;
}

}  // namespace

TEST(LintBaseline, MissingWhitespaceFlagsBothOperators) {
  EXPECT_EQ(lint("int x=a+b;"),
            (std::vector<oracle::Finding>{{1, 6, "WhitespaceAround"}, {1, 8, "WhitespaceAround"}}));
}

TEST(LintBaseline, FinalMarkerExemptsMagicNumber) {
  EXPECT_TRUE(lint("final int N = 10;").empty());
  EXPECT_TRUE(lint("const int N = 10;").empty());
  EXPECT_EQ(lint("int finally = 10;"), (std::vector<oracle::Finding>{{1, 15, "MagicNumber"}}));
}

TEST(LintBaseline, MagicNumberOutsideAllowlist) {
  EXPECT_EQ(lint("int t = 10;"), (std::vector<oracle::Finding>{{1, 9, "MagicNumber"}}));
  EXPECT_TRUE(lint("int t = 2 - 1 + 0 * -1;").empty());
  EXPECT_EQ(lint("int t = -5;"), (std::vector<oracle::Finding>{{1, 9, "MagicNumber"}}));
  EXPECT_EQ(lint("int t = a - 5;"), (std::vector<oracle::Finding>{{1, 13, "MagicNumber"}}));
  EXPECT_TRUE(lint("double d = 3.14; int x2 = y3;").empty());
  EXPECT_EQ(lint("long n = 100L;"), (std::vector<oracle::Finding>{{1, 10, "MagicNumber"}}));
}

TEST(LintBaseline, AllowlistIsConfigurable) {
  tl::BaselineRuleset rules;
  rules.magic_number_allowlist = {10};
  EXPECT_TRUE(lint("int t = 10;", rules).empty());
  EXPECT_EQ(lint("int t = 1;", rules).size(), 1u);
}

TEST(LintBaseline, CommentsAndLiteralsAreMasked) {
  EXPECT_TRUE(lint("// int t = 10; x=y").empty());
  EXPECT_TRUE(lint("String s = \"a=b 42\";").empty());
  EXPECT_TRUE(lint("char c = '=';").empty());
  EXPECT_EQ(lint("int t=1; // a=b"), (std::vector<oracle::Finding>{{1, 6, "WhitespaceAround"}}));
  EXPECT_EQ(lint("/*\nint t = 10;\n*/\nint u = 10;\n"), (std::vector<oracle::Finding>{{4, 9, "MagicNumber"}}));
  EXPECT_EQ(lint("int a = /* 7 */ 8;"), (std::vector<oracle::Finding>{{1, 17, "MagicNumber"}}));
}

TEST(LintBaseline, CompoundOperatorsAreNotWhitespaceIssues) {
  EXPECT_TRUE(lint("a==b; a<=b; a>=b; i++; i--; a+=b; a-=b; a*=b; a/=b; p->q;").empty());
}

TEST(LintBaseline, Indentation) {
  EXPECT_EQ(lint("   int a;"), (std::vector<oracle::Finding>{{1, 1, "Indentation"}}));
  EXPECT_TRUE(lint("        int a;\n   \n").empty());
  tl::BaselineRuleset rules;
  rules.indent_unit = 3;
  EXPECT_TRUE(lint("   int a;", rules).empty());
}

TEST(LintBaseline, LineLength) {
  std::string line(120, 'a');
  EXPECT_TRUE(lint(line).empty());
  EXPECT_EQ(lint(line + "a"), (std::vector<oracle::Finding>{{1, 121, "LineLength"}}));
  tl::BaselineRuleset rules;
  rules.max_line_length = 10;
  EXPECT_EQ(lint("abcdefghijk", rules), (std::vector<oracle::Finding>{{1, 11, "LineLength"}}));
}

TEST(LintBaseline, EmptyLineSeparator) {
  EXPECT_EQ(lint("import a.b;\nclass X {}\n"), (std::vector<oracle::Finding>{{1, 1, "EmptyLineSeparator"}}));
  EXPECT_TRUE(lint("import a.b;\n\nclass X {}\n").empty());
  EXPECT_EQ(lint("import a.b;\nimport c.d;\nclass X {}\n"), (std::vector<oracle::Finding>{{2, 1, "EmptyLineSeparator"}}));
  EXPECT_TRUE(lint("import a.b;\n").empty());
}

TEST(LintBaseline, TooManyArguments) {
  EXPECT_EQ(lint("f(a, b, c, d, e, f, g);"), (std::vector<oracle::Finding>{{1, 2, "TooManyArguments"}}));
  EXPECT_TRUE(lint("f(a, b, c, d, e, f);").empty());
  EXPECT_TRUE(lint("f(a, g(b, c, d, e, f, h, i));").empty());
  EXPECT_TRUE(lint("f(a, (b, c, d, e, f, g));").empty());
}

TEST(LintBaseline, EmptyAndDisabled) {
  EXPECT_TRUE(tl::lint_baseline("").empty());
  tl::BaselineRuleset none;
  none.enabled_rules.clear();
  EXPECT_TRUE(lint("int x=a+b; int t = 10;", none).empty());
}

TEST(LintBaseline, RulesetValidation) {
  tl::BaselineRuleset rules;
  rules.indent_unit = 0;
  EXPECT_THROW(rules.validate(), tl::Error);
  rules.indent_unit = 4;
  rules.enabled_rules.insert("Bogus");
  EXPECT_THROW(rules.validate(), tl::Error);
}

// 200-line random files against the naive per-rule re-scan.
TEST(LintBaseline, MatchesIndependentRescan) {
  std::mt19937_64 rng(20240601);
  for (int round = 0; round < 60; ++round) {
    const std::string code = testing_support::random_code(rng, 200);
    tl::BaselineRuleset rules;
    if (round % 3 == 1) {
      rules.max_line_length = 40;
      rules.indent_unit = 3;
      rules.magic_number_allowlist = {7, 42};
    }
    ASSERT_EQ(lint(code, rules), oracle::findings(oracle::lint(code, rules))) << code;
  }
}

TEST(LintBaseline, DeterministicAndSorted) {
  std::mt19937_64 rng(77);
  const std::string code = testing_support::random_code(rng, 150);
  const auto first = tl::lint_baseline(code);
  EXPECT_EQ(first, tl::lint_baseline(code));
  EXPECT_TRUE(std::is_sorted(first.begin(), first.end(), tl::issue_less));
}

// Editing line k only changes findings on line k (and k-1 for
// EmptyLineSeparator). Block comments are excluded: they mask later lines.
TEST(LintBaseline, LocalityPerRule) {
  std::mt19937_64 rng(99);
  for (const std::string& rule : tl::baseline_rule_ids()) {
    const auto rules = only(rule);
    for (int round = 0; round < 40; ++round) {
      auto lines = tl::split_lines(testing_support::random_code(rng, 30, false));
      const std::size_t k = 1 + tl::uniform_below(rng, lines.size());
      auto edited = lines;
      edited[k - 1] = testing_support::random_code_line(rng, false);
      auto join = [](const std::vector<std::string>& ls) {
        std::string out;
        for (const auto& l : ls) out += l + "\n";
        return out;
      };
      auto keep_unaffected = [&](const std::vector<tl::IssueInstance>& issues) {
        std::vector<oracle::Finding> out;
        for (const auto& f : oracle::findings(issues)) {
          const std::size_t line = std::get<0>(f);
          if (line == k || (rule == "EmptyLineSeparator" && line + 1 == k)) continue;
          out.push_back(f);
        }
        return out;
      };
      EXPECT_EQ(keep_unaffected(tl::lint_baseline(join(lines), rules)),
                keep_unaffected(tl::lint_baseline(join(edited), rules)))
          << rule << " line " << k;
    }
  }
}

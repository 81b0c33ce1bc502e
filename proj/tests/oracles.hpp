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

// Independent reference implementations used only by the tests. They share
// nothing with the library beyond the data types and split_lines.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "template_lint/baseline.hpp"
#include "template_lint/matcher.hpp"
#include "template_lint/model.hpp"
#include "template_lint/provider.hpp"
#include "template_lint/series.hpp"

namespace oracle {

using template_lint::IssueInstance;

// Masks the whole text in one pass with an explicit state machine.
inline std::vector<std::string> mask(const std::vector<std::string>& lines) {
  std::string text;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) text += '\n';
    text += lines[i];
  }
  enum { kCode, kLineComment, kBlock, kString } state = kCode;
  char quote = 0;
  std::string out = text;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const char next = i + 1 < text.size() ? text[i + 1] : '\0';
    if (c == '\n') {
      if (state == kLineComment || state == kString) state = kCode;
      continue;
    }
    switch (state) {
      case kCode:
        if (c == '/' && next == '/') {
          state = kLineComment;
          out[i] = ' ';
        } else if (c == '/' && next == '*') {
          state = kBlock;
          out[i] = out[i + 1] = ' ';
          ++i;
        } else if (c == '"' || c == '\'') {
          state = kString;
          quote = c;
        }
        break;
      case kLineComment:
        out[i] = ' ';
        break;
      case kBlock:
        out[i] = ' ';
        if (c == '*' && next == '/') {
          out[i + 1] = ' ';
          ++i;
          state = kCode;
        }
        break;
      case kString:
        if (c == '\\' && next != '\n' && next != '\0') {
          out[i] = out[i + 1] = ' ';
          ++i;
        } else if (c == quote) {
          state = kCode;
        } else {
          out[i] = ' ';
        }
        break;
    }
  }
  std::vector<std::string> result;
  std::size_t start = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    result.push_back(out.substr(start, lines[i].size()));
    start += lines[i].size() + 1;
  }
  return result;
}

inline bool ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::vector<IssueInstance> magic_numbers(const std::string& code, std::size_t line,
                                                const std::set<long long>& allow) {
  std::vector<IssueInstance> out;
  static const std::regex kExempt(R"((^|[^A-Za-z0-9_])(final|const)([^A-Za-z0-9_]|$))");
  if (std::regex_search(code, kExempt)) return out;
  static const std::regex kLiteral(R"((^|[^A-Za-z0-9_.])(\d+)[lL]?(?![A-Za-z0-9_.]))");
  for (auto it = std::sregex_iterator(code.begin(), code.end(), kLiteral); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    const std::size_t digits_at = static_cast<std::size_t>(m.position(2));
    std::size_t column = digits_at + 1;
    bool negative = false;
    if (digits_at > 0 && code[digits_at - 1] == '-') {
      std::size_t k = digits_at - 1;
      while (k > 0 && code[k - 1] == ' ') --k;
      if (k == 0 || !(ident(code[k - 1]) || code[k - 1] == ')' || code[k - 1] == ']')) {
        negative = true;
        column = digits_at;
      }
    }
    std::string digits = m.str(2);
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    bool allowed = false;
    if (digits.size() < 19) {
      long long value = std::stoll(digits);
      allowed = allow.contains(negative ? -value : value);
    }
    if (!allowed) out.push_back({"MagicNumber", template_lint::Category::kMinorIssues, line, column, ""});
  }
  return out;
}

inline std::vector<IssueInstance> whitespace_around(const std::string& code, std::size_t line) {
  std::vector<IssueInstance> out;
  static const std::regex kTriple("[A-Za-z0-9][=+\\-*/<>][A-Za-z0-9]");
  for (std::size_t i = 0; i + 3 <= code.size(); ++i) {
    if (std::regex_match(code.begin() + static_cast<long>(i), code.begin() + static_cast<long>(i + 3), kTriple)) {
      out.push_back({"WhitespaceAround", template_lint::Category::kCodeStyle, line, i + 2, ""});
    }
  }
  return out;
}

inline std::vector<IssueInstance> too_many_arguments(const std::string& code, std::size_t line) {
  std::vector<IssueInstance> out;
  static const std::regex kInner(R"(\([^()]*\))");
  std::size_t i = 0;
  while (i < code.size()) {
    if (code[i] == ')') {
      ++i;
      continue;
    }
    if (code[i] != '(') {
      ++i;
      continue;
    }
    int depth = 0;
    std::size_t j = i;
    for (; j < code.size(); ++j) {
      if (code[j] == '(') ++depth;
      if (code[j] == ')' && --depth == 0) break;
    }
    const std::size_t close = std::min(j, code.size());
    std::string inside = code.substr(i + 1, close - i - 1);
    std::string reduced;
    while (true) {
      reduced = std::regex_replace(inside, kInner, "");
      if (reduced == inside) break;
      inside = reduced;
    }
    // An unclosed group may still hold unbalanced '(' sections; cut them.
    std::size_t commas = 0;
    int level = 0;
    for (char c : inside) {
      if (c == '(') ++level;
      if (c == ')') --level;
      if (c == ',' && level == 0) ++commas;
    }
    if (commas > 5) out.push_back({"TooManyArguments", template_lint::Category::kBestPractices, line, i + 1, ""});
    i = close + 1;
  }
  return out;
}

inline std::vector<IssueInstance> lint(const std::string& code, const template_lint::BaselineRuleset& rules) {
  const auto lines = template_lint::split_lines(code);
  const auto masked = mask(lines);
  std::vector<IssueInstance> out;
  auto add = [&](std::vector<IssueInstance> found) { out.insert(out.end(), found.begin(), found.end()); };
  static const std::regex kImport("^import .*");
  static const std::regex kBlank(R"(^[ \t\r\v\f]*$)");
  static const std::regex kLeading("^( *)");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t n = i + 1;
    if (rules.enabled("MagicNumber")) add(magic_numbers(masked[i], n, rules.magic_number_allowlist));
    if (rules.enabled("WhitespaceAround")) add(whitespace_around(masked[i], n));
    std::smatch m;
    if (rules.enabled("Indentation") && !std::regex_match(lines[i], kBlank) &&
        std::regex_search(lines[i], m, kLeading) &&
        m.length(1) % static_cast<long>(rules.indent_unit) != 0) {
      out.push_back({"Indentation", template_lint::Category::kCodeStyle, n, 1, ""});
    }
    if (rules.enabled("LineLength") && lines[i].size() > rules.max_line_length) {
      out.push_back({"LineLength", template_lint::Category::kCodeStyle, n, rules.max_line_length + 1, ""});
    }
    if (rules.enabled("EmptyLineSeparator") && i + 1 < lines.size() && std::regex_match(lines[i], kImport) &&
        !std::regex_match(lines[i + 1], kBlank) && !std::regex_match(lines[i + 1], kImport)) {
      out.push_back({"EmptyLineSeparator", template_lint::Category::kCodeStyle, n, 1, ""});
    }
    if (rules.enabled("TooManyArguments")) add(too_many_arguments(masked[i], n));
  }
  return out;
}

// (line, column, type) triples, sorted, ignoring messages.
using Finding = std::tuple<std::size_t, std::size_t, std::string>;

inline std::vector<Finding> findings(const std::vector<IssueInstance>& issues) {
  std::vector<Finding> out;
  for (const auto& issue : issues) out.emplace_back(issue.line, issue.column.value_or(0), issue.issue_type);
  std::sort(out.begin(), out.end());
  return out;
}

// Scan every template line, keep equal ones, argmin of the floating-point
// relative distance with near-equal distances treated as ties.
inline std::optional<std::size_t> match_line(const std::vector<std::string>& tmpl,
                                             const std::vector<std::string>& solution, std::size_t issue_line) {
  const std::string& s = solution[issue_line - 1];
  if (s.find_first_not_of(" \t\r\v\f") == std::string::npos) return std::nullopt;
  std::optional<std::size_t> best;
  double best_distance = 0;
  for (std::size_t t = 1; t <= tmpl.size(); ++t) {
    if (tmpl[t - 1] != s) continue;
    double d = std::fabs(static_cast<double>(t) / static_cast<double>(tmpl.size()) -
                         static_cast<double>(issue_line) / static_cast<double>(solution.size()));
    if (!best || d < best_distance - 1e-12) {
      best = t;
      best_distance = d;
    }
  }
  return best;
}

// Types present in every submission of the series, by nested scans.
inline std::map<std::string, std::vector<IssueInstance>> persistent(const template_lint::SubmissionSeries& series,
                                                                    const template_lint::IssueMap& issues) {
  std::set<std::string> all_types;
  for (const auto& s : series.submissions) {
    for (const auto& issue : issues.at(s.submission_id)) all_types.insert(issue.issue_type);
  }
  std::map<std::string, std::vector<IssueInstance>> out;
  for (const std::string& type : all_types) {
    bool everywhere = true;
    for (const auto& s : series.submissions) {
      const auto& list = issues.at(s.submission_id);
      bool found = false;
      for (const auto& issue : list) found = found || issue.issue_type == type;
      everywhere = everywhere && found;
    }
    if (!everywhere) continue;
    for (const auto& issue : issues.at(series.submissions.back().submission_id)) {
      if (issue.issue_type == type) out[type].push_back(issue);
    }
  }
  return out;
}

// (issue_type, template line or 0 for None) -> supporting series count.
inline std::map<std::pair<std::string, std::size_t>, std::size_t> supporting_counts(
    const std::vector<template_lint::SubmissionSeries>& task_series, const template_lint::IssueMap& issues,
    const template_lint::Template& tmpl) {
  std::map<std::pair<std::string, std::size_t>, std::size_t> counts;
  for (const auto& series : task_series) {
    const auto final_lines = template_lint::split_lines(series.submissions.back().code);
    std::set<std::pair<std::string, std::size_t>> keys;
    for (const auto& [type, instances] : persistent(series, issues)) {
      for (const auto& issue : instances) keys.insert({type, match_line(tmpl.lines, final_lines, issue.line).value_or(0)});
    }
    for (const auto& key : keys) ++counts[key];
  }
  return counts;
}

}  // namespace oracle

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

// Built-in deterministic line-local style checker.
//
// Rules see two views of every line: the raw text (Indentation, LineLength,
// EmptyLineSeparator) and a masked view in which comments and the contents of
// quoted literals are blanked out (MagicNumber, WhitespaceAround,
// TooManyArguments). Masking is the only state carried between lines: a
// block comment opened on one line masks the following lines until closed.

#pragma once

#include <charconv>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "template_lint/error.hpp"
#include "template_lint/model.hpp"

namespace template_lint {

inline constexpr std::string_view kMagicNumber = "MagicNumber";
inline constexpr std::string_view kWhitespaceAround = "WhitespaceAround";
inline constexpr std::string_view kIndentation = "Indentation";
inline constexpr std::string_view kLineLength = "LineLength";
inline constexpr std::string_view kEmptyLineSeparator = "EmptyLineSeparator";
inline constexpr std::string_view kTooManyArguments = "TooManyArguments";

inline const std::vector<std::string>& baseline_rule_ids() {
  static const std::vector<std::string> ids = {
      std::string(kEmptyLineSeparator), std::string(kIndentation),     std::string(kLineLength),
      std::string(kMagicNumber),        std::string(kTooManyArguments), std::string(kWhitespaceAround)};
  return ids;
}

inline bool is_baseline_rule(std::string_view id) {
  for (const auto& rule : baseline_rule_ids()) {
    if (rule == id) return true;
  }
  return false;
}

struct BaselineRuleset {
  std::set<std::string> enabled_rules{baseline_rule_ids().begin(), baseline_rule_ids().end()};
  std::set<long long> magic_number_allowlist{-1, 0, 1, 2};
  std::size_t max_line_length = 120;
  std::size_t indent_unit = 4;

  bool enabled(std::string_view rule) const { return enabled_rules.contains(std::string(rule)); }

  void validate() const {
    if (indent_unit < 1) throw Error(ErrorCode::kInvalidConfig, "indent_unit must be >= 1");
    for (const auto& rule : enabled_rules) {
      if (!is_baseline_rule(rule)) throw Error(ErrorCode::kInvalidConfig, "unknown rule '" + rule + "'");
    }
  }

  friend bool operator==(const BaselineRuleset&, const BaselineRuleset&) = default;
};

// Replaces comment text and quoted-literal contents with spaces. Quote
// characters themselves are kept. Line lengths are preserved.
inline std::vector<std::string> mask_comments_and_literals(const std::vector<std::string>& lines) {
  std::vector<std::string> masked;
  masked.reserve(lines.size());
  bool in_block = false;
  for (const std::string& line : lines) {
    std::string out = line;
    char quote = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (in_block) {
        if (line[i] == '*' && i + 1 < line.size() && line[i + 1] == '/') {
          out[i] = out[i + 1] = ' ';
          ++i;
          in_block = false;
        } else {
          out[i] = ' ';
        }
      } else if (quote != 0) {
        if (line[i] == '\\' && i + 1 < line.size()) {
          out[i] = out[i + 1] = ' ';
          ++i;
        } else if (line[i] == quote) {
          quote = 0;
        } else {
          out[i] = ' ';
        }
      } else if (line[i] == '"' || line[i] == '\'') {
        quote = line[i];
      } else if (line[i] == '/' && i + 1 < line.size() && line[i + 1] == '/') {
        for (std::size_t j = i; j < out.size(); ++j) out[j] = ' ';
        break;
      } else if (line[i] == '/' && i + 1 < line.size() && line[i + 1] == '*') {
        out[i] = out[i + 1] = ' ';
        ++i;
        in_block = true;
      }
    }
    masked.push_back(std::move(out));
  }
  return masked;
}

namespace detail {

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

inline bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

inline bool contains_word(std::string_view text, std::string_view word) {
  for (std::size_t pos = text.find(word); pos != std::string_view::npos; pos = text.find(word, pos + 1)) {
    bool left = pos == 0 || !is_ident_char(text[pos - 1]);
    bool right = pos + word.size() >= text.size() || !is_ident_char(text[pos + word.size()]);
    if (left && right) return true;
  }
  return false;
}

inline IssueInstance make_issue(std::string_view type, Category category, std::size_t line,
                                std::size_t column, std::string message) {
  return {std::string(type), category, line, column, std::move(message)};
}

inline void check_magic_numbers(std::string_view code, std::size_t line_no, const BaselineRuleset& rules,
                                std::vector<IssueInstance>& out) {
  if (contains_word(code, "final") || contains_word(code, "const")) return;
  std::size_t i = 0;
  while (i < code.size()) {
    if (!std::isdigit(static_cast<unsigned char>(code[i])) || (i > 0 && (is_ident_char(code[i - 1]) || code[i - 1] == '.'))) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < code.size() && (is_ident_char(code[end]) || code[end] == '.')) ++end;
    std::string_view token = code.substr(i, end - i);
    std::string_view digits = token;
    if (!digits.empty() && (digits.back() == 'L' || digits.back() == 'l')) digits.remove_suffix(1);
    bool integer = !digits.empty() && digits.find_first_not_of("0123456789") == std::string_view::npos;
    if (integer) {
      std::size_t start = i;
      bool negative = false;
      if (i > 0 && code[i - 1] == '-') {
        std::size_t k = i - 1;
        while (k > 0 && code[k - 1] == ' ') --k;
        char before = k > 0 ? code[k - 1] : '\0';
        if (!(is_ident_char(before) || before == ')' || before == ']')) {
          negative = true;
          start = i - 1;
        }
      }
      long long value = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      bool allowed = ec == std::errc() && ptr == digits.data() + digits.size() &&
                     rules.magic_number_allowlist.contains(negative ? -value : value);
      if (!allowed) {
        std::string literal = (negative ? "-" : "") + std::string(token);
        out.push_back(make_issue(kMagicNumber, Category::kMinorIssues, line_no, start + 1,
                                 "'" + literal + "' is a magic number"));
      }
    }
    i = end;
  }
}

inline bool is_compound_operator(std::string_view pair) {
  static constexpr std::string_view kCompound[] = {"==", "<=", ">=", "++", "--", "+=",
                                                   "-=", "*=", "/=", "->"};
  for (std::string_view op : kCompound) {
    if (pair == op) return true;
  }
  return false;
}

inline void check_whitespace_around(std::string_view code, std::size_t line_no,
                                    std::vector<IssueInstance>& out) {
  static constexpr std::string_view kOperators = "=+-*/<>";
  for (std::size_t i = 1; i + 1 < code.size(); ++i) {
    if (kOperators.find(code[i]) == std::string_view::npos) continue;
    if (!is_alnum(code[i - 1]) || !is_alnum(code[i + 1])) continue;
    if (is_compound_operator(code.substr(i - 1, 2)) || is_compound_operator(code.substr(i, 2))) continue;
    out.push_back(make_issue(kWhitespaceAround, Category::kCodeStyle, line_no, i + 1,
                             std::string("'") + code[i] + "' is not surrounded by whitespace"));
  }
}

inline void check_too_many_arguments(std::string_view code, std::size_t line_no,
                                     std::vector<IssueInstance>& out) {
  constexpr std::size_t kMaxCommas = 5;
  std::size_t depth = 0;
  std::size_t open_column = 0;
  std::size_t commas = 0;
  auto flush = [&] {
    if (commas > kMaxCommas) {
      out.push_back(make_issue(kTooManyArguments, Category::kBestPractices, line_no, open_column,
                               "parameter list has " + std::to_string(commas + 1) + " arguments"));
    }
  };
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (code[i] == '(') {
      if (depth == 0) {
        open_column = i + 1;
        commas = 0;
      }
      ++depth;
    } else if (code[i] == ')') {
      if (depth == 0) continue;
      if (--depth == 0) flush();
    } else if (code[i] == ',' && depth == 1) {
      ++commas;
    }
  }
  if (depth > 0) flush();
}

}  // namespace detail

inline std::vector<IssueInstance> lint_baseline(std::string_view code, const BaselineRuleset& rules = {}) {
  std::vector<IssueInstance> issues;
  const std::vector<std::string> lines = split_lines(code);
  const std::vector<std::string> masked = mask_comments_and_literals(lines);
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const std::string& raw = lines[idx];
    const std::string& view = masked[idx];
    const std::size_t line_no = idx + 1;
    if (rules.enabled(kMagicNumber)) detail::check_magic_numbers(view, line_no, rules, issues);
    if (rules.enabled(kWhitespaceAround)) detail::check_whitespace_around(view, line_no, issues);
    if (rules.enabled(kIndentation) && !is_blank(raw)) {
      std::size_t spaces = raw.find_first_not_of(' ');
      if (spaces % rules.indent_unit != 0) {
        issues.push_back(detail::make_issue(kIndentation, Category::kCodeStyle, line_no, 1,
                                            "indented by " + std::to_string(spaces) + " spaces"));
      }
    }
    if (rules.enabled(kLineLength) && raw.size() > rules.max_line_length) {
      issues.push_back(detail::make_issue(kLineLength, Category::kCodeStyle, line_no,
                                          rules.max_line_length + 1,
                                          "line has " + std::to_string(raw.size()) + " characters"));
    }
    if (rules.enabled(kEmptyLineSeparator) && raw.starts_with("import ") && idx + 1 < lines.size()) {
      const std::string& next = lines[idx + 1];
      if (!is_blank(next) && !next.starts_with("import ")) {
        issues.push_back(detail::make_issue(kEmptyLineSeparator, Category::kCodeStyle, line_no, 1,
                                            "imports should be followed by an empty line"));
      }
    }
    if (rules.enabled(kTooManyArguments)) detail::check_too_many_arguments(view, line_no, issues);
  }
  sort_issues(issues);
  return issues;
}

}  // namespace template_lint

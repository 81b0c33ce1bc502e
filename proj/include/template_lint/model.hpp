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

// Core data model shared by every pipeline stage.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "template_lint/error.hpp"

namespace template_lint {

// The five high-level groupings issue types belong to.
enum class Category {
  kCodeStyle,
  kCodeComplexity,
  kErrorProneness,
  kBestPractices,
  kMinorIssues,
};

inline constexpr std::array<Category, 5> kAllCategories = {
    Category::kCodeStyle, Category::kCodeComplexity, Category::kErrorProneness,
    Category::kBestPractices, Category::kMinorIssues};

inline std::string_view category_name(Category category) {
  switch (category) {
    case Category::kCodeStyle: return "CodeStyle";
    case Category::kCodeComplexity: return "CodeComplexity";
    case Category::kErrorProneness: return "ErrorProneness";
    case Category::kBestPractices: return "BestPractices";
    case Category::kMinorIssues: return "MinorIssues";
  }
  return "MinorIssues";
}

// Accepts "CodeStyle", "CODE_STYLE", "code-style", "Code Style", ...
inline std::optional<Category> parse_category(std::string_view text) {
  std::string folded;
  for (char c : text) {
    if (c == '_' || c == '-' || c == ' ') continue;
    folded.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (Category category : kAllCategories) {
    std::string name;
    for (char c : category_name(category)) {
      name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (name == folded) return category;
  }
  return std::nullopt;
}

/// One linter finding inside one submission.
struct IssueInstance {
  std::string issue_type;
  Category category = Category::kMinorIssues;
  std::size_t line = 1;                  // 1-based
  std::optional<std::size_t> column;     // 1-based
  std::string message;

  friend bool operator==(const IssueInstance&, const IssueInstance&) = default;
};

// Canonical provider ordering: (line, column, issue_type). A missing column
// sorts before any concrete column.
inline bool issue_less(const IssueInstance& a, const IssueInstance& b) {
  if (a.line != b.line) return a.line < b.line;
  if (a.column != b.column) return a.column < b.column;
  return a.issue_type < b.issue_type;
}

inline void sort_issues(std::vector<IssueInstance>& issues) {
  std::stable_sort(issues.begin(), issues.end(), issue_less);
}

struct Submission {
  std::string submission_id;
  std::string task_id;
  std::string user_id;
  std::size_t attempt_index = 0;
  std::optional<std::int64_t> timestamp;
  std::string code;

  friend bool operator==(const Submission&, const Submission&) = default;
};

inline bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
  });
}

// Splits on LF and strips one trailing CR per line. A final newline does not
// produce an extra empty line; an empty text has no lines.
inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

struct Template {
  std::string task_id;
  std::string code;
  std::vector<std::string> lines;

  Template() = default;
  Template(std::string task, std::string source)
      : task_id(std::move(task)), code(std::move(source)), lines(split_lines(code)) {}

  std::size_t line_count() const { return lines.size(); }

  friend bool operator==(const Template&, const Template&) = default;
};

/// Ordered correct submissions of one user for one task.
struct SubmissionSeries {
  std::string task_id;
  std::string user_id;
  std::vector<Submission> submissions;  // attempt_index ascending

  const Submission& last() const { return submissions.back(); }
};

struct CatalogEntry {
  Category category = Category::kMinorIssues;
  std::string description;
  std::optional<std::string> link_template;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

class IssueCatalog {
 public:
  IssueCatalog() = default;

  // Catalog describing the built-in baseline rules.
  static IssueCatalog with_baseline_rules() {
    IssueCatalog catalog;
    catalog.add("MagicNumber", {Category::kMinorIssues,
                                "A numeric literal is used directly instead of a named constant.",
                                std::nullopt});
    catalog.add("WhitespaceAround", {Category::kCodeStyle,
                                     "An operator is not surrounded by whitespace.",
                                     std::nullopt});
    catalog.add("Indentation", {Category::kCodeStyle,
                                "The line is not indented by a multiple of the indentation unit.",
                                std::nullopt});
    catalog.add("LineLength", {Category::kCodeStyle,
                               "The line is longer than the allowed maximum.", std::nullopt});
    catalog.add("EmptyLineSeparator", {Category::kCodeStyle,
                                       "Imports are not separated from the following code by an empty line.",
                                       std::nullopt});
    catalog.add("TooManyArguments", {Category::kBestPractices,
                                     "A call or declaration has too many arguments.",
                                     std::nullopt});
    return catalog;
  }

  void add(std::string issue_type, CatalogEntry entry) {
    entries_.insert_or_assign(std::move(issue_type), std::move(entry));
  }

  const CatalogEntry* find(std::string_view issue_type) const {
    auto it = entries_.find(issue_type);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool contains(std::string_view issue_type) const { return find(issue_type) != nullptr; }

  static CatalogEntry placeholder(std::string_view issue_type) {
    return {Category::kMinorIssues,
            "No description available for issue type " + std::string(issue_type) + ".",
            std::nullopt};
  }

  // Entry for a type, or the MinorIssues placeholder for unknown types.
  CatalogEntry resolve(std::string_view issue_type) const {
    if (const CatalogEntry* entry = find(issue_type)) return *entry;
    return placeholder(issue_type);
  }

  // Registers a placeholder for an unknown type. Returns true if it was new.
  bool register_unknown(std::string_view issue_type) {
    if (contains(issue_type)) return false;
    add(std::string(issue_type), placeholder(issue_type));
    return true;
  }

  const std::map<std::string, CatalogEntry, std::less<>>& entries() const { return entries_; }

  friend bool operator==(const IssueCatalog&, const IssueCatalog&) = default;

 private:
  std::map<std::string, CatalogEntry, std::less<>> entries_;
};

struct SubmissionCorpus {
  std::vector<Submission> submissions;
  std::map<std::string, Template> templates;
  IssueCatalog catalog = IssueCatalog::with_baseline_rules();

  const Template* find_template(const std::string& task_id) const {
    auto it = templates.find(task_id);
    return it == templates.end() ? nullptr : &it->second;
  }
};

}  // namespace template_lint

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

// Report writers: raw CSV table, Markdown/JSON friendly report, sampled
// evidence solutions and aggregate statistics.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "template_lint/classifier.hpp"
#include "template_lint/corpus.hpp"
#include "template_lint/error.hpp"
#include "template_lint/matcher.hpp"
#include "template_lint/model.hpp"
#include "template_lint/sampling.hpp"

namespace template_lint {

namespace fs = std::filesystem;

inline std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

inline std::string format_frequency(double frequency) { return format_fixed(frequency, 4); }

// Canonical report order: task, class, frequency descending, issue type,
// template line (None last).
inline bool report_order_less(const ClassifiedIssue& a, const ClassifiedIssue& b) {
  const CandidateIssue& x = a.candidate;
  const CandidateIssue& y = b.candidate;
  if (x.key.task_id != y.key.task_id) return x.key.task_id < y.key.task_id;
  if (a.class_label != b.class_label) return a.class_label < b.class_label;
  if (x.frequency != y.frequency) return x.frequency > y.frequency;
  if (x.key.issue_type != y.key.issue_type) return x.key.issue_type < y.key.issue_type;
  return template_line_less(x.key.template_line, y.key.template_line);
}

inline std::vector<ClassifiedIssue> sorted_for_report(std::vector<ClassifiedIssue> classified) {
  std::stable_sort(classified.begin(), classified.end(), report_order_less);
  return classified;
}

// ---------------------------------------------------------------------------
// Raw CSV
// ---------------------------------------------------------------------------

inline constexpr std::string_view kRawCsvHeader =
    "task_id,issue_type,frequency,template_line,class,supporting_series,total_series";

namespace detail {

inline std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

inline std::size_t parse_count(const std::string& text, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kMalformedRecord, "csv line " + std::to_string(line_no) + ": bad integer '" + text + "'");
  }
  return value;
}

}  // namespace detail

inline void write_raw_csv(const std::vector<ClassifiedIssue>& classified, std::ostream& out) {
  out << kRawCsvHeader << '\n';
  for (const ClassifiedIssue& item : sorted_for_report(classified)) {
    const CandidateIssue& c = item.candidate;
    out << detail::csv_field(c.key.task_id) << ',' << detail::csv_field(c.key.issue_type) << ','
        << format_frequency(c.frequency) << ',' << (c.key.template_line ? std::to_string(*c.key.template_line) : "")
        << ',' << issue_class_name(item.class_label) << ',' << c.supporting_series << ',' << c.total_series << '\n';
  }
}

inline void write_raw_csv(const std::vector<ClassifiedIssue>& classified, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_raw_csv(classified, out);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

// Reads a raw CSV back. Frequencies are recomputed from the series counts
// and must agree with the rendered frequency column. Submission id lists
// are not part of the CSV and come back empty.
inline std::vector<ClassifiedIssue> parse_raw_csv(std::istream& in) {
  std::vector<ClassifiedIssue> result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kRawCsvHeader) throw Error(ErrorCode::kMalformedRecord, "unexpected CSV header: " + line);
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields = detail::split_csv_record(line);
    if (fields.size() != 7) {
      throw Error(ErrorCode::kMalformedRecord, "csv line " + std::to_string(line_no) + ": expected 7 fields");
    }
    ClassifiedIssue item;
    CandidateIssue& c = item.candidate;
    c.key.task_id = fields[0];
    c.key.issue_type = fields[1];
    if (!fields[3].empty()) c.key.template_line = detail::parse_count(fields[3], line_no);
    auto label = parse_issue_class(fields[4]);
    if (!label) throw Error(ErrorCode::kMalformedRecord, "csv line " + std::to_string(line_no) + ": bad class");
    item.class_label = *label;
    c.supporting_series = detail::parse_count(fields[5], line_no);
    c.total_series = detail::parse_count(fields[6], line_no);
    if (c.total_series == 0 || c.supporting_series > c.total_series) {
      throw Error(ErrorCode::kMalformedRecord, "csv line " + std::to_string(line_no) + ": bad series counts");
    }
    c.frequency = static_cast<double>(c.supporting_series) / static_cast<double>(c.total_series);
    if (format_frequency(c.frequency) != fields[2]) {
      throw Error(ErrorCode::kMalformedRecord,
                  "csv line " + std::to_string(line_no) + ": frequency does not match series counts");
    }
    result.push_back(std::move(item));
  }
  return result;
}

inline std::vector<ClassifiedIssue> load_raw_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return parse_raw_csv(in);
}

// ---------------------------------------------------------------------------
// Samples
// ---------------------------------------------------------------------------

// Keeps path components to a safe character set.
inline std::string path_component(std::string_view text) {
  std::string out;
  for (char c : text) {
    bool safe = std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '_' || c == '.';
    out += safe ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

inline fs::path sample_dir(const CandidateKey& key) {
  return fs::path(path_component(key.task_id)) /
         (path_component(key.issue_type) + "_" + template_line_label(key.template_line));
}

inline std::vector<std::string> choose_samples(const CandidateIssue& candidate, std::size_t n, std::uint64_t seed) {
  return sample_without_replacement(candidate.supporting_submission_ids, n, candidate_seed(seed, candidate.key));
}

// For every Template-class candidate writes up to n final-submission codes
// to <root>/<task>/<type>_<line|None>/<k>.txt, k = 1..n. Returns the
// written paths relative to root.
inline std::vector<fs::path> export_samples(const std::vector<ClassifiedIssue>& classified,
                                            const SubmissionCorpus& corpus, const fs::path& root, std::size_t n,
                                            std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidConfig, "sample count must be >= 1");
  std::unordered_map<std::string, const Submission*> by_id;
  for (const Submission& s : corpus.submissions) by_id.emplace(s.submission_id, &s);
  std::vector<fs::path> written;
  for (const ClassifiedIssue& item : sorted_for_report(classified)) {
    if (item.class_label != IssueClass::kTemplate) continue;
    const std::vector<std::string> chosen = choose_samples(item.candidate, n, seed);
    if (chosen.empty()) continue;
    const fs::path dir = sample_dir(item.candidate.key);
    std::error_code ec;
    fs::create_directories(root / dir, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + (root / dir).string());
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      auto it = by_id.find(chosen[k]);
      if (it == by_id.end()) throw Error(ErrorCode::kUnknownSubmission, chosen[k]);
      const fs::path relative = dir / (std::to_string(k + 1) + ".txt");
      std::ofstream out(root / relative, std::ios::binary);
      if (!out) throw Error(ErrorCode::kIo, "cannot write " + (root / relative).string());
      out << it->second->code;
      written.push_back(relative);
    }
  }
  return written;
}

// ---------------------------------------------------------------------------
// Friendly report
// ---------------------------------------------------------------------------

struct ReportOptions {
  std::optional<std::string> link_base;
  std::size_t samples_n = 5;
  std::uint64_t seed = 0;
  std::string samples_dir = "samples";  // relative to the report directory
};

struct FriendlyRow {
  std::string task_id;
  std::string task_link;
  std::string issue_type;
  std::string description;
  Category category = Category::kMinorIssues;
  std::string issue_link;
  IssueClass class_label = IssueClass::kRareTypical;
  std::string frequency;  // 4 decimals
  std::string template_line;  // number or "None"
  std::vector<std::string> sample_paths;
};

inline std::string task_link(const std::optional<std::string>& link_base, const std::string& task_id) {
  return link_base ? *link_base + task_id : std::string();
}

inline std::string expand_link_template(const std::optional<std::string>& link_template, std::string_view issue_type) {
  if (!link_template) return {};
  std::string link = *link_template;
  constexpr std::string_view kPlaceholder = "{issue_type}";
  for (std::size_t pos = link.find(kPlaceholder); pos != std::string::npos; pos = link.find(kPlaceholder, pos)) {
    link.replace(pos, kPlaceholder.size(), issue_type);
    pos += issue_type.size();
  }
  return link;
}

inline FriendlyRow make_friendly_row(const ClassifiedIssue& item, const IssueCatalog& catalog,
                                     const ReportOptions& options) {
  const CandidateIssue& c = item.candidate;
  const CatalogEntry entry = catalog.resolve(c.key.issue_type);
  FriendlyRow row;
  row.task_id = c.key.task_id;
  row.task_link = task_link(options.link_base, c.key.task_id);
  row.issue_type = c.key.issue_type;
  row.description = entry.description;
  row.category = entry.category;
  row.issue_link = expand_link_template(entry.link_template, c.key.issue_type);
  row.class_label = item.class_label;
  row.frequency = format_frequency(c.frequency);
  row.template_line = template_line_label(c.key.template_line);
  if (item.class_label == IssueClass::kTemplate) {
    const std::size_t count = choose_samples(c, options.samples_n, options.seed).size();
    for (std::size_t k = 0; k < count; ++k) {
      row.sample_paths.push_back(
          (fs::path(options.samples_dir) / sample_dir(c.key) / (std::to_string(k + 1) + ".txt")).generic_string());
    }
  }
  return row;
}

struct TaskSection {
  std::string task_id;
  std::size_t template_count = 0;
  std::vector<ClassifiedIssue> issues;  // report order
};

// Tasks ordered by Template-issue count descending, then task id.
inline std::vector<TaskSection> group_by_task(const std::vector<ClassifiedIssue>& classified) {
  std::map<std::string, TaskSection> sections;
  for (const ClassifiedIssue& item : sorted_for_report(classified)) {
    TaskSection& section = sections[item.candidate.key.task_id];
    section.task_id = item.candidate.key.task_id;
    if (item.class_label == IssueClass::kTemplate) ++section.template_count;
    section.issues.push_back(item);
  }
  std::vector<TaskSection> ordered;
  for (auto& [task, section] : sections) ordered.push_back(std::move(section));
  std::stable_sort(ordered.begin(), ordered.end(), [](const TaskSection& a, const TaskSection& b) {
    return a.template_count > b.template_count;
  });
  return ordered;
}

inline nlohmann::ordered_json render_report_json(const std::vector<ClassifiedIssue>& classified,
                                                 const IssueCatalog& catalog, const ReportOptions& options) {
  nlohmann::ordered_json tasks = nlohmann::ordered_json::array();
  for (const TaskSection& section : group_by_task(classified)) {
    nlohmann::ordered_json task;
    task["task_id"] = section.task_id;
    task["task_link"] = task_link(options.link_base, section.task_id);
    task["template_issue_count"] = section.template_count;
    nlohmann::ordered_json issues = nlohmann::ordered_json::array();
    for (const ClassifiedIssue& item : section.issues) {
      const FriendlyRow row = make_friendly_row(item, catalog, options);
      const CandidateIssue& c = item.candidate;
      nlohmann::ordered_json issue;
      issue["issue_type"] = row.issue_type;
      issue["description"] = row.description;
      issue["category"] = category_name(row.category);
      issue["issue_link"] = row.issue_link;
      issue["class"] = issue_class_name(row.class_label);
      issue["frequency"] = c.frequency;
      issue["frequency_text"] = row.frequency;
      if (c.key.template_line) {
        issue["template_line"] = *c.key.template_line;
      } else {
        issue["template_line"] = nullptr;
      }
      issue["supporting_series"] = c.supporting_series;
      issue["total_series"] = c.total_series;
      issue["sample_paths"] = row.sample_paths;
      issue["sample_submission_ids"] = c.sample_submission_ids;
      issue["supporting_submission_ids"] = c.supporting_submission_ids;
      issues.push_back(std::move(issue));
    }
    task["issues"] = std::move(issues);
    tasks.push_back(std::move(task));
  }
  nlohmann::ordered_json doc;
  doc["tasks"] = std::move(tasks);
  return doc;
}

// Inverse of render_report_json, in report order.
inline std::vector<ClassifiedIssue> parse_report_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.contains("tasks")) throw Error(ErrorCode::kMalformedRecord, "report JSON");
  std::vector<ClassifiedIssue> result;
  try {
    for (const auto& task : doc.at("tasks")) {
      const std::string task_id = task.at("task_id").get<std::string>();
      for (const auto& issue : task.at("issues")) {
        ClassifiedIssue item;
        CandidateIssue& c = item.candidate;
        c.key.task_id = task_id;
        c.key.issue_type = issue.at("issue_type").get<std::string>();
        if (!issue.at("template_line").is_null()) c.key.template_line = issue.at("template_line").get<std::size_t>();
        auto label = parse_issue_class(issue.at("class").get<std::string>());
        if (!label) throw Error(ErrorCode::kMalformedRecord, "report JSON: bad class");
        item.class_label = *label;
        c.frequency = issue.at("frequency").get<double>();
        c.supporting_series = issue.at("supporting_series").get<std::size_t>();
        c.total_series = issue.at("total_series").get<std::size_t>();
        c.sample_submission_ids = issue.at("sample_submission_ids").get<std::vector<std::string>>();
        c.supporting_submission_ids = issue.at("supporting_submission_ids").get<std::vector<std::string>>();
        result.push_back(std::move(item));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("report JSON: ") + e.what());
  }
  return result;
}

namespace detail {

inline std::string md_cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string render_report_markdown(const std::vector<ClassifiedIssue>& classified, const IssueCatalog& catalog,
                                          const ReportOptions& options) {
  std::ostringstream md;
  md << "# Template issue report\n";
  for (const TaskSection& section : group_by_task(classified)) {
    md << "\n## Task " << section.task_id << "\n\n";
    const std::string link = task_link(options.link_base, section.task_id);
    if (!link.empty()) md << "Link: <" << link << ">\n\n";
    md << "Template issues: " << section.template_count << "\n";
    std::optional<IssueClass> current;
    for (const ClassifiedIssue& item : section.issues) {
      if (current != item.class_label) {
        current = item.class_label;
        md << "\n### " << issue_class_name(item.class_label) << "\n\n"
           << "| Issue | Category | Frequency | Template line | Description | Samples |\n"
           << "|---|---|---|---|---|---|\n";
      }
      const FriendlyRow row = make_friendly_row(item, catalog, options);
      std::string issue = detail::md_cell(row.issue_type);
      if (!row.issue_link.empty()) issue = "[" + issue + "](" + row.issue_link + ")";
      std::string samples;
      for (std::size_t k = 0; k < row.sample_paths.size(); ++k) {
        if (k > 0) samples += ' ';
        samples += "[" + std::to_string(k + 1) + "](" + row.sample_paths[k] + ")";
      }
      md << "| " << issue << " | " << category_name(row.category) << " | " << row.frequency << " | "
         << row.template_line << " | " << detail::md_cell(row.description) << " | " << samples << " |\n";
    }
  }
  return md.str();
}

inline void write_text_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

// Writes the Markdown report and its JSON twin. Returns the issue types that
// were missing from the catalog and got a placeholder description.
inline std::vector<std::string> write_friendly_report(const std::vector<ClassifiedIssue>& classified,
                                                      const IssueCatalog& catalog, const ReportOptions& options,
                                                      const fs::path& markdown_path, const fs::path& json_path) {
  std::set<std::string> unknown;
  for (const ClassifiedIssue& item : classified) {
    if (!catalog.contains(item.candidate.key.issue_type)) unknown.insert(item.candidate.key.issue_type);
  }
  write_text_file(markdown_path, render_report_markdown(classified, catalog, options));
  write_text_file(json_path, render_report_json(classified, catalog, options).dump(2) + "\n");
  return {unknown.begin(), unknown.end()};
}

// ---------------------------------------------------------------------------
// Aggregates
// ---------------------------------------------------------------------------

/// Task-level statistics over Template-class issues.
struct AggregateStats {
  std::size_t tasks_total = 0;
  std::size_t tasks_with_template_issues = 0;
  double tasks_with_template_issues_fraction = 0.0;
  std::size_t template_issues = 0;
  std::size_t max_per_task = 0;
  std::map<std::string, std::size_t> per_task;
  std::map<std::string, std::size_t> by_type;
  std::map<std::string, std::size_t> by_category;
  // number of distinct Template issue types -> number of tasks
  std::map<std::size_t, std::size_t> distinct_types_breakdown;
  // all classes, not only Template
  std::map<std::string, std::size_t> by_class;
};

inline AggregateStats aggregate(const std::vector<ClassifiedIssue>& classified, const IssueCatalog& catalog,
                                std::size_t tasks_total) {
  AggregateStats stats;
  std::set<std::string> tasks_seen;
  std::map<std::string, std::set<std::string>> types_per_task;
  for (const ClassifiedIssue& item : classified) {
    const CandidateKey& key = item.candidate.key;
    tasks_seen.insert(key.task_id);
    ++stats.by_class[std::string(issue_class_name(item.class_label))];
    if (item.class_label != IssueClass::kTemplate) continue;
    ++stats.template_issues;
    ++stats.per_task[key.task_id];
    ++stats.by_type[key.issue_type];
    ++stats.by_category[std::string(category_name(catalog.resolve(key.issue_type).category))];
    types_per_task[key.task_id].insert(key.issue_type);
  }
  if (tasks_total < tasks_seen.size()) {
    throw Error(ErrorCode::kInvalidConfig, "tasks_total " + std::to_string(tasks_total) + " is below the " +
                                               std::to_string(tasks_seen.size()) + " tasks present");
  }
  stats.tasks_total = tasks_total;
  stats.tasks_with_template_issues = stats.per_task.size();
  stats.tasks_with_template_issues_fraction =
      tasks_total == 0 ? 0.0 : static_cast<double>(stats.per_task.size()) / static_cast<double>(tasks_total);
  for (const auto& [task, count] : stats.per_task) stats.max_per_task = std::max(stats.max_per_task, count);
  for (const auto& [task, types] : types_per_task) ++stats.distinct_types_breakdown[types.size()];
  return stats;
}

inline nlohmann::ordered_json aggregates_to_json(const AggregateStats& stats) {
  nlohmann::ordered_json doc;
  doc["tasks_total"] = stats.tasks_total;
  doc["tasks_with_template_issues"] = stats.tasks_with_template_issues;
  doc["tasks_with_template_issues_fraction"] = format_fixed(stats.tasks_with_template_issues_fraction, 3);
  doc["template_issues"] = stats.template_issues;
  doc["max_template_issues_per_task"] = stats.max_per_task;
  doc["per_task"] = stats.per_task;
  doc["by_type"] = stats.by_type;
  doc["by_category"] = stats.by_category;
  nlohmann::ordered_json breakdown = nlohmann::ordered_json::object();
  for (const auto& [types, tasks] : stats.distinct_types_breakdown) breakdown[std::to_string(types)] = tasks;
  doc["distinct_types_breakdown"] = std::move(breakdown);
  doc["by_class"] = stats.by_class;
  return doc;
}

}  // namespace template_lint

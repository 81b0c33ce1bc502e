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

// Loading, serializing and validating submission corpora.

#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "template_lint/error.hpp"
#include "template_lint/model.hpp"

namespace template_lint {

namespace fs = std::filesystem;

inline std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline bool is_whitespace_only(std::string_view text) {
  return text.find_first_not_of(" \t\r\n\v\f") == std::string_view::npos;
}

namespace detail {

inline std::string require_string(const nlohmann::json& record, const char* key,
                                  std::size_t line_no) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line_no) +
                                                 ": missing or non-string field '" + key + "'");
  }
  return it->get<std::string>();
}

struct PendingSubmission {
  Submission submission;
  bool has_attempt = false;
  std::size_t line_no = 0;
};

}  // namespace detail

// Parses a submissions JSONL stream. Records lacking attempt_index are given
// the smallest free indices of their (task, user) group in ascending
// (timestamp, submission_id) order. Blank lines are skipped.
inline std::vector<Submission> parse_submissions(std::istream& in) {
  std::vector<detail::PendingSubmission> pending;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (is_whitespace_only(text)) continue;
    nlohmann::json record = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object()) {
      throw Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line_no) + ": not a JSON object");
    }
    detail::PendingSubmission entry;
    entry.line_no = line_no;
    Submission& s = entry.submission;
    s.submission_id = detail::require_string(record, "submission_id", line_no);
    s.task_id = detail::require_string(record, "task_id", line_no);
    s.user_id = detail::require_string(record, "user_id", line_no);
    s.code = detail::require_string(record, "code", line_no);
    if (auto it = record.find("attempt_index"); it != record.end() && !it->is_null()) {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
        throw Error(ErrorCode::kMalformedRecord,
                    "line " + std::to_string(line_no) + ": attempt_index must be a non-negative integer");
      }
      s.attempt_index = it->get<std::size_t>();
      entry.has_attempt = true;
    }
    if (auto it = record.find("timestamp"); it != record.end() && !it->is_null()) {
      if (!it->is_number_integer()) {
        throw Error(ErrorCode::kMalformedRecord,
                    "line " + std::to_string(line_no) + ": timestamp must be an integer");
      }
      s.timestamp = it->get<std::int64_t>();
    }
    if (!entry.has_attempt && !s.timestamp) {
      throw Error(ErrorCode::kMissingOrder, "line " + std::to_string(line_no) + ": submission " +
                                                s.submission_id + " has neither attempt_index nor timestamp");
    }
    pending.push_back(std::move(entry));
  }

  // Explicit keys are checked in file order so the first repeat is reported.
  std::set<std::string> seen_ids;
  std::set<std::tuple<std::string, std::string, std::size_t>> seen_keys;
  for (const auto& entry : pending) {
    const Submission& s = entry.submission;
    if (!seen_ids.insert(s.submission_id).second) {
      throw Error(ErrorCode::kDuplicateKey, "line " + std::to_string(entry.line_no) +
                                                ": repeated submission_id " + s.submission_id);
    }
    if (entry.has_attempt &&
        !seen_keys.emplace(s.task_id, s.user_id, s.attempt_index).second) {
      throw Error(ErrorCode::kDuplicateKey,
                  "line " + std::to_string(entry.line_no) + ": repeated (task_id, user_id, attempt_index) = (" +
                      s.task_id + ", " + s.user_id + ", " + std::to_string(s.attempt_index) + ")");
    }
  }

  std::map<std::pair<std::string, std::string>, std::vector<detail::PendingSubmission*>> unordered;
  for (auto& entry : pending) {
    if (!entry.has_attempt) {
      unordered[{entry.submission.task_id, entry.submission.user_id}].push_back(&entry);
    }
  }
  for (auto& [group, members] : unordered) {
    std::sort(members.begin(), members.end(), [](const auto* a, const auto* b) {
      return std::tie(*a->submission.timestamp, a->submission.submission_id) <
             std::tie(*b->submission.timestamp, b->submission.submission_id);
    });
    std::size_t next = 0;
    for (auto* member : members) {
      while (seen_keys.contains({group.first, group.second, next})) ++next;
      member->submission.attempt_index = next++;
    }
  }

  std::vector<Submission> submissions;
  submissions.reserve(pending.size());
  for (auto& entry : pending) submissions.push_back(std::move(entry.submission));
  return submissions;
}

inline std::vector<Submission> load_submissions(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return parse_submissions(in);
}

inline void write_submissions(std::ostream& out, std::span<const Submission> submissions) {
  for (const Submission& s : submissions) {
    nlohmann::ordered_json record;
    record["submission_id"] = s.submission_id;
    record["task_id"] = s.task_id;
    record["user_id"] = s.user_id;
    record["attempt_index"] = s.attempt_index;
    if (s.timestamp) record["timestamp"] = *s.timestamp;
    record["code"] = s.code;
    out << record.dump() << '\n';
  }
}

namespace detail {

inline void add_template(std::map<std::string, Template>& templates, std::string task_id,
                         std::string code) {
  if (templates.contains(task_id)) throw Error(ErrorCode::kDuplicateTemplate, task_id);
  if (is_whitespace_only(code)) throw Error(ErrorCode::kEmptyTemplate, task_id);
  Template tmpl(task_id, std::move(code));
  templates.emplace(std::move(task_id), std::move(tmpl));
}

inline void load_templates_into(std::map<std::string, Template>& templates, const fs::path& path) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& item : fs::directory_iterator(path)) {
      if (item.is_regular_file() && item.path().extension() == ".txt") files.push_back(item.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) add_template(templates, file.stem().string(), read_text_file(file));
    return;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read templates from " + path.string());
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (is_whitespace_only(text)) continue;
    nlohmann::json record = nlohmann::json::parse(text, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw Error(ErrorCode::kMalformedRecord, path.string() + " line " + std::to_string(line_no));
    }
    add_template(templates, require_string(record, "task_id", line_no),
                 require_string(record, "code", line_no));
  }
}

}  // namespace detail

// Accepts a directory of <task_id>.txt files or a JSONL of {task_id, code}.
inline std::map<std::string, Template> load_templates(std::span<const fs::path> sources) {
  std::map<std::string, Template> templates;
  for (const auto& source : sources) detail::load_templates_into(templates, source);
  return templates;
}

inline std::map<std::string, Template> load_templates(const fs::path& source) {
  return load_templates(std::span<const fs::path>(&source, 1));
}

// Catalog JSON entries overlay the built-in baseline catalog.
inline IssueCatalog parse_catalog(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::kMalformedRecord, "catalog is not a JSON object");
  }
  IssueCatalog catalog = IssueCatalog::with_baseline_rules();
  for (const auto& [issue_type, value] : doc.items()) {
    if (!value.is_object()) throw Error(ErrorCode::kMalformedRecord, "catalog entry " + issue_type);
    CatalogEntry entry;
    std::string category = value.value("category", std::string("MinorIssues"));
    auto parsed = parse_category(category);
    if (!parsed) {
      throw Error(ErrorCode::kMalformedRecord,
                  "catalog entry " + issue_type + ": unknown category '" + category + "'");
    }
    entry.category = *parsed;
    entry.description = value.value("description", std::string());
    if (auto it = value.find("link_template"); it != value.end() && it->is_string()) {
      entry.link_template = it->get<std::string>();
    }
    catalog.add(issue_type, std::move(entry));
  }
  return catalog;
}

inline IssueCatalog load_catalog(const fs::path& path) { return parse_catalog(read_text_file(path)); }

enum class AnomalyKind { kMissingTemplate, kEmptyCode, kUnknownIssueType };

inline std::string_view anomaly_kind_name(AnomalyKind kind) {
  switch (kind) {
    case AnomalyKind::kMissingTemplate: return "MissingTemplate";
    case AnomalyKind::kEmptyCode: return "EmptyCode";
    case AnomalyKind::kUnknownIssueType: return "UnknownIssueType";
  }
  return "Unknown";
}

struct Anomaly {
  AnomalyKind kind;
  std::string subject;  // task id, submission id or issue type

  friend bool operator==(const Anomaly&, const Anomaly&) = default;
};

struct ValidationReport {
  std::size_t tasks = 0;
  std::size_t users = 0;
  std::size_t series = 0;
  std::size_t submissions = 0;
  std::map<std::string, std::size_t> series_per_task;
  std::vector<Anomaly> anomalies;
};

inline ValidationReport validate_corpus(const SubmissionCorpus& corpus) {
  ValidationReport report;
  std::set<std::string> users;
  std::set<std::pair<std::string, std::string>> series;
  for (const Submission& s : corpus.submissions) {
    users.insert(s.user_id);
    if (series.emplace(s.task_id, s.user_id).second) ++report.series_per_task[s.task_id];
    if (is_whitespace_only(s.code)) report.anomalies.push_back({AnomalyKind::kEmptyCode, s.submission_id});
  }
  for (const auto& [task_id, count] : report.series_per_task) {
    if (!corpus.templates.contains(task_id)) {
      report.anomalies.push_back({AnomalyKind::kMissingTemplate, task_id});
    }
  }
  report.tasks = report.series_per_task.size();
  report.users = users.size();
  report.series = series.size();
  report.submissions = corpus.submissions.size();
  return report;
}

inline void print_validation_report(std::ostream& out, const ValidationReport& report) {
  out << "tasks: " << report.tasks << "\nusers: " << report.users << "\nseries: " << report.series
      << "\nsubmissions: " << report.submissions << '\n';
  for (const auto& [task_id, count] : report.series_per_task) {
    out << "  " << task_id << ": " << count << " series\n";
  }
  out << "anomalies: " << report.anomalies.size() << '\n';
  for (const Anomaly& anomaly : report.anomalies) {
    out << "  " << anomaly_kind_name(anomaly.kind) << '(' << anomaly.subject << ")\n";
  }
}

}  // namespace template_lint

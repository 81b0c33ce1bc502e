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

// Subcommand bodies shared by the CLI and the tests. Each returns the
// process exit code: 0 ok, 1 runtime failure, 2 configuration error.

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "template_lint/config.hpp"
#include "template_lint/corpus.hpp"
#include "template_lint/error.hpp"
#include "template_lint/pipeline.hpp"
#include "template_lint/provider.hpp"
#include "template_lint/reporter.hpp"
#include "template_lint/scoring.hpp"
#include "template_lint/synth.hpp"

namespace template_lint {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

inline int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::kInvalidConfig ? kExitConfig : kExitRuntime;
}

inline SubmissionCorpus load_corpus(const RunConfig& config) {
  SubmissionCorpus corpus;
  corpus.submissions = load_submissions(*config.submissions_path);
  corpus.templates = load_templates(*config.templates_path);
  corpus.catalog = config.catalog_path ? load_catalog(*config.catalog_path) : IssueCatalog::with_baseline_rules();
  return corpus;
}

inline void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

struct AnalyzeOutcome {
  std::size_t tasks = 0;
  std::size_t series = 0;
  std::size_t template_issues = 0;
  std::size_t common_typical = 0;
  std::size_t rare_typical = 0;
};

// load -> provide -> group -> persistent -> localize -> candidates ->
// classify -> report. Writes raw.csv, report.md, report.json,
// aggregates.json and samples/ under config.out_dir.
inline AnalyzeOutcome analyze_to_directory(RunConfig config, std::ostream& log) {
  validate_run_config(config);
  const std::uint64_t seed = resolve_seed(config);
  SubmissionCorpus corpus = load_corpus(config);

  const ValidationReport validation = validate_corpus(corpus);
  std::string missing;
  for (const Anomaly& anomaly : validation.anomalies) {
    if (anomaly.kind == AnomalyKind::kMissingTemplate) {
      missing += (missing.empty() ? "" : ", ") + anomaly.subject;
    } else {
      log << "warning: " << anomaly_kind_name(anomaly.kind) << '(' << anomaly.subject << ")\n";
    }
  }
  if (!missing.empty()) throw Error(ErrorCode::kMissingTemplate, missing);

  ProviderConfig provider{config.provider, config.external_issues_path.value_or(fs::path()), config.ruleset};
  const IssueMap issues = provide(corpus, provider);
  for (const std::string& type : register_unknown_types(corpus.catalog, issues)) {
    log << "warning: issue type " << type << " is not in the catalog; registered as MinorIssues\n";
  }

  AnalysisOptions options{config.thresholds, CandidateOptions{config.samples_n, seed}};
  const AnalysisResult result = analyze(corpus, issues, options);

  ensure_directory(config.out_dir);
  write_raw_csv(result.classified, config.out_dir / "raw.csv");
  ReportOptions report{config.link_base, config.samples_n, seed, "samples"};
  write_friendly_report(result.classified, corpus.catalog, report, config.out_dir / "report.md",
                        config.out_dir / "report.json");
  const AggregateStats stats = aggregate(result.classified, corpus.catalog, result.tasks);
  write_text_file(config.out_dir / "aggregates.json", aggregates_to_json(stats).dump(2) + "\n");
  const fs::path samples = config.out_dir / "samples";
  std::error_code ec;
  fs::remove_all(samples, ec);
  ensure_directory(samples);
  export_samples(result.classified, corpus, samples, config.samples_n, seed);

  AnalyzeOutcome outcome;
  outcome.tasks = result.tasks;
  outcome.series = result.series.size();
  for (const ClassifiedIssue& item : result.classified) {
    switch (item.class_label) {
      case IssueClass::kTemplate: ++outcome.template_issues; break;
      case IssueClass::kCommonTypical: ++outcome.common_typical; break;
      case IssueClass::kRareTypical: ++outcome.rare_typical; break;
    }
  }
  return outcome;
}

inline int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const AnalyzeOutcome outcome = analyze_to_directory(config, err);
    out << "analyzed " << outcome.tasks << " tasks (" << outcome.series << " series): " << outcome.template_issues
        << " Template issues, " << outcome.common_typical << " CommonTypical, " << outcome.rare_typical
        << " RareTypical\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

inline int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_run_config(config, /*require_outputs=*/false);
    const SubmissionCorpus corpus = load_corpus(config);
    print_validation_report(out, validate_corpus(corpus));
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

struct ReportConfig {
  fs::path raw_csv;
  std::optional<fs::path> catalog_path;
  std::optional<std::string> link_base;
  std::optional<std::size_t> tasks_total;
  fs::path out_dir = "template-lint-out";
};

// Re-renders the friendly report and aggregates from an existing raw CSV.
inline int cmd_report(const ReportConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<ClassifiedIssue> classified = load_raw_csv(config.raw_csv);
    const IssueCatalog catalog = config.catalog_path ? load_catalog(*config.catalog_path) : IssueCatalog::with_baseline_rules();
    ensure_directory(config.out_dir);
    ReportOptions options{config.link_base, 5, 0, "samples"};
    for (const std::string& type : write_friendly_report(classified, catalog, options, config.out_dir / "report.md",
                                                         config.out_dir / "report.json")) {
      err << "warning: issue type " << type << " is not in the catalog\n";
    }
    std::set<std::string> tasks;
    for (const ClassifiedIssue& item : classified) tasks.insert(item.candidate.key.task_id);
    const AggregateStats stats = aggregate(classified, catalog, config.tasks_total.value_or(tasks.size()));
    write_text_file(config.out_dir / "aggregates.json", aggregates_to_json(stats).dump(2) + "\n");
    out << "rendered " << classified.size() << " rows for " << tasks.size() << " tasks\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

struct EvalConfig {
  fs::path spec_path;
  std::optional<fs::path> grid_path;
  fs::path out_dir = "template-lint-eval";
  bool match_none_by_type = false;
  std::optional<std::uint64_t> seed;  // overrides the spec seed
};

inline int cmd_eval(const EvalConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const nlohmann::json spec_doc = load_structured_file(config.spec_path);
    SynthSpec spec = synth_spec_from_json(spec_doc);
    if (config.seed) spec.seed = *config.seed;
    const bool lenient = config.match_none_by_type || spec_doc.value("match_none_by_type", false);
    std::vector<Thresholds> grid{Thresholds{}};
    if (config.grid_path) grid = threshold_grid_from_json(load_structured_file(*config.grid_path));
    for (const Thresholds& point : grid) {
      try {
        point.validate();
      } catch (const Error& e) {
        throw Error(ErrorCode::kInvalidConfig, std::string("grid: ") + e.what());
      }
    }
    const std::vector<SweepRow> rows = sweep(spec, grid, lenient);
    ensure_directory(config.out_dir);
    const fs::path csv = config.out_dir / (config.grid_path ? "sweep.csv" : "score.csv");
    std::ofstream file(csv, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + csv.string());
    write_sweep_csv(rows, file);
    write_sweep_csv(rows, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

// Writes submissions.jsonl, templates/<task>.txt, truth.csv and a run.toml
// pointing at them.
inline void write_synthetic_corpus(const SyntheticCorpus& synthetic, const fs::path& dir) {
  ensure_directory(dir / "templates");
  {
    std::ofstream out(dir / "submissions.jsonl", std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + (dir / "submissions.jsonl").string());
    write_submissions(out, synthetic.corpus.submissions);
  }
  for (const auto& [task_id, tmpl] : synthetic.corpus.templates) {
    write_text_file(dir / "templates" / (task_id + ".txt"), tmpl.code);
  }
  std::string truth = "task_id,issue_type,template_line\n";
  for (const TruthEntry& entry : synthetic.truth.entries) {
    truth += entry.task_id + "," + entry.issue_type + "," + std::to_string(entry.line) + "\n";
  }
  write_text_file(dir / "truth.csv", truth);
  write_text_file(dir / "run.toml",
                  "submissions = \"submissions.jsonl\"\ntemplates = \"templates\"\nout_dir = \"out\"\n");
}

inline int cmd_generate(const fs::path& spec_path, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  try {
    const SyntheticCorpus synthetic = generate(synth_spec_from_json(load_structured_file(spec_path)));
    write_synthetic_corpus(synthetic, out_dir);
    out << "generated " << synthetic.counts.tasks << " tasks, " << synthetic.counts.users << " users, "
        << synthetic.counts.series << " series, " << synthetic.counts.submissions << " submissions, "
        << synthetic.truth.entries.size() << " planted template issues\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace template_lint

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

// template-lint: find code-quality issues that come from task templates.
//
//   template-lint analyze  --config run.toml [flags]
//   template-lint validate --config run.toml
//   template-lint report   --raw out/raw.csv [--catalog c.json] [--link-base URL]
//   template-lint eval     --spec synth.toml [--grid grid.toml]
//   template-lint generate --spec synth.toml --out-dir corpus/

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "template_lint/commands.hpp"

namespace tl = template_lint;

namespace {

struct RunFlags {
  std::optional<std::string> config;
  tl::RunOverrides overrides;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags, bool outputs) {
  cmd->add_option("--config", flags.config, "Run configuration (TOML or JSON)");
  cmd->add_option("--submissions", flags.overrides.submissions_path, "Submissions JSONL");
  cmd->add_option("--templates", flags.overrides.templates_path, "Template directory or JSONL");
  cmd->add_option("--catalog", flags.overrides.catalog_path, "Issue catalog JSON");
  cmd->add_option("--provider", flags.overrides.provider, "baseline | external | external+fallback");
  cmd->add_option("--external-issues", flags.overrides.external_issues_path, "External issue report JSONL");
  if (!outputs) return;
  cmd->add_option("--min-frequency", flags.overrides.min_frequency, "Drop candidates below this frequency");
  cmd->add_option("--common-threshold", flags.overrides.common_threshold, "Lower bound of CommonTypical");
  cmd->add_option("--template-threshold", flags.overrides.template_threshold, "Template class above this frequency");
  cmd->add_option("--rules", flags.overrides.rules, "Enabled baseline rules")->delimiter(',');
  cmd->add_option("--magic-allowlist", flags.overrides.magic_allowlist, "Integers exempt from MagicNumber")
      ->delimiter(',');
  cmd->add_option("--max-line-length", flags.overrides.max_line_length, "LineLength limit");
  cmd->add_option("--indent-unit", flags.overrides.indent_unit, "Indentation unit");
  cmd->add_option("--out-dir", flags.overrides.out_dir, "Output directory");
  cmd->add_option("--seed", flags.overrides.seed, "Sampling seed (default: TEMPLATE_LINT_SEED or 0)");
  cmd->add_option("--samples", flags.overrides.samples_n, "Sample solutions per Template issue");
  cmd->add_option("--link-base", flags.overrides.link_base, "Task link prefix");
}

std::optional<tl::RunConfig> resolve_run_config(const RunFlags& flags) {
  try {
    tl::RunConfig config = flags.config ? tl::load_run_config(*flags.config) : tl::RunConfig{};
    tl::apply_overrides(config, flags.overrides);
    return config;
  } catch (const tl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect code-quality issues originating in programming task templates"};
  app.require_subcommand(1);

  RunFlags analyze_flags;
  CLI::App* analyze = app.add_subcommand("analyze", "Run the detection pipeline and write reports");
  add_run_flags(analyze, analyze_flags, true);

  RunFlags validate_flags;
  CLI::App* validate = app.add_subcommand("validate", "Check a corpus and print counts and anomalies");
  add_run_flags(validate, validate_flags, false);

  tl::ReportConfig report_config;
  CLI::App* report = app.add_subcommand("report", "Render the friendly report from a raw CSV");
  report->add_option("--raw", report_config.raw_csv, "Raw CSV written by analyze")->required();
  report->add_option("--catalog", report_config.catalog_path, "Issue catalog JSON");
  report->add_option("--link-base", report_config.link_base, "Task link prefix");
  report->add_option("--tasks-total", report_config.tasks_total, "Number of analyzed tasks");
  report->add_option("--out-dir", report_config.out_dir, "Output directory");

  tl::EvalConfig eval_config;
  CLI::App* eval = app.add_subcommand("eval", "Score the detector on a synthetic corpus");
  eval->add_option("--spec", eval_config.spec_path, "Synthetic corpus spec (TOML or JSON)")->required();
  eval->add_option("--grid", eval_config.grid_path, "Threshold grid (TOML or JSON)");
  eval->add_option("--out-dir", eval_config.out_dir, "Output directory");
  eval->add_option("--seed", eval_config.seed, "Override the spec seed");
  eval->add_flag("--lenient-none", eval_config.match_none_by_type,
                 "Count None-position predictions as hits for any line of the same type");

  std::string generate_spec;
  std::string generate_out = "synthetic-corpus";
  CLI::App* generate = app.add_subcommand("generate", "Write a synthetic corpus with its ground truth");
  generate->add_option("--spec", generate_spec, "Synthetic corpus spec (TOML or JSON)")->required();
  generate->add_option("--out-dir", generate_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tl::kExitConfig;
  }

  if (analyze->parsed()) {
    auto config = resolve_run_config(analyze_flags);
    return config ? tl::cmd_analyze(*config, std::cout, std::cerr) : tl::kExitConfig;
  }
  if (validate->parsed()) {
    auto config = resolve_run_config(validate_flags);
    return config ? tl::cmd_validate(*config, std::cout, std::cerr) : tl::kExitConfig;
  }
  if (report->parsed()) return tl::cmd_report(report_config, std::cout, std::cerr);
  if (eval->parsed()) return tl::cmd_eval(eval_config, std::cout, std::cerr);
  return tl::cmd_generate(generate_spec, generate_out, std::cout, std::cerr);
}

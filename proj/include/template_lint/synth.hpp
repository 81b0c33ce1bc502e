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

// Synthetic corpora with planted template issues.
//
// A task template is a sequence of clean filler lines with planted lines
// that each trigger exactly one baseline rule. A planted line may be
// "hidden": wrapped in a block comment that every student removes, so the
// issue is invisible when the template itself is linted. Students copy the
// visible template, insert their own uniquely named lines, optionally
// introduce their own issues and fix them over later attempts.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "template_lint/baseline.hpp"
#include "template_lint/error.hpp"
#include "template_lint/model.hpp"
#include "template_lint/sampling.hpp"

namespace template_lint {

struct PlantedIssue {
  std::string issue_type;
  std::size_t line = 1;              // 1-based template line
  std::optional<std::size_t> task;   // 0-based task index; every task when unset
  bool hidden = false;

  friend bool operator==(const PlantedIssue&, const PlantedIssue&) = default;
};

struct SynthSpec {
  std::size_t n_tasks = 4;
  std::size_t users_per_task = 20;
  std::size_t template_lines_min = 12;
  std::size_t template_lines_max = 20;
  std::vector<PlantedIssue> planted;
  std::size_t random_planted_min = 0;
  std::size_t random_planted_max = 0;
  double student_issue_rate = 0.0;
  double fix_probability = 0.5;
  std::size_t attempts_min = 1;
  std::size_t attempts_max = 3;
  double template_keep_probability = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    auto probability = [](double p, const char* name) {
      if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInfeasibleSpec, std::string(name) + " must be in [0, 1]");
    };
    probability(student_issue_rate, "student_issue_rate");
    probability(fix_probability, "fix_probability");
    probability(template_keep_probability, "template_keep_probability");
    if (template_lines_min < 1 || template_lines_min > template_lines_max) {
      throw Error(ErrorCode::kInfeasibleSpec, "template_lines range is empty");
    }
    if (attempts_min < 1 || attempts_min > attempts_max) {
      throw Error(ErrorCode::kInfeasibleSpec, "attempts range is empty");
    }
    if (random_planted_min > random_planted_max) {
      throw Error(ErrorCode::kInfeasibleSpec, "random_planted range is empty");
    }
    for (const PlantedIssue& p : planted) {
      if (!is_baseline_rule(p.issue_type)) {
        throw Error(ErrorCode::kInfeasibleSpec, "issue type " + p.issue_type + " cannot be expressed by the baseline rules");
      }
      if (p.line < 1) throw Error(ErrorCode::kInfeasibleSpec, "planted line must be >= 1");
      if (p.task && *p.task >= n_tasks) {
        throw Error(ErrorCode::kInfeasibleSpec, "planted task index " + std::to_string(*p.task) + " out of range");
      }
      if (p.hidden && p.issue_type != kMagicNumber && p.issue_type != kWhitespaceAround &&
          p.issue_type != kTooManyArguments) {
        throw Error(ErrorCode::kInfeasibleSpec, p.issue_type + " cannot be hidden in a comment");
      }
    }
  }
};

struct TruthEntry {
  std::string task_id;
  std::string issue_type;
  std::size_t line = 0;

  friend auto operator<=>(const TruthEntry&, const TruthEntry&) = default;
};

struct GroundTruth {
  std::set<std::string> tasks;
  std::set<TruthEntry> entries;
};

struct GeneratorCounts {
  std::size_t tasks = 0;
  std::size_t users = 0;
  std::size_t series = 0;
  std::size_t submissions = 0;
  std::map<std::pair<std::string, std::string>, std::size_t> series_sizes;
};

struct SyntheticCorpus {
  SubmissionCorpus corpus;
  GroundTruth truth;
  GeneratorCounts counts;
};

inline std::string synth_task_id(std::size_t task) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "task_%03zu", task);
  return buffer;
}

inline std::string synth_user_id(std::size_t user) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "user_%04zu", user);
  return buffer;
}

namespace synth_detail {

inline constexpr std::size_t kLongLine = 140;

// Line text exhibiting (or, when fixed, not exhibiting) an issue of the
// given type. `stem` makes the line unique.
inline std::string issue_line(std::string_view type, const std::string& stem, bool fixed) {
  if (type == kMagicNumber) {
    return "    int limit_" + stem + (fixed ? " = LIMIT;" : " = 42;");
  }
  if (type == kWhitespaceAround) {
    return fixed ? "    int sum_" + stem + " = left_" + stem + " + right_" + stem + ";"
                 : "    int sum_" + stem + "=left_" + stem + "+right_" + stem + ";";
  }
  if (type == kIndentation) {
    return (fixed ? "    " : "      ") + std::string("int pad_") + stem + " = base_" + stem + ";";
  }
  if (type == kLineLength) {
    if (fixed) return "    String text_" + stem + " = TEXT;";
    std::string line = "    String text_" + stem + " = \"";
    line.append(kLongLine > line.size() + 2 ? kLongLine - line.size() - 2 : 1, 'x');
    return line + "\";";
  }
  if (type == kEmptyLineSeparator) {
    return "import lib.pkg_" + stem + ";";
  }
  if (type == kTooManyArguments) {
    return fixed ? "    configure(options_" + stem + ");"
                 : "    configure(a_" + stem + ", b, c, d, e, f, g);";
  }
  throw Error(ErrorCode::kInfeasibleSpec, "issue type " + std::string(type) + " cannot be synthesized");
}

inline std::string filler_line(const std::string& stem) {
  return "    value_" + stem + " = step(value_" + stem + ");";
}

enum class Role { kFiller, kPlanted, kCommentOpen, kCommentClose };

struct Slot {
  Role role = Role::kFiller;
  std::size_t plant = 0;  // index into the task's plant list
};

struct StudentLine {
  std::size_t after_visible = 0;  // inserted after this many visible template lines
  std::optional<std::string> issue_type;
  std::string stem;
  std::size_t fixed_from = 0;  // first attempt showing the fixed version; SIZE_MAX = never
};

inline void place(std::vector<Slot>& slots, const PlantedIssue& p, std::size_t index, const std::string& task_id) {
  auto claim = [&](std::size_t line, Role role) {
    if (line < 1 || line > slots.size() || slots[line - 1].role != Role::kFiller) {
      throw Error(ErrorCode::kInfeasibleSpec, task_id + ": planted " + p.issue_type + " at line " +
                                                  std::to_string(p.line) + " conflicts with the template layout");
    }
    slots[line - 1] = {role, index};
  };
  claim(p.line, Role::kPlanted);
  if (p.hidden) {
    claim(p.line - 1, Role::kCommentOpen);
    claim(p.line + 1, Role::kCommentClose);
  }
}

// Used for random plants: the claimed lines must be free, a planted import
// needs a free line below it, and nothing may sit directly below an import.
inline bool can_place(const std::vector<Slot>& slots, const std::vector<PlantedIssue>& plants,
                      const PlantedIssue& p) {
  auto free = [&](std::size_t line) { return line >= 1 && line <= slots.size() && slots[line - 1].role == Role::kFiller; };
  auto below_import = [&](std::size_t line) {
    if (line < 2) return false;
    const Slot& above = slots[line - 2];
    return above.role == Role::kPlanted && plants[above.plant].issue_type == kEmptyLineSeparator;
  };
  if (!free(p.line) || below_import(p.line)) return false;
  if (p.hidden && (!free(p.line - 1) || !free(p.line + 1) || below_import(p.line - 1))) return false;
  if (p.issue_type == kEmptyLineSeparator && !free(p.line + 1)) return false;
  return true;
}

}  // namespace synth_detail

inline SyntheticCorpus generate(const SynthSpec& spec) {
  using namespace synth_detail;
  spec.validate();
  SyntheticCorpus out;
  out.corpus.catalog = IssueCatalog::with_baseline_rules();
  std::set<std::string> users;

  for (std::size_t t = 0; t < spec.n_tasks; ++t) {
    const std::string task_id = synth_task_id(t);
    std::mt19937_64 rng(mix_seed(spec.seed, task_id));
    out.truth.tasks.insert(task_id);

    std::vector<PlantedIssue> plants;
    std::size_t needed = 0;
    for (const PlantedIssue& p : spec.planted) {
      if (p.task && *p.task != t) continue;
      plants.push_back(p);
      std::size_t reach = p.line + (p.hidden || p.issue_type == kEmptyLineSeparator ? 1 : 0);
      needed = std::max(needed, reach);
    }
    const std::size_t lo = std::max(spec.template_lines_min, needed);
    if (lo > spec.template_lines_max) {
      throw Error(ErrorCode::kInfeasibleSpec, task_id + ": planted lines do not fit in template_lines range");
    }
    const std::size_t length = uniform_between(rng, lo, spec.template_lines_max);

    std::vector<Slot> slots(length);
    for (std::size_t i = 0; i < plants.size(); ++i) {
      place(slots, plants[i], i, task_id);
    }
    const std::size_t extra = uniform_between(rng, spec.random_planted_min, spec.random_planted_max);
    for (std::size_t k = 0; k < extra; ++k) {
      bool placed = false;
      for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
        PlantedIssue p;
        p.issue_type = baseline_rule_ids()[uniform_below(rng, baseline_rule_ids().size())];
        p.line = uniform_between(rng, 1, length);
        p.task = t;
        if (can_place(slots, plants, p)) {
          plants.push_back(p);
          place(slots, p, plants.size() - 1, task_id);
          placed = true;
        }
      }
      if (!placed) throw Error(ErrorCode::kInfeasibleSpec, task_id + ": no room for random planted issues");
    }
    // Every planted import needs a filler right below it.
    for (std::size_t i = 0; i < length; ++i) {
      if (slots[i].role == Role::kPlanted && plants[slots[i].plant].issue_type == kEmptyLineSeparator &&
          (i + 1 >= length || slots[i + 1].role != Role::kFiller)) {
        throw Error(ErrorCode::kInfeasibleSpec, task_id + ": planted EmptyLineSeparator at line " +
                                                    std::to_string(i + 1) + " must be followed by a code line");
      }
    }

    std::vector<std::string> template_lines;
    std::vector<std::size_t> visible;  // template line indices students keep
    for (std::size_t i = 0; i < length; ++i) {
      const std::string stem = "t" + std::to_string(t) + "_" + std::to_string(i + 1);
      switch (slots[i].role) {
        case Role::kFiller: template_lines.push_back(filler_line(stem)); break;
        case Role::kPlanted: template_lines.push_back(issue_line(plants[slots[i].plant].issue_type, stem, false)); break;
        case Role::kCommentOpen: template_lines.push_back("    /*"); break;
        case Role::kCommentClose: template_lines.push_back("    */"); break;
      }
      if (slots[i].role != Role::kCommentOpen && slots[i].role != Role::kCommentClose) visible.push_back(i);
    }
    std::string template_code;
    for (const std::string& line : template_lines) template_code += line + "\n";
    out.corpus.templates.emplace(task_id, Template(task_id, template_code));
    for (const PlantedIssue& p : plants) out.truth.entries.insert({task_id, p.issue_type, p.line});

    // Student insertion points: after k visible lines, never directly below
    // a planted import.
    std::vector<std::size_t> insertion_points;
    for (std::size_t k = 0; k <= visible.size(); ++k) {
      if (k > 0) {
        const Slot& above = slots[visible[k - 1]];
        if (above.role == Role::kPlanted && plants[above.plant].issue_type == kEmptyLineSeparator) continue;
      }
      insertion_points.push_back(k);
    }

    for (std::size_t u = 0; u < spec.users_per_task; ++u) {
      const std::string user_id = synth_user_id(u);
      users.insert(user_id);
      const std::size_t attempts = uniform_between(rng, spec.attempts_min, spec.attempts_max);
      constexpr std::size_t kNever = static_cast<std::size_t>(-1);

      // Attempt from which each planted issue shows its fixed version.
      std::vector<std::size_t> plant_fixed_from(plants.size(), kNever);
      for (std::size_t i = 0; i < plants.size(); ++i) {
        if (!bernoulli(rng, spec.template_keep_probability)) {
          plant_fixed_from[i] = uniform_below(rng, attempts);
        }
      }

      std::vector<StudentLine> student;
      const std::size_t clean = uniform_between(rng, 2, 4);
      std::size_t serial = 0;
      auto stem_for = [&] { return "u" + std::to_string(u) + "_" + std::to_string(++serial); };
      for (std::size_t k = 0; k < clean; ++k) {
        student.push_back({insertion_points[uniform_below(rng, insertion_points.size())], std::nullopt, stem_for(), kNever});
      }
      for (const std::string& rule : baseline_rule_ids()) {
        if (!bernoulli(rng, spec.student_issue_rate)) continue;
        std::size_t fixed_from = kNever;
        for (std::size_t a = 1; a < attempts; ++a) {
          if (bernoulli(rng, spec.fix_probability)) {
            fixed_from = a;
            break;
          }
        }
        student.push_back({insertion_points[uniform_below(rng, insertion_points.size())], rule, stem_for(), fixed_from});
      }
      std::stable_sort(student.begin(), student.end(),
                       [](const StudentLine& a, const StudentLine& b) { return a.after_visible < b.after_visible; });

      for (std::size_t a = 0; a < attempts; ++a) {
        std::vector<std::string> lines;
        auto emit_student = [&](std::size_t after) {
          for (const StudentLine& s : student) {
            if (s.after_visible != after) continue;
            if (!s.issue_type) {
              lines.push_back("    result_" + s.stem + " = solve(result_" + s.stem + ");");
              continue;
            }
            const bool fixed = a >= s.fixed_from;
            lines.push_back(issue_line(*s.issue_type, s.stem, fixed));
            if (*s.issue_type == kEmptyLineSeparator) {
              if (fixed) lines.emplace_back();
              lines.push_back("    result_" + s.stem + " = solve(result_" + s.stem + ");");
            }
          }
        };
        emit_student(0);
        for (std::size_t k = 0; k < visible.size(); ++k) {
          const std::size_t i = visible[k];
          const std::string stem = "t" + std::to_string(t) + "_" + std::to_string(i + 1);
          if (slots[i].role == Role::kPlanted) {
            const std::size_t plant = slots[i].plant;
            const bool fixed = a >= plant_fixed_from[plant];
            lines.push_back(issue_line(plants[plant].issue_type, stem, fixed));
            if (fixed && plants[plant].issue_type == kEmptyLineSeparator) lines.emplace_back();
          } else {
            lines.push_back(template_lines[i]);
          }
          emit_student(k + 1);
        }
        Submission s;
        s.submission_id = task_id + "_" + user_id + "_a" + std::to_string(a);
        s.task_id = task_id;
        s.user_id = user_id;
        s.attempt_index = a;
        s.timestamp = static_cast<std::int64_t>(1'600'000'000 + t * 1'000'000 + u * 100 + a);
        for (const std::string& line : lines) s.code += line + "\n";
        out.corpus.submissions.push_back(std::move(s));
      }
      out.counts.series_sizes[{task_id, user_id}] = attempts;
      out.counts.submissions += attempts;
      ++out.counts.series;
    }
  }
  out.counts.tasks = spec.n_tasks;
  out.counts.users = users.size();
  return out;
}

}  // namespace template_lint

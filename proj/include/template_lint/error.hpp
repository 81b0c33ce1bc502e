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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace template_lint {

enum class ErrorCode {
  kMalformedRecord,
  kDuplicateKey,
  kMissingOrder,
  kDuplicateTemplate,
  kEmptyTemplate,
  kMissingTemplate,
  kUnknownSubmission,
  kLineOutOfRange,
  kMissingProviderEntry,
  kNoSeriesForTask,
  kInvalidThresholds,
  kInfeasibleSpec,
  kTaskMismatch,
  kInvalidConfig,
  kIo,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kMissingOrder: return "MissingOrder";
    case ErrorCode::kDuplicateTemplate: return "DuplicateTemplate";
    case ErrorCode::kEmptyTemplate: return "EmptyTemplate";
    case ErrorCode::kMissingTemplate: return "MissingTemplate";
    case ErrorCode::kUnknownSubmission: return "UnknownSubmission";
    case ErrorCode::kLineOutOfRange: return "LineOutOfRange";
    case ErrorCode::kMissingProviderEntry: return "MissingProviderEntry";
    case ErrorCode::kNoSeriesForTask: return "NoSeriesForTask";
    case ErrorCode::kInvalidThresholds: return "InvalidThresholds";
    case ErrorCode::kInfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::kTaskMismatch: return "TaskMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

// All library failures are reported through this exception. The message is
// prefixed with the error name, e.g. "DuplicateKey: ...".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace template_lint

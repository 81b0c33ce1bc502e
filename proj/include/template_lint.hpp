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

// Umbrella header.

#pragma once

#include "template_lint/baseline.hpp"
#include "template_lint/classifier.hpp"
#include "template_lint/corpus.hpp"
#include "template_lint/error.hpp"
#include "template_lint/matcher.hpp"
#include "template_lint/model.hpp"
#include "template_lint/pipeline.hpp"
#include "template_lint/provider.hpp"
#include "template_lint/reporter.hpp"
#include "template_lint/sampling.hpp"
#include "template_lint/scoring.hpp"
#include "template_lint/series.hpp"
#include "template_lint/synth.hpp"
#include "template_lint/commands.hpp"

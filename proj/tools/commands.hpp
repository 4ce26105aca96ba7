// Copyright 2026 The Frame Lab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The analyze, search, simulate and examples commands. Each returns a report document
// and an exit code; run_cli wires them to argv.

#ifndef FRAME_LAB_TOOLS_COMMANDS_HPP_
#define FRAME_LAB_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "frame_file.hpp"
#include "frame_lab/dual_search.hpp"
#include "report.hpp"

namespace frame_lab::cli {

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitInput = 2, kExitNumeric = 3 };

/// Which measure kinds a command covers.
struct MeasureSelection {
  bool spectral = true;
  bool norm = true;
};

MeasureSelection measure_selection_from_string(const std::string& s);

struct AnalyzeOptions {
  std::vector<Index> m = {1, 2};
  MeasureSelection measures;
  double tolerance = tolerance::kCertificate;
  SearchOptions search;
};

struct SearchCommandOptions {
  MeasureSelection measures;
  SearchOptions search;
  /// Largest canonical-minus-best gap still counted as optimal.
  double gap_tolerance = 1e-6;
};

struct SimulateOptions {
  std::vector<Index> m = {1};
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  int bins = 20;
};

struct CommandOutput {
  Json report;
  int exit_code = kExitOk;
  std::vector<std::string> messages;  // human-readable lines for stderr
};

CommandOutput cmd_analyze(const ResolvedInput& input, const AnalyzeOptions& options = {});
CommandOutput cmd_search(const ResolvedInput& input, const SearchCommandOptions& options = {});
CommandOutput cmd_simulate(const ResolvedInput& input, const SimulateOptions& options = {});

enum class Relation { kEqual, kAtMost, kAtLeast };

const char* to_string(Relation r);

struct ExampleCheck {
  std::string example;
  std::string name;
  Relation relation = Relation::kEqual;
  double expected = 0;
  double tolerance = 1e-9;
  double actual = 0;

  bool passed() const;
};

/// Expected values of the two built-in reference frames, with the computed values filled in.
std::vector<ExampleCheck> reference_example_table();

/// Prints the pass/fail table; exit 1 if any check fails.
CommandOutput run_examples(const std::vector<ExampleCheck>& table);
CommandOutput cmd_examples();

/// Full command line front end. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frame_lab::cli

#endif  // FRAME_LAB_TOOLS_COMMANDS_HPP_

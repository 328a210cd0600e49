// Copyright 2026 The Dichotomy Authors.
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

// Subcommand bodies for the `dichotomy` tool. Each writes its document to
// `out`, diagnostics to `err`, and returns the process exit code.

#ifndef DICHOTOMY_TOOLS_COMMANDS_H_
#define DICHOTOMY_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dichotomy/classify.h"
#include "dichotomy/evidence.h"

namespace dichotomy::cli {

enum class Format { kText, kMachine };

inline constexpr int kExitOk = 0;
inline constexpr int kExitDisagreement = 1;
inline constexpr int kExitError = 2;

// Upper bound accepted for --max-depth.
inline constexpr std::size_t kMaxDepthFlag = 1'000'000;

struct ClassifyOptions {
  std::filesystem::path function_file;
  SourceClass source_class = SourceClass::kIid;
  SearchBudget budget;
  Format format = Format::kText;
};
int run_classify(const ClassifyOptions& options, std::ostream& out,
                 std::ostream& err);

struct ReportOptions {
  std::filesystem::path directory;
  SearchBudget budget;
  Format format = Format::kText;
};
int run_report(const ReportOptions& options, std::ostream& out,
               std::ostream& err);

struct RegionOptions {
  std::optional<std::filesystem::path> function_file;
  std::filesystem::path distribution_file;
  std::optional<std::vector<double>> rates;
  std::optional<std::string> ci_partition;
  Format format = Format::kText;
};
int run_region(const RegionOptions& options, std::ostream& out,
               std::ostream& err);

struct WitnessOptions {
  std::filesystem::path function_file;
  SourceClass source_class = SourceClass::kSmooth;
  // Replay this witness document instead of constructing one.
  std::optional<std::filesystem::path> verify_file;
  Format format = Format::kText;
};
int run_witness(const WitnessOptions& options, std::ostream& out,
                std::ostream& err);

struct OracleCheckOptions {
  std::filesystem::path function_file;
  std::uint64_t seed = 1;
  std::size_t trials = 20;
  Format format = Format::kText;
};
int run_oracle_check(const OracleCheckOptions& options, std::ostream& out,
                     std::ostream& err);

// Parses "r1,r2,..." into rates. Throws std::invalid_argument.
std::vector<double> parse_rates(const std::string& text);

}  // namespace dichotomy::cli

#endif  // DICHOTOMY_TOOLS_COMMANDS_H_

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

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.h"

namespace {

using dichotomy::SourceClass;
using dichotomy::cli::Format;

const std::map<std::string, Format> kFormats = {{"text", Format::kText},
                                                {"machine", Format::kMachine}};

void add_format(CLI::App* cmd, Format* format) {
  cmd->add_option("--format", *format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

void add_class(CLI::App* cmd, std::string* name) {
  cmd->add_option("--class", *name, "Source class")
      ->check(CLI::IsMember({"smooth", "iid"}));
}

SourceClass class_of(const std::string& name) {
  return *dichotomy::parse_source_class(name);
}

void add_budget(CLI::App* cmd, dichotomy::SearchBudget* budget) {
  cmd->add_option("--max-depth", budget->max_depth,
                  "Certificate search depth (0: |X_L|)")
      ->check(CLI::Range(std::size_t{0}, dichotomy::cli::kMaxDepthFlag));
  cmd->add_option("--max-nodes", budget->max_nodes,
                  "Search expansions before giving up (0: unlimited)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide whether a finite multiterminal function computes at "
               "Slepian-Wolf rates"};
  app.require_subcommand(1);
  int status = dichotomy::cli::kExitOk;

  dichotomy::cli::ClassifyOptions classify;
  auto* c = app.add_subcommand("classify", "Classify one function file");
  c->add_option("function", classify.function_file, "Function JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  std::string classify_class = "iid";
  add_class(c, &classify_class);
  add_budget(c, &classify.budget);
  add_format(c, &classify.format);
  c->callback([&] {
    classify.source_class = class_of(classify_class);
    status = dichotomy::cli::run_classify(classify, std::cout, std::cerr);
  });

  dichotomy::cli::ReportOptions report;
  auto* r = app.add_subcommand("report", "Condition matrix for a directory");
  r->add_option("directory", report.directory, "Directory of function files")
      ->required()
      ->check(CLI::ExistingDirectory);
  add_budget(r, &report.budget);
  add_format(r, &report.format);
  r->callback([&] {
    status = dichotomy::cli::run_report(report, std::cout, std::cerr);
  });

  dichotomy::cli::RegionOptions region;
  std::string function_file, rates, partition;
  auto* g = app.add_subcommand("region", "Slepian-Wolf constraints");
  g->add_option("distribution", region.distribution_file,
                "Distribution JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  g->add_option("--function", function_file, "Function JSON file")
      ->check(CLI::ExistingFile);
  g->add_option("--rates", rates, "Rate tuple r1,r2,...");
  g->add_option("--ci-partition", partition,
                "Terminal partition such as {1}/{2} or 12/3");
  add_format(g, &region.format);
  g->callback([&] {
    if (!function_file.empty()) region.function_file = function_file;
    if (!partition.empty()) region.ci_partition = partition;
    if (!rates.empty()) {
      try {
        region.rates = dichotomy::cli::parse_rates(rates);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        status = dichotomy::cli::kExitError;
        return;
      }
    }
    status = dichotomy::cli::run_region(region, std::cout, std::cerr);
  });

  dichotomy::cli::WitnessOptions witness;
  std::string verify;
  auto* w = app.add_subcommand("witness", "Construct or replay a witness");
  w->add_option("function", witness.function_file, "Function JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  std::string witness_class = "smooth";
  add_class(w, &witness_class);
  w->add_option("--verify", verify, "Witness JSON file to replay")
      ->check(CLI::ExistingFile);
  add_format(w, &witness.format);
  w->callback([&] {
    witness.source_class = class_of(witness_class);
    if (!verify.empty()) witness.verify_file = verify;
    status = dichotomy::cli::run_witness(witness, std::cout, std::cerr);
  });

  dichotomy::cli::OracleCheckOptions oracle;
  auto* o = app.add_subcommand("oracle-check",
                               "Cross-check fast paths against brute force");
  o->add_option("function", oracle.function_file, "Function JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  o->add_option("--seed", oracle.seed, "Falsifier seed");
  o->add_option("--trials", oracle.trials, "Falsifier trials per partition")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1'000'000}));
  add_format(o, &oracle.format);
  o->callback([&] {
    status = dichotomy::cli::run_oracle_check(oracle, std::cout, std::cerr);
  });

  CLI11_PARSE(app, argc, argv);
  return status;
}

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

// JSON documents for functions, distributions, certificates and witnesses.
//
//   function:      {"alphabets":[3,3],"values":[0,3,3,0,4,2,1,1,2]}
//   distribution:  {"alphabets":[2,2],"probs":[0.25,0.25,0.25,0.25]}
//   certificate:   {"steps":[{"terminal_partition":[[1,2],[3]],
//                             "alphabet_partitions":[[[0,1]],[[0],[1]],...]}]}
//   witness:       {"kind":"projection","subset":[1,2],
//                   "first":[0,0],"second":[1,1]}
//                  {"kind":"extended","subset":[1,2],"block_length":2,
//                   "pairs":[{"terminal":1,"first":[..],"second":[..]},..]}
//
// Terminals are 1-based in every document. Serialization is canonical
// (compact, fixed key order) so identical inputs give identical bytes.

#ifndef DICHOTOMY_IO_H_
#define DICHOTOMY_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dichotomy/evidence.h"
#include "dichotomy/model.h"

namespace dichotomy {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses and value-normalizes a function document.
FunctionTable parse_function_spec(std::string_view text);
FunctionTable load_function(const std::filesystem::path& path);
std::string serialize_function(const FunctionTable& f);

// When `expected_sizes` is non-empty the declared alphabets must match it.
JointDistribution validate_distribution(
    std::string_view text, std::span<const std::size_t> expected_sizes = {});
JointDistribution load_distribution(const std::filesystem::path& path);
std::string serialize_distribution(const JointDistribution& p);

std::string serialize_certificate(const Certificate& c);
Certificate parse_certificate(std::string_view text,
                              std::span<const std::size_t> alphabet_sizes);

std::string serialize_witness(const Witness& w);
Witness parse_witness(std::string_view text);

// "{1,2}/{3}", "12/3" or "1,2/3" (1-based).
TerminalPartition parse_terminal_partition(std::string_view text,
                                           std::size_t num_terminals);

std::string read_file(const std::filesystem::path& path);

}  // namespace dichotomy

#endif  // DICHOTOMY_IO_H_

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

// Brute-force reference implementations used to cross-check the fast paths,
// plus the type-based sequence reconstruction used by the achievability
// argument.

#ifndef DICHOTOMY_ORACLE_H_
#define DICHOTOMY_ORACLE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dichotomy/model.h"

namespace dichotomy {

// Literal recursive pseudo-identity test on f_A: recurses into the span
// union and into every singleton outside it, with no shortcut.
bool naive_pseudo_identity(const FunctionTable& f, TerminalSet subset);

inline constexpr std::size_t kOracleMaxAlphabet = 5;
inline constexpr std::size_t kOracleMaxTuples = 2'000'000;

// Enumerates every tuple of alphabet partitions on A, keeps those passing
// check_semi_informative, and returns their common refinement. Throws
// std::invalid_argument if some alphabet in A exceeds kOracleMaxAlphabet or
// the enumeration exceeds kOracleMaxTuples.
AlphabetPartitionTuple brute_force_finest_tuple(const FunctionTable& f,
                                                TerminalSet subset);

inline constexpr double kFalsifierThreshold = 1e-6;

// Samples full-support distributions (normalized exponential variates) from
// std::mt19937_64 seeded with `seed`; returns the first whose factorization
// deviation exceeds kFalsifierThreshold.
std::optional<JointDistribution> ci_falsifier(const FunctionTable& f,
                                              const TerminalPartition& partition,
                                              std::size_t trials,
                                              std::uint64_t seed);

// Rebuilds a sequence from its class labels and symbol counts: within each
// class, symbols are laid out in increasing order over the class's positions
// in increasing order. Throws std::invalid_argument when the counts of a
// class do not match the number of positions carrying its label.
std::vector<Symbol> reconstruct_from_class_and_type(
    const AlphabetPartition& partition, std::span<const std::uint32_t> labels,
    std::span<const std::size_t> counts);

// Lookup from the value list of f_A to the tuple of classes of x_A.
struct XiMapping {
  TerminalSet subset;
  std::map<std::vector<std::int64_t>, std::vector<std::uint32_t>> table;
};

// Builds the lookup at block length one; nullopt when two points with the
// same value list fall in different class tuples.
std::optional<XiMapping> construct_xi_single_letter(
    const FunctionTable& f, TerminalSet subset,
    const AlphabetPartitionTuple& tuple);

}  // namespace dichotomy

#endif  // DICHOTOMY_ORACLE_H_

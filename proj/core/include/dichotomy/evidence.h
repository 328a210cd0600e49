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

// Classification results and the evidence attached to them.

#ifndef DICHOTOMY_EVIDENCE_H_
#define DICHOTOMY_EVIDENCE_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dichotomy/model.h"

namespace dichotomy {

// One recursion step: the terminal partition under which conditional
// independence holds and the alphabet partitions extracted at that step.
struct CertificateStep {
  TerminalPartition terminal_partition;
  AlphabetPartitionTuple alphabet_partitions;

  friend bool operator==(const CertificateStep&,
                         const CertificateStep&) = default;
};

// A recursion certificate. Valid iff every step replays and the final tuple
// is finest at every terminal. A certificate with no steps is valid exactly
// for injective functions.
struct Certificate {
  std::vector<CertificateStep> steps;

  std::size_t depth() const { return steps.size(); }

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// Two points of X_A that differ in every coordinate of A yet have equal
// projections f_A. Coordinates are listed in increasing terminal order.
struct ProjectionCollision {
  TerminalSet subset;
  std::vector<Symbol> first;
  std::vector<Symbol> second;

  friend bool operator==(const ProjectionCollision&,
                         const ProjectionCollision&) = default;
};

// A collision of the m-fold function f^m over the extended alphabets X_l^m,
// with m = |A|. Entry i of `per_terminal` is a pair in X_A whose projections
// agree and whose coordinate at the i-th terminal of A differs; position i
// of the assembled m-tuples is that pair.
struct ExtendedCollision {
  TerminalSet subset;
  std::vector<ProjectionCollision> per_terminal;

  std::size_t block_length() const { return per_terminal.size(); }

  friend bool operator==(const ExtendedCollision&,
                         const ExtendedCollision&) = default;
};

using Witness = std::variant<ProjectionCollision, ExtendedCollision>;

enum class SourceClass { kSmooth, kIid };
enum class Answer { kInSwClass, kNotInSwClass, kUnknown };

std::string_view to_string(SourceClass c);
std::string_view to_string(Answer a);
std::optional<SourceClass> parse_source_class(std::string_view text);

struct Verdict {
  SourceClass source_class = SourceClass::kIid;
  Answer answer = Answer::kUnknown;
  std::optional<Certificate> certificate;
  // Pseudo-identity chain L = A_0 > A_1 > ... (smooth class only).
  std::optional<std::vector<TerminalSet>> trace;
  std::optional<Witness> witness;
  std::string note;
};

}  // namespace dichotomy

#endif  // DICHOTOMY_EVIDENCE_H_

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

// Combinatorial calculus on function tables: projections f_A, fiber spans,
// conditional-independence and semi-informative predicates, and products
// with local functions.
//
// Points of X_A are passed as symbol vectors with one entry per terminal of
// A, in increasing terminal order.

#ifndef DICHOTOMY_STRUCTURE_H_
#define DICHOTOMY_STRUCTURE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dichotomy/model.h"

namespace dichotomy {

// f_A(x_A) = (f(x_A, x_{A^c}) : x_{A^c} in lexicographic order).
//
// `table` is f_A as a normalized function over X_A: equal codes mean equal
// value tuples. `tuples[c]` is the value tuple for code c.
struct ProjectedFunction {
  TerminalSet subset;
  FunctionTable table;
  std::vector<std::vector<std::int64_t>> tuples;

  const std::vector<std::int64_t>& tuple_at(std::span<const Symbol> x_a) const {
    return tuples[static_cast<std::size_t>(table(x_a))];
  }
  // Inputs of X_A (as restricted-space indices) grouped by projected value,
  // groups ordered by code.
  std::vector<std::vector<std::size_t>> fibers() const;
};

// Throws std::invalid_argument on an empty subset or one outside the
// function's terminals.
ProjectedFunction project(const FunctionTable& f, TerminalSet subset);

// Terminals of A at which the fiber takes at least two distinct symbols.
// Empty for fibers with fewer than two points. Throws on an empty fiber.
TerminalSet fiber_span(const FunctionTable& f, TerminalSet subset,
                       std::span<const std::vector<Symbol>> fiber);

// Union of fiber spans of f_A over all attained value tuples.
TerminalSet span_union(const FunctionTable& f, TerminalSet subset);

// Fiber spans of f (A = all terminals), one per distinct value, in order of
// first occurrence of the value in the table.
struct FiberSpan {
  std::int64_t value;
  TerminalSet span;
};
std::vector<FiberSpan> fiber_spans(const FunctionTable& f);

struct CiCheck {
  bool holds = true;
  std::optional<std::int64_t> violating_value;
  TerminalSet violating_span;
};

// Every fiber of f must vary only inside a single block of `partition`.
CiCheck check_ci_condition(const FunctionTable& f,
                           const TerminalPartition& partition);

// The finest alphabet partitions on A for which equal projections f_A force
// equal classes: per terminal, the transitive closure of "appears at that
// coordinate of two f_A-equal points". Slots outside A are left undefined.
AlphabetPartitionTuple finest_semi_informative_tuple(const FunctionTable& f,
                                                     TerminalSet subset);

// f_A(x_A) = f_A(x^_A) implies [x_l] = [x^_l] for all l in A.
bool check_semi_informative(const FunctionTable& f, TerminalSet subset,
                            const AlphabetPartitionTuple& tuple);

// x -> (f(x), ([x_l] : l)), value-normalized. The tuple must cover every
// terminal.
FunctionTable product_with_local(const FunctionTable& f,
                                 const AlphabetPartitionTuple& tuple);

// The m-fold function f^m over extended alphabets X_l^m, where the extended
// symbol of terminal l is (x_{l,1}, ..., x_{l,m}) encoded with position 1
// most significant. Throws std::invalid_argument if the table would exceed
// kMaxTableSize.
FunctionTable power_function(const FunctionTable& f, std::size_t m);

}  // namespace dichotomy

#endif  // DICHOTOMY_STRUCTURE_H_

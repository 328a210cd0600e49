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

// Deciders for whether the computation region of a symbol-wise function
// equals the Slepian-Wolf region.
//
// Smooth sources: exact. A function qualifies iff it is a pseudo identity;
// otherwise an extended-alphabet collision is produced.
//
// I.i.d. sources with positivity: three-valued. The Han-Kobayashi necessary
// condition rejects with a collision witness; the recursive
// conditional-independence / semi-informative search accepts with a
// certificate; anything else is reported as Unknown.

#ifndef DICHOTOMY_CLASSIFY_H_
#define DICHOTOMY_CLASSIFY_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "dichotomy/evidence.h"
#include "dichotomy/model.h"

namespace dichotomy {

struct HkResult {
  bool holds = true;
  // 1..3 when a condition fails, 0 otherwise.
  int failing_condition = 0;
  // Condition 1: two rows (a, a'); condition 2: two columns (b, b');
  // condition 3: two points (a, b), (a', b').
  std::vector<Symbol> first;
  std::vector<Symbol> second;
};

// Two-terminal Han-Kobayashi conditions. Throws std::invalid_argument unless
// L == 2.
HkResult hk_check(const FunctionTable& f);

struct NecessaryResult {
  bool holds = true;
  std::optional<ProjectionCollision> witness;
};

// For every nonempty A (visited in increasing bitmask order) no two points
// differing in every coordinate of A share a projection.
NecessaryResult necessary_condition(const FunctionTable& f);

// |span f^-1(v)| <= 1 for all v, and f_{L\{l}} injective for all l.
bool sufficient_prop5(const FunctionTable& f);
// Union of fiber spans is a strict subset of L, and f_{L\{l}} injective for
// all l.
bool sufficient_prop6(const FunctionTable& f);

// "Every f_{L\{l}} is injective", shared by both sufficient conditions.
// False for L == 1, where the complement projection is undefined.
bool complement_projections_injective(const FunctionTable& f);

struct PseudoIdentityResult {
  bool holds = false;
  // A_0 = L, A_{i+1} = span union of f_{A_i}; ends at the injective subset
  // (holds) or at the first A with span union equal to A (fails).
  std::vector<TerminalSet> trace;
};

PseudoIdentityResult pseudo_identity(const FunctionTable& f);

// Recursion certificate built directly from a successful pseudo
// identity chain (blocks {A_i} plus singletons; finest outside A_{i+1},
// trivial inside). Throws std::invalid_argument if `result` does not hold.
Certificate certificate_from_trace(const FunctionTable& f,
                                   const PseudoIdentityResult& result);

// Pre: pseudo_identity(f) fails (std::invalid_argument otherwise). Returns a
// ProjectionCollision on a single terminal when some f_{l} is not injective,
// else an ExtendedCollision for the subset at which the pseudo identity
// recursion stalls. The result is replayed before it is returned.
Witness counterexample_witness(const FunctionTable& f);

Verdict classify_smooth(const FunctionTable& f);

struct SearchBudget {
  // Maximum recursion depth; 0 means |X_L|.
  std::size_t max_depth = 0;
  // Maximum number of (state, partition) expansions; 0 means unlimited.
  std::size_t max_nodes = 0;
};

enum class SearchStatus { kFound, kSearchExhausted, kBudgetExhausted };

struct CertifyResult {
  SearchStatus status = SearchStatus::kSearchExhausted;
  std::optional<Certificate> certificate;
  std::size_t nodes_expanded = 0;
};

// Depth-first search over recursion certificates. At every state the
// nontrivial terminal partitions are tried finest-first (more blocks first,
// restricted-growth-string order within a block count); each state is first
// scanned for a terminating step before any branch is descended, so a
// depth-1 certificate is found whenever one exists. For L == 1 an injective
// function yields an empty certificate.
CertifyResult certify_iid(const FunctionTable& f, SearchBudget budget = {});

Verdict classify_iid(const FunctionTable& f, SearchBudget budget = {});

// Nontrivial terminal partitions of {0..L-1} in search order.
std::vector<TerminalPartition> search_order_partitions(std::size_t num_terminals);

// Replays a certificate step by step; true iff every step satisfies both
// structural predicates on the accumulated product and the final tuple is
// finest.
bool replay_certificate(const FunctionTable& f, const Certificate& cert);

// True iff the witness is a genuine violation of the necessary condition
// (for f, or for f^m in the extended case).
bool replay_witness(const FunctionTable& f, const Witness& w);

}  // namespace dichotomy

#endif  // DICHOTOMY_CLASSIFY_H_

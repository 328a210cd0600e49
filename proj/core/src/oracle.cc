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

// Everything here is written against the definitions directly and avoids the
// indexing shortcuts of structure.cc, so the two can check each other.

#include "dichotomy/oracle.h"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "dichotomy/rates.h"
#include "dichotomy/structure.h"

namespace dichotomy {
namespace {

// All points of X_S in lexicographic order, as full-length tuples with the
// coordinates outside S left at zero.
std::vector<std::vector<Symbol>> enumerate_points(const FunctionTable& f,
                                                  TerminalSet s) {
  std::vector<std::vector<Symbol>> out;
  std::vector<Symbol> x(f.num_terminals(), 0);
  const auto members = s.members();
  while (true) {
    out.push_back(x);
    // Odometer over the members, last one fastest.
    std::size_t k = members.size();
    while (k > 0) {
      const std::size_t l = members[k - 1];
      if (++x[l] < f.alphabet_size(l)) break;
      x[l] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

// The list (f(x_A, y) : y in X_{A^c}) for a full-length point x.
std::vector<std::int64_t> value_list(const FunctionTable& f, TerminalSet a,
                                     const std::vector<Symbol>& x) {
  const TerminalSet rest = TerminalSet::full(f.num_terminals()) - a;
  std::vector<std::int64_t> out;
  for (const auto& y : enumerate_points(f, rest)) {
    std::vector<Symbol> z = x;
    for (std::size_t l : rest.members()) z[l] = y[l];
    out.push_back(f(z));
  }
  return out;
}

// Minimal B within A such that the fiber lies in X_B x {x_{A\B}}, found by
// trying every B in order of increasing size.
TerminalSet literal_span(const std::vector<std::vector<Symbol>>& fiber,
                         TerminalSet a) {
  if (fiber.size() <= 1) return TerminalSet();
  const auto members = a.members();
  const std::uint32_t n = static_cast<std::uint32_t>(members.size());
  for (std::uint32_t size = 0; size <= n; ++size) {
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      if (static_cast<std::uint32_t>(std::popcount(bits)) != size) continue;
      bool pinned = true;
      for (std::uint32_t k = 0; k < n && pinned; ++k) {
        if ((bits >> k) & 1u) continue;
        const std::size_t l = members[k];
        for (const auto& x : fiber) {
          if (x[l] != fiber.front()[l]) {
            pinned = false;
            break;
          }
        }
      }
      if (pinned) {
        TerminalSet b;
        for (std::uint32_t k = 0; k < n; ++k) {
          if ((bits >> k) & 1u) b |= TerminalSet::single(members[k]);
        }
        return b;
      }
    }
  }
  return a;
}

}  // namespace

bool naive_pseudo_identity(const FunctionTable& f, TerminalSet subset) {
  if (subset.empty() ||
      !subset.is_subset_of(TerminalSet::full(f.num_terminals()))) {
    throw std::invalid_argument("naive_pseudo_identity: bad subset");
  }
  std::map<std::vector<std::int64_t>, std::vector<std::vector<Symbol>>> fibers;
  for (const auto& x : enumerate_points(f, subset)) {
    fibers[value_list(f, subset, x)].push_back(x);
  }
  bool injective = true;
  for (const auto& [list, fiber] : fibers) injective &= fiber.size() == 1;
  if (injective) return true;

  TerminalSet reduced;
  for (const auto& [list, fiber] : fibers) reduced |= literal_span(fiber, subset);
  if (reduced == subset) return false;

  if (!naive_pseudo_identity(f, reduced)) return false;
  for (std::size_t l : (subset - reduced).members()) {
    if (!naive_pseudo_identity(f, TerminalSet::single(l))) return false;
  }
  return true;
}

AlphabetPartitionTuple brute_force_finest_tuple(const FunctionTable& f,
                                                TerminalSet subset) {
  const auto members = subset.members();
  std::vector<std::vector<std::vector<std::uint32_t>>> choices;
  std::size_t total = 1;
  for (std::size_t l : members) {
    if (f.alphabet_size(l) > kOracleMaxAlphabet) {
      throw std::invalid_argument("brute_force_finest_tuple: alphabet of terminal " +
                                  std::to_string(l + 1) + " too large");
    }
    choices.push_back(set_partitions(f.alphabet_size(l)));
    total *= choices.back().size();
    if (total > kOracleMaxTuples) {
      throw std::invalid_argument("brute_force_finest_tuple: too many tuples");
    }
  }

  std::optional<AlphabetPartitionTuple> meet;
  std::vector<std::size_t> pick(members.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t r = n;
    for (std::size_t k = members.size(); k-- > 0;) {
      pick[k] = r % choices[k].size();
      r /= choices[k].size();
    }
    AlphabetPartitionTuple candidate(f.num_terminals());
    for (std::size_t k = 0; k < members.size(); ++k) {
      candidate.set(members[k], AlphabetPartition(choices[k][pick[k]]));
    }
    if (!check_semi_informative(f, subset, candidate)) continue;
    if (!meet) {
      meet = std::move(candidate);
    } else {
      for (std::size_t l : members) {
        meet->set(l, meet->at(l).meet(candidate.at(l)));
      }
    }
  }
  // The all-trivial tuple always passes, so meet is set.
  return *meet;
}

std::optional<JointDistribution> ci_falsifier(const FunctionTable& f,
                                              const TerminalPartition& partition,
                                              std::size_t trials,
                                              std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("ci_falsifier needs trials >= 1");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> w(f.size());
    double total = 0.0;
    for (double& x : w) {
      // Strictly positive: exponential variates are > 0 almost surely, the
      // floor keeps full support in the degenerate case.
      x = std::max(expo(rng), 1e-12);
      total += x;
    }
    for (double& x : w) x /= total;
    JointDistribution p(f.alphabet_sizes(), std::move(w));
    if (ci_factorization_deviation(p, f, partition) > kFalsifierThreshold) {
      return p;
    }
  }
  return std::nullopt;
}

std::vector<Symbol> reconstruct_from_class_and_type(
    const AlphabetPartition& partition, std::span<const std::uint32_t> labels,
    std::span<const std::size_t> counts) {
  if (counts.size() != partition.alphabet_size()) {
    throw std::invalid_argument("need one count per symbol");
  }
  const auto classes = partition.classes();
  std::vector<std::vector<std::size_t>> positions(partition.num_classes());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= partition.num_classes()) {
      throw std::invalid_argument("label out of range at position " +
                                  std::to_string(i));
    }
    positions[labels[i]].push_back(i);
  }
  // Canonical labels are numbered by smallest member, like classes().
  std::vector<Symbol> out(labels.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::size_t need = 0;
    for (Symbol a : classes[c]) need += counts[a];
    if (need != positions[c].size()) {
      throw std::invalid_argument(
          "symbol counts of class " + std::to_string(c) + " sum to " +
          std::to_string(need) + " but " + std::to_string(positions[c].size()) +
          " positions carry its label");
    }
    std::size_t next = 0;
    for (Symbol a : classes[c]) {
      for (std::size_t n = 0; n < counts[a]; ++n) out[positions[c][next++]] = a;
    }
  }
  return out;
}

std::optional<XiMapping> construct_xi_single_letter(
    const FunctionTable& f, TerminalSet subset,
    const AlphabetPartitionTuple& tuple) {
  XiMapping xi{subset, {}};
  for (const auto& x : enumerate_points(f, subset)) {
    std::vector<std::uint32_t> classes;
    for (std::size_t l : subset.members()) classes.push_back(tuple.at(l).class_of(x[l]));
    auto [it, inserted] = xi.table.try_emplace(value_list(f, subset, x), classes);
    if (!inserted && it->second != classes) return std::nullopt;
  }
  return xi;
}

}  // namespace dichotomy

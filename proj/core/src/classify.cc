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

#include "dichotomy/classify.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "dichotomy/structure.h"

namespace dichotomy {
namespace {

struct ValuesHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::size_t h = v.size();
    for (std::int64_t x : v) {
      h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

bool differs_everywhere(std::span<const Symbol> a, std::span<const Symbol> b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == b[k]) return false;
  }
  return true;
}

bool same_projection(const FunctionTable& f, const ProjectionCollision& c) {
  const ProjectedFunction p = project(f, c.subset);
  return p.table(c.first) == p.table(c.second);
}

bool valid_point(const FunctionTable& f, TerminalSet subset,
                 std::span<const Symbol> x) {
  const auto members = subset.members();
  if (x.size() != members.size()) return false;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (x[k] >= f.alphabet_size(members[k])) return false;
  }
  return true;
}

bool valid_subset(const FunctionTable& f, TerminalSet subset) {
  return !subset.empty() &&
         subset.is_subset_of(TerminalSet::full(f.num_terminals()));
}

// First pair in the fiber structure of f_A whose coordinate at position k
// (within A) differs.
std::optional<ProjectionCollision> colliding_pair_at(const FunctionTable& f,
                                                     TerminalSet subset,
                                                     std::size_t position) {
  const ProjectedFunction p = project(f, subset);
  const auto fibers = p.fibers();
  const IndexSpace& space = p.table.space();
  for (std::size_t i = 0; i < p.table.size(); ++i) {
    const auto x = space.decode(i);
    for (std::size_t j : fibers[static_cast<std::size_t>(p.table.value_at(i))]) {
      const auto y = space.decode(j);
      if (x[position] != y[position]) {
        return ProjectionCollision{subset, x, y};
      }
    }
  }
  return std::nullopt;
}

class CertificateSearch {
 public:
  CertificateSearch(std::size_t num_terminals, SearchBudget budget,
                    std::size_t table_size)
      : order_(search_order_partitions(num_terminals)),
        max_depth_(budget.max_depth == 0 ? table_size : budget.max_depth),
        max_nodes_(budget.max_nodes) {}

  std::optional<std::vector<CertificateStep>> run(const FunctionTable& g) {
    return search(g, max_depth_);
  }

  bool budget_hit() const { return budget_hit_; }
  std::size_t nodes() const { return nodes_; }

 private:
  std::optional<std::vector<CertificateStep>> search(const FunctionTable& g,
                                                     std::size_t remaining) {
    if (remaining == 0) {
      budget_hit_ = true;
      return std::nullopt;
    }
    if (auto it = failed_.find(g.values());
        it != failed_.end() && it->second >= remaining) {
      return std::nullopt;
    }

    std::vector<CertificateStep> branches;
    for (const TerminalPartition& partition : order_) {
      if (max_nodes_ != 0 && nodes_ >= max_nodes_) {
        budget_hit_ = true;
        node_limit_hit_ = true;
        return std::nullopt;
      }
      ++nodes_;
      if (!check_ci_condition(g, partition).holds) continue;
      AlphabetPartitionTuple tuple(g.num_terminals());
      for (TerminalSet block : partition.blocks()) {
        tuple.merge(finest_semi_informative_tuple(g, block));
      }
      if (tuple.all_finest()) {
        return std::vector<CertificateStep>{{partition, std::move(tuple)}};
      }
      branches.push_back({partition, std::move(tuple)});
    }

    for (CertificateStep& step : branches) {
      FunctionTable next = product_with_local(g, step.alphabet_partitions);
      // Kernels only ever refine; an equal class count means no progress.
      if (next.num_values() <= g.num_values()) continue;
      auto rest = search(next, remaining - 1);
      if (rest) {
        rest->insert(rest->begin(), std::move(step));
        return rest;
      }
      if (node_limit_hit_) return std::nullopt;
    }

    auto& slot = failed_[g.values()];
    slot = std::max(slot, remaining);
    return std::nullopt;
  }

  std::vector<TerminalPartition> order_;
  std::size_t max_depth_;
  std::size_t max_nodes_;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
  bool node_limit_hit_ = false;
  std::unordered_map<std::vector<std::int64_t>, std::size_t, ValuesHash> failed_;
};

}  // namespace

HkResult hk_check(const FunctionTable& f) {
  if (f.num_terminals() != 2) {
    throw std::invalid_argument("hk_check requires exactly two terminals");
  }
  const std::size_t n1 = f.alphabet_size(0), n2 = f.alphabet_size(1);
  auto at = [&](std::size_t a, std::size_t b) { return f.value_at(a * n2 + b); };

  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t a2 = a + 1; a2 < n1; ++a2) {
      bool equal = true;
      for (std::size_t b = 0; b < n2 && equal; ++b) equal = at(a, b) == at(a2, b);
      if (equal) {
        return {false, 1, {Symbol(a)}, {Symbol(a2)}};
      }
    }
  }
  for (std::size_t b = 0; b < n2; ++b) {
    for (std::size_t b2 = b + 1; b2 < n2; ++b2) {
      bool equal = true;
      for (std::size_t a = 0; a < n1 && equal; ++a) equal = at(a, b) == at(a, b2);
      if (equal) {
        return {false, 2, {Symbol(b)}, {Symbol(b2)}};
      }
    }
  }
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      for (std::size_t a2 = 0; a2 < n1; ++a2) {
        if (a2 == a) continue;
        for (std::size_t b2 = 0; b2 < n2; ++b2) {
          if (b2 == b) continue;
          if (at(a, b) == at(a2, b2)) {
            return {false, 3, {Symbol(a), Symbol(b)}, {Symbol(a2), Symbol(b2)}};
          }
        }
      }
    }
  }
  return {};
}

NecessaryResult necessary_condition(const FunctionTable& f) {
  const std::uint32_t full = TerminalSet::full(f.num_terminals()).mask();
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const TerminalSet subset(mask);
    const ProjectedFunction p = project(f, subset);
    if (p.table.is_injective()) continue;
    const IndexSpace& space = p.table.space();
    for (const auto& fiber : p.fibers()) {
      for (std::size_t i = 0; i < fiber.size(); ++i) {
        const auto x = space.decode(fiber[i]);
        for (std::size_t j = i + 1; j < fiber.size(); ++j) {
          const auto y = space.decode(fiber[j]);
          if (differs_everywhere(x, y)) {
            return {false, ProjectionCollision{subset, x, y}};
          }
        }
      }
    }
  }
  return {};
}

bool complement_projections_injective(const FunctionTable& f) {
  const std::size_t num_terminals = f.num_terminals();
  if (num_terminals < 2) return false;
  const TerminalSet full = TerminalSet::full(num_terminals);
  for (std::size_t l = 0; l < num_terminals; ++l) {
    if (!project(f, full - TerminalSet::single(l)).table.is_injective()) {
      return false;
    }
  }
  return true;
}

bool sufficient_prop5(const FunctionTable& f) {
  for (const FiberSpan& fs : fiber_spans(f)) {
    if (fs.span.size() > 1) return false;
  }
  return complement_projections_injective(f);
}

bool sufficient_prop6(const FunctionTable& f) {
  const TerminalSet full = TerminalSet::full(f.num_terminals());
  if (span_union(f, full) == full) return false;
  return complement_projections_injective(f);
}

PseudoIdentityResult pseudo_identity(const FunctionTable& f) {
  PseudoIdentityResult result;
  TerminalSet current = TerminalSet::full(f.num_terminals());
  while (true) {
    result.trace.push_back(current);
    if (project(f, current).table.is_injective()) {
      result.holds = true;
      return result;
    }
    const TerminalSet reduced = span_union(f, current);
    if (reduced == current) return result;
    current = reduced;
  }
}

Certificate certificate_from_trace(const FunctionTable& f,
                                   const PseudoIdentityResult& result) {
  if (!result.holds || result.trace.empty()) {
    throw std::invalid_argument("certificate_from_trace needs a pseudo identity");
  }
  const std::size_t num_terminals = f.num_terminals();
  const auto& sizes = f.alphabet_sizes();
  Certificate cert;
  if (result.trace.size() == 1) {
    // Injective: one step on the finest terminal partition, when it exists.
    if (num_terminals >= 2) {
      cert.steps.push_back({TerminalPartition::finest(num_terminals),
                            AlphabetPartitionTuple::finest(sizes)});
    }
    return cert;
  }
  const TerminalSet full = TerminalSet::full(num_terminals);
  const std::size_t k = result.trace.size() - 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const TerminalSet chain = result.trace[i];
    std::vector<TerminalSet> blocks{chain};
    for (std::size_t l : (full - chain).members()) {
      blocks.push_back(TerminalSet::single(l));
    }
    AlphabetPartitionTuple tuple(num_terminals);
    const TerminalSet coarse = i < k ? result.trace[i + 1] : TerminalSet();
    for (std::size_t l = 0; l < num_terminals; ++l) {
      tuple.set(l, coarse.contains(l) ? AlphabetPartition::trivial(sizes[l])
                                      : AlphabetPartition::finest(sizes[l]));
    }
    cert.steps.push_back(
        {TerminalPartition(num_terminals, std::move(blocks)), std::move(tuple)});
  }
  return cert;
}

Witness counterexample_witness(const FunctionTable& f) {
  const PseudoIdentityResult pi = pseudo_identity(f);
  if (pi.holds) {
    throw std::invalid_argument(
        "counterexample_witness: function is a pseudo identity");
  }
  Witness witness;
  bool found = false;
  for (std::size_t l = 0; l < f.num_terminals() && !found; ++l) {
    if (auto c = colliding_pair_at(f, TerminalSet::single(l), 0)) {
      witness = *c;
      found = true;
    }
  }
  if (!found) {
    const TerminalSet stalled = pi.trace.back();
    ExtendedCollision ext{stalled, {}};
    for (std::size_t k = 0; k < stalled.size(); ++k) {
      auto c = colliding_pair_at(f, stalled, k);
      if (!c) throw std::logic_error("span union inconsistent with fibers");
      ext.per_terminal.push_back(std::move(*c));
    }
    witness = std::move(ext);
  }
  if (!replay_witness(f, witness)) {
    throw std::logic_error("constructed witness failed to replay");
  }
  return witness;
}

Verdict classify_smooth(const FunctionTable& f) {
  Verdict v;
  v.source_class = SourceClass::kSmooth;
  PseudoIdentityResult pi = pseudo_identity(f);
  if (pi.holds) {
    v.answer = Answer::kInSwClass;
    v.certificate = certificate_from_trace(f, pi);
    v.trace = std::move(pi.trace);
    v.note = "pseudo identity";
  } else {
    v.answer = Answer::kNotInSwClass;
    v.trace = std::move(pi.trace);
    v.witness = counterexample_witness(f);
    v.note = "not a pseudo identity";
  }
  return v;
}

std::vector<TerminalPartition> search_order_partitions(
    std::size_t num_terminals) {
  std::vector<TerminalPartition> out;
  for (const auto& labels : set_partitions(num_terminals)) {
    TerminalPartition p = TerminalPartition::from_labels(labels);
    if (p.is_nontrivial()) out.push_back(std::move(p));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TerminalPartition& a, const TerminalPartition& b) {
                     return a.num_blocks() > b.num_blocks();
                   });
  return out;
}

CertifyResult certify_iid(const FunctionTable& f, SearchBudget budget) {
  CertifyResult result;
  const FunctionTable g = normalize_values(f);
  if (f.num_terminals() < 2) {
    if (g.is_injective()) {
      result.status = SearchStatus::kFound;
      result.certificate = Certificate{};
    }
    return result;
  }
  CertificateSearch search(f.num_terminals(), budget, f.size());
  if (auto steps = search.run(g)) {
    result.status = SearchStatus::kFound;
    result.certificate = Certificate{std::move(*steps)};
  } else {
    result.status = search.budget_hit() ? SearchStatus::kBudgetExhausted
                                        : SearchStatus::kSearchExhausted;
  }
  result.nodes_expanded = search.nodes();
  return result;
}

Verdict classify_iid(const FunctionTable& f, SearchBudget budget) {
  Verdict v;
  v.source_class = SourceClass::kIid;
  NecessaryResult nc = necessary_condition(f);
  if (!nc.holds) {
    v.answer = Answer::kNotInSwClass;
    v.witness = std::move(*nc.witness);
    v.note = "necessary condition violated";
    return v;
  }
  CertifyResult cr = certify_iid(f, budget);
  switch (cr.status) {
    case SearchStatus::kFound:
      v.answer = Answer::kInSwClass;
      v.certificate = std::move(cr.certificate);
      v.note = "recursion certificate";
      break;
    case SearchStatus::kSearchExhausted:
      v.answer = Answer::kUnknown;
      v.note = "necessary condition holds; no certificate exists";
      break;
    case SearchStatus::kBudgetExhausted:
      v.answer = Answer::kUnknown;
      v.note = "necessary condition holds; search budget exhausted";
      break;
  }
  return v;
}

bool replay_certificate(const FunctionTable& f, const Certificate& cert) {
  FunctionTable g = normalize_values(f);
  if (cert.steps.empty()) return g.is_injective();
  const std::size_t num_terminals = f.num_terminals();
  for (const CertificateStep& step : cert.steps) {
    const auto& partition = step.terminal_partition;
    const auto& tuple = step.alphabet_partitions;
    if (partition.num_terminals() != num_terminals || !partition.is_nontrivial()) {
      return false;
    }
    if (tuple.num_terminals() != num_terminals || !tuple.covers_all()) {
      return false;
    }
    for (std::size_t l = 0; l < num_terminals; ++l) {
      if (tuple.at(l).alphabet_size() != f.alphabet_size(l)) return false;
    }
    if (!check_ci_condition(g, partition).holds) return false;
    for (TerminalSet block : partition.blocks()) {
      if (!check_semi_informative(g, block, tuple)) return false;
    }
    g = product_with_local(g, tuple);
  }
  return cert.steps.back().alphabet_partitions.all_finest();
}

bool replay_witness(const FunctionTable& f, const Witness& w) {
  if (const auto* c = std::get_if<ProjectionCollision>(&w)) {
    return valid_subset(f, c->subset) && valid_point(f, c->subset, c->first) &&
           valid_point(f, c->subset, c->second) &&
           differs_everywhere(c->first, c->second) && same_projection(f, *c);
  }
  const auto& e = std::get<ExtendedCollision>(w);
  if (!valid_subset(f, e.subset)) return false;
  const std::size_t m = e.block_length();
  if (m != e.subset.size()) return false;
  for (std::size_t k = 0; k < m; ++k) {
    const auto& c = e.per_terminal[k];
    if (c.subset != e.subset || !valid_point(f, e.subset, c.first) ||
        !valid_point(f, e.subset, c.second)) {
      return false;
    }
    if (c.first[k] == c.second[k] || !same_projection(f, c)) return false;
  }

  // Assemble the m-tuples as points of the extended alphabets and check them
  // against f^m directly when it is small enough to tabulate.
  std::size_t ext_size = 1;
  for (std::size_t n : f.alphabet_sizes()) {
    for (std::size_t i = 0; i < m; ++i) {
      if (ext_size > (std::size_t{1} << 22) / n) return true;
      ext_size *= n;
    }
  }
  const FunctionTable fm = power_function(f, m);
  const auto members = e.subset.members();
  ProjectionCollision assembled{e.subset, {}, {}};
  for (std::size_t k = 0; k < members.size(); ++k) {
    const std::size_t n = f.alphabet_size(members[k]);
    std::size_t a = 0, b = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
      a = a * n + e.per_terminal[pos].first[k];
      b = b * n + e.per_terminal[pos].second[k];
    }
    assembled.first.push_back(static_cast<Symbol>(a));
    assembled.second.push_back(static_cast<Symbol>(b));
  }
  return differs_everywhere(assembled.first, assembled.second) &&
         same_projection(fm, assembled);
}

}  // namespace dichotomy

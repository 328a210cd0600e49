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

#include "dichotomy/structure.h"

#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace dichotomy {
namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::size_t h = v.size();
    for (std::int64_t x : v) {
      h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

void check_subset(const FunctionTable& f, TerminalSet subset) {
  if (subset.empty()) {
    throw std::invalid_argument("projection onto the empty terminal set");
  }
  if (!subset.is_subset_of(TerminalSet::full(f.num_terminals()))) {
    throw std::invalid_argument("subset " + subset.to_string() +
                                " exceeds the function's terminals");
  }
}

// Splits a full index into (rank in X_A, rank in X_{A^c}).
class SplitIndexer {
 public:
  SplitIndexer(const IndexSpace& space, TerminalSet subset)
      : space_(space), in_a_(space.num_terminals()),
        stride_(space.num_terminals()), x_(space.num_terminals()) {
    std::size_t size_a = 1, size_c = 1;
    for (std::size_t l = space.num_terminals(); l-- > 0;) {
      in_a_[l] = subset.contains(l);
      if (in_a_[l]) {
        stride_[l] = size_a;
        size_a *= space.alphabet_size(l);
      } else {
        stride_[l] = size_c;
        size_c *= space.alphabet_size(l);
      }
    }
    size_a_ = size_a;
    size_c_ = size_c;
  }

  std::size_t size_a() const { return size_a_; }
  std::size_t size_c() const { return size_c_; }

  std::pair<std::size_t, std::size_t> split(std::size_t index) {
    space_.decode_into(index, x_);
    std::size_t ia = 0, ic = 0;
    for (std::size_t l = 0; l < x_.size(); ++l) {
      (in_a_[l] ? ia : ic) += x_[l] * stride_[l];
    }
    return {ia, ic};
  }

 private:
  const IndexSpace& space_;
  std::vector<bool> in_a_;
  std::vector<std::size_t> stride_;
  std::vector<Symbol> x_;
  std::size_t size_a_ = 1;
  std::size_t size_c_ = 1;
};

// Projection codes of f_A indexed by rank in X_A, first-occurrence numbered.
struct ProjectionCodes {
  std::vector<std::uint32_t> codes;
  std::vector<std::vector<std::int64_t>> tuples;
};

ProjectionCodes projection_codes(const FunctionTable& f, TerminalSet subset) {
  check_subset(f, subset);
  SplitIndexer indexer(f.space(), subset);
  const std::size_t na = indexer.size_a(), nc = indexer.size_c();
  std::vector<std::int64_t> grid(na * nc);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto [ia, ic] = indexer.split(i);
    grid[ia * nc + ic] = f.value_at(i);
  }
  ProjectionCodes out;
  out.codes.resize(na);
  std::unordered_map<std::vector<std::int64_t>, std::uint32_t, VectorHash> seen;
  for (std::size_t ia = 0; ia < na; ++ia) {
    std::vector<std::int64_t> tuple(grid.begin() + ia * nc,
                                    grid.begin() + (ia + 1) * nc);
    auto it = seen.find(tuple);
    if (it == seen.end()) {
      const auto code = static_cast<std::uint32_t>(out.tuples.size());
      seen.emplace(tuple, code);
      out.tuples.push_back(std::move(tuple));
      out.codes[ia] = code;
    } else {
      out.codes[ia] = it->second;
    }
  }
  return out;
}

// For each projected code, the positions (within A) at which its fiber
// varies. Bit k stands for the k-th terminal of A.
std::vector<std::uint32_t> varying_positions(
    const IndexSpace& space_a, std::span<const std::uint32_t> codes,
    std::size_t num_codes) {
  const std::size_t arity = space_a.num_terminals();
  std::vector<std::vector<Symbol>> rep(num_codes);
  std::vector<std::uint32_t> varying(num_codes, 0);
  std::vector<Symbol> x(arity);
  for (std::size_t ia = 0; ia < codes.size(); ++ia) {
    space_a.decode_into(ia, x);
    auto& r = rep[codes[ia]];
    if (r.empty()) {
      r = x;
      continue;
    }
    for (std::size_t k = 0; k < arity; ++k) {
      if (r[k] != x[k]) varying[codes[ia]] |= std::uint32_t{1} << k;
    }
  }
  return varying;
}

TerminalSet lift(std::uint32_t positions, const std::vector<std::size_t>& members) {
  TerminalSet out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if ((positions >> k) & 1u) out |= TerminalSet::single(members[k]);
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> ProjectedFunction::fibers() const {
  std::vector<std::vector<std::size_t>> out(tuples.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    out[static_cast<std::size_t>(table.value_at(i))].push_back(i);
  }
  return out;
}

ProjectedFunction project(const FunctionTable& f, TerminalSet subset) {
  ProjectionCodes pc = projection_codes(f, subset);
  std::vector<std::size_t> sizes;
  for (std::size_t l : subset.members()) sizes.push_back(f.alphabet_size(l));
  return ProjectedFunction{
      subset,
      FunctionTable(std::move(sizes),
                    std::vector<std::int64_t>(pc.codes.begin(), pc.codes.end())),
      std::move(pc.tuples)};
}

TerminalSet fiber_span(const FunctionTable& f, TerminalSet subset,
                       std::span<const std::vector<Symbol>> fiber) {
  check_subset(f, subset);
  if (fiber.empty()) throw std::invalid_argument("fiber_span of an empty fiber");
  const auto members = subset.members();
  TerminalSet span;
  for (const auto& x : fiber) {
    if (x.size() != members.size()) {
      throw std::invalid_argument("fiber point arity does not match subset");
    }
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (x[k] != fiber.front()[k]) span |= TerminalSet::single(members[k]);
    }
  }
  return span;
}

TerminalSet span_union(const FunctionTable& f, TerminalSet subset) {
  const ProjectionCodes pc = projection_codes(f, subset);
  const IndexSpace space_a = f.space().restrict_to(subset);
  std::uint32_t all = 0;
  for (std::uint32_t v : varying_positions(space_a, pc.codes, pc.tuples.size())) {
    all |= v;
  }
  return lift(all, subset.members());
}

std::vector<FiberSpan> fiber_spans(const FunctionTable& f) {
  const auto codes = dense_codes(f.values());
  const std::size_t num_codes = f.num_values();
  const auto varying = varying_positions(f.space(), codes, num_codes);
  std::vector<std::int64_t> value_of(num_codes);
  for (std::size_t i = 0; i < codes.size(); ++i) value_of[codes[i]] = f.value_at(i);
  const auto members = TerminalSet::full(f.num_terminals()).members();
  std::vector<FiberSpan> out;
  out.reserve(num_codes);
  for (std::size_t c = 0; c < num_codes; ++c) {
    out.push_back({value_of[c], lift(varying[c], members)});
  }
  return out;
}

CiCheck check_ci_condition(const FunctionTable& f,
                           const TerminalPartition& partition) {
  if (partition.num_terminals() != f.num_terminals()) {
    throw std::invalid_argument("partition and function disagree on L");
  }
  for (const FiberSpan& fs : fiber_spans(f)) {
    bool fits = fs.span.empty();
    for (TerminalSet block : partition.blocks()) {
      if (fits) break;
      fits = fs.span.is_subset_of(block);
    }
    if (!fits) return CiCheck{false, fs.value, fs.span};
  }
  return CiCheck{};
}

AlphabetPartitionTuple finest_semi_informative_tuple(const FunctionTable& f,
                                                     TerminalSet subset) {
  const ProjectionCodes pc = projection_codes(f, subset);
  const auto members = subset.members();
  const IndexSpace space_a = f.space().restrict_to(subset);

  // One union-find forest per terminal of A.
  std::vector<std::vector<Symbol>> parent(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    parent[k].resize(space_a.alphabet_size(k));
    std::iota(parent[k].begin(), parent[k].end(), Symbol{0});
  }
  auto find = [&](std::size_t k, Symbol x) {
    while (parent[k][x] != x) {
      parent[k][x] = parent[k][parent[k][x]];
      x = parent[k][x];
    }
    return x;
  };

  std::vector<std::vector<Symbol>> rep(pc.tuples.size());
  std::vector<Symbol> x(members.size());
  for (std::size_t ia = 0; ia < pc.codes.size(); ++ia) {
    space_a.decode_into(ia, x);
    auto& r = rep[pc.codes[ia]];
    if (r.empty()) {
      r = x;
      continue;
    }
    for (std::size_t k = 0; k < members.size(); ++k) {
      const Symbol a = find(k, r[k]), b = find(k, x[k]);
      if (a != b) parent[k][std::max(a, b)] = std::min(a, b);
    }
  }

  AlphabetPartitionTuple out(f.num_terminals());
  for (std::size_t k = 0; k < members.size(); ++k) {
    std::vector<std::uint32_t> labels(parent[k].size());
    for (Symbol s = 0; s < labels.size(); ++s) labels[s] = find(k, s);
    out.set(members[k], AlphabetPartition(std::move(labels)));
  }
  return out;
}

bool check_semi_informative(const FunctionTable& f, TerminalSet subset,
                            const AlphabetPartitionTuple& tuple) {
  const ProjectionCodes pc = projection_codes(f, subset);
  const auto members = subset.members();
  for (std::size_t l : members) {
    if (tuple.num_terminals() != f.num_terminals() || !tuple.has(l)) {
      throw std::invalid_argument("partition tuple undefined at terminal " +
                                  std::to_string(l + 1));
    }
    if (tuple.at(l).alphabet_size() != f.alphabet_size(l)) {
      throw std::invalid_argument("partition tuple alphabet mismatch");
    }
  }
  const IndexSpace space_a = f.space().restrict_to(subset);
  std::vector<std::vector<std::uint32_t>> rep(pc.tuples.size());
  std::vector<Symbol> x(members.size());
  std::vector<std::uint32_t> classes(members.size());
  for (std::size_t ia = 0; ia < pc.codes.size(); ++ia) {
    space_a.decode_into(ia, x);
    for (std::size_t k = 0; k < members.size(); ++k) {
      classes[k] = tuple.at(members[k]).class_of(x[k]);
    }
    auto& r = rep[pc.codes[ia]];
    if (r.empty()) {
      r = classes;
    } else if (r != classes) {
      return false;
    }
  }
  return true;
}

FunctionTable product_with_local(const FunctionTable& f,
                                 const AlphabetPartitionTuple& tuple) {
  if (tuple.num_terminals() != f.num_terminals() || !tuple.covers_all()) {
    throw std::invalid_argument("product_with_local needs a full tuple");
  }
  const auto fcodes = dense_codes(f.values());
  std::vector<std::int64_t> combined(f.size());
  std::vector<Symbol> x(f.num_terminals());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.space().decode_into(i, x);
    std::uint64_t key = fcodes[i];
    for (std::size_t l = 0; l < x.size(); ++l) {
      const auto& part = tuple.at(l);
      key = key * part.num_classes() + part.class_of(x[l]);
    }
    combined[i] = static_cast<std::int64_t>(key);
  }
  const auto codes = dense_codes(combined);
  return FunctionTable(f.alphabet_sizes(),
                       std::vector<std::int64_t>(codes.begin(), codes.end()));
}

FunctionTable power_function(const FunctionTable& f, std::size_t m) {
  if (m == 0) throw std::invalid_argument("power_function needs m >= 1");
  std::vector<std::size_t> sizes;
  for (std::size_t n : f.alphabet_sizes()) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (s > kMaxTableSize / n) throw std::invalid_argument("f^m too large");
      s *= n;
    }
    sizes.push_back(s);
  }
  const IndexSpace ext(sizes);  // validates the total size
  const auto fcodes = dense_codes(f.values());
  const std::uint64_t radix = f.num_values();
  const std::size_t num_terminals = f.num_terminals();

  std::vector<std::int64_t> values(ext.size());
  std::vector<Symbol> ext_x(num_terminals);
  std::vector<Symbol> digits(m * num_terminals);
  std::vector<Symbol> x(num_terminals);
  for (std::size_t i = 0; i < ext.size(); ++i) {
    ext.decode_into(i, ext_x);
    for (std::size_t l = 0; l < num_terminals; ++l) {
      std::size_t sym = ext_x[l];
      for (std::size_t pos = m; pos-- > 0;) {
        digits[pos * num_terminals + l] =
            static_cast<Symbol>(sym % f.alphabet_size(l));
        sym /= f.alphabet_size(l);
      }
    }
    std::uint64_t key = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
      std::copy_n(digits.begin() + pos * num_terminals, num_terminals, x.begin());
      key = key * radix + fcodes[f.space().encode(x)];
    }
    values[i] = static_cast<std::int64_t>(key);
  }
  return FunctionTable(std::move(sizes), std::move(values));
}

}  // namespace dichotomy

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

#include "dichotomy/rates.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dichotomy {
namespace {

void require_compatible(const JointDistribution& p, const FunctionTable& f) {
  if (p.alphabet_sizes() != f.alphabet_sizes()) {
    throw std::invalid_argument(
        "distribution and function alphabets do not match");
  }
}

}  // namespace

double entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double q : p) {
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

double conditional_entropy(const JointDistribution& p, TerminalSet subset) {
  if (subset.empty()) {
    throw std::invalid_argument("conditional_entropy of the empty set");
  }
  const TerminalSet full = TerminalSet::full(p.num_terminals());
  if (!subset.is_subset_of(full)) {
    throw std::invalid_argument("subset exceeds the distribution's terminals");
  }
  const double joint = entropy_bits(p.probabilities());
  const auto rest = p.marginal(full - subset);
  return joint - entropy_bits(rest);
}

RateRegion sw_region(const JointDistribution& p) {
  const std::size_t num_terminals = p.num_terminals();
  const std::uint32_t full = TerminalSet::full(num_terminals).mask();
  const double joint = entropy_bits(p.probabilities());
  std::vector<double> values(std::size_t{1} << num_terminals, 0.0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const auto rest = p.marginal(TerminalSet(full & ~mask));
    // Clamp rounding noise; conditional entropy is nonnegative.
    values[mask] = std::max(0.0, joint - entropy_bits(rest));
  }
  return RateRegion(num_terminals, std::move(values));
}

bool region_contains(const RateRegion& region, std::span<const double> rates) {
  if (rates.size() != region.num_terminals()) {
    throw std::invalid_argument("need one rate per terminal");
  }
  const std::uint32_t full = TerminalSet::full(region.num_terminals()).mask();
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    double sum = 0.0;
    for (std::size_t l : TerminalSet(mask).members()) sum += rates[l];
    if (sum < region.at(TerminalSet(mask)) - kUserTolerance) return false;
  }
  return true;
}

std::vector<double> induced_value_distribution(const JointDistribution& p,
                                               const FunctionTable& f) {
  require_compatible(p, f);
  const auto codes = dense_codes(f.values());
  std::vector<double> pv(f.num_values(), 0.0);
  for (std::size_t i = 0; i < codes.size(); ++i) pv[codes[i]] += p.prob(i);
  return pv;
}

double ci_factorization_deviation(const JointDistribution& p,
                                  const FunctionTable& f,
                                  const TerminalPartition& partition) {
  require_compatible(p, f);
  if (partition.num_terminals() != f.num_terminals()) {
    throw std::invalid_argument("partition and function disagree on L");
  }
  const auto codes = dense_codes(f.values());
  const std::size_t num_values = f.num_values();
  const IndexSpace& space = p.space();
  const auto& blocks = partition.blocks();

  std::vector<double> pv(num_values, 0.0);
  for (std::size_t i = 0; i < codes.size(); ++i) pv[codes[i]] += p.prob(i);

  // Joint P(x_A, v) per block, indexed [v * |X_A| + rank(x_A)].
  std::vector<IndexSpace> block_space;
  std::vector<std::vector<std::size_t>> block_members;
  std::vector<std::vector<double>> block_joint;
  for (TerminalSet b : blocks) {
    block_space.push_back(space.restrict_to(b));
    block_members.push_back(b.members());
    block_joint.emplace_back(num_values * block_space.back().size(), 0.0);
  }
  std::vector<Symbol> x(space.num_terminals());
  std::vector<std::vector<std::size_t>> rank(blocks.size(),
                                             std::vector<std::size_t>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i) {
    space.decode_into(i, x);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::size_t r = 0;
      for (std::size_t k = 0; k < block_members[b].size(); ++k) {
        r += x[block_members[b][k]] * block_space[b].stride(k);
      }
      rank[b][i] = r;
      block_joint[b][codes[i] * block_space[b].size() + r] += p.prob(i);
    }
  }

  // Q(x, v) = P_V(v) prod_A P(x_A | v) = prod_A P(x_A, v) / P_V(v)^{k-1}.
  double deviation = 0.0;
  const double k_minus_1 = static_cast<double>(blocks.size()) - 1.0;
  for (std::size_t v = 0; v < num_values; ++v) {
    if (pv[v] <= 0.0) continue;
    for (std::size_t i = 0; i < space.size(); ++i) {
      double q = 1.0;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        q *= block_joint[b][v * block_space[b].size() + rank[b][i]];
      }
      q /= std::pow(pv[v], k_minus_1);
      const double actual = codes[i] == v ? p.prob(i) : 0.0;
      deviation = std::max(deviation, std::abs(actual - q));
    }
  }
  return deviation;
}

MixtureCiResult mixture_ci_check(const JointDistribution& p0,
                                 const JointDistribution& p1,
                                 const FunctionTable& f) {
  if (!p0.is_positive() || !p1.is_positive()) {
    throw std::invalid_argument("mixture components must have full support");
  }
  const auto v0 = induced_value_distribution(p0, f);
  const auto v1 = induced_value_distribution(p1, f);
  double tv = 0.0;
  for (std::size_t v = 0; v < v0.size(); ++v) tv += std::abs(v0[v] - v1[v]);
  tv *= 0.5;
  return {tv > kExactTolerance, tv};
}

}  // namespace dichotomy

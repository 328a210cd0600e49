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

// Entropies, Slepian-Wolf constraints for i.i.d. sources, and numeric
// conditional-independence checks. All logarithms are base 2.

#ifndef DICHOTOMY_RATES_H_
#define DICHOTOMY_RATES_H_

#include <span>
#include <vector>

#include "dichotomy/model.h"

namespace dichotomy {

inline constexpr double kExactTolerance = 1e-12;
inline constexpr double kUserTolerance = 1e-9;

// Shannon entropy of a probability vector, with 0 log 0 = 0.
double entropy_bits(std::span<const double> p);

// H(X_A | X_{A^c}) = H(X_L) - H(X_{A^c}). Throws on an empty subset.
double conditional_entropy(const JointDistribution& p, TerminalSet subset);

RateRegion sw_region(const JointDistribution& p);

// Every subset constraint sum_{l in A} R_l >= h(A) holds up to
// kUserTolerance. Throws if rates.size() != L.
bool region_contains(const RateRegion& region, std::span<const double> rates);

// Max-norm gap between P_{X_L,V} and P_V * prod_{A in partition} P_{X_A|V}
// for V = f(X_L). Values with P_V(v) = 0 contribute nothing.
double ci_factorization_deviation(const JointDistribution& p,
                                  const FunctionTable& f,
                                  const TerminalPartition& partition);

// Distribution of V = f(X_L), indexed by normalized value code.
std::vector<double> induced_value_distribution(const JointDistribution& p,
                                               const FunctionTable& f);

struct MixtureCiResult {
  // True when the induced value distributions differ (total variation above
  // kExactTolerance); equal distributions are inconclusive and reported false.
  bool induces_ci = false;
  double total_variation = 0.0;
};

// Both components must have full support (std::invalid_argument otherwise).
MixtureCiResult mixture_ci_check(const JointDistribution& p0,
                                 const JointDistribution& p1,
                                 const FunctionTable& f);

}  // namespace dichotomy

#endif  // DICHOTOMY_RATES_H_

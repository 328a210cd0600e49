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

// Functions and random generators shared by the unit and acceptance tests.

#ifndef DICHOTOMY_TESTS_FIXTURES_H_
#define DICHOTOMY_TESTS_FIXTURES_H_

#include <cstdint>
#include <random>
#include <vector>

#include "dichotomy/model.h"

namespace dichotomy::testing {

// 3x3, rows x1, columns x2.
inline FunctionTable table1() {
  return FunctionTable({3, 3}, {0, 3, 3, 0, 4, 2, 1, 1, 2});
}

inline FunctionTable table2() {
  return FunctionTable({3, 3}, {0, 1, 2, 3, 4, 2, 3, 4, 2});
}

// Rows (x1,x2), columns (x3,x4).
inline FunctionTable table4() {
  return FunctionTable({2, 2, 2, 2},
                       {0, 0, 4, 0, 1, 6, 4, 2, 1, 6, 4, 5, 1, 3, 3, 3});
}

// f_1(x1) = x1; f_l(..., 0) = f_{l-1}(...); f_l(..., 1) = l.
inline FunctionTable example8(std::size_t num_terminals) {
  std::vector<std::int64_t> values = {0, 1};
  for (std::size_t l = 2; l <= num_terminals; ++l) {
    std::vector<std::int64_t> next;
    next.reserve(values.size() * 2);
    for (std::int64_t v : values) {
      next.push_back(v);
      next.push_back(static_cast<std::int64_t>(l));
    }
    values = std::move(next);
  }
  return FunctionTable(std::vector<std::size_t>(num_terminals, 2),
                       std::move(values));
}

inline FunctionTable mod2sum() { return FunctionTable({2, 2}, {0, 1, 1, 0}); }

// Values drawn uniformly from 0..max_value-1.
inline FunctionTable random_function(std::mt19937_64& rng,
                                     const std::vector<std::size_t>& sizes,
                                     std::int64_t max_value) {
  std::size_t n = 1;
  for (std::size_t s : sizes) n *= s;
  std::uniform_int_distribution<std::int64_t> pick(0, max_value - 1);
  std::vector<std::int64_t> values(n);
  for (auto& v : values) v = pick(rng);
  return FunctionTable(sizes, std::move(values));
}

// Random shape with 1..max_terminals terminals of size 2..max_alphabet.
inline std::vector<std::size_t> random_shape(std::mt19937_64& rng,
                                             std::size_t max_terminals,
                                             std::size_t max_alphabet) {
  std::uniform_int_distribution<std::size_t> terminals(1, max_terminals);
  std::uniform_int_distribution<std::size_t> alphabet(2, max_alphabet);
  std::vector<std::size_t> sizes(terminals(rng));
  for (auto& s : sizes) s = alphabet(rng);
  return sizes;
}

inline JointDistribution random_distribution(std::mt19937_64& rng,
                                             const std::vector<std::size_t>& sizes) {
  std::size_t n = 1;
  for (std::size_t s : sizes) n *= s;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) total += (x = u(rng));
  for (auto& x : p) x /= total;
  return JointDistribution(sizes, std::move(p));
}

}  // namespace dichotomy::testing

#endif  // DICHOTOMY_TESTS_FIXTURES_H_

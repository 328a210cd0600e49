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

#include "dichotomy/oracle.h"

#include <gtest/gtest.h>

#include <stdexcept>

#include "dichotomy/classify.h"
#include "dichotomy/rates.h"
#include "dichotomy/structure.h"
#include "fixtures.h"

namespace dichotomy {
namespace {

TEST(NaivePseudoIdentity, KnownFunctions) {
  for (std::size_t l = 2; l <= 5; ++l) {
    EXPECT_TRUE(naive_pseudo_identity(testing::example8(l), TerminalSet::full(l)));
  }
  EXPECT_FALSE(naive_pseudo_identity(testing::mod2sum(), TerminalSet::full(2)));
  EXPECT_FALSE(naive_pseudo_identity(testing::table1(), TerminalSet::full(2)));
  EXPECT_THROW(naive_pseudo_identity(testing::table1(), TerminalSet()),
               std::invalid_argument);
}

TEST(NaivePseudoIdentity, AgreesOnRandomFunctions) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sizes = testing::random_shape(rng, 3, 3);
    const FunctionTable f = testing::random_function(rng, sizes, 8);
    EXPECT_EQ(pseudo_identity(f).holds,
              naive_pseudo_identity(f, TerminalSet::full(sizes.size())))
        << trial;
  }
}

TEST(BruteForceTuple, TableTwo) {
  const auto t = brute_force_finest_tuple(testing::table2(), TerminalSet::single(0));
  EXPECT_EQ(t.at(0).to_string(), "{{0},{1,2}}");
  EXPECT_TRUE(brute_force_finest_tuple(testing::table2(), TerminalSet::single(1))
                  .at(1)
                  .is_finest());
  EXPECT_THROW(brute_force_finest_tuple(FunctionTable({6, 2}, std::vector<std::int64_t>(12, 0)),
                                        TerminalSet::full(2)),
               std::invalid_argument);
}

TEST(CiFalsifier, FindsViolationsOnlyWhenTheConditionFails) {
  const FunctionTable f = testing::table4();
  for (const auto& part : search_order_partitions(4)) {
    const bool ci = check_ci_condition(f, part).holds;
    const auto found = ci_falsifier(f, part, 20, 42);
    EXPECT_EQ(found.has_value(), !ci) << part.to_string();
    if (found) {
      EXPECT_GT(ci_factorization_deviation(*found, f, part), kFalsifierThreshold);
    }
  }
  EXPECT_THROW(ci_falsifier(f, TerminalPartition::finest(4), 0, 1),
               std::invalid_argument);
}

TEST(CiFalsifier, Seeded) {
  const FunctionTable f = testing::mod2sum();
  const auto a = ci_falsifier(f, TerminalPartition::finest(2), 5, 7);
  const auto b = ci_falsifier(f, TerminalPartition::finest(2), 5, 7);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->probabilities(), b->probabilities());
}

TEST(Reconstruct, ClassAndType) {
  const AlphabetPartition p(std::vector<std::uint32_t>{0, 1, 1});
  const std::vector<std::uint32_t> labels = {1, 0, 1};
  const std::vector<std::size_t> counts = {1, 1, 1};
  EXPECT_EQ(reconstruct_from_class_and_type(p, labels, counts),
            (std::vector<Symbol>{1, 0, 2}));

  const std::vector<std::uint32_t> zeros = {0, 0, 0};
  const std::vector<std::size_t> two_one = {2, 1};
  EXPECT_EQ(reconstruct_from_class_and_type(AlphabetPartition::trivial(2), zeros,
                                            two_one),
            (std::vector<Symbol>{0, 0, 1}));

  const std::vector<std::size_t> bad = {1, 2, 1};
  EXPECT_THROW(reconstruct_from_class_and_type(p, labels, bad),
               std::invalid_argument);
  const std::vector<std::uint32_t> out_of_range = {2, 0, 1};
  EXPECT_THROW(reconstruct_from_class_and_type(p, out_of_range, counts),
               std::invalid_argument);
}

TEST(XiMapping, TableTwo) {
  const FunctionTable f = testing::table2();
  const auto finest = finest_semi_informative_tuple(f, TerminalSet::single(0));
  const auto xi = construct_xi_single_letter(f, TerminalSet::single(0), finest);
  ASSERT_TRUE(xi.has_value());
  ASSERT_EQ(xi->table.size(), 2u);
  EXPECT_EQ(xi->table.at({0, 1, 2}), (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(xi->table.at({3, 4, 2}), (std::vector<std::uint32_t>{1}));

  AlphabetPartitionTuple too_fine(2);
  too_fine.set(0, AlphabetPartition::finest(3));
  EXPECT_FALSE(construct_xi_single_letter(f, TerminalSet::single(0), too_fine));
}

}  // namespace
}  // namespace dichotomy

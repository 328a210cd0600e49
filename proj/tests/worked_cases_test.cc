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

// Small hand-checked cases, one group per operation.

#include <gtest/gtest.h>

#include <cmath>

#include "dichotomy/classify.h"
#include "dichotomy/io.h"
#include "dichotomy/oracle.h"
#include "dichotomy/rates.h"
#include "dichotomy/structure.h"
#include "fixtures.h"

namespace dichotomy {
namespace {

using testing::example8;
using testing::mod2sum;
using testing::table1;
using testing::table2;
using testing::table4;

AlphabetPartitionTuple on(std::size_t num_terminals,
                          std::vector<std::pair<std::size_t, AlphabetPartition>> slots) {
  AlphabetPartitionTuple t(num_terminals);
  for (auto& [l, p] : slots) t.set(l, std::move(p));
  return t;
}

TEST(Ingest, FunctionsAndDistributions) {
  const FunctionTable id = parse_function_spec(R"({"alphabets":[2],"values":[0,1]})");
  EXPECT_TRUE(id.is_injective());
  EXPECT_EQ(parse_function_spec(serialize_function(table1())).num_values(), 5u);

  EXPECT_EQ(normalize_values(FunctionTable({4}, {7, 7, 2, 9})).values(),
            (std::vector<std::int64_t>{0, 0, 1, 2}));
  EXPECT_EQ(normalize_values(FunctionTable({3}, {0, 1, 2})).values(),
            (std::vector<std::int64_t>{0, 1, 2}));
  EXPECT_EQ(normalize_values(FunctionTable({4}, {5, 5, 5, 5})).values(),
            (std::vector<std::int64_t>{0, 0, 0, 0}));

  EXPECT_TRUE(validate_distribution(R"({"alphabets":[2,2],"probs":[0.25,0.25,0.25,0.25]})")
                  .is_positive());
  EXPECT_FALSE(validate_distribution(R"({"alphabets":[2,2],"probs":[0.5,0.5,0,0]})")
                   .is_positive());
  EXPECT_THROW(validate_distribution(R"({"alphabets":[2,2],"probs":[0.5,0.6,0,0]})"),
               ParseError);
}

TEST(Structure, ProjectionRows) {
  const ProjectedFunction p1 = project(table1(), TerminalSet::single(0));
  const std::vector<std::vector<std::int64_t>> rows = {{0, 3, 3}, {0, 4, 2}, {1, 1, 2}};
  for (Symbol a = 0; a < 3; ++a) {
    const std::vector<Symbol> x = {a};
    EXPECT_EQ(p1.tuple_at(x), rows[a]);
  }
  const ProjectedFunction p2 = project(table2(), TerminalSet::single(0));
  const std::vector<Symbol> r1 = {1}, r2 = {2};
  EXPECT_EQ(p2.tuple_at(r1), (std::vector<std::int64_t>{3, 4, 2}));
  EXPECT_EQ(p2.tuple_at(r2), (std::vector<std::int64_t>{3, 4, 2}));
}

TEST(Structure, Spans) {
  const std::vector<std::vector<Symbol>> zero = {{0, 0}, {1, 0}};
  EXPECT_EQ(fiber_span(table1(), TerminalSet::full(2), zero), TerminalSet::single(0));
  const std::vector<std::vector<Symbol>> three = {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  EXPECT_EQ(fiber_span(example8(3), TerminalSet::full(3), three), TerminalSet::of({0, 1}));

  EXPECT_EQ(span_union(example8(3), TerminalSet::full(3)), TerminalSet::of({0, 1}));
  EXPECT_EQ(span_union(table4(), TerminalSet::full(4)), TerminalSet::full(4));
}

TEST(Structure, CiViolatingValue) {
  const CiCheck c = check_ci_condition(mod2sum(), TerminalPartition::finest(2));
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.violating_value, 0);
  EXPECT_EQ(c.violating_span, TerminalSet::full(2));
}

TEST(Structure, SemiInformativeTuples) {
  const FunctionTable f = example8(3);
  const TerminalSet a = TerminalSet::of({0, 1});
  const auto merged = on(3, {{0, AlphabetPartition::trivial(2)},
                             {1, AlphabetPartition::finest(2)}});
  EXPECT_EQ(finest_semi_informative_tuple(f, a), merged);
  EXPECT_EQ(brute_force_finest_tuple(f, a), merged);
  EXPECT_TRUE(check_semi_informative(f, a, merged));
  const auto finest = on(3, {{0, AlphabetPartition::finest(2)},
                             {1, AlphabetPartition::finest(2)}});
  EXPECT_FALSE(check_semi_informative(f, a, finest));
  EXPECT_FALSE(construct_xi_single_letter(f, a, finest).has_value());

  const auto t4 = on(4, {{0, AlphabetPartition::finest(2)},
                         {1, AlphabetPartition::finest(2)}});
  EXPECT_TRUE(check_semi_informative(table4(), TerminalSet::of({0, 1}), t4));

  // Injective projection: finest everywhere.
  EXPECT_TRUE(finest_semi_informative_tuple(table1(), TerminalSet::single(0))
                  .at(0)
                  .is_finest());

  for (const FunctionTable& g : {table1(), table2(), mod2sum()}) {
    const auto trivial = AlphabetPartitionTuple::trivial(g.alphabet_sizes());
    EXPECT_TRUE(check_semi_informative(g, TerminalSet::full(2), trivial));
    const auto xi = construct_xi_single_letter(g, TerminalSet::full(2), trivial);
    ASSERT_TRUE(xi.has_value());
    for (const auto& [list, classes] : xi->table) {
      EXPECT_EQ(classes, (std::vector<std::uint32_t>{0, 0}));
    }
  }
}

TEST(Structure, ProductKernelOfFirstRecursionStep) {
  const FunctionTable f = example8(3);
  const auto step = on(3, {{0, AlphabetPartition::trivial(2)},
                           {1, AlphabetPartition::finest(2)},
                           {2, AlphabetPartition::finest(2)}});
  const FunctionTable g = product_with_local(f, step);
  // {000}, {100}, {010,110}, {001,101}, {011,111}.
  EXPECT_EQ(g.num_values(), 5u);
  for (Symbol x2 = 0; x2 < 2; ++x2) {
    for (Symbol x3 = 0; x3 < 2; ++x3) {
      const std::vector<Symbol> a = {0, x2, x3}, b = {1, x2, x3};
      EXPECT_EQ(g(a) == g(b), x2 + x3 > 0);
    }
  }
}

TEST(Classify, SufficientConditionCases) {
  EXPECT_FALSE(sufficient_prop5(table4()));
  EXPECT_TRUE(sufficient_prop6(FunctionTable({2, 2}, {0, 0, 1, 2})));
  EXPECT_FALSE(sufficient_prop6(mod2sum()));
  EXPECT_EQ(classify_smooth(FunctionTable({2, 3}, {0, 1, 2, 3, 4, 5})).answer,
            Answer::kInSwClass);
  EXPECT_EQ(classify_iid(table4()).answer, Answer::kInSwClass);
}

TEST(Classify, ModSumExtendedWitness) {
  const Witness w = counterexample_witness(mod2sum());
  const auto* e = std::get_if<ExtendedCollision>(&w);
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->subset, TerminalSet::full(2));
  for (const auto& pair : e->per_terminal) {
    EXPECT_EQ(pair.first, (std::vector<Symbol>{0, 0}));
    EXPECT_EQ(pair.second, (std::vector<Symbol>{1, 1}));
  }
}

TEST(Rates, EntropyCases) {
  const JointDistribution bits3({2, 2, 2}, std::vector<double>(8, 0.125));
  const RateRegion r = sw_region(bits3);
  for (std::uint32_t mask = 1; mask < 8; ++mask) {
    EXPECT_NEAR(r.at(TerminalSet(mask)), std::popcount(mask), 1e-12);
  }
  EXPECT_NEAR(conditional_entropy(bits3, TerminalSet::full(3)),
              entropy_bits(bits3.probabilities()), 1e-12);

  const JointDistribution point({2, 2}, {0, 0, 1, 0});
  for (double h : sw_region(point).values_by_mask()) EXPECT_NEAR(h, 0.0, 1e-12);

  const JointDistribution bits2({2, 2}, {0.25, 0.25, 0.25, 0.25});
  EXPECT_FALSE(region_contains(sw_region(bits2), std::vector<double>{0.5, 1.4}));
  const JointDistribution dsbs({2, 2}, {0.375, 0.125, 0.125, 0.375});
  EXPECT_TRUE(region_contains(sw_region(dsbs), std::vector<double>{0.82, 1.0}));
}

TEST(Rates, ProductDistributionsNeedNotFactorizeGivenV) {
  // Independent uniform bits: given V = 0 the pair is (0,0) or (1,1), so the
  // product form gives 0.5 * 0.5 * 0.5 = 0.125 against 0.25.
  const JointDistribution p({2, 2}, {0.25, 0.25, 0.25, 0.25});
  EXPECT_NEAR(ci_factorization_deviation(p, mod2sum(), TerminalPartition::finest(2)),
              0.125, 1e-12);
}

TEST(Rates, SeparableFunctionsFactorizeUnderProducts) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const FunctionTable g = testing::random_function(rng, {2}, 2);
    const FunctionTable h = testing::random_function(rng, {3, 2}, 4);
    std::vector<std::int64_t> values;
    for (Symbol a = 0; a < 2; ++a) {
      for (std::size_t j = 0; j < 6; ++j) values.push_back(g.value_at(a) * 4 + h.value_at(j));
    }
    const FunctionTable f({2, 3, 2}, values);
    const auto left = testing::random_distribution(rng, {2});
    const auto right = testing::random_distribution(rng, {3, 2});
    std::vector<double> joint;
    for (double x : left.probabilities()) {
      for (double y : right.probabilities()) joint.push_back(x * y);
    }
    const JointDistribution p({2, 3, 2}, joint);
    const TerminalPartition part(3, {TerminalSet::single(0), TerminalSet::of({1, 2})});
    EXPECT_LE(ci_factorization_deviation(p, f, part), 1e-12);
  }
}

TEST(Rates, MixtureCases) {
  const JointDistribution uniform({3, 3}, std::vector<double>(9, 1.0 / 9));
  std::vector<double> skew(9, 1.0 / 12);
  skew[8] = 4.0 / 12;
  const JointDistribution tilted({3, 3}, skew);
  const MixtureCiResult r = mixture_ci_check(uniform, tilted, table1());
  EXPECT_TRUE(r.induces_ci);
  EXPECT_GT(r.total_variation, 0.0);
  const FunctionTable constant({3, 3}, std::vector<std::int64_t>(9, 0));
  const MixtureCiResult c = mixture_ci_check(uniform, tilted, constant);
  EXPECT_FALSE(c.induces_ci);
  EXPECT_NEAR(c.total_variation, 0.0, 1e-12);
}

TEST(Oracle, NaiveAndFalsifierCases) {
  const FunctionTable injective({2, 3}, {5, 4, 3, 2, 1, 0});
  for (std::uint32_t mask = 1; mask < 4; ++mask) {
    EXPECT_TRUE(naive_pseudo_identity(injective, TerminalSet(mask)));
  }
  EXPECT_TRUE(ci_falsifier(mod2sum(), TerminalPartition::finest(2), 100, 1));
  EXPECT_FALSE(ci_falsifier(table1(), TerminalPartition::finest(2), 100, 1));
  const FunctionTable constant({2, 2}, {0, 0, 0, 0});
  EXPECT_TRUE(ci_falsifier(constant, TerminalPartition::finest(2), 100, 1));
}

TEST(Oracle, FinestReconstructionIgnoresCounts) {
  const std::vector<std::uint32_t> labels = {2, 0, 1, 2};
  const std::vector<std::size_t> counts = {1, 1, 2};
  EXPECT_EQ(reconstruct_from_class_and_type(AlphabetPartition::finest(3), labels, counts),
            (std::vector<Symbol>{2, 0, 1, 2}));
}

}  // namespace
}  // namespace dichotomy

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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "dichotomy/classify.h"
#include "dichotomy/oracle.h"
#include "dichotomy/rates.h"
#include "dichotomy/structure.h"
#include "fixtures.h"

namespace {

using namespace dichotomy;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;
  std::function<Outcome()> body;
};

// ---------------------------------------------------------------------------

Outcome table1_markov() {
  Outcome o;
  const FunctionTable f = testing::table1();
  o.require(hk_check(f).holds, "hk_check(table1) is false");
  std::mt19937_64 rng(20260101);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_distribution(rng, {3, 3});
    worst = std::max(worst, ci_factorization_deviation(
                                p, f, TerminalPartition::finest(2)));
  }
  o.require(worst <= 1e-12, "max deviation " + std::to_string(worst));
  return o;
}

Outcome table2_partition() {
  Outcome o;
  const FunctionTable f = testing::table2();
  const auto t1 = finest_semi_informative_tuple(f, TerminalSet::single(0));
  o.require(t1.at(0).to_string() == "{{0},{1,2}}",
            "terminal 1 partition " + t1.at(0).to_string());
  const auto t2 = finest_semi_informative_tuple(f, TerminalSet::single(1));
  o.require(t2.at(1).is_finest(), "terminal 2 partition " + t2.at(1).to_string());
  return o;
}

Outcome table4_certificate() {
  Outcome o;
  const FunctionTable f = testing::table4();
  o.require(necessary_condition(f).holds, "necessary condition fails");
  const CertifyResult r = certify_iid(f);
  o.require(r.status == SearchStatus::kFound, "no certificate");
  if (!r.certificate) return o;
  o.require(r.certificate->depth() == 1,
            "depth " + std::to_string(r.certificate->depth()));
  const auto& step = r.certificate->steps.front();
  o.require(step.terminal_partition.to_string() == "{1,2}/{3,4}",
            "partition " + step.terminal_partition.to_string());
  o.require(step.alphabet_partitions.all_finest(), "tuple not finest");
  o.require(replay_certificate(f, *r.certificate), "replay failed");
  return o;
}

Outcome example8_family() {
  Outcome o;
  for (std::size_t l = 2; l <= 8; ++l) {
    const FunctionTable f = testing::example8(l);
    const PseudoIdentityResult r = pseudo_identity(f);
    o.require(r.holds, "pseudo identity fails at L=" + std::to_string(l));
    o.require(r.trace.size() == l, "trace length " +
                                       std::to_string(r.trace.size()) +
                                       " at L=" + std::to_string(l));
    if (l <= 6) {
      o.require(naive_pseudo_identity(f, TerminalSet::full(l)) == r.holds,
                "naive disagrees at L=" + std::to_string(l));
    }
  }
  const CertifyResult c = certify_iid(testing::example8(3));
  o.require(c.status == SearchStatus::kFound && c.certificate->depth() == 2,
            "L=3 certificate is not depth 2");
  if (c.certificate && c.certificate->depth() == 2) {
    const auto& first = c.certificate->steps[0];
    o.require(first.terminal_partition.to_string() == "{1,2}/{3}",
              "first step partition " + first.terminal_partition.to_string());
    o.require(first.alphabet_partitions.at(0).to_string() == "{{0,1}}",
              "first step X1 " + first.alphabet_partitions.at(0).to_string());
  }
  return o;
}

Outcome modulo_sum() {
  Outcome o;
  const FunctionTable f = testing::mod2sum();
  const NecessaryResult n = necessary_condition(f);
  o.require(!n.holds, "necessary condition holds");
  if (n.witness) {
    o.require(n.witness->first == std::vector<Symbol>{0, 0} &&
                  n.witness->second == std::vector<Symbol>{1, 1},
              "unexpected necessary-condition witness");
  }
  o.require(classify_iid(f).answer == Answer::kNotInSwClass, "iid verdict");
  const Verdict s = classify_smooth(f);
  o.require(s.answer == Answer::kNotInSwClass, "smooth verdict");
  const auto* e = s.witness ? std::get_if<ExtendedCollision>(&*s.witness) : nullptr;
  o.require(e != nullptr, "smooth witness is not an extended collision");
  if (!e) return o;
  o.require(e->block_length() == 2, "block length");
  o.require(replay_witness(f, *s.witness), "witness replay failed");

  // Independent replay on f^2: assemble extended symbols and compare.
  const FunctionTable f2 = power_function(f, 2);
  std::vector<Symbol> x(2), y(2);
  for (std::size_t l = 0; l < 2; ++l) {
    // Extended symbol of terminal l: its letters across the two positions.
    x[l] = e->per_terminal[0].first[l] * 2 + e->per_terminal[1].first[l];
    y[l] = e->per_terminal[0].second[l] * 2 + e->per_terminal[1].second[l];
  }
  o.require(x[0] != y[0] && x[1] != y[1], "extended points share a coordinate");
  o.require(f2(x) == f2(y), "f^2 values differ");
  return o;
}

Outcome strict_inclusion() {
  Outcome o;
  const FunctionTable f = testing::table1();
  o.require(classify_iid(f).answer == Answer::kInSwClass, "iid verdict");
  o.require(classify_smooth(f).answer == Answer::kNotInSwClass, "smooth verdict");
  return o;
}

// Shared sweep over small random functions.
std::vector<FunctionTable> sweep_functions() {
  std::mt19937_64 rng(424242);
  std::vector<FunctionTable> out;
  while (out.size() < 1200) {
    const auto sizes = testing::random_shape(rng, 3, 3);
    std::size_t n = 1;
    for (std::size_t s : sizes) n *= s;
    std::uniform_int_distribution<std::int64_t> range(1, static_cast<std::int64_t>(n));
    out.push_back(testing::random_function(rng, sizes, range(rng)));
  }
  return out;
}

AlphabetPartitionTuple random_tuple(std::mt19937_64& rng, const FunctionTable& f,
                                    TerminalSet a) {
  AlphabetPartitionTuple t(f.num_terminals());
  for (std::size_t l : a.members()) {
    const auto all = set_partitions(f.alphabet_size(l));
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    t.set(l, AlphabetPartition(all[pick(rng)]));
  }
  return t;
}

Outcome oracle_sweep() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::size_t checked = 0;
  for (const FunctionTable& f : sweep_functions()) {
    const TerminalSet full = TerminalSet::full(f.num_terminals());
    o.require(pseudo_identity(f).holds == naive_pseudo_identity(f, full),
              "pseudo identity disagreement");
    for (std::uint32_t mask = 1; mask <= full.mask(); ++mask) {
      const TerminalSet a(mask);
      const auto fast = finest_semi_informative_tuple(f, a);
      o.require(fast == brute_force_finest_tuple(f, a), "finest tuple disagreement");
      for (const auto& t : {fast, random_tuple(rng, f, a)}) {
        o.require(check_semi_informative(f, a, t) ==
                      construct_xi_single_letter(f, a, t).has_value(),
                  "semi-informative vs xi disagreement");
      }
    }
    ++checked;
  }
  o.detail = o.pass ? std::to_string(checked) + " functions, 0 disagreements"
                    : o.detail;
  return o;
}

Outcome implication_sweep() {
  Outcome o;
  std::size_t sufficient = 0, pseudo = 0;
  for (const FunctionTable& f : sweep_functions()) {
    const CertifyResult r = certify_iid(f);
    if (sufficient_prop5(f) || sufficient_prop6(f)) {
      ++sufficient;
      o.require(r.status == SearchStatus::kFound && r.certificate->depth() == 1,
                "sufficient condition without a depth-1 certificate");
    }
    if (pseudo_identity(f).holds) {
      ++pseudo;
      o.require(r.status == SearchStatus::kFound,
                "pseudo identity without a certificate");
    }
    if (r.certificate) {
      o.require(replay_certificate(f, *r.certificate), "certificate replay failed");
    }
  }
  if (o.pass) {
    o.detail = std::to_string(sufficient) + " sufficient, " +
               std::to_string(pseudo) + " pseudo identities, 0 violations";
  }
  return o;
}

Outcome rate_numerics() {
  Outcome o;
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sizes = testing::random_shape(rng, 4, 3);
    const RateRegion r = sw_region(testing::random_distribution(rng, sizes));
    const std::uint32_t full = TerminalSet::full(sizes.size()).mask();
    for (std::uint32_t a = 0; a <= full; ++a) {
      for (std::uint32_t b = 0; b <= full; ++b) {
        const double ha = r.at(TerminalSet(a)), hb = r.at(TerminalSet(b));
        if ((a & b) == a) o.require(ha <= hb + 1e-12, "not monotone");
        o.require(r.at(TerminalSet(a | b)) + r.at(TerminalSet(a & b)) >=
                      ha + hb - 1e-12,
                  "not supermodular");
      }
    }
  }

  const JointDistribution dsbs({2, 2}, {0.375, 0.125, 0.125, 0.375});
  const double h = -0.25 * std::log2(0.25) - 0.75 * std::log2(0.75);
  const RateRegion d = sw_region(dsbs);
  o.require(std::abs(d.at(TerminalSet(1)) - h) <= 1e-9 &&
                std::abs(d.at(TerminalSet(2)) - h) <= 1e-9 &&
                std::abs(d.at(TerminalSet(3)) - (1 + h)) <= 1e-9,
            "DSBS constraints");

  std::vector<FunctionTable> cases = {testing::table1(), testing::table4(),
                                      testing::example8(3), testing::mod2sum()};
  for (int k = 0; k < 20; ++k) {
    cases.push_back(testing::random_function(rng, testing::random_shape(rng, 3, 3), 4));
  }
  // Product form g(x_B) * K + h(x_{B^c}) splits along B by construction.
  for (int k = 0; k < 10; ++k) {
    const auto sizes = testing::random_shape(rng, 4, 3);
    if (sizes.size() < 2) continue;
    const std::uint32_t full = TerminalSet::full(sizes.size()).mask();
    std::uniform_int_distribution<std::uint32_t> pick_block(1, full - 1);
    const TerminalSet b(pick_block(rng));
    const FunctionTable g = testing::random_function(rng, sizes, 3);
    const FunctionTable h = testing::random_function(rng, sizes, 3);
    const IndexSpace space(sizes);
    std::vector<std::int64_t> values(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
      auto x = space.decode(i), y = x;
      for (std::size_t l = 0; l < sizes.size(); ++l) {
        if (b.contains(l)) y[l] = 0; else x[l] = 0;
      }
      values[i] = g(x) * 3 + h(y);
    }
    cases.emplace_back(sizes, std::move(values));
  }
  std::size_t holding = 0;
  for (const FunctionTable& f : cases) {
    if (f.num_terminals() < 2) continue;
    for (const auto& part : search_order_partitions(f.num_terminals())) {
      if (!check_ci_condition(f, part).holds) continue;
      ++holding;
      for (int trial = 0; trial < 100; ++trial) {
        const auto p = testing::random_distribution(rng, f.alphabet_sizes());
        const double dev = ci_factorization_deviation(p, f, part);
        o.require(dev <= 1e-12, "deviation " + std::to_string(dev) + " on " +
                                    part.to_string());
      }
    }
  }
  if (o.pass) o.detail = std::to_string(holding) + " (function, partition) cases";
  return o;
}

std::string capture(const std::function<int(std::ostream&, std::ostream&)>& fn) {
  std::ostringstream out, err;
  const int code = fn(out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path corpus = DICHOTOMY_CORPUS_DIR;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  o.require(!files.empty(), "empty corpus");
  for (const auto& file : files) {
    for (SourceClass c : {SourceClass::kIid, SourceClass::kSmooth}) {
      cli::ClassifyOptions options;
      options.function_file = file;
      options.source_class = c;
      options.format = cli::Format::kMachine;
      auto go = [&](std::ostream& out, std::ostream& err) {
        return cli::run_classify(options, out, err);
      };
      o.require(capture(go) == capture(go),
                "classify differs on " + file.filename().string());
    }
  }
  cli::ReportOptions report;
  report.directory = corpus;
  report.format = cli::Format::kMachine;
  auto go = [&](std::ostream& out, std::ostream& err) {
    return cli::run_report(report, out, err);
  };
  o.require(capture(go) == capture(go), "report differs");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Table I: HK holds, Markov factorization exact", 1.0, table1_markov},
      {2, "Table II: induced partition {{0},{1,2}} x finest", 1.0, table2_partition},
      {3, "Table IV: depth-1 certificate {1,2}/{3,4}", 1.0, table4_certificate},
      {4, "Example-8 family: pseudo identities, depth-2 certificate", 10.0,
       example8_family},
      {5, "mod-2 sum: witnesses for both classes", 1.0, modulo_sum},
      {6, "Table I separates the smooth and i.i.d. classes", 1.0, strict_inclusion},
      {7, "oracle equivalence sweep", 60.0, oracle_sweep},
      {8, "implication suite", 60.0, implication_sweep},
      {9, "rate numerics", 60.0, rate_numerics},
      {10, "deterministic machine output", 60.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (o.pass && seconds >= c.time_limit_s) {
      o.pass = false;
      o.detail = "runtime above " + std::to_string(c.time_limit_s) + " s";
    }
    failures += !o.pass;
    std::printf("%s criterion %2d: %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL",
                c.id, c.title, seconds, o.detail.empty() ? "" : " -- ",
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}

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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dichotomy/io.h"
#include "dichotomy/oracle.h"
#include "dichotomy/rates.h"
#include "dichotomy/structure.h"

namespace dichotomy::cli {
namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Conditions {
  std::optional<bool> hk;
  NecessaryResult necessary;
  bool sufficient_span = false;
  bool sufficient_union = false;
  CertifyResult certification;
  PseudoIdentityResult pseudo;
};

Conditions evaluate(const FunctionTable& f, const SearchBudget& budget) {
  Conditions c;
  if (f.num_terminals() == 2) c.hk = hk_check(f).holds;
  c.necessary = necessary_condition(f);
  c.sufficient_span = sufficient_prop5(f);
  c.sufficient_union = sufficient_prop6(f);
  c.certification = certify_iid(f, budget);
  c.pseudo = pseudo_identity(f);
  return c;
}

Verdict verdict_for(const FunctionTable& f, SourceClass source_class,
                    const SearchBudget& budget) {
  return source_class == SourceClass::kSmooth ? classify_smooth(f)
                                              : classify_iid(f, budget);
}

std::string_view status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound:
      return "found";
    case SearchStatus::kSearchExhausted:
      return "exhausted";
    case SearchStatus::kBudgetExhausted:
      return "budget";
  }
  return "unknown";
}

ordered_json terminal_list(TerminalSet s) {
  ordered_json j = ordered_json::array();
  for (std::size_t l : s.members()) j.push_back(l + 1);
  return j;
}

ordered_json conditions_json(const Conditions& c) {
  ordered_json j;
  j["hk"] = c.hk ? ordered_json(*c.hk) : ordered_json(nullptr);
  j["necessary"] = c.necessary.holds;
  j["sufficient_span"] = c.sufficient_span;
  j["sufficient_union"] = c.sufficient_union;
  j["certification"] = status_name(c.certification.status);
  j["certificate_depth"] =
      c.certification.certificate
          ? ordered_json(c.certification.certificate->depth())
          : ordered_json(nullptr);
  j["pseudo_identity"] = c.pseudo.holds;
  return j;
}

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  j["class"] = to_string(v.source_class);
  j["verdict"] = to_string(v.answer);
  j["certificate"] = v.certificate
                         ? ordered_json::parse(serialize_certificate(*v.certificate))
                         : ordered_json(nullptr);
  if (v.trace) {
    ordered_json t = ordered_json::array();
    for (TerminalSet s : *v.trace) t.push_back(terminal_list(s));
    j["trace"] = std::move(t);
  } else {
    j["trace"] = nullptr;
  }
  j["witness"] = v.witness ? ordered_json::parse(serialize_witness(*v.witness))
                           : ordered_json(nullptr);
  j["note"] = v.note;
  return j;
}

std::string join_sizes(const std::vector<std::size_t>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0) out += 'x';
    out += std::to_string(sizes[i]);
  }
  return out;
}

std::string symbols(const std::vector<Symbol>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(x[i]);
  }
  return out + ")";
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void write_witness_text(const Witness& w, std::ostream& out) {
  if (const auto* c = std::get_if<ProjectionCollision>(&w)) {
    out << "  projection collision on " << c->subset.to_string() << ": "
        << symbols(c->first) << " vs " << symbols(c->second) << '\n';
    return;
  }
  const auto& e = std::get<ExtendedCollision>(w);
  out << "  extended collision on " << e.subset.to_string()
      << ", block length " << e.block_length() << '\n';
  const auto members = e.subset.members();
  for (std::size_t i = 0; i < e.per_terminal.size(); ++i) {
    out << "    terminal " << members[i] + 1 << ": "
        << symbols(e.per_terminal[i].first) << " vs "
        << symbols(e.per_terminal[i].second) << '\n';
  }
}

void write_verdict_text(const Verdict& v, std::ostream& out) {
  if (v.certificate) {
    out << "\ncertificate (depth " << v.certificate->depth() << ")\n";
    if (v.certificate->steps.empty()) out << "  (empty: f is injective)\n";
    for (std::size_t i = 0; i < v.certificate->steps.size(); ++i) {
      const auto& step = v.certificate->steps[i];
      out << "  step " << i + 1 << ": " << step.terminal_partition.to_string()
          << "  " << step.alphabet_partitions.to_string() << '\n';
    }
  }
  if (v.trace) {
    out << "\ntrace\n  ";
    for (std::size_t i = 0; i < v.trace->size(); ++i) {
      if (i > 0) out << " ⊋ ";
      out << (*v.trace)[i].to_string();
    }
    out << '\n';
  }
  if (v.witness) {
    out << "\nwitness\n";
    write_witness_text(*v.witness, out);
  }
}

std::string certification_text(const CertifyResult& r) {
  if (r.status == SearchStatus::kFound) {
    return "found (depth " + std::to_string(r.certificate->depth()) + ")";
  }
  return r.status == SearchStatus::kBudgetExhausted ? "budget exhausted"
                                                    : "none";
}

// Display width of UTF-8 text, one column per code point.
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char ch) { return (ch & 0xC0) != 0x80; }));
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

std::string mark(bool b) { return b ? "✓" : "✗"; }

struct ReportRow {
  std::string file;
  std::string error;
  std::vector<std::size_t> alphabets;
  Conditions conditions;
  Answer iid = Answer::kUnknown;
  Answer smooth = Answer::kUnknown;
};

ReportRow report_row(const fs::path& path, const SearchBudget& budget) {
  ReportRow row;
  row.file = path.filename().string();
  try {
    const FunctionTable f = load_function(path);
    row.alphabets = f.alphabet_sizes();
    row.conditions = evaluate(f, budget);
    row.iid = verdict_for(f, SourceClass::kIid, budget).answer;
    row.smooth = verdict_for(f, SourceClass::kSmooth, budget).answer;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

void check_alphabets(const FunctionTable& f, const JointDistribution& p) {
  if (f.alphabet_sizes() != p.alphabet_sizes()) {
    throw std::invalid_argument("alphabet mismatch: function is " +
                                join_sizes(f.alphabet_sizes()) +
                                ", distribution is " +
                                join_sizes(p.alphabet_sizes()));
  }
}

int fail(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what() << '\n';
  return kExitError;
}

}  // namespace

std::vector<double> parse_rates(const std::string& text) {
  std::vector<double> rates;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double r = 0.0;
    try {
      r = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rate '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(r) || r < 0.0) {
      throw std::invalid_argument("bad rate '" + item + "'");
    }
    rates.push_back(r);
  }
  if (rates.empty()) throw std::invalid_argument("empty rate list");
  return rates;
}

int run_classify(const ClassifyOptions& options, std::ostream& out,
                 std::ostream& err) {
  try {
    const FunctionTable f = load_function(options.function_file);
    const Conditions c = evaluate(f, options.budget);
    const Verdict v = verdict_for(f, options.source_class, options.budget);
    const std::string name = options.function_file.filename().string();

    if (options.format == Format::kMachine) {
      ordered_json j;
      j["file"] = name;
      j["alphabets"] = f.alphabet_sizes();
      j["num_values"] = f.num_values();
      j["conditions"] = conditions_json(c);
      j.update(verdict_json(v));
      out << j.dump(2) << '\n';
      return kExitOk;
    }

    out << "file       " << name << '\n'
        << "alphabets  " << join_sizes(f.alphabet_sizes()) << '\n'
        << "values     " << f.num_values() << '\n'
        << "class      " << to_string(v.source_class) << '\n'
        << "verdict    " << to_string(v.answer) << '\n';
    if (!v.note.empty()) out << "note       " << v.note << '\n';
    out << "\nconditions\n"
        << "  hk                " << (c.hk ? yes_no(*c.hk) : "n/a") << '\n'
        << "  necessary         " << yes_no(c.necessary.holds) << '\n'
        << "  sufficient-span   " << yes_no(c.sufficient_span) << '\n'
        << "  sufficient-union  " << yes_no(c.sufficient_union) << '\n'
        << "  certified         " << certification_text(c.certification) << '\n'
        << "  pseudo-identity   " << yes_no(c.pseudo.holds) << '\n';
    write_verdict_text(v, out);
    return kExitOk;
  } catch (const std::exception& e) {
    return fail(err, e);
  }
}

int run_report(const ReportOptions& options, std::ostream& out,
               std::ostream& err) {
  std::vector<fs::path> files;
  try {
    if (!fs::is_directory(options.directory)) {
      throw std::invalid_argument("not a directory: " +
                                  options.directory.string());
    }
    for (const auto& entry : fs::directory_iterator(options.directory)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
  } catch (const std::exception& e) {
    return fail(err, e);
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });

  std::vector<std::future<ReportRow>> pending;
  for (const auto& path : files) {
    pending.push_back(std::async(std::launch::async, report_row, path,
                                 options.budget));
  }
  std::vector<ReportRow> rows;
  for (auto& p : pending) rows.push_back(p.get());

  if (options.format == Format::kMachine) {
    ordered_json list = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      j["file"] = r.file;
      if (!r.error.empty()) {
        j["error"] = r.error;
      } else {
        j["alphabets"] = r.alphabets;
        j["conditions"] = conditions_json(r.conditions);
        j["verdicts"] = {{"iid", to_string(r.iid)},
                         {"smooth", to_string(r.smooth)}};
      }
      list.push_back(std::move(j));
    }
    ordered_json doc;
    doc["rows"] = std::move(list);
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  const std::vector<std::string> header = {
      "file", "alphabets", "hk", "necessary", "suff-span", "suff-union",
      "certified", "pseudo-id", "iid", "smooth"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      cells.push_back({r.file, "error: " + r.error});
      continue;
    }
    const Conditions& c = r.conditions;
    std::string cert = c.certification.status == SearchStatus::kFound
                           ? mark(true)
                       : c.certification.status == SearchStatus::kBudgetExhausted
                           ? "?"
                           : mark(false);
    cells.push_back({r.file, join_sizes(r.alphabets),
                     c.hk ? mark(*c.hk) : "-", mark(c.necessary.holds),
                     mark(c.sufficient_span), mark(c.sufficient_union), cert,
                     mark(c.pseudo.holds), std::string(to_string(r.iid)),
                     std::string(to_string(r.smooth))});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t k = 0; k < header.size(); ++k) width[k] = header[k].size();
  for (const auto& row : cells) {
    if (row.size() != header.size()) {
      width[0] = std::max(width[0], display_width(row[0]));
      continue;
    }
    for (std::size_t k = 0; k < row.size(); ++k) {
      width[k] = std::max(width[k], display_width(row[k]));
    }
  }
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) line += "  ";
      line += k + 1 < row.size() ? pad(row[k], width[k]) : row[k];
    }
    out << line << '\n';
  };
  emit(header);
  for (const auto& row : cells) emit(row);
  return kExitOk;
}

int run_region(const RegionOptions& options, std::ostream& out,
               std::ostream& err) {
  try {
    const JointDistribution p = load_distribution(options.distribution_file);
    std::optional<FunctionTable> f;
    if (options.function_file) {
      f = load_function(*options.function_file);
      check_alphabets(*f, p);
    }
    if (options.rates && options.rates->size() != p.num_terminals()) {
      throw std::invalid_argument(
          "--rates needs " + std::to_string(p.num_terminals()) + " entries");
    }
    std::optional<TerminalPartition> partition;
    if (options.ci_partition) {
      if (!f) throw std::invalid_argument("--ci-partition needs a function file");
      partition = parse_terminal_partition(*options.ci_partition, f->num_terminals());
    }

    const RateRegion region = sw_region(p);
    const std::uint32_t full = TerminalSet::full(p.num_terminals()).mask();
    std::optional<bool> inside;
    if (options.rates) inside = region_contains(region, *options.rates);
    std::optional<double> deviation;
    if (partition) deviation = ci_factorization_deviation(p, *f, *partition);

    if (options.format == Format::kMachine) {
      ordered_json j;
      j["alphabets"] = p.alphabet_sizes();
      ordered_json constraints;
      for (std::uint32_t mask = 1; mask <= full; ++mask) {
        constraints[std::to_string(mask)] = region.at(TerminalSet(mask));
      }
      j["constraints"] = std::move(constraints);
      if (options.rates) {
        j["rates"] = *options.rates;
        j["inside"] = *inside;
      }
      if (partition) {
        j["ci_partition"] = partition->to_string();
        j["ci_deviation"] = *deviation;
      }
      out << j.dump(2) << '\n';
      return kExitOk;
    }

    out << "constraints (bits)\n";
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      const TerminalSet s(mask);
      out << "  " << pad(s.compact(), 2 * p.num_terminals()) << "  "
          << fixed6(region.at(s)) << '\n';
    }
    if (options.rates) {
      out << "\nrates ";
      for (std::size_t i = 0; i < options.rates->size(); ++i) {
        out << (i > 0 ? "," : "") << (*options.rates)[i];
      }
      out << ": " << (*inside ? "inside" : "outside") << '\n';
    }
    if (partition) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g", *deviation);
      out << "\nci deviation " << partition->to_string() << ": " << buf << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return fail(err, e);
  }
}

int run_witness(const WitnessOptions& options, std::ostream& out,
                std::ostream& err) {
  try {
    const FunctionTable f = load_function(options.function_file);
    std::optional<Witness> w;
    bool replays = false;
    if (options.verify_file) {
      w = parse_witness(read_file(*options.verify_file));
      replays = replay_witness(f, *w);
    } else if (options.source_class == SourceClass::kSmooth) {
      if (!pseudo_identity(f).holds) w = counterexample_witness(f);
    } else {
      const NecessaryResult r = necessary_condition(f);
      if (!r.holds) w = *r.witness;
    }
    if (w && !options.verify_file) replays = replay_witness(f, *w);

    if (options.format == Format::kMachine) {
      ordered_json j;
      j["file"] = options.function_file.filename().string();
      j["class"] = to_string(options.source_class);
      j["witness"] = w ? ordered_json::parse(serialize_witness(*w))
                       : ordered_json(nullptr);
      j["replays"] = replays;
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (!w) {
      out << "no witness: "
          << (options.source_class == SourceClass::kSmooth
                  ? "function is a pseudo identity"
                  : "necessary condition holds")
          << '\n';
      return kExitOk;
    }
    out << "witness\n";
    write_witness_text(*w, out);
    out << "replays    " << yes_no(replays) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    return fail(err, e);
  }
}

int run_oracle_check(const OracleCheckOptions& options, std::ostream& out,
                     std::ostream& err) {
  try {
    const FunctionTable f = load_function(options.function_file);
    std::size_t disagreements = 0;

    const bool fast = pseudo_identity(f).holds;
    const bool naive = naive_pseudo_identity(f, TerminalSet::full(f.num_terminals()));
    disagreements += fast != naive;

    ordered_json subsets = ordered_json::array();
    std::vector<std::string> subset_lines;
    const std::uint32_t full = TerminalSet::full(f.num_terminals()).mask();
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      const TerminalSet a(mask);
      const AlphabetPartitionTuple finest = finest_semi_informative_tuple(f, a);
      std::optional<bool> tuple_agrees;
      try {
        tuple_agrees = brute_force_finest_tuple(f, a) == finest;
      } catch (const std::invalid_argument&) {
        // Beyond the brute-force limits; reported as skipped.
      }
      const bool xi_agrees = check_semi_informative(f, a, finest) ==
                             construct_xi_single_letter(f, a, finest).has_value();
      disagreements += (tuple_agrees && !*tuple_agrees) + !xi_agrees;
      ordered_json s;
      s["subset"] = terminal_list(a);
      s["finest_tuple_agrees"] =
          tuple_agrees ? ordered_json(*tuple_agrees) : ordered_json(nullptr);
      s["xi_agrees"] = xi_agrees;
      subsets.push_back(std::move(s));
      subset_lines.push_back(
          "  " + pad(a.to_string(), 12) + " finest tuple " +
          (tuple_agrees ? (*tuple_agrees ? "agrees" : "DISAGREES") : "skipped") +
          ", xi " + (xi_agrees ? "agrees" : "DISAGREES"));
    }

    ordered_json partitions = ordered_json::array();
    std::vector<std::string> partition_lines;
    for (const auto& part : search_order_partitions(f.num_terminals())) {
      const bool ci = check_ci_condition(f, part).holds;
      const bool falsified =
          ci_falsifier(f, part, options.trials, options.seed).has_value();
      disagreements += ci && falsified;
      ordered_json s;
      s["partition"] = part.to_string();
      s["ci_condition"] = ci;
      s["falsified"] = falsified;
      partitions.push_back(std::move(s));
      partition_lines.push_back("  " + pad(part.to_string(), 16) + " ci " +
                                yes_no(ci) + ", falsified " + yes_no(falsified) +
                                (ci && falsified ? "  DISAGREES" : ""));
    }

    if (options.format == Format::kMachine) {
      ordered_json j;
      j["file"] = options.function_file.filename().string();
      j["seed"] = options.seed;
      j["trials"] = options.trials;
      j["pseudo_identity"] = {{"fast", fast}, {"naive", naive}};
      j["subsets"] = std::move(subsets);
      j["partitions"] = std::move(partitions);
      j["disagreements"] = disagreements;
      out << j.dump(2) << '\n';
    } else {
      out << "pseudo identity  fast " << yes_no(fast) << ", naive "
          << yes_no(naive) << '\n';
      out << "\nsubsets\n";
      for (const auto& line : subset_lines) out << line << '\n';
      out << "\npartitions (" << options.trials << " trials, seed "
          << options.seed << ")\n";
      for (const auto& line : partition_lines) out << line << '\n';
      out << "\ndisagreements  " << disagreements << '\n';
    }
    return disagreements == 0 ? kExitOk : kExitDisagreement;
  } catch (const std::exception& e) {
    return fail(err, e);
  }
}

}  // namespace dichotomy::cli

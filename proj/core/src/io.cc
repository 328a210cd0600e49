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

#include "dichotomy/io.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dichotomy {
namespace {

using nlohmann::ordered_json;

ordered_json parse_json(std::string_view text) {
  try {
    return ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

const ordered_json& require(const ordered_json& doc, const char* key) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::vector<std::size_t> parse_alphabets(const ordered_json& doc) {
  const auto& arr = require(doc, "alphabets");
  if (!arr.is_array() || arr.empty()) {
    throw ParseError("\"alphabets\" must be a nonempty array");
  }
  std::vector<std::size_t> sizes;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) {
      throw ParseError("alphabet sizes must be integers");
    }
    const auto n = v.get<std::int64_t>();
    if (n < 1) {
      throw ParseError("alphabet sizes must be at least 1, got " +
                       std::to_string(n));
    }
    sizes.push_back(static_cast<std::size_t>(n));
  }
  return sizes;
}

std::vector<std::size_t> parse_terminal_list(const ordered_json& arr) {
  if (!arr.is_array()) throw ParseError("terminal list must be an array");
  std::vector<std::size_t> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
      throw ParseError("terminals are positive integers");
    }
    out.push_back(v.get<std::size_t>() - 1);
  }
  return out;
}

TerminalSet to_set(const std::vector<std::size_t>& terminals) {
  TerminalSet s;
  for (std::size_t t : terminals) {
    if (t >= kMaxTerminals) throw ParseError("terminal out of range");
    s |= TerminalSet::single(t);
  }
  return s;
}

ordered_json terminal_list(TerminalSet s) {
  ordered_json arr = ordered_json::array();
  for (std::size_t t : s.members()) arr.push_back(t + 1);
  return arr;
}

std::vector<Symbol> parse_symbols(const ordered_json& arr) {
  if (!arr.is_array()) throw ParseError("symbol tuple must be an array");
  std::vector<Symbol> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw ParseError("symbols are nonnegative integers");
    }
    out.push_back(v.get<Symbol>());
  }
  return out;
}

ProjectionCollision parse_collision(const ordered_json& j) {
  ProjectionCollision c;
  c.subset = to_set(parse_terminal_list(require(j, "subset")));
  c.first = parse_symbols(require(j, "first"));
  c.second = parse_symbols(require(j, "second"));
  if (c.first.size() != c.subset.size() || c.second.size() != c.subset.size()) {
    throw ParseError("witness tuples must have one symbol per subset terminal");
  }
  return c;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FunctionTable parse_function_spec(std::string_view text) {
  const ordered_json doc = parse_json(text);
  std::vector<std::size_t> sizes = parse_alphabets(doc);
  const auto& arr = require(doc, "values");
  if (!arr.is_array()) throw ParseError("\"values\" must be an array");
  std::vector<std::int64_t> values;
  values.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_integer()) {
      throw ParseError("function values must be integers, got " + v.dump());
    }
    values.push_back(v.get<std::int64_t>());
  }
  try {
    return normalize_values(FunctionTable(std::move(sizes), std::move(values)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

FunctionTable load_function(const std::filesystem::path& path) {
  return parse_function_spec(read_file(path));
}

std::string serialize_function(const FunctionTable& f) {
  ordered_json j;
  j["alphabets"] = f.alphabet_sizes();
  j["values"] = f.values();
  return j.dump();
}

JointDistribution validate_distribution(
    std::string_view text, std::span<const std::size_t> expected_sizes) {
  const ordered_json doc = parse_json(text);
  std::vector<std::size_t> sizes = parse_alphabets(doc);
  if (!expected_sizes.empty() &&
      !std::equal(sizes.begin(), sizes.end(), expected_sizes.begin(),
                  expected_sizes.end())) {
    throw ParseError("distribution alphabets do not match the function");
  }
  const auto& arr = require(doc, "probs");
  if (!arr.is_array()) throw ParseError("\"probs\" must be an array");
  std::vector<double> probs;
  probs.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw ParseError("probabilities must be numbers");
    probs.push_back(v.get<double>());
  }
  try {
    return JointDistribution(std::move(sizes), std::move(probs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

JointDistribution load_distribution(const std::filesystem::path& path) {
  return validate_distribution(read_file(path));
}

std::string serialize_distribution(const JointDistribution& p) {
  ordered_json j;
  j["alphabets"] = p.alphabet_sizes();
  j["probs"] = p.probabilities();
  return j.dump();
}

std::string serialize_certificate(const Certificate& c) {
  ordered_json steps = ordered_json::array();
  for (const auto& step : c.steps) {
    ordered_json s;
    ordered_json blocks = ordered_json::array();
    for (TerminalSet b : step.terminal_partition.blocks()) {
      blocks.push_back(terminal_list(b));
    }
    s["terminal_partition"] = std::move(blocks);
    ordered_json parts = ordered_json::array();
    for (std::size_t l = 0; l < step.alphabet_partitions.num_terminals(); ++l) {
      parts.push_back(step.alphabet_partitions.at(l).classes());
    }
    s["alphabet_partitions"] = std::move(parts);
    steps.push_back(std::move(s));
  }
  ordered_json j;
  j["steps"] = std::move(steps);
  return j.dump();
}

Certificate parse_certificate(std::string_view text,
                              std::span<const std::size_t> alphabet_sizes) {
  const ordered_json doc = parse_json(text);
  const auto& steps = require(doc, "steps");
  if (!steps.is_array()) throw ParseError("\"steps\" must be an array");
  const std::size_t num_terminals = alphabet_sizes.size();
  Certificate cert;
  try {
    for (const auto& s : steps) {
      std::vector<TerminalSet> blocks;
      const auto& tp = require(s, "terminal_partition");
      if (!tp.is_array()) throw ParseError("terminal_partition: array expected");
      for (const auto& b : tp) blocks.push_back(to_set(parse_terminal_list(b)));
      const auto& ap = require(s, "alphabet_partitions");
      if (!ap.is_array() || ap.size() != num_terminals) {
        throw ParseError("alphabet_partitions needs one entry per terminal");
      }
      AlphabetPartitionTuple tuple(num_terminals);
      for (std::size_t l = 0; l < num_terminals; ++l) {
        std::vector<std::vector<Symbol>> classes;
        if (!ap[l].is_array()) throw ParseError("partition must be an array");
        for (const auto& c : ap[l]) classes.push_back(parse_symbols(c));
        tuple.set(l, AlphabetPartition::from_classes(alphabet_sizes[l], classes));
      }
      cert.steps.push_back(
          {TerminalPartition(num_terminals, std::move(blocks)), std::move(tuple)});
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return cert;
}

std::string serialize_witness(const Witness& w) {
  ordered_json j;
  if (const auto* c = std::get_if<ProjectionCollision>(&w)) {
    j["kind"] = "projection";
    j["subset"] = terminal_list(c->subset);
    j["first"] = c->first;
    j["second"] = c->second;
  } else {
    const auto& e = std::get<ExtendedCollision>(w);
    j["kind"] = "extended";
    j["subset"] = terminal_list(e.subset);
    j["block_length"] = e.block_length();
    ordered_json pairs = ordered_json::array();
    const auto members = e.subset.members();
    for (std::size_t i = 0; i < e.per_terminal.size(); ++i) {
      ordered_json p;
      p["terminal"] = i < members.size() ? members[i] + 1 : 0;
      p["first"] = e.per_terminal[i].first;
      p["second"] = e.per_terminal[i].second;
      pairs.push_back(std::move(p));
    }
    j["pairs"] = std::move(pairs);
  }
  return j.dump();
}

Witness parse_witness(std::string_view text) {
  const ordered_json doc = parse_json(text);
  const auto& kind = require(doc, "kind");
  if (kind == "projection") return parse_collision(doc);
  if (kind != "extended") throw ParseError("unknown witness kind");
  ExtendedCollision e;
  e.subset = to_set(parse_terminal_list(require(doc, "subset")));
  const auto& pairs = require(doc, "pairs");
  if (!pairs.is_array()) throw ParseError("\"pairs\" must be an array");
  for (const auto& p : pairs) {
    ProjectionCollision c;
    c.subset = e.subset;
    c.first = parse_symbols(require(p, "first"));
    c.second = parse_symbols(require(p, "second"));
    if (c.first.size() != e.subset.size() || c.second.size() != e.subset.size()) {
      throw ParseError("witness tuples must have one symbol per subset terminal");
    }
    e.per_terminal.push_back(std::move(c));
  }
  if (e.per_terminal.size() != e.subset.size()) {
    throw ParseError("extended witness needs one pair per subset terminal");
  }
  return e;
}

TerminalPartition parse_terminal_partition(std::string_view text,
                                           std::size_t num_terminals) {
  std::vector<TerminalSet> blocks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('/', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string block;
    for (char ch : text.substr(pos, end - pos)) {
      if (ch != '{' && ch != '}' && !std::isspace(static_cast<unsigned char>(ch))) {
        block += ch;
      }
    }
    if (block.empty()) throw ParseError("empty block in terminal partition");
    TerminalSet s;
    auto add = [&](const std::string& tok) {
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("bad terminal \"" + tok + "\" in partition");
      }
      const std::size_t t = std::stoul(tok);
      if (t < 1 || t > num_terminals) {
        throw ParseError("terminal " + tok + " out of range");
      }
      s |= TerminalSet::single(t - 1);
    };
    if (block.find(',') != std::string::npos) {
      std::size_t p = 0;
      while (p <= block.size()) {
        std::size_t q = block.find(',', p);
        if (q == std::string::npos) q = block.size();
        add(block.substr(p, q - p));
        p = q + 1;
      }
    } else {
      for (char ch : block) add(std::string(1, ch));
    }
    blocks.push_back(s);
    pos = end + 1;
  }
  try {
    return TerminalPartition(num_terminals, std::move(blocks));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace dichotomy

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

#include "dichotomy/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "dichotomy/evidence.h"

namespace dichotomy {

// ---------------------------------------------------------------------------
// TerminalSet

TerminalSet TerminalSet::full(std::size_t num_terminals) {
  if (num_terminals > kMaxTerminals) {
    throw std::invalid_argument("too many terminals");
  }
  return TerminalSet(num_terminals == 0
                         ? 0u
                         : static_cast<std::uint32_t>((std::uint64_t{1}
                                                       << num_terminals) -
                                                      1));
}

TerminalSet TerminalSet::single(std::size_t terminal) {
  if (terminal >= kMaxTerminals) {
    throw std::invalid_argument("terminal index out of range");
  }
  return TerminalSet(std::uint32_t{1} << terminal);
}

TerminalSet TerminalSet::of(std::initializer_list<std::size_t> terminals) {
  TerminalSet s;
  for (std::size_t t : terminals) s |= single(t);
  return s;
}

std::vector<std::size_t> TerminalSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

TerminalSet TerminalSet::with(std::size_t terminal) const {
  return *this | single(terminal);
}

std::string TerminalSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t t : members()) {
    if (!first) out += ',';
    out += std::to_string(t + 1);
    first = false;
  }
  out += '}';
  return out;
}

std::string TerminalSet::compact() const {
  const auto terms = members();
  const bool wide = !terms.empty() && terms.back() >= 9;
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (wide && i > 0) out += ',';
    out += std::to_string(terms[i] + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// IndexSpace

IndexSpace::IndexSpace(std::vector<std::size_t> alphabet_sizes)
    : sizes_(std::move(alphabet_sizes)) {
  if (sizes_.empty()) {
    throw std::invalid_argument("at least one terminal is required");
  }
  if (sizes_.size() > kMaxTerminals) {
    throw std::invalid_argument("at most " + std::to_string(kMaxTerminals) +
                                " terminals are supported");
  }
  strides_.assign(sizes_.size(), 1);
  size_ = 1;
  for (std::size_t l = sizes_.size(); l-- > 0;) {
    if (sizes_[l] == 0) {
      throw std::invalid_argument("alphabet sizes must be at least 1");
    }
    strides_[l] = size_;
    if (size_ > kMaxTableSize / sizes_[l]) {
      throw std::invalid_argument("table too large");
    }
    size_ *= sizes_[l];
  }
}

std::size_t IndexSpace::encode(std::span<const Symbol> tuple) const {
  if (tuple.size() != sizes_.size()) {
    throw std::invalid_argument("tuple arity mismatch");
  }
  std::size_t index = 0;
  for (std::size_t l = 0; l < sizes_.size(); ++l) {
    if (tuple[l] >= sizes_[l]) {
      throw std::out_of_range("symbol outside alphabet");
    }
    index += tuple[l] * strides_[l];
  }
  return index;
}

std::vector<Symbol> IndexSpace::decode(std::size_t index) const {
  std::vector<Symbol> out(sizes_.size());
  decode_into(index, out);
  return out;
}

void IndexSpace::decode_into(std::size_t index, std::span<Symbol> out) const {
  for (std::size_t l = sizes_.size(); l-- > 0;) {
    out[l] = static_cast<Symbol>(index % sizes_[l]);
    index /= sizes_[l];
  }
}

IndexSpace IndexSpace::restrict_to(TerminalSet subset) const {
  std::vector<std::size_t> sizes;
  for (std::size_t t : subset.members()) {
    if (t >= sizes_.size()) {
      throw std::invalid_argument("subset exceeds terminal count");
    }
    sizes.push_back(sizes_[t]);
  }
  return IndexSpace(std::move(sizes));
}

// ---------------------------------------------------------------------------
// FunctionTable

std::vector<std::uint32_t> dense_codes(std::span<const std::int64_t> values) {
  std::unordered_map<std::int64_t, std::uint32_t> seen;
  std::vector<std::uint32_t> out;
  out.reserve(values.size());
  for (std::int64_t v : values) {
    auto [it, inserted] =
        seen.try_emplace(v, static_cast<std::uint32_t>(seen.size()));
    out.push_back(it->second);
  }
  return out;
}

FunctionTable::FunctionTable(std::vector<std::size_t> alphabet_sizes,
                             std::vector<std::int64_t> values)
    : space_(std::move(alphabet_sizes)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw std::invalid_argument(
        "value table has " + std::to_string(values_.size()) +
        " entries but the alphabets require " + std::to_string(space_.size()));
  }
  std::vector<std::int64_t> sorted = values_;
  std::sort(sorted.begin(), sorted.end());
  num_values_ = static_cast<std::size_t>(
      std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

bool FunctionTable::is_normalized() const {
  std::int64_t next = 0;
  for (std::int64_t v : values_) {
    if (v > next || v < 0) return false;
    if (v == next) ++next;
  }
  return true;
}

FunctionTable normalize_values(const FunctionTable& raw) {
  const auto codes = dense_codes(raw.values());
  return FunctionTable(raw.alphabet_sizes(),
                       std::vector<std::int64_t>(codes.begin(), codes.end()));
}

// ---------------------------------------------------------------------------
// Partitions

std::vector<std::vector<std::uint32_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  // a[i] <= 1 + max(a[0..i-1]) with a[0] = 0.
  std::vector<std::uint32_t> a(n, 0);
  std::vector<std::uint32_t> prefix_max(n, 0);
  while (true) {
    out.push_back(a);
    std::size_t i = n - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

TerminalPartition::TerminalPartition(std::size_t num_terminals,
                                     std::vector<TerminalSet> blocks)
    : num_terminals_(num_terminals), blocks_(std::move(blocks)) {
  if (num_terminals == 0 || num_terminals > kMaxTerminals) {
    throw std::invalid_argument("terminal partition: bad terminal count");
  }
  TerminalSet seen;
  for (TerminalSet b : blocks_) {
    if (b.empty()) {
      throw std::invalid_argument("terminal partition: empty block");
    }
    if (!(seen & b).empty()) {
      throw std::invalid_argument("terminal partition: blocks overlap");
    }
    seen |= b;
  }
  if (seen != TerminalSet::full(num_terminals)) {
    throw std::invalid_argument(
        "terminal partition: blocks do not cover all terminals");
  }
  std::sort(blocks_.begin(), blocks_.end(), [](TerminalSet a, TerminalSet b) {
    return std::countr_zero(a.mask()) < std::countr_zero(b.mask());
  });
}

TerminalPartition TerminalPartition::from_labels(
    std::span<const std::uint32_t> labels) {
  std::vector<TerminalSet> blocks;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (labels[t] >= blocks.size()) blocks.resize(labels[t] + 1);
    blocks[labels[t]] |= TerminalSet::single(t);
  }
  std::erase_if(blocks, [](TerminalSet b) { return b.empty(); });
  return TerminalPartition(labels.size(), std::move(blocks));
}

TerminalPartition TerminalPartition::finest(std::size_t num_terminals) {
  std::vector<TerminalSet> blocks;
  for (std::size_t t = 0; t < num_terminals; ++t) {
    blocks.push_back(TerminalSet::single(t));
  }
  return TerminalPartition(num_terminals, std::move(blocks));
}

TerminalPartition TerminalPartition::trivial(std::size_t num_terminals) {
  return TerminalPartition(num_terminals, {TerminalSet::full(num_terminals)});
}

std::size_t TerminalPartition::block_of(std::size_t terminal) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].contains(terminal)) return i;
  }
  throw std::out_of_range("terminal not covered by partition");
}

std::string TerminalPartition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i > 0) out += '/';
    out += blocks_[i].to_string();
  }
  return out;
}

AlphabetPartition::AlphabetPartition(std::vector<std::uint32_t> labels) {
  std::unordered_map<std::uint32_t, std::uint32_t> relabel;
  labels_.reserve(labels.size());
  for (std::uint32_t l : labels) {
    auto [it, inserted] =
        relabel.try_emplace(l, static_cast<std::uint32_t>(relabel.size()));
    labels_.push_back(it->second);
  }
  num_classes_ = relabel.size();
  if (labels_.empty()) {
    throw std::invalid_argument("alphabet partition over an empty alphabet");
  }
}

AlphabetPartition AlphabetPartition::finest(std::size_t alphabet_size) {
  std::vector<std::uint32_t> labels(alphabet_size);
  std::iota(labels.begin(), labels.end(), 0u);
  return AlphabetPartition(std::move(labels));
}

AlphabetPartition AlphabetPartition::trivial(std::size_t alphabet_size) {
  return AlphabetPartition(std::vector<std::uint32_t>(alphabet_size, 0));
}

AlphabetPartition AlphabetPartition::from_classes(
    std::size_t alphabet_size,
    const std::vector<std::vector<Symbol>>& classes) {
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> labels(alphabet_size, kUnset);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) {
      throw std::invalid_argument("alphabet partition: empty class");
    }
    for (Symbol x : classes[c]) {
      if (x >= alphabet_size) {
        throw std::invalid_argument("alphabet partition: symbol " +
                                    std::to_string(x) + " out of range");
      }
      if (labels[x] != kUnset) {
        throw std::invalid_argument("alphabet partition: symbol " +
                                    std::to_string(x) + " listed twice");
      }
      labels[x] = static_cast<std::uint32_t>(c);
    }
  }
  if (std::find(labels.begin(), labels.end(), kUnset) != labels.end()) {
    throw std::invalid_argument("alphabet partition: classes do not cover");
  }
  return AlphabetPartition(std::move(labels));
}

std::vector<std::vector<Symbol>> AlphabetPartition::classes() const {
  std::vector<std::vector<Symbol>> out(num_classes_);
  for (std::size_t x = 0; x < labels_.size(); ++x) {
    out[labels_[x]].push_back(static_cast<Symbol>(x));
  }
  return out;
}

bool AlphabetPartition::refines(const AlphabetPartition& coarser) const {
  if (coarser.alphabet_size() != alphabet_size()) return false;
  std::vector<std::int64_t> image(num_classes_, -1);
  for (std::size_t x = 0; x < labels_.size(); ++x) {
    auto& slot = image[labels_[x]];
    if (slot < 0) {
      slot = coarser.labels_[x];
    } else if (slot != coarser.labels_[x]) {
      return false;
    }
  }
  return true;
}

AlphabetPartition AlphabetPartition::meet(
    const AlphabetPartition& other) const {
  if (other.alphabet_size() != alphabet_size()) {
    throw std::invalid_argument("meet of partitions over different alphabets");
  }
  std::vector<std::uint32_t> labels(labels_.size());
  for (std::size_t x = 0; x < labels_.size(); ++x) {
    labels[x] = static_cast<std::uint32_t>(labels_[x] * other.num_classes_ +
                                           other.labels_[x]);
  }
  return AlphabetPartition(std::move(labels));
}

std::string AlphabetPartition::to_string() const {
  std::string out = "{";
  const auto cls = classes();
  for (std::size_t c = 0; c < cls.size(); ++c) {
    if (c > 0) out += ',';
    out += '{';
    for (std::size_t i = 0; i < cls[c].size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(cls[c][i]);
    }
    out += '}';
  }
  out += '}';
  return out;
}

AlphabetPartitionTuple AlphabetPartitionTuple::finest(
    std::span<const std::size_t> sizes) {
  AlphabetPartitionTuple t(sizes.size());
  for (std::size_t l = 0; l < sizes.size(); ++l) {
    t.set(l, AlphabetPartition::finest(sizes[l]));
  }
  return t;
}

AlphabetPartitionTuple AlphabetPartitionTuple::trivial(
    std::span<const std::size_t> sizes) {
  AlphabetPartitionTuple t(sizes.size());
  for (std::size_t l = 0; l < sizes.size(); ++l) {
    t.set(l, AlphabetPartition::trivial(sizes[l]));
  }
  return t;
}

const AlphabetPartition& AlphabetPartitionTuple::at(
    std::size_t terminal) const {
  if (terminal >= slots_.size() || !slots_[terminal]) {
    throw std::out_of_range("alphabet partition undefined at terminal " +
                            std::to_string(terminal + 1));
  }
  return *slots_[terminal];
}

void AlphabetPartitionTuple::set(std::size_t terminal,
                                 AlphabetPartition partition) {
  if (terminal >= slots_.size()) {
    throw std::out_of_range("terminal index out of range");
  }
  slots_[terminal] = std::move(partition);
}

TerminalSet AlphabetPartitionTuple::domain() const {
  TerminalSet s;
  for (std::size_t l = 0; l < slots_.size(); ++l) {
    if (slots_[l]) s |= TerminalSet::single(l);
  }
  return s;
}

bool AlphabetPartitionTuple::all_finest() const {
  return std::all_of(slots_.begin(), slots_.end(), [](const auto& s) {
    return !s || s->is_finest();
  });
}

bool AlphabetPartitionTuple::all_trivial() const {
  return std::all_of(slots_.begin(), slots_.end(), [](const auto& s) {
    return !s || s->is_trivial();
  });
}

void AlphabetPartitionTuple::merge(const AlphabetPartitionTuple& other) {
  if (other.num_terminals() != num_terminals()) {
    throw std::invalid_argument("merging tuples of different arity");
  }
  for (std::size_t l = 0; l < slots_.size(); ++l) {
    if (other.slots_[l]) slots_[l] = other.slots_[l];
  }
}

AlphabetPartitionTuple AlphabetPartitionTuple::restricted_to(
    TerminalSet subset) const {
  AlphabetPartitionTuple out(slots_.size());
  for (std::size_t l : subset.members()) out.set(l, at(l));
  return out;
}

std::string AlphabetPartitionTuple::to_string() const {
  std::string out = "(";
  for (std::size_t l = 0; l < slots_.size(); ++l) {
    if (l > 0) out += ", ";
    out += slots_[l] ? slots_[l]->to_string() : std::string("-");
  }
  out += ')';
  return out;
}

// ---------------------------------------------------------------------------
// JointDistribution and RateRegion

JointDistribution::JointDistribution(std::vector<std::size_t> alphabet_sizes,
                                     std::vector<double> probabilities)
    : space_(std::move(alphabet_sizes)), probs_(std::move(probabilities)) {
  if (probs_.size() != space_.size()) {
    throw std::invalid_argument(
        "distribution has " + std::to_string(probs_.size()) +
        " entries but the alphabets require " + std::to_string(space_.size()));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("distribution entries must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kIngestTolerance) {
    std::ostringstream msg;
    msg << "distribution sums to " << total << ", not 1";
    throw std::invalid_argument(msg.str());
  }
  for (double& p : probs_) p /= total;
  positive_ = std::all_of(probs_.begin(), probs_.end(),
                          [](double p) { return p > 0.0; });
}

std::vector<double> JointDistribution::marginal(TerminalSet subset) const {
  if (subset.empty()) return {1.0};
  const IndexSpace sub = space_.restrict_to(subset);
  const auto members = subset.members();
  std::vector<double> out(sub.size(), 0.0);
  std::vector<Symbol> x(space_.num_terminals());
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    space_.decode_into(i, x);
    std::size_t j = 0;
    for (std::size_t k = 0; k < members.size(); ++k) {
      j += x[members[k]] * sub.stride(k);
    }
    out[j] += probs_[i];
  }
  return out;
}

RateRegion::RateRegion(std::size_t num_terminals,
                       std::vector<double> values_by_mask)
    : num_terminals_(num_terminals), values_(std::move(values_by_mask)) {
  if (values_.size() != (std::size_t{1} << num_terminals)) {
    throw std::invalid_argument("rate region needs 2^L entries");
  }
}

// ---------------------------------------------------------------------------
// Evidence helpers

std::string_view to_string(SourceClass c) {
  return c == SourceClass::kSmooth ? "smooth" : "iid";
}

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::kInSwClass:
      return "InSwClass";
    case Answer::kNotInSwClass:
      return "NotInSwClass";
    case Answer::kUnknown:
      return "Unknown";
  }
  return "Unknown";
}

std::optional<SourceClass> parse_source_class(std::string_view text) {
  if (text == "smooth") return SourceClass::kSmooth;
  if (text == "iid") return SourceClass::kIid;
  return std::nullopt;
}

}  // namespace dichotomy

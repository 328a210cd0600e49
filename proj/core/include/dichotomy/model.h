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

// Core value types: terminal sets, index spaces, function tables, partitions
// and joint distributions.
//
// Conventions used everywhere in the library:
//  * Terminals are 0-based in the C++ API and 1-based in every rendered or
//    serialized form.
//  * A tuple x = (x_1, ..., x_L) is stored at the lexicographic index with
//    terminal 1 most significant: idx = ((x_1 * |X_2| + x_2) * |X_3| + ...).
//  * Symbols of terminal l are 0 .. |X_l| - 1.
//
// All types are immutable after construction except AlphabetPartitionTuple,
// which is assembled slot by slot and then treated as a value.

#ifndef DICHOTOMY_MODEL_H_
#define DICHOTOMY_MODEL_H_

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dichotomy {

using Symbol = std::uint32_t;

inline constexpr std::size_t kMaxTerminals = 30;
inline constexpr std::size_t kMaxTableSize = std::size_t{1} << 26;

// A subset of terminals stored as a bitmask; terminal 0 is the lowest bit.
class TerminalSet {
 public:
  constexpr TerminalSet() = default;
  constexpr explicit TerminalSet(std::uint32_t mask) : mask_(mask) {}

  static TerminalSet full(std::size_t num_terminals);
  static TerminalSet single(std::size_t terminal);
  static TerminalSet of(std::initializer_list<std::size_t> terminals);

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  constexpr bool contains(std::size_t terminal) const {
    return terminal < 32 && ((mask_ >> terminal) & 1u) != 0;
  }
  constexpr bool is_subset_of(TerminalSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  std::vector<std::size_t> members() const;

  TerminalSet with(std::size_t terminal) const;
  constexpr TerminalSet operator|(TerminalSet o) const {
    return TerminalSet(mask_ | o.mask_);
  }
  constexpr TerminalSet operator&(TerminalSet o) const {
    return TerminalSet(mask_ & o.mask_);
  }
  constexpr TerminalSet operator-(TerminalSet o) const {
    return TerminalSet(mask_ & ~o.mask_);
  }
  TerminalSet& operator|=(TerminalSet o) {
    mask_ |= o.mask_;
    return *this;
  }
  constexpr auto operator<=>(const TerminalSet&) const = default;

  // "{1,2}" using 1-based terminals.
  std::string to_string() const;
  // Sorted 1-based terminal list, e.g. "12"; comma separated once any
  // terminal exceeds 9.
  std::string compact() const;

 private:
  std::uint32_t mask_ = 0;
};

// Mixed-radix index arithmetic over X_1 x ... x X_L.
class IndexSpace {
 public:
  IndexSpace() = default;
  // Throws std::invalid_argument on an empty shape, a zero alphabet, too many
  // terminals, or a table larger than kMaxTableSize.
  explicit IndexSpace(std::vector<std::size_t> alphabet_sizes);

  std::size_t num_terminals() const { return sizes_.size(); }
  std::size_t size() const { return size_; }
  std::size_t alphabet_size(std::size_t terminal) const {
    return sizes_[terminal];
  }
  const std::vector<std::size_t>& alphabet_sizes() const { return sizes_; }
  std::size_t stride(std::size_t terminal) const { return strides_[terminal]; }

  std::size_t encode(std::span<const Symbol> tuple) const;
  std::vector<Symbol> decode(std::size_t index) const;
  void decode_into(std::size_t index, std::span<Symbol> out) const;

  // The index space of X_A, terminals of A kept in increasing order.
  IndexSpace restrict_to(TerminalSet subset) const;

  friend bool operator==(const IndexSpace& a, const IndexSpace& b) {
    return a.sizes_ == b.sizes_;
  }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

// A total map f: X_1 x ... x X_L -> V given by a flat value table.
//
// Value codes are arbitrary integers; only the kernel (which inputs share an
// output) carries meaning. normalize_values() relabels to 0..|V|-1.
class FunctionTable {
 public:
  // Throws std::invalid_argument when values.size() differs from the product
  // of the alphabet sizes.
  FunctionTable(std::vector<std::size_t> alphabet_sizes,
                std::vector<std::int64_t> values);

  const IndexSpace& space() const { return space_; }
  std::size_t num_terminals() const { return space_.num_terminals(); }
  const std::vector<std::size_t>& alphabet_sizes() const {
    return space_.alphabet_sizes();
  }
  std::size_t alphabet_size(std::size_t terminal) const {
    return space_.alphabet_sizes()[terminal];
  }
  std::size_t size() const { return values_.size(); }
  const std::vector<std::int64_t>& values() const { return values_; }
  std::int64_t value_at(std::size_t index) const { return values_[index]; }
  std::int64_t operator()(std::span<const Symbol> tuple) const {
    return values_[space_.encode(tuple)];
  }

  // |V|: number of distinct values attained.
  std::size_t num_values() const { return num_values_; }
  bool is_normalized() const;
  bool is_injective() const { return num_values_ == values_.size(); }

  friend bool operator==(const FunctionTable& a, const FunctionTable& b) {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

 private:
  IndexSpace space_;
  std::vector<std::int64_t> values_;
  std::size_t num_values_ = 0;
};

// Relabels values to 0..|V|-1 in order of first occurrence.
FunctionTable normalize_values(const FunctionTable& raw);

// First-occurrence dense codes for an arbitrary value sequence.
std::vector<std::uint32_t> dense_codes(std::span<const std::int64_t> values);

// Set partitions of {0..n-1} as restricted growth strings, in lexicographic
// order. Bell(n) entries.
std::vector<std::vector<std::uint32_t>> set_partitions(std::size_t n);

// A partition of the terminal set into disjoint nonempty blocks. Blocks are
// kept sorted by their smallest terminal.
class TerminalPartition {
 public:
  // Throws std::invalid_argument unless the blocks are nonempty, disjoint and
  // cover {0..num_terminals-1}.
  TerminalPartition(std::size_t num_terminals, std::vector<TerminalSet> blocks);

  static TerminalPartition from_labels(std::span<const std::uint32_t> labels);
  static TerminalPartition finest(std::size_t num_terminals);
  static TerminalPartition trivial(std::size_t num_terminals);

  std::size_t num_terminals() const { return num_terminals_; }
  const std::vector<TerminalSet>& blocks() const { return blocks_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  bool is_nontrivial() const { return blocks_.size() >= 2; }
  // Index of the block holding `terminal`.
  std::size_t block_of(std::size_t terminal) const;

  // "{1,2}/{3}".
  std::string to_string() const;

  friend bool operator==(const TerminalPartition&,
                         const TerminalPartition&) = default;

 private:
  std::size_t num_terminals_ = 0;
  std::vector<TerminalSet> blocks_;
};

// A partition of one alphabet X_l, stored as a canonical class label per
// symbol (classes numbered by first occurrence).
class AlphabetPartition {
 public:
  explicit AlphabetPartition(std::vector<std::uint32_t> labels);

  static AlphabetPartition finest(std::size_t alphabet_size);
  static AlphabetPartition trivial(std::size_t alphabet_size);
  // Throws std::invalid_argument unless `classes` partition {0..size-1}.
  static AlphabetPartition from_classes(
      std::size_t alphabet_size,
      const std::vector<std::vector<Symbol>>& classes);

  std::size_t alphabet_size() const { return labels_.size(); }
  std::size_t num_classes() const { return num_classes_; }
  std::uint32_t class_of(Symbol x) const { return labels_[x]; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }
  bool is_finest() const { return num_classes_ == labels_.size(); }
  bool is_trivial() const { return num_classes_ == 1; }
  // Classes as sorted symbol lists, ordered by smallest member.
  std::vector<std::vector<Symbol>> classes() const;
  // True when every class of *this lies inside a class of `coarser`.
  bool refines(const AlphabetPartition& coarser) const;
  // Common refinement.
  AlphabetPartition meet(const AlphabetPartition& other) const;

  // "{{0},{1,2}}".
  std::string to_string() const;

  friend bool operator==(const AlphabetPartition&,
                         const AlphabetPartition&) = default;

 private:
  std::vector<std::uint32_t> labels_;
  std::size_t num_classes_ = 0;
};

// Per-terminal alphabet partitions; a slot may be left undefined when the
// tuple is only meaningful on a subset A of terminals.
class AlphabetPartitionTuple {
 public:
  AlphabetPartitionTuple() = default;
  explicit AlphabetPartitionTuple(std::size_t num_terminals)
      : slots_(num_terminals) {}

  static AlphabetPartitionTuple finest(std::span<const std::size_t> sizes);
  static AlphabetPartitionTuple trivial(std::span<const std::size_t> sizes);

  std::size_t num_terminals() const { return slots_.size(); }
  bool has(std::size_t terminal) const { return slots_[terminal].has_value(); }
  const AlphabetPartition& at(std::size_t terminal) const;
  void set(std::size_t terminal, AlphabetPartition partition);

  TerminalSet domain() const;
  bool covers_all() const { return domain() == TerminalSet::full(slots_.size()); }
  // True when every defined slot is the finest partition.
  bool all_finest() const;
  bool all_trivial() const;

  // Copies the defined slots of `other` into *this.
  void merge(const AlphabetPartitionTuple& other);
  AlphabetPartitionTuple restricted_to(TerminalSet subset) const;

  std::string to_string() const;

  friend bool operator==(const AlphabetPartitionTuple&,
                         const AlphabetPartitionTuple&) = default;

 private:
  std::vector<std::optional<AlphabetPartition>> slots_;
};

// A single-letter probability mass function over X_1 x ... x X_L.
class JointDistribution {
 public:
  static constexpr double kIngestTolerance = 1e-9;

  // Throws std::invalid_argument on a size mismatch, a negative or non-finite
  // entry, or a total mass further than kIngestTolerance from 1. Accepted
  // entries are rescaled so the total is 1 to double precision.
  JointDistribution(std::vector<std::size_t> alphabet_sizes,
                    std::vector<double> probabilities);

  const IndexSpace& space() const { return space_; }
  std::size_t num_terminals() const { return space_.num_terminals(); }
  const std::vector<std::size_t>& alphabet_sizes() const {
    return space_.alphabet_sizes();
  }
  const std::vector<double>& probabilities() const { return probs_; }
  double prob(std::size_t index) const { return probs_[index]; }
  bool is_positive() const { return positive_; }

  // Marginal over X_A, indexed lexicographically in the restricted space.
  // The empty subset yields the single entry {1.0}.
  std::vector<double> marginal(TerminalSet subset) const;

 private:
  IndexSpace space_;
  std::vector<double> probs_;
  bool positive_ = false;
};

// Slepian-Wolf constraint values h(A) = H(X_A | X_{A^c}) in bits, one per
// nonempty subset, addressed by bitmask.
class RateRegion {
 public:
  RateRegion(std::size_t num_terminals, std::vector<double> values_by_mask);

  std::size_t num_terminals() const { return num_terminals_; }
  double at(TerminalSet subset) const { return values_[subset.mask()]; }
  // Entry 0 (the empty set) is always 0.
  const std::vector<double>& values_by_mask() const { return values_; }

 private:
  std::size_t num_terminals_ = 0;
  std::vector<double> values_;
};

}  // namespace dichotomy

#endif  // DICHOTOMY_MODEL_H_

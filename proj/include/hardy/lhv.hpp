#pragma once

// Exhaustive enumeration of local deterministic strategies and exact local
// bounds for paradox specs.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "hardy/paradox.hpp"
#include "hardy/scenario.hpp"

namespace hardy {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

/// d^(2k). Throws std::overflow_error if it does not fit in 64 bits.
std::uint64_t strategy_count(const Scenario& sc);

/// The strategy with lexicographic rank `index`; sA[0] is the most
/// significant digit and sB[k-1] the least.
DeterministicStrategy strategy_at(const Scenario& sc, std::uint64_t index);

/// Lazy lexicographic walk over a contiguous range of strategy ranks.
class StrategyRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = DeterministicStrategy;
    using difference_type = std::ptrdiff_t;
    using reference = const DeterministicStrategy&;
    using pointer = const DeterministicStrategy*;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return rank_ == o.rank_; }
    std::uint64_t rank() const { return rank_; }

   private:
    friend class StrategyRange;
    iterator(const Scenario& sc, std::uint64_t rank);

    int d_ = 2;
    std::uint64_t rank_ = 0;
    DeterministicStrategy current_;
  };

  StrategyRange(const Scenario& sc, std::uint64_t first, std::uint64_t last);

  iterator begin() const { return iterator(sc_, first_); }
  iterator end() const;
  std::uint64_t size() const { return last_ - first_; }

 private:
  Scenario sc_;
  std::uint64_t first_;
  std::uint64_t last_;
};

/// All d^(2k) strategies in lexicographic order. Refuses (std::length_error
/// naming the count) when the count exceeds `cap`.
StrategyRange enumerate_deterministic(const Scenario& sc,
                                      std::uint64_t cap = kDefaultEnumerationCap);

struct LhvOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned threads = 1;
  std::size_t max_argmax = 16;  // argmax strategies kept, lexicographic-first
};

struct LocalBoundReport {
  std::string spec_name;
  /// Max over vertices of success - penalties - constraint events. Exact
  /// integer value stored as double.
  double max_ds = 0.0;
  /// Max DS over the vertices that satisfy every constraint.
  double feasible_max_ds = 0.0;
  std::vector<DeterministicStrategy> argmax;
  std::uint64_t argmax_count = 0;
  std::uint64_t feasible_count = 0;
  std::uint64_t strategies_checked = 0;
};

LocalBoundReport local_max_ds(const ParadoxSpec& spec,
                              const LhvOptions& opts = {});

struct ChainReport {
  bool holds = false;
  std::vector<int> chain;  // outcome values along the spec's chain
  std::optional<std::size_t> violated_constraint;
  bool success_fires = false;
  bool terminal_fires = false;
};

/// Reads the spec's chain off `s`. A strategy violating a constraint yields
/// holds = false with the first violated constraint index.
ChainReport verify_chain(const DeterministicStrategy& s, const ParadoxSpec& spec);

/// P(1,1|1,1) - P(1,1|1,0) - P(1,1|0,1) - P(0,0|0,0) on a (2,2) behavior.
double ch_functional(const Behavior& b);

}  // namespace hardy

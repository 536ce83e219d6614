#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "hardy/lhv.hpp"
#include "hardy/quantum.hpp"
#include "hardy/relabel.hpp"
#include "oracles.hpp"

using namespace hardy;

namespace {

bool is_permutation_of_range(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != static_cast<int>(i)) return false;
  return true;
}

}  // namespace

TEST(IndexRange, HandExpanded) {
  using R = IndexRange;
  EXPECT_EQ(index_range(R::OneMinus, 2), (std::vector<int>{}));
  EXPECT_EQ(index_range(R::One, 2), (std::vector<int>{1}));
  EXPECT_EQ(index_range(R::ZeroMinus, 2), (std::vector<int>{0}));
  EXPECT_EQ(index_range(R::Zero, 2), (std::vector<int>{0, 1}));
  EXPECT_EQ(index_range(R::OneMinus, 3), (std::vector<int>{}));
  EXPECT_EQ(index_range(R::Zero, 3), (std::vector<int>{0, 1}));
  EXPECT_EQ(index_range(R::OneMinus, 5), (std::vector<int>{1}));
  EXPECT_EQ(index_range(R::One, 5), (std::vector<int>{1, 2}));
  EXPECT_EQ(index_range(R::ZeroMinus, 5), (std::vector<int>{0, 1}));
  EXPECT_EQ(index_range(R::OneMinus, 6), (std::vector<int>{1, 2}));
  EXPECT_EQ(index_range(R::Zero, 6), (std::vector<int>{0, 1, 2, 3}));
}

TEST(Map, IsBijectionForAllShapes) {
  for (int k = 2; k <= 12; ++k) {
    for (int d = 2; d <= 12; ++d) {
      const Scenario sc(k, d);
      const auto m = hardy_to_stapp_map(sc);
      EXPECT_NO_THROW(m.validate(sc)) << k << "," << d;
      EXPECT_TRUE(is_permutation_of_range(m.input_map_A));
      EXPECT_TRUE(is_permutation_of_range(m.input_map_B));
      for (const auto& o : m.outcome_map_A) EXPECT_TRUE(is_permutation_of_range(o));
    }
  }
}

TEST(Map, OddKIsInputPermutationOnly) {
  const Scenario sc(3, 3);
  const auto m = hardy_to_stapp_map(sc);
  EXPECT_EQ(m.input_map_A, (std::vector<int>{1, 0, 2}));
  EXPECT_EQ(m.input_map_B, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(m.outcome_map_A, RelabelingMap::identity(sc).outcome_map_A);
  EXPECT_EQ(m.outcome_map_B, RelabelingMap::identity(sc).outcome_map_B);
}

TEST(Map, EvenKReversesOutcomes) {
  const Scenario sc(4, 3);
  const auto m = hardy_to_stapp_map(sc);
  EXPECT_EQ(m.input_map_A, (std::vector<int>{1, 2, 0, 3}));
  EXPECT_EQ(m.input_map_B, (std::vector<int>{1, 0, 2, 3}));
  EXPECT_EQ(m.outcome_map_A, RelabelingMap::outcome_reversal(sc).outcome_map_A);
  // k = 2 needs no input permutation at all.
  EXPECT_EQ(hardy_to_stapp_map(Scenario(2, 2)), RelabelingMap::outcome_reversal(Scenario(2, 2)));
}

TEST(Equivalence, HoldsOnTheWholeGrid) {
  for (int k = 2; k <= 8; ++k) {
    for (int d = 2; d <= 6; ++d) {
      const auto r = verify_equivalence(Scenario(k, d));
      EXPECT_TRUE(r.maps_success) << k << "," << d;
      EXPECT_TRUE(r.success_matches) << k << "," << d;
      EXPECT_TRUE(r.unmatched_source.empty());
      EXPECT_TRUE(r.unmatched_target.empty());
      EXPECT_EQ(r.constraint_bijection.size(), 2u * k - 1);
    }
  }
}

TEST(Equivalence, DetectsWrongMap) {
  // Independent event-set comparison using the identity instead of the map.
  const Scenario sc(3, 2);
  const auto src = generalized_cll(sc, Terminal::ZeroConstraint);
  const auto dst = generalized_fti(sc, Terminal::ZeroConstraint);
  std::set<Event> target;
  for (const auto& c : dst.constraints()) target.insert(c.event);
  const auto m = hardy_to_stapp_map(sc);
  std::set<Event> mapped, unmapped;
  for (const auto& c : src.constraints()) {
    mapped.insert(apply_relabeling(c.event, m));
    unmapped.insert(c.event);
  }
  EXPECT_EQ(mapped, target);
  EXPECT_NE(unmapped, target);
  EXPECT_EQ(apply_relabeling(src.success(), m), dst.success());
}

TEST(Pushforward, PreservesDegreeOfSuccess) {
  std::mt19937_64 rng(17);
  for (int k = 2; k <= 5; ++k) {
    for (int d = 2; d <= 3; ++d) {
      const Scenario sc(k, d);
      const auto src = generalized_cll(sc, Terminal::ZeroConstraint);
      const auto dst = generalized_fti(sc, Terminal::ZeroConstraint);
      const auto m = hardy_to_stapp_map(sc);
      for (int t = 0; t < 5; ++t) {
        const Behavior b = born_behavior(oracle::random_complex_strategy(sc, rng));
        const Behavior pushed = apply_relabeling(b, m);
        EXPECT_NEAR(degree_of_success(dst, pushed), degree_of_success(src, b), 1e-12);
        EXPECT_NEAR(constraint_violations(dst, pushed).max, constraint_violations(src, b).max,
                    1e-12);
        EXPECT_TRUE(check_no_signaling(pushed, 1e-10).passes);
      }
    }
  }
}

TEST(Pushforward, CommutesWithDeterministicBehaviors) {
  const Scenario sc(4, 3);
  const auto m = hardy_to_stapp_map(sc);
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<std::uint64_t> pick(0, strategy_count(sc) - 1);
  for (int i = 0; i < 50; ++i) {
    const auto s = strategy_at(sc, pick(rng));
    const Behavior lhs = apply_relabeling(behavior_from_deterministic(s, sc), m);
    const Behavior rhs = behavior_from_deterministic(apply_relabeling(s, m), sc);
    EXPECT_TRUE(std::equal(lhs.data().begin(), lhs.data().end(), rhs.data().begin()));
  }
}

TEST(Algebra, InverseAndCompose) {
  const Scenario sc(5, 3);
  const auto m = hardy_to_stapp_map(sc);
  const auto id = RelabelingMap::identity(sc);
  EXPECT_EQ(compose(m, inverse(m)), id);
  EXPECT_EQ(compose(inverse(m), m), id);
  const auto rev = RelabelingMap::outcome_reversal(sc);
  EXPECT_EQ(compose(rev, rev), id);
  const Event e = Event::less(sc, 2, 4);
  EXPECT_EQ(apply_relabeling(apply_relabeling(e, m), inverse(m)), e);
  EXPECT_EQ(apply_relabeling(e, compose(m, rev)), apply_relabeling(apply_relabeling(e, m), rev));
}

TEST(Algebra, ValidateRejectsNonBijections) {
  const Scenario sc(2, 2);
  auto m = RelabelingMap::identity(sc);
  m.input_map_A = {0, 0};
  EXPECT_THROW(m.validate(sc), std::invalid_argument);
  m = RelabelingMap::identity(sc);
  m.outcome_map_B[1] = {1, 1};
  EXPECT_THROW(m.validate(sc), std::invalid_argument);
  m = RelabelingMap::identity(sc);
  m.input_map_B = {0, 1, 2};
  EXPECT_THROW(m.validate(sc), std::invalid_argument);
}

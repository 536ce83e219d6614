#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hardy/lhv.hpp"
#include "hardy/paradox.hpp"

using namespace hardy;

namespace {

// Relabel outcomes a -> 1-a for one party of a two-outcome event.
Event flip(const Event& e, bool flip_a, bool flip_b) {
  std::vector<OutcomePair> pairs;
  for (auto [a, b] : e.pairs()) pairs.push_back({flip_a ? 1 - a : a, flip_b ? 1 - b : b});
  return Event(e.x(), e.y(), pairs);
}

std::set<Event> constraint_events(const ParadoxSpec& s) {
  std::set<Event> out;
  for (const auto& c : s.constraints()) out.insert(c.event);
  return out;
}

}  // namespace

TEST(Chsh, HardyConditions) {
  const auto s = hardy_chsh();
  EXPECT_EQ(s.success(), Event::point(1, 1, 1, 1));
  EXPECT_TRUE(s.penalties().empty());
  EXPECT_EQ(constraint_events(s),
            (std::set<Event>{Event::point(0, 0, 0, 0), Event::point(0, 1, 1, 1),
                             Event::point(1, 0, 1, 1)}));
  for (const auto& c : s.constraints()) EXPECT_TRUE(c.exactly_zero());
}

TEST(Chsh, CllMovesOneZeroToPenalty) {
  const auto s = cll_chsh();
  ASSERT_EQ(s.penalties().size(), 1u);
  EXPECT_EQ(s.penalties()[0], Event::point(0, 0, 0, 0));
  EXPECT_EQ(s.constraints().size(), 2u);
}

TEST(Chsh, FtiRelaxation) {
  const auto exact = fti_chsh();
  EXPECT_EQ(exact.penalties(), std::vector<Event>{Event::point(0, 1, 1, 1)});
  EXPECT_DOUBLE_EQ(exact.epsilon_offset(), 0.0);
  const auto relaxed = fti_chsh(0.1);
  EXPECT_DOUBLE_EQ(relaxed.epsilon_offset(), 0.2);
  for (const auto& c : relaxed.constraints()) EXPECT_EQ(c.epsilon, 0.1);
  EXPECT_THROW(fti_chsh(0.5), std::invalid_argument);
  EXPECT_THROW(fti_chsh(-0.01), std::invalid_argument);
}

TEST(Generalized, ConditionCountsAre2k) {
  for (int k = 2; k <= 7; ++k) {
    for (int d = 2; d <= 4; ++d) {
      const Scenario sc(k, d);
      const auto cll = generalized_cll(sc);
      EXPECT_EQ(cll.constraints().size() + cll.penalties().size(), 2u * k - 1) << k;
      const auto hardy = generalized_cll(sc, Terminal::ZeroConstraint);
      EXPECT_EQ(hardy.constraints().size(), 2u * k - 1);
      EXPECT_TRUE(hardy.penalties().empty());
      const auto fti = generalized_fti(sc);
      EXPECT_EQ(fti.constraints().size() + fti.penalties().size(), 2u * k - 1);
      const auto stapp = generalized_fti(sc, Terminal::ZeroConstraint);
      EXPECT_EQ(stapp.constraints().size(), 2u * k - 1);
    }
  }
}

TEST(Generalized, LadderSuccessAlternatesWithParity) {
  EXPECT_EQ(generalized_cll(Scenario(3, 3)).success(), Event::less(Scenario(3, 3), 2, 2));
  EXPECT_EQ(generalized_cll(Scenario(4, 3)).success(), Event::greater(Scenario(4, 3), 3, 3));
  EXPECT_EQ(generalized_fti(Scenario(4, 3)).success(), Event::less(Scenario(4, 3), 3, 3));
}

TEST(Generalized, TwoByTwoHardyIsBobFlipOfChsh) {
  const auto gen = generalized_cll(Scenario(2, 2), Terminal::ZeroConstraint);
  const auto chsh = hardy_chsh();
  EXPECT_EQ(flip(gen.success(), false, true), chsh.success());
  std::set<Event> mapped;
  for (const auto& c : gen.constraints()) mapped.insert(flip(c.event, false, true));
  EXPECT_EQ(mapped, constraint_events(chsh));
}

TEST(Generalized, TwoByTwoCllIsBobFlipOfChsh) {
  const auto gen = generalized_cll(Scenario(2, 2));
  const auto chsh = cll_chsh();
  EXPECT_EQ(flip(gen.success(), false, true), chsh.success());
  ASSERT_EQ(gen.penalties().size(), 1u);
  EXPECT_EQ(flip(gen.penalties()[0], false, true), chsh.penalties()[0]);
  std::set<Event> mapped;
  for (const auto& c : gen.constraints()) mapped.insert(flip(c.event, false, true));
  EXPECT_EQ(mapped, constraint_events(chsh));
}

TEST(Generalized, TwoByTwoFtiIsAliceFlipOfChsh) {
  const auto gen = generalized_fti(Scenario(2, 2));
  const auto chsh = fti_chsh();
  EXPECT_EQ(flip(gen.success(), true, false), chsh.success());
  EXPECT_EQ(flip(gen.penalties()[0], true, false), chsh.penalties()[0]);
  std::set<Event> mapped;
  for (const auto& c : gen.constraints()) mapped.insert(flip(c.event, true, false));
  EXPECT_EQ(mapped, constraint_events(chsh));
}

TEST(Spec, RejectsConstrainedSuccess) {
  const Scenario sc(2, 2);
  EXPECT_THROW(ParadoxSpec("bad", sc, Event::point(0, 0, 1, 1), {},
                           {{Event::point(0, 0, 1, 1), std::nullopt}}),
               std::invalid_argument);
  EXPECT_THROW(ParadoxSpec("bad", sc, Event::point(2, 0, 1, 1), {}, {}),
               std::invalid_argument);
}

TEST(Spec, BuiltinNamesAndErrors) {
  EXPECT_EQ(builtin_families().size(), 7u);
  EXPECT_NO_THROW(builtin_spec("fti", Scenario(2, 2), 0.1));
  EXPECT_THROW(builtin_spec("fti", Scenario(3, 2)), std::invalid_argument);
  EXPECT_THROW(builtin_spec("hardy", Scenario(2, 2), 0.1), std::invalid_argument);
  EXPECT_THROW(builtin_spec("nope", Scenario(2, 2)), std::invalid_argument);
  EXPECT_EQ(builtin_spec("gen-stapp", Scenario(3, 3)).name(), "gen-stapp(k=3,d=3)");
}

TEST(Functional, DegreeOfSuccessOnUniform) {
  const auto u = Behavior::uniform(Scenario(2, 2));
  EXPECT_DOUBLE_EQ(degree_of_success(hardy_chsh(), u), 0.25);
  EXPECT_DOUBLE_EQ(degree_of_success(cll_chsh(), u), 0.0);
  EXPECT_DOUBLE_EQ(degree_of_success(fti_chsh(0.1), u), -0.2);
  const auto v = constraint_violations(fti_chsh(0.1), u);
  EXPECT_DOUBLE_EQ(v.max, 0.15);
  EXPECT_EQ(v.per_constraint.size(), 2u);
  EXPECT_THROW(degree_of_success(hardy_chsh(), Behavior::uniform(Scenario(3, 2))),
               std::invalid_argument);
}

TEST(Functional, VertexFunctionalNonpositiveOnEveryVertex) {
  for (const auto& family : builtin_families()) {
    const Scenario sc = (family == "hardy" || family == "cll" || family == "fti")
                            ? Scenario(2, 2)
                            : Scenario(3, 2);
    const auto spec = builtin_spec(family, sc);
    double best = -1.0;
    for (const auto& s : enumerate_deterministic(sc)) {
      const double v = vertex_functional(spec, behavior_from_deterministic(s, sc));
      EXPECT_LE(v, 0.0) << family << " " << to_string(s);
      best = std::max(best, v);
    }
    EXPECT_EQ(best, 0.0) << family;
  }
}

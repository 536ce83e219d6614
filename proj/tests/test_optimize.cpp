#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hardy/optimize.hpp"

using namespace hardy;

namespace {

OptimizerConfig quick(int restarts = 10, std::uint64_t seed = 0) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(Objective, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(37);
  for (const auto& spec : {fti_chsh(0.05), cll_chsh(), generalized_cll(Scenario(3, 3))}) {
    PenalizedObjective obj(spec, spec.scenario().d);
    obj.set_weight(1e3);
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXd x = obj.random_start(rng);
      obj.update_multipliers(x);  // exercise nonzero multipliers too
      Eigen::VectorXd grad;
      obj.evaluate(x, &grad);
      ASSERT_EQ(grad.size(), obj.num_parameters());
      const double h = 1e-6;
      for (int i = 0; i < x.size(); ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        const double fd = (obj.evaluate(xp, nullptr) - obj.evaluate(xm, nullptr)) / (2 * h);
        EXPECT_NEAR(grad(i), fd, 1e-4 * std::max(1.0, std::abs(fd))) << spec.name() << " " << i;
      }
    }
  }
}

TEST(Objective, ParameterCountAndStrategyDecoding) {
  PenalizedObjective obj(generalized_fti(Scenario(3, 3)), 3);
  EXPECT_EQ(obj.num_parameters(), 9 + 6 * 3);
  std::mt19937_64 rng(41);
  const Eigen::VectorXd x = obj.random_start(rng);
  const auto qs = obj.to_strategy(x);
  EXPECT_EQ(qs.local_dim(), 3);
  EXPECT_NEAR(qs.state().norm(), 1.0, 1e-12);
  EXPECT_NEAR(obj.ds(x), degree_of_success(obj.spec(), born_behavior(qs)), 1e-12);
  EXPECT_NEAR(obj.max_violation(x), constraint_violations(obj.spec(), born_behavior(qs)).max,
              1e-12);
}

TEST(Maximize, ChshOptima) {
  const auto fti = maximize_ds(fti_chsh(), 2, quick());
  EXPECT_TRUE(fti.converged);
  EXPECT_NEAR(fti.ds, 0.125, 1e-4);
  const auto hardy = maximize_ds(hardy_chsh(), 2, quick());
  EXPECT_NEAR(hardy.ds, (5 * std::sqrt(5.0) - 11) / 2, 1e-4);
  const auto cll = maximize_ds(cll_chsh(), 2, quick());
  EXPECT_NEAR(cll.ds, 0.10781, 1e-4);
}

TEST(Maximize, ResultIsSelfConsistent) {
  const auto r = maximize_ds(generalized_cll(Scenario(3, 2)), 2, quick(5));
  EXPECT_NEAR(r.ds, degree_of_success(generalized_cll(Scenario(3, 2)), born_behavior(r.strategy)),
              1e-10);
  EXPECT_TRUE(check_no_signaling(r.behavior, 1e-9).passes);
  EXPECT_LE(r.max_violation, 1e-6);
  EXPECT_EQ(r.restarts_used, 5);
  ASSERT_EQ(r.trace.size(), 5u);
  EXPECT_EQ(r.trace[r.best_restart].ds, r.ds);
  for (const auto& t : r.trace) {
    if (!t.feasible) continue;
    EXPECT_LE(t.ds, r.ds + 1e-12);
  }
}

TEST(Maximize, SeededRunsAreBitIdentical) {
  const auto spec = fti_chsh(0.05);
  const auto a = maximize_ds(spec, 2, quick(4, 99));
  const auto b = maximize_ds(spec, 2, quick(4, 99));
  EXPECT_EQ(a.ds, b.ds);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(a.strategy.state(), b.strategy.state());
  auto threaded = quick(4, 99);
  threaded.threads = 3;
  const auto c = maximize_ds(spec, 2, threaded);
  EXPECT_EQ(a.ds, c.ds);
  EXPECT_EQ(a.strategy.state(), c.strategy.state());
}

TEST(Maximize, ViolationShrinksAcrossPenaltyStages) {
  for (const auto& spec : {cll_chsh(), fti_chsh(0.05), generalized_cll(Scenario(3, 3))}) {
    const auto cfg = quick(10);
    const auto r = maximize_ds(spec, spec.scenario().d, cfg);
    const std::size_t ramp = cfg.penalty_schedule.size();
    for (const auto& t : r.trace) {
      if (!t.feasible) continue;
      const auto& s = t.stages;
      ASSERT_EQ(s.size(), ramp + cfg.polish_rounds);
      for (std::size_t i = 1; i < ramp; ++i)
        EXPECT_LE(s[i].max_violation, s[i - 1].max_violation + 1e-9)
            << spec.name() << " restart " << t.restart << " stage " << i;
      // Multiplier polish at the final weight may jitter but stays feasible.
      for (std::size_t i = ramp; i < s.size(); ++i)
        EXPECT_LE(s[i].max_violation, cfg.feasibility_tol);
    }
  }
}

TEST(Config, ValidationRejectsBadSettings) {
  OptimizerConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.restarts = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.penalty_schedule = {1e3, 1e2, 1e6};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.penalty_schedule = {1e2, 1e3};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.penalty_schedule = {};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Tables, CellsMatchPrintedValues) {
  const auto ia = table_cells(TableId::Ia);
  ASSERT_EQ(ia.size(), 15u);
  EXPECT_EQ(ia.front().row, "Boschi");
  EXPECT_EQ(ia.front().k, 2);
  EXPECT_DOUBLE_EQ(ia[1].printed_lb, 0.17455);
  EXPECT_EQ(ia[1].k, 3);
  const auto ib = table_cells(TableId::Ib);
  ASSERT_EQ(ib.size(), 12u);
  EXPECT_EQ(ib.front().d, 3);
  EXPECT_EQ(ib.front().k, 2);
  const auto ii = table_cells(TableId::II);
  ASSERT_EQ(ii.size(), 18u);
  EXPECT_EQ(ii.back().k, 2);
  EXPECT_EQ(ii.back().d, 7);
  EXPECT_EQ(parse_table_id("II"), TableId::II);
  EXPECT_EQ(to_string(TableId::Ib), "Ib");
  EXPECT_THROW(parse_table_id("III"), std::invalid_argument);
}

TEST(Tables, BudgetSkipsLargeCells) {
  TableBudget budget;
  budget.max_k = 3;
  const auto rows = reproduce_table(TableId::Ia, quick(3), budget);
  ASSERT_EQ(rows.size(), 15u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.lb_found.has_value(), r.cell.k <= 3) << r.cell.row << r.cell.k;
    if (r.lb_found) EXPECT_NEAR(*r.lb_found, r.cell.printed_lb, 2e-3);
  }
}

TEST(Curves, LinspaceAndCsv) {
  EXPECT_EQ(linspace(0.0, 1.0, 5), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(linspace(0.3, 0.3, 1), (std::vector<double>{0.3}));
  EXPECT_THROW(linspace(0.0, 1.0, 0), std::invalid_argument);

  std::ostringstream os;
  write_csv(os, std::vector<MgdsPoint>{{0.1, 0.2048, 1e-12, true}});
  EXPECT_EQ(os.str(), "epsilon,mgds_lb,max_violation,converged\n0.1,0.2048,1e-12,1\n");

  const auto curve = ds_concurrence_curve({0.0, 0.5, 1.0});
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_NEAR(curve[1].hardy, 1.0 / 18.0, 1e-12);
  std::ostringstream cs;
  write_csv(cs, curve);
  EXPECT_EQ(cs.str().substr(0, cs.str().find('\n')), "concurrence,hardy,cll,fti");
}

TEST(Curves, MgdsRejectsOutOfRangeEpsilon) {
  EXPECT_THROW(mgds_curve({0.5}, quick(1)), std::invalid_argument);
  EXPECT_THROW(mgds_curve({-0.1}, quick(1)), std::invalid_argument);
}

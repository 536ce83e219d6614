#include "hardy/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hardy {

double round9(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::stod(buf);
}

namespace {

Json optional_json(const std::optional<double>& v) {
  return v ? Json(round9(*v)) : Json(nullptr);
}

std::string party_name(Party p) { return p == Party::A ? "A" : "B"; }

Party party_from(const std::string& s) {
  if (s == "A") return Party::A;
  if (s == "B") return Party::B;
  throw std::invalid_argument("party must be \"A\" or \"B\", got \"" + s + "\"");
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const Json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw std::invalid_argument("basis matrix has the wrong number of rows");
  }
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      throw std::invalid_argument("basis matrix has the wrong number of columns");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

bool is_real(const Eigen::MatrixXcd& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

Json to_json(const Event& e) {
  Json pairs = Json::array();
  for (const auto& [a, b] : e.pairs()) pairs.push_back({a, b});
  return Json{{"x", e.x()}, {"y", e.y()}, {"pairs", pairs}};
}

Event event_from_json(const Json& j) {
  std::vector<OutcomePair> pairs;
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) {
      throw std::invalid_argument("event pairs must be [a, b] arrays");
    }
    pairs.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  return Event(j.at("x").get<int>(), j.at("y").get<int>(), std::move(pairs));
}

Json to_json(const DeterministicStrategy& s) {
  return Json{{"A", s.sA}, {"B", s.sB}};
}

Json to_json(const Behavior& b) {
  const Scenario& sc = b.scenario();
  Json p = Json::array();
  for (int a = 0; a < sc.d; ++a) {
    Json pa = Json::array();
    for (int bb = 0; bb < sc.d; ++bb) {
      Json pb = Json::array();
      for (int x = 0; x < sc.k; ++x) {
        Json px = Json::array();
        for (int y = 0; y < sc.k; ++y) px.push_back(b(a, bb, x, y));
        pb.push_back(std::move(px));
      }
      pa.push_back(std::move(pb));
    }
    p.push_back(std::move(pa));
  }
  return Json{{"k", sc.k}, {"d", sc.d}, {"p", std::move(p)}};
}

Behavior behavior_from_json(const Json& j) {
  const Scenario sc(j.at("k").get<int>(), j.at("d").get<int>());
  const Json& p = j.at("p");
  std::vector<double> table(sc.num_entries());
  auto check = [](const Json& node, int n) {
    if (!node.is_array() || static_cast<int>(node.size()) != n) {
      throw std::invalid_argument("behavior table has the wrong shape");
    }
  };
  check(p, sc.d);
  for (int a = 0; a < sc.d; ++a) {
    check(p[a], sc.d);
    for (int b = 0; b < sc.d; ++b) {
      check(p[a][b], sc.k);
      for (int x = 0; x < sc.k; ++x) {
        check(p[a][b][x], sc.k);
        for (int y = 0; y < sc.k; ++y)
          table[Behavior::index(sc, a, b, x, y)] = p[a][b][x][y].get<double>();
      }
    }
  }
  return Behavior::from_table(sc, std::move(table));
}

Json to_json(const ParadoxSpec& spec) {
  Json penalties = Json::array();
  for (const auto& e : spec.penalties()) penalties.push_back(to_json(e));
  Json constraints = Json::array();
  for (const auto& c : spec.constraints()) {
    Json cj = to_json(c.event);
    cj["epsilon"] = c.epsilon ? Json(*c.epsilon) : Json(nullptr);
    constraints.push_back(std::move(cj));
  }
  Json j{{"name", spec.name()},
         {"k", spec.scenario().k},
         {"d", spec.scenario().d},
         {"success", to_json(spec.success())},
         {"penalties", std::move(penalties)},
         {"constraints", std::move(constraints)},
         {"epsilon_offset", spec.epsilon_offset()}};
  if (spec.chain()) {
    Json nodes = Json::array();
    for (const auto& n : spec.chain()->nodes)
      nodes.push_back({{"party", party_name(n.party)}, {"input", n.input},
                       {"reversed", n.reversed}});
    j["chain"] = {{"nodes", std::move(nodes)},
                  {"strict_link", spec.chain()->strict_link},
                  {"terminal", to_json(spec.chain()->terminal)}};
  }
  return j;
}

ParadoxSpec spec_from_json(const Json& j) {
  const Scenario sc(j.at("k").get<int>(), j.at("d").get<int>());
  std::vector<Event> penalties;
  for (const auto& e : j.value("penalties", Json::array())) penalties.push_back(event_from_json(e));
  std::vector<Constraint> constraints;
  for (const auto& c : j.value("constraints", Json::array())) {
    std::optional<double> eps;
    if (c.contains("epsilon") && !c["epsilon"].is_null()) eps = c["epsilon"].get<double>();
    constraints.push_back({event_from_json(c), eps});
  }
  std::optional<ChainStructure> chain;
  if (j.contains("chain") && !j["chain"].is_null()) {
    const Json& cj = j["chain"];
    ChainStructure cs{{}, cj.at("strict_link").get<std::size_t>(),
                      event_from_json(cj.at("terminal"))};
    for (const auto& n : cj.at("nodes"))
      cs.nodes.push_back({party_from(n.at("party").get<std::string>()),
                          n.at("input").get<int>(), n.value("reversed", false)});
    chain = std::move(cs);
  }
  return ParadoxSpec(j.value("name", std::string("custom")), sc,
                     event_from_json(j.at("success")), std::move(penalties),
                     std::move(constraints), std::move(chain));
}

Json to_json(const QuantumStrategy& qs) {
  bool real = is_real(qs.state());
  for (const auto* party : {&qs.measurements_A(), &qs.measurements_B()})
    for (const auto& m : *party) real = real && is_real(m.basis);

  auto measurements = [&](const std::vector<ProjectiveMeasurement>& list) {
    Json arr = Json::array();
    for (const auto& m : list) {
      Json mj{{"basis", matrix_json(m.basis.real())}};
      if (!real) mj["basis_imag"] = matrix_json(m.basis.imag());
      mj["outcome_of_column"] = m.outcome_of_column;
      arr.push_back(std::move(mj));
    }
    return arr;
  };
  Json state = Json::array();
  Json state_imag = Json::array();
  for (int i = 0; i < qs.state().size(); ++i) {
    state.push_back(qs.state()(i).real());
    state_imag.push_back(qs.state()(i).imag());
  }
  Json j{{"local_dim", qs.local_dim()},
         {"inputs", qs.inputs()},
         {"outcomes", qs.outcomes()},
         {"state", std::move(state)}};
  if (!real) j["state_imag"] = std::move(state_imag);
  j["measurements_A"] = measurements(qs.measurements_A());
  j["measurements_B"] = measurements(qs.measurements_B());
  return j;
}

QuantumStrategy strategy_from_json(const Json& j) {
  const int dim = j.at("local_dim").get<int>();
  const Json& sj = j.at("state");
  if (!sj.is_array() || static_cast<int>(sj.size()) != dim * dim) {
    throw std::invalid_argument("state must hold local_dim^2 amplitudes");
  }
  Eigen::VectorXcd state(dim * dim);
  for (int i = 0; i < dim * dim; ++i) {
    const double im = j.contains("state_imag") ? j["state_imag"].at(i).get<double>() : 0.0;
    state(i) = {sj[i].get<double>(), im};
  }
  auto measurements = [&](const Json& arr) {
    std::vector<ProjectiveMeasurement> list;
    for (const auto& mj : arr) {
      Eigen::MatrixXcd basis = matrix_from(mj.at("basis"), dim, dim).cast<std::complex<double>>();
      if (mj.contains("basis_imag"))
        basis.imag() = matrix_from(mj["basis_imag"], dim, dim);
      list.push_back({basis, mj.at("outcome_of_column").get<std::vector<int>>()});
    }
    return list;
  };
  return QuantumStrategy(j.at("outcomes").get<int>(), std::move(state),
                         measurements(j.at("measurements_A")),
                         measurements(j.at("measurements_B")));
}

Json to_json(const RelabelingMap& m) {
  return Json{{"input_map_A", m.input_map_A},
              {"input_map_B", m.input_map_B},
              {"outcome_map_A", m.outcome_map_A},
              {"outcome_map_B", m.outcome_map_B}};
}

Json to_json(const LocalBoundReport& r) {
  Json argmax = Json::array();
  for (const auto& s : r.argmax) argmax.push_back(to_json(s));
  return Json{{"spec", r.spec_name},
              {"max_ds", round9(r.max_ds)},
              {"feasible_max_ds", round9(r.feasible_max_ds)},
              {"strategies_checked", r.strategies_checked},
              {"feasible_count", r.feasible_count},
              {"argmax_count", r.argmax_count},
              {"argmax", std::move(argmax)}};
}

Json to_json(const OptimizationResult& r) {
  Json trace = Json::array();
  for (const auto& t : r.trace) {
    Json stages = Json::array();
    for (const auto& s : t.stages)
      stages.push_back({{"weight", s.weight},
                        {"ds", round9(s.ds)},
                        {"max_violation", round9(s.max_violation)},
                        {"iterations", s.iterations}});
    trace.push_back({{"restart", t.restart},
                     {"ds", round9(t.ds)},
                     {"max_violation", round9(t.max_violation)},
                     {"feasible", t.feasible},
                     {"stages", std::move(stages)}});
  }
  // The strategy keeps full precision so it reloads past the orthonormality check.
  Json strategy = to_json(r.strategy);
  return Json{{"spec", r.spec_name},
              {"ds", round9(r.ds)},
              {"max_violation", round9(r.max_violation)},
              {"converged", r.converged},
              {"restarts_used", r.restarts_used},
              {"best_restart", r.best_restart},
              {"strategy", std::move(strategy)},
              {"trace", std::move(trace)}};
}

Json to_json(const std::vector<TableRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"row", r.cell.row},
                   {"family", r.cell.family},
                   {"k", r.cell.k},
                   {"d", r.cell.d},
                   {"lb_found", optional_json(r.lb_found)},
                   {"printed_lb", r.cell.printed_lb},
                   {"max_violation", round9(r.max_violation)},
                   {"converged", r.converged},
                   {"note", r.note}});
  }
  return arr;
}

Json to_json(const EquivalenceReport& r) {
  Json bij = Json::array();
  for (const auto& [src, dst] : r.constraint_bijection)
    bij.push_back({{"source", to_json(src)}, {"target", to_json(dst)}});
  Json us = Json::array();
  for (const auto& e : r.unmatched_source) us.push_back(to_json(e));
  Json ut = Json::array();
  for (const auto& e : r.unmatched_target) ut.push_back(to_json(e));
  return Json{{"k", r.scenario.k},
              {"d", r.scenario.d},
              {"maps_success", r.maps_success},
              {"success_matches", r.success_matches},
              {"map", to_json(r.map)},
              {"constraint_bijection", std::move(bij)},
              {"unmatched_source", std::move(us)},
              {"unmatched_target", std::move(ut)}};
}

Json to_json(const MomentProblem& mp) {
  return Json{{"spec", mp.spec_name},
              {"k", mp.scenario.k},
              {"d", mp.scenario.d},
              {"level", to_string(mp.level)},
              {"matrix_size", mp.matrix_size()},
              {"num_variables", mp.num_variables()},
              {"equalities", mp.equalities.size()},
              {"inequalities", mp.inequalities.size()}};
}

}  // namespace hardy

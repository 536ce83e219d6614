#include "hardy/paradox.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hardy {
namespace {

void check_epsilon(double eps) {
  if (!(eps >= 0.0 && eps < 0.5)) {
    throw std::invalid_argument("epsilon must lie in [0, 1/2), got " +
                                std::to_string(eps));
  }
}

Constraint make_constraint(Event e, double eps) {
  if (eps > 0.0) return {std::move(e), eps};
  return {std::move(e), std::nullopt};
}

std::string spec_name(const std::string& family, const Scenario& sc,
                      double eps) {
  std::ostringstream os;
  os << family << to_string(sc);
  if (eps > 0.0) os << "[eps=" << eps << "]";
  return os.str();
}

// A_0 <= B_1 <= A_2 <= ... (left half), then the mirrored right half down to
// B_0 (or A_0 when the parity flips). Strict link sits at the top rung.
std::vector<ChainNode> ladder_nodes(int k) {
  std::vector<ChainNode> nodes;
  for (int j = 0; j < k; ++j) nodes.push_back({j % 2 == 0 ? Party::A : Party::B, j});
  for (int j = k - 1; j >= 0; --j)
    nodes.push_back({j % 2 == 0 ? Party::B : Party::A, j});
  return nodes;
}

std::vector<ChainNode> transitivity_nodes(int k) {
  std::vector<ChainNode> nodes;
  for (int j = 0; j < k; ++j) {
    nodes.push_back({Party::A, j});
    nodes.push_back({Party::B, j});
  }
  return nodes;
}

}  // namespace

ParadoxSpec::ParadoxSpec(std::string name, Scenario sc, Event success,
                         std::vector<Event> penalties,
                         std::vector<Constraint> constraints,
                         std::optional<ChainStructure> chain)
    : name_(std::move(name)),
      sc_(sc),
      success_(std::move(success)),
      penalties_(std::move(penalties)),
      constraints_(std::move(constraints)),
      chain_(std::move(chain)) {
  success_.validate(sc_);
  for (const auto& e : penalties_) e.validate(sc_);
  for (const auto& c : constraints_) {
    c.event.validate(sc_);
    if (c.epsilon && !(*c.epsilon >= 0.0)) {
      throw std::invalid_argument("constraint epsilon must be nonnegative");
    }
    if (c.event == success_) {
      throw std::invalid_argument("success event " + to_string(success_) +
                                  " is also constrained");
    }
  }
  if (chain_) {
    chain_->terminal.validate(sc_);
    if (chain_->nodes.size() < 2 ||
        chain_->strict_link + 1 >= chain_->nodes.size()) {
      throw std::invalid_argument("malformed chain structure");
    }
    for (const auto& n : chain_->nodes) {
      if (n.input < 0 || n.input >= sc_.k) {
        throw std::invalid_argument("chain node input outside scenario");
      }
    }
  }
}

double ParadoxSpec::epsilon_offset() const {
  double total = 0.0;
  for (const auto& c : constraints_)
    if (c.epsilon) total += *c.epsilon;
  return total;
}

ParadoxSpec hardy_chsh() {
  const Scenario sc(2, 2);
  ChainStructure chain{{{Party::A, 0, false},
                        {Party::B, 1, true},
                        {Party::A, 1, false},
                        {Party::B, 0, true}},
                       1,
                       Event::point(0, 0, 0, 0)};
  return ParadoxSpec(spec_name("hardy", sc, 0.0), sc, Event::point(1, 1, 1, 1), {},
                     {{Event::point(0, 0, 0, 0), std::nullopt},
                      {Event::point(0, 1, 1, 1), std::nullopt},
                      {Event::point(1, 0, 1, 1), std::nullopt}},
                     std::move(chain));
}

ParadoxSpec cll_chsh() {
  const Scenario sc(2, 2);
  ChainStructure chain{{{Party::A, 0, false},
                        {Party::B, 1, true},
                        {Party::A, 1, false},
                        {Party::B, 0, true}},
                       1,
                       Event::point(0, 0, 0, 0)};
  return ParadoxSpec(spec_name("cll", sc, 0.0), sc, Event::point(1, 1, 1, 1),
                     {Event::point(0, 0, 0, 0)},
                     {{Event::point(0, 1, 1, 1), std::nullopt},
                      {Event::point(1, 0, 1, 1), std::nullopt}},
                     std::move(chain));
}

ParadoxSpec fti_chsh(double epsilon) {
  check_epsilon(epsilon);
  const Scenario sc(2, 2);
  ChainStructure chain{{{Party::A, 0, true},
                        {Party::B, 0, false},
                        {Party::A, 1, true},
                        {Party::B, 1, false}},
                       2,
                       Event::point(0, 1, 1, 1)};
  return ParadoxSpec(spec_name("fti", sc, epsilon), sc,
                     Event::point(1, 1, 1, 1), {Event::point(0, 1, 1, 1)},
                     {make_constraint(Event::point(0, 0, 0, 0), epsilon),
                      make_constraint(Event::point(1, 0, 1, 1), epsilon)},
                     std::move(chain));
}

ParadoxSpec generalized_cll(const Scenario& sc, Terminal terminal,
                            double epsilon) {
  check_epsilon(epsilon);
  const int k = sc.k;
  Event success = (k % 2 == 1) ? Event::less(sc, k - 1, k - 1)
                               : Event::greater(sc, k - 1, k - 1);
  std::vector<Constraint> constraints;
  for (int i = 1; i < k; ++i) {
    if (i % 2 == 1) {
      constraints.push_back(make_constraint(Event::greater(sc, i, i - 1), epsilon));
      constraints.push_back(make_constraint(Event::greater(sc, i - 1, i), epsilon));
    } else {
      constraints.push_back(make_constraint(Event::less(sc, i, i - 1), epsilon));
      constraints.push_back(make_constraint(Event::less(sc, i - 1, i), epsilon));
    }
  }
  Event closing = Event::less(sc, 0, 0);
  std::vector<Event> penalties;
  if (terminal == Terminal::Penalty) {
    penalties.push_back(closing);
  } else {
    constraints.push_back(make_constraint(closing, epsilon));
  }
  ChainStructure chain{ladder_nodes(k), static_cast<std::size_t>(k - 1),
                       closing};
  const char* family = terminal == Terminal::Penalty ? "gen-cll" : "gen-hardy";
  return ParadoxSpec(spec_name(family, sc, epsilon), sc, std::move(success),
                     std::move(penalties), std::move(constraints),
                     std::move(chain));
}

ParadoxSpec generalized_fti(const Scenario& sc, Terminal terminal,
                            double epsilon) {
  check_epsilon(epsilon);
  const int k = sc.k;
  std::vector<Constraint> constraints;
  for (int i = 1; i < k; ++i)
    constraints.push_back(make_constraint(Event::less(sc, i, i - 1), epsilon));
  for (int i = 1; i < k; ++i)
    constraints.push_back(make_constraint(Event::greater(sc, i - 1, i - 1), epsilon));
  Event closing = Event::less(sc, 0, k - 1);
  std::vector<Event> penalties;
  if (terminal == Terminal::Penalty) {
    penalties.push_back(closing);
  } else {
    constraints.push_back(make_constraint(closing, epsilon));
  }
  ChainStructure chain{transitivity_nodes(k),
                       static_cast<std::size_t>(2 * k - 2), closing};
  const char* family = terminal == Terminal::Penalty ? "gen-fti" : "gen-stapp";
  return ParadoxSpec(spec_name(family, sc, epsilon), sc,
                     Event::less(sc, k - 1, k - 1), std::move(penalties),
                     std::move(constraints), std::move(chain));
}

const std::vector<std::string>& builtin_families() {
  static const std::vector<std::string> names = {
      "hardy", "cll", "fti", "gen-cll", "gen-fti", "gen-hardy", "gen-stapp"};
  return names;
}

ParadoxSpec builtin_spec(const std::string& family, const Scenario& sc,
                         double epsilon) {
  auto require_chsh = [&] {
    if (sc.k != 2 || sc.d != 2) {
      throw std::invalid_argument("family '" + family +
                                  "' is defined only for k = d = 2");
    }
  };
  auto require_exact = [&] {
    if (epsilon != 0.0) {
      throw std::invalid_argument("family '" + family +
                                  "' has no epsilon-relaxed form");
    }
  };
  if (family == "hardy") {
    require_chsh();
    require_exact();
    return hardy_chsh();
  }
  if (family == "cll") {
    require_chsh();
    require_exact();
    return cll_chsh();
  }
  if (family == "fti") {
    require_chsh();
    return fti_chsh(epsilon);
  }
  if (family == "gen-cll") return generalized_cll(sc, Terminal::Penalty, epsilon);
  if (family == "gen-hardy")
    return generalized_cll(sc, Terminal::ZeroConstraint, epsilon);
  if (family == "gen-fti") return generalized_fti(sc, Terminal::Penalty, epsilon);
  if (family == "gen-stapp")
    return generalized_fti(sc, Terminal::ZeroConstraint, epsilon);
  throw std::invalid_argument("unknown paradox family '" + family + "'");
}

namespace {
void require_match(const ParadoxSpec& spec, const Behavior& b) {
  if (!(spec.scenario() == b.scenario())) {
    throw std::invalid_argument("spec " + spec.name() + " is for " +
                                to_string(spec.scenario()) +
                                " but behavior is for " +
                                to_string(b.scenario()));
  }
}
}  // namespace

double degree_of_success(const ParadoxSpec& spec, const Behavior& b) {
  require_match(spec, b);
  double ds = event_probability(b, spec.success());
  for (const auto& e : spec.penalties()) ds -= event_probability(b, e);
  return ds - spec.epsilon_offset();
}

ViolationReport constraint_violations(const ParadoxSpec& spec,
                                      const Behavior& b) {
  require_match(spec, b);
  ViolationReport report;
  for (const auto& c : spec.constraints()) {
    const double p = event_probability(b, c.event);
    const double v = c.epsilon ? std::max(0.0, p - *c.epsilon) : std::max(0.0, p);
    report.per_constraint.push_back(v);
    report.max = std::max(report.max, v);
  }
  return report;
}

double vertex_functional(const ParadoxSpec& spec, const Behavior& b) {
  require_match(spec, b);
  double value = event_probability(b, spec.success());
  for (const auto& e : spec.penalties()) value -= event_probability(b, e);
  for (const auto& c : spec.constraints()) value -= event_probability(b, c.event);
  return value;
}

}  // namespace hardy

#pragma once

// Hardy-type paradox specifications: a success event, optional penalty
// events and zero (or epsilon-bounded) constraint events, together with the
// degree-of-success functional they define.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hardy/scenario.hpp"

namespace hardy {

struct Constraint {
  Event event;
  /// nullopt: the event probability must vanish. Otherwise P(event) <= eps.
  std::optional<double> epsilon;

  bool exactly_zero() const { return !epsilon.has_value(); }
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

enum class Party { A, B };

/// One outcome in a chain of inequalities s_0 <= s_1 <= ... read off a
/// deterministic strategy. `reversed` reads the outcome as d-1-s.
struct ChainNode {
  Party party;
  int input;
  bool reversed = false;
  friend bool operator==(const ChainNode&, const ChainNode&) = default;
};

/// The ordering a deterministic strategy must obey once it satisfies every
/// constraint of a spec. The link between nodes[strict_link] and
/// nodes[strict_link+1] is the success event; the first and last node
/// compare strictly exactly when `terminal` fires.
struct ChainStructure {
  std::vector<ChainNode> nodes;
  std::size_t strict_link;
  Event terminal;
  friend bool operator==(const ChainStructure&, const ChainStructure&) = default;
};

/// Whether the event closing a generalized chain is a subtracted penalty
/// (CLL / FTI with p, r > 0) or a further zero constraint (Hardy / Stapp).
enum class Terminal { Penalty, ZeroConstraint };

class ParadoxSpec {
 public:
  ParadoxSpec(std::string name, Scenario sc, Event success,
              std::vector<Event> penalties, std::vector<Constraint> constraints,
              std::optional<ChainStructure> chain = std::nullopt);

  const std::string& name() const { return name_; }
  const Scenario& scenario() const { return sc_; }
  const Event& success() const { return success_; }
  const std::vector<Event>& penalties() const { return penalties_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::optional<ChainStructure>& chain() const { return chain_; }

  /// Sum of the epsilons of the relaxed constraints; subtracted from DS.
  double epsilon_offset() const;

  friend bool operator==(const ParadoxSpec&, const ParadoxSpec&) = default;

 private:
  std::string name_;
  Scenario sc_;
  Event success_;
  std::vector<Event> penalties_;
  std::vector<Constraint> constraints_;
  std::optional<ChainStructure> chain_;
};

/// P(0,0|0,0) = P(1,1|0,1) = P(1,1|1,0) = 0, success P(1,1|1,1).
ParadoxSpec hardy_chsh();
/// Hardy with P(0,0|0,0) moved to a penalty: DS = P(1,1|1,1) - P(0,0|0,0).
ParadoxSpec cll_chsh();
/// Penalty P(1,1|0,1); P(0,0|0,0) and P(1,1|1,0) zero, or at most eps when
/// eps > 0. Throws unless 0 <= eps < 1/2.
ParadoxSpec fti_chsh(double epsilon = 0.0);

/// Ladder-type generalization with alternating greater/less constraints.
/// Terminal::ZeroConstraint gives the generalized Hardy paradox (p = 0).
/// eps > 0 relaxes every zero constraint to P <= eps.
ParadoxSpec generalized_cll(const Scenario& sc,
                            Terminal terminal = Terminal::Penalty,
                            double epsilon = 0.0);
/// Transitivity-chain generalization. Terminal::ZeroConstraint gives the
/// generalized Stapp argument (r = 0).
ParadoxSpec generalized_fti(const Scenario& sc,
                            Terminal terminal = Terminal::Penalty,
                            double epsilon = 0.0);

/// Builtin names: hardy, cll, fti (k = d = 2 only), gen-cll, gen-fti,
/// gen-hardy, gen-stapp.
ParadoxSpec builtin_spec(const std::string& family, const Scenario& sc,
                         double epsilon = 0.0);
const std::vector<std::string>& builtin_families();

/// P(success) - sum P(penalty) - sum of relaxed epsilons. Constraint
/// satisfaction is not checked here.
double degree_of_success(const ParadoxSpec& spec, const Behavior& b);

struct ViolationReport {
  std::vector<double> per_constraint;  // same order as spec.constraints()
  double max = 0.0;
};

/// Zero constraints report their event probability, relaxed ones the excess
/// max(0, P - eps).
ViolationReport constraint_violations(const ParadoxSpec& spec,
                                      const Behavior& b);

/// P(success) - sum P(penalty) - sum over all constraint events of P(event).
/// Nonpositive on every local deterministic behavior.
double vertex_functional(const ParadoxSpec& spec, const Behavior& b);

}  // namespace hardy

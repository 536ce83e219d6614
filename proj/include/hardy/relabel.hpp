#pragma once

// Input/outcome relabelings of a scenario and the explicit map turning the
// generalized Hardy conditions (ladder, closing event as a zero constraint)
// into the generalized Stapp conditions.

#include <utility>
#include <vector>

#include "hardy/paradox.hpp"
#include "hardy/scenario.hpp"

namespace hardy {

/// Pushforward of labels: source (x, a) goes to target
/// (input_map_A[x], outcome_map_A[x][a]); likewise for Bob.
struct RelabelingMap {
  std::vector<int> input_map_A;
  std::vector<int> input_map_B;
  std::vector<std::vector<int>> outcome_map_A;  // indexed by source input
  std::vector<std::vector<int>> outcome_map_B;

  static RelabelingMap identity(const Scenario& sc);
  /// a -> d-1-a for every input of both parties.
  static RelabelingMap outcome_reversal(const Scenario& sc);

  /// Throws std::invalid_argument unless every map is a bijection of the
  /// right size for `sc`.
  void validate(const Scenario& sc) const;

  friend bool operator==(const RelabelingMap&, const RelabelingMap&) = default;
};

RelabelingMap inverse(const RelabelingMap& m);
/// first, then second.
RelabelingMap compose(const RelabelingMap& first, const RelabelingMap& second);

Event apply_relabeling(const Event& e, const RelabelingMap& m);
DeterministicStrategy apply_relabeling(const DeterministicStrategy& s,
                                       const RelabelingMap& m);
/// p'(a',b'|x',y') = p(a,b|x,y) at the mapped labels.
Behavior apply_relabeling(const Behavior& b, const RelabelingMap& m);

/// Floor-based index ranges used by the generalized Hardy/Stapp map:
///   OneMinus = {1, ..., floor(k/2)-1}, One = OneMinus + {floor(k/2)},
///   ZeroMinus = {0} + OneMinus,        Zero = ZeroMinus + {floor(k/2)}.
enum class IndexRange { OneMinus, One, ZeroMinus, Zero };
std::vector<int> index_range(IndexRange which, int k);

/// Map from the generalized Hardy labels to the generalized Stapp labels.
/// Odd k: a pure input permutation. Even k: the same shape of permutation
/// composed with a -> d-1-a on both parties.
RelabelingMap hardy_to_stapp_map(const Scenario& sc);

struct EquivalenceReport {
  Scenario scenario;
  RelabelingMap map;
  bool maps_success = false;
  bool success_matches = false;
  /// (source event, mapped event) per source constraint, in source order.
  std::vector<std::pair<Event, Event>> constraint_bijection;
  /// Mapped source constraints with no partner, and target constraints never hit.
  std::vector<Event> unmatched_source;
  std::vector<Event> unmatched_target;
};

/// Maps every condition of generalized_cll(sc, ZeroConstraint) and compares,
/// as exact event sets, against generalized_fti(sc, ZeroConstraint).
EquivalenceReport verify_equivalence(const Scenario& sc);

}  // namespace hardy

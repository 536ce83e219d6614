#pragma once

// Data model for symmetric bipartite Bell scenarios: k inputs and d outcomes
// per party, joint behaviors P(a,b|x,y), outcome events and local
// deterministic strategies.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hardy {

struct Scenario {
  int k;  // inputs per party
  int d;  // outcomes per input

  /// Throws std::invalid_argument unless k >= 2 and d >= 2.
  Scenario(int inputs, int outcomes);

  std::size_t num_entries() const {
    return static_cast<std::size_t>(d) * d * k * k;
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

std::string to_string(const Scenario& sc);

struct OutcomePair {
  int a;
  int b;
  friend auto operator<=>(const OutcomePair&, const OutcomePair&) = default;
};

/// A set of joint outcomes (a,b) for a fixed input pair (x,y). Pairs are kept
/// sorted and unique so two events compare equal iff they are the same set.
class Event {
 public:
  Event(int x, int y, std::vector<OutcomePair> pairs);

  static Event point(int x, int y, int a, int b);
  /// {(a,b) : a < b}, read as P(A_x < B_y).
  static Event less(const Scenario& sc, int x, int y);
  /// {(a,b) : a > b}, read as P(A_x > B_y).
  static Event greater(const Scenario& sc, int x, int y);
  /// {(a,b) : a == b}.
  static Event equal(const Scenario& sc, int x, int y);

  int x() const { return x_; }
  int y() const { return y_; }
  const std::vector<OutcomePair>& pairs() const { return pairs_; }
  bool contains(int a, int b) const;

  /// Throws std::invalid_argument if an index falls outside the scenario.
  void validate(const Scenario& sc) const;

  friend bool operator==(const Event&, const Event&) = default;
  friend auto operator<=>(const Event&, const Event&) = default;

 private:
  int x_;
  int y_;
  std::vector<OutcomePair> pairs_;
};

std::string to_string(const Event& e);

/// One outcome per input for each party; A_x = sA[x], B_y = sB[y].
struct DeterministicStrategy {
  std::vector<int> sA;
  std::vector<int> sB;

  void validate(const Scenario& sc) const;
  bool fires(const Event& e) const { return e.contains(sA[e.x()], sB[e.y()]); }

  friend bool operator==(const DeterministicStrategy&,
                         const DeterministicStrategy&) = default;
};

std::string to_string(const DeterministicStrategy& s);

/// Dense table of P(a,b|x,y), stored row-major in (a,b,x,y) order.
/// Immutable once constructed.
class Behavior {
 public:
  /// Validates entries in [0,1] (1e-12 slack) and per-(x,y) normalization
  /// within `norm_tol`.
  static Behavior from_table(const Scenario& sc, std::vector<double> p,
                             double norm_tol = 1e-9);
  static Behavior uniform(const Scenario& sc);

  const Scenario& scenario() const { return sc_; }
  double operator()(int a, int b, int x, int y) const {
    return p_[index(sc_, a, b, x, y)];
  }
  std::span<const double> data() const { return p_; }

  static std::size_t index(const Scenario& sc, int a, int b, int x, int y) {
    return ((static_cast<std::size_t>(a) * sc.d + b) * sc.k + x) * sc.k + y;
  }

 private:
  Behavior(const Scenario& sc, std::vector<double> p)
      : sc_(sc), p_(std::move(p)) {}

  Scenario sc_;
  std::vector<double> p_;
};

Behavior behavior_from_deterministic(const DeterministicStrategy& s,
                                     const Scenario& sc);

double event_probability(const Behavior& b, const Event& e);

/// Entrywise convex combination. Weights must be nonnegative and sum to one
/// within 1e-12; all behaviors must share a scenario.
Behavior mix(std::span<const Behavior> behaviors,
             std::span<const double> weights);

struct NoSignalingReport {
  double max_discrepancy_A;  // Alice's marginal varying with Bob's input
  double max_discrepancy_B;
  bool passes;
};

NoSignalingReport check_no_signaling(const Behavior& b, double tol);

}  // namespace hardy

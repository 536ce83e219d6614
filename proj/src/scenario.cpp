#include "hardy/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hardy {

Scenario::Scenario(int inputs, int outcomes) : k(inputs), d(outcomes) {
  if (k < 2 || d < 2) {
    throw std::invalid_argument("scenario needs k >= 2 and d >= 2, got " +
                                to_string(*this));
  }
}

std::string to_string(const Scenario& sc) {
  return "(k=" + std::to_string(sc.k) + ",d=" + std::to_string(sc.d) + ")";
}

Event::Event(int x, int y, std::vector<OutcomePair> pairs)
    : x_(x), y_(y), pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw std::invalid_argument("event has no outcomes");
  if (x_ < 0 || y_ < 0) throw std::invalid_argument("negative input index");
  for (const auto& [a, b] : pairs_) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative outcome label");
  }
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

Event Event::point(int x, int y, int a, int b) { return Event(x, y, {{a, b}}); }

Event Event::less(const Scenario& sc, int x, int y) {
  std::vector<OutcomePair> pairs;
  for (int a = 0; a < sc.d; ++a)
    for (int b = a + 1; b < sc.d; ++b) pairs.push_back({a, b});
  return Event(x, y, std::move(pairs));
}

Event Event::greater(const Scenario& sc, int x, int y) {
  std::vector<OutcomePair> pairs;
  for (int a = 0; a < sc.d; ++a)
    for (int b = 0; b < a; ++b) pairs.push_back({a, b});
  return Event(x, y, std::move(pairs));
}

Event Event::equal(const Scenario& sc, int x, int y) {
  std::vector<OutcomePair> pairs;
  for (int a = 0; a < sc.d; ++a) pairs.push_back({a, a});
  return Event(x, y, std::move(pairs));
}

bool Event::contains(int a, int b) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), OutcomePair{a, b});
}

void Event::validate(const Scenario& sc) const {
  if (x_ >= sc.k || y_ >= sc.k) {
    throw std::invalid_argument("event " + to_string(*this) +
                                " has an input outside " + to_string(sc));
  }
  for (const auto& [a, b] : pairs_) {
    if (a >= sc.d || b >= sc.d) {
      throw std::invalid_argument("event " + to_string(*this) +
                                  " has an outcome outside " + to_string(sc));
    }
  }
}

std::string to_string(const Event& e) {
  std::ostringstream os;
  os << "{x=" << e.x() << ",y=" << e.y() << ":";
  for (const auto& [a, b] : e.pairs()) os << " (" << a << "," << b << ")";
  os << "}";
  return os.str();
}

void DeterministicStrategy::validate(const Scenario& sc) const {
  if (static_cast<int>(sA.size()) != sc.k ||
      static_cast<int>(sB.size()) != sc.k) {
    throw std::invalid_argument("strategy length does not match k in " +
                                to_string(sc));
  }
  auto in_range = [&](int v) { return v >= 0 && v < sc.d; };
  if (!std::all_of(sA.begin(), sA.end(), in_range) ||
      !std::all_of(sB.begin(), sB.end(), in_range)) {
    throw std::invalid_argument("strategy outcome outside " + to_string(sc));
  }
}

std::string to_string(const DeterministicStrategy& s) {
  std::ostringstream os;
  os << "sA=(";
  for (std::size_t i = 0; i < s.sA.size(); ++i) os << (i ? "," : "") << s.sA[i];
  os << ") sB=(";
  for (std::size_t i = 0; i < s.sB.size(); ++i) os << (i ? "," : "") << s.sB[i];
  os << ")";
  return os.str();
}

Behavior Behavior::from_table(const Scenario& sc, std::vector<double> p,
                              double norm_tol) {
  if (p.size() != sc.num_entries()) {
    throw std::invalid_argument("behavior table has " +
                                std::to_string(p.size()) + " entries, " +
                                to_string(sc) + " needs " +
                                std::to_string(sc.num_entries()));
  }
  for (double v : p) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
      throw std::invalid_argument("behavior entry outside [0,1]: " +
                                  std::to_string(v));
    }
  }
  for (int x = 0; x < sc.k; ++x) {
    for (int y = 0; y < sc.k; ++y) {
      double total = 0.0;
      for (int a = 0; a < sc.d; ++a)
        for (int b = 0; b < sc.d; ++b) total += p[index(sc, a, b, x, y)];
      if (std::abs(total - 1.0) > norm_tol) {
        throw std::invalid_argument(
            "behavior not normalized at (x=" + std::to_string(x) +
            ",y=" + std::to_string(y) + "): sum " + std::to_string(total));
      }
    }
  }
  return Behavior(sc, std::move(p));
}

Behavior Behavior::uniform(const Scenario& sc) {
  return Behavior(sc, std::vector<double>(sc.num_entries(),
                                          1.0 / (sc.d * sc.d)));
}

Behavior behavior_from_deterministic(const DeterministicStrategy& s,
                                     const Scenario& sc) {
  s.validate(sc);
  std::vector<double> p(sc.num_entries(), 0.0);
  for (int x = 0; x < sc.k; ++x)
    for (int y = 0; y < sc.k; ++y)
      p[Behavior::index(sc, s.sA[x], s.sB[y], x, y)] = 1.0;
  return Behavior::from_table(sc, std::move(p), 0.0);
}

double event_probability(const Behavior& b, const Event& e) {
  e.validate(b.scenario());
  double total = 0.0;
  for (const auto& [oa, ob] : e.pairs()) total += b(oa, ob, e.x(), e.y());
  return total;
}

Behavior mix(std::span<const Behavior> behaviors,
             std::span<const double> weights) {
  if (behaviors.empty() || behaviors.size() != weights.size()) {
    throw std::invalid_argument("mix needs one weight per behavior");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("negative mixing weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("mixing weights sum to " +
                                std::to_string(total));
  }
  const Scenario& sc = behaviors.front().scenario();
  std::vector<double> p(sc.num_entries(), 0.0);
  for (std::size_t i = 0; i < behaviors.size(); ++i) {
    if (!(behaviors[i].scenario() == sc)) {
      throw std::invalid_argument("cannot mix behaviors of different scenarios");
    }
    auto src = behaviors[i].data();
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += weights[i] * src[j];
  }
  return Behavior::from_table(sc, std::move(p));
}

NoSignalingReport check_no_signaling(const Behavior& b, double tol) {
  const Scenario& sc = b.scenario();
  double worst_a = 0.0;
  double worst_b = 0.0;
  std::vector<double> marg(sc.k);
  for (int x = 0; x < sc.k; ++x) {
    for (int a = 0; a < sc.d; ++a) {
      for (int y = 0; y < sc.k; ++y) {
        marg[y] = 0.0;
        for (int ob = 0; ob < sc.d; ++ob) marg[y] += b(a, ob, x, y);
      }
      auto [lo, hi] = std::minmax_element(marg.begin(), marg.end());
      worst_a = std::max(worst_a, *hi - *lo);
    }
  }
  for (int y = 0; y < sc.k; ++y) {
    for (int ob = 0; ob < sc.d; ++ob) {
      for (int x = 0; x < sc.k; ++x) {
        marg[x] = 0.0;
        for (int a = 0; a < sc.d; ++a) marg[x] += b(a, ob, x, y);
      }
      auto [lo, hi] = std::minmax_element(marg.begin(), marg.end());
      worst_b = std::max(worst_b, *hi - *lo);
    }
  }
  return {worst_a, worst_b, worst_a <= tol && worst_b <= tol};
}

}  // namespace hardy

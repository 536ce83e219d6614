#include "hardy/relabel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hardy {
namespace {

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

bool is_permutation_of_range(const std::vector<int>& v, int n) {
  if (static_cast<int>(v.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : v) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::vector<int> invert(const std::vector<int>& v) {
  std::vector<int> inv(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) inv[v[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace

RelabelingMap RelabelingMap::identity(const Scenario& sc) {
  const std::vector<std::vector<int>> outcomes(sc.k, iota_vec(sc.d));
  return {iota_vec(sc.k), iota_vec(sc.k), outcomes, outcomes};
}

RelabelingMap RelabelingMap::outcome_reversal(const Scenario& sc) {
  std::vector<int> rev(sc.d);
  for (int a = 0; a < sc.d; ++a) rev[a] = sc.d - 1 - a;
  const std::vector<std::vector<int>> outcomes(sc.k, rev);
  return {iota_vec(sc.k), iota_vec(sc.k), outcomes, outcomes};
}

void RelabelingMap::validate(const Scenario& sc) const {
  auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string("relabeling map: ") + what +
                                " is not a bijection for " + to_string(sc));
  };
  if (!is_permutation_of_range(input_map_A, sc.k)) fail("Alice's input map");
  if (!is_permutation_of_range(input_map_B, sc.k)) fail("Bob's input map");
  if (static_cast<int>(outcome_map_A.size()) != sc.k) fail("Alice's outcome map");
  if (static_cast<int>(outcome_map_B.size()) != sc.k) fail("Bob's outcome map");
  for (const auto& m : outcome_map_A)
    if (!is_permutation_of_range(m, sc.d)) fail("an outcome map of Alice");
  for (const auto& m : outcome_map_B)
    if (!is_permutation_of_range(m, sc.d)) fail("an outcome map of Bob");
}

RelabelingMap inverse(const RelabelingMap& m) {
  const int k = static_cast<int>(m.input_map_A.size());
  RelabelingMap inv{invert(m.input_map_A), invert(m.input_map_B),
                    std::vector<std::vector<int>>(k), std::vector<std::vector<int>>(k)};
  for (int x = 0; x < k; ++x) {
    inv.outcome_map_A[m.input_map_A[x]] = invert(m.outcome_map_A[x]);
    inv.outcome_map_B[m.input_map_B[x]] = invert(m.outcome_map_B[x]);
  }
  return inv;
}

RelabelingMap compose(const RelabelingMap& first, const RelabelingMap& second) {
  const int k = static_cast<int>(first.input_map_A.size());
  if (static_cast<int>(second.input_map_A.size()) != k) {
    throw std::invalid_argument("cannot compose relabelings of different scenarios");
  }
  RelabelingMap out{std::vector<int>(k), std::vector<int>(k),
                    std::vector<std::vector<int>>(k), std::vector<std::vector<int>>(k)};
  auto chain = [&](const std::vector<int>& in1, const std::vector<std::vector<int>>& out1,
                   const std::vector<int>& in2, const std::vector<std::vector<int>>& out2,
                   std::vector<int>& in, std::vector<std::vector<int>>& outc) {
    for (int x = 0; x < k; ++x) {
      const int mid = in1[x];
      in[x] = in2[mid];
      outc[x].resize(out1[x].size());
      for (std::size_t a = 0; a < out1[x].size(); ++a) outc[x][a] = out2[mid][out1[x][a]];
    }
  };
  chain(first.input_map_A, first.outcome_map_A, second.input_map_A, second.outcome_map_A,
        out.input_map_A, out.outcome_map_A);
  chain(first.input_map_B, first.outcome_map_B, second.input_map_B, second.outcome_map_B,
        out.input_map_B, out.outcome_map_B);
  return out;
}

Event apply_relabeling(const Event& e, const RelabelingMap& m) {
  std::vector<OutcomePair> pairs;
  pairs.reserve(e.pairs().size());
  for (const auto& [a, b] : e.pairs())
    pairs.push_back({m.outcome_map_A.at(e.x()).at(a), m.outcome_map_B.at(e.y()).at(b)});
  return Event(m.input_map_A.at(e.x()), m.input_map_B.at(e.y()), std::move(pairs));
}

DeterministicStrategy apply_relabeling(const DeterministicStrategy& s,
                                       const RelabelingMap& m) {
  DeterministicStrategy out{std::vector<int>(s.sA.size()), std::vector<int>(s.sB.size())};
  for (std::size_t x = 0; x < s.sA.size(); ++x)
    out.sA[m.input_map_A.at(x)] = m.outcome_map_A.at(x).at(s.sA[x]);
  for (std::size_t y = 0; y < s.sB.size(); ++y)
    out.sB[m.input_map_B.at(y)] = m.outcome_map_B.at(y).at(s.sB[y]);
  return out;
}

Behavior apply_relabeling(const Behavior& b, const RelabelingMap& m) {
  const Scenario& sc = b.scenario();
  m.validate(sc);
  std::vector<double> p(sc.num_entries());
  for (int a = 0; a < sc.d; ++a)
    for (int bb = 0; bb < sc.d; ++bb)
      for (int x = 0; x < sc.k; ++x)
        for (int y = 0; y < sc.k; ++y)
          p[Behavior::index(sc, m.outcome_map_A[x][a], m.outcome_map_B[y][bb],
                            m.input_map_A[x], m.input_map_B[y])] = b(a, bb, x, y);
  return Behavior::from_table(sc, std::move(p));
}

std::vector<int> index_range(IndexRange which, int k) {
  const int half = k / 2;
  std::vector<int> v;
  const bool with_zero = which == IndexRange::ZeroMinus || which == IndexRange::Zero;
  const bool with_half = which == IndexRange::One || which == IndexRange::Zero;
  if (with_zero) v.push_back(0);
  for (int l = 1; l <= half - 1; ++l) v.push_back(l);
  if (with_half && half >= 1 && (v.empty() || v.back() != half)) v.push_back(half);
  return v;
}

RelabelingMap hardy_to_stapp_map(const Scenario& sc) {
  const int k = sc.k;
  const bool even = k % 2 == 0;
  std::vector<int> in_a(k, -1), in_b(k, -1);
  // Printed ranges for odd k; for even k the branches that would produce
  // label -1 (l = k/2) are cut back to their "minus" range.
  for (int l : index_range(IndexRange::One, k)) in_a[k - 2 * l] = l - 1;
  for (int l : index_range(even ? IndexRange::ZeroMinus : IndexRange::Zero, k))
    in_a[k - 1 - 2 * l] = k - 1 - l;
  in_b[k - 1] = k - 1;
  for (int l : index_range(IndexRange::One, k)) in_b[k - 2 * l] = k - 1 - l;
  for (int l : index_range(even ? IndexRange::OneMinus : IndexRange::One, k))
    in_b[k - 1 - 2 * l] = l - 1;

  RelabelingMap m = even ? RelabelingMap::outcome_reversal(sc) : RelabelingMap::identity(sc);
  m.input_map_A = in_a;
  m.input_map_B = in_b;
  m.validate(sc);
  return m;
}

EquivalenceReport verify_equivalence(const Scenario& sc) {
  const ParadoxSpec source = generalized_cll(sc, Terminal::ZeroConstraint);
  const ParadoxSpec target = generalized_fti(sc, Terminal::ZeroConstraint);
  EquivalenceReport report{sc, hardy_to_stapp_map(sc), false, false, {}, {}, {}};

  report.success_matches = apply_relabeling(source.success(), report.map) == target.success();

  std::vector<Event> remaining;
  for (const auto& c : target.constraints()) remaining.push_back(c.event);
  for (const auto& c : source.constraints()) {
    const Event mapped = apply_relabeling(c.event, report.map);
    report.constraint_bijection.emplace_back(c.event, mapped);
    const auto it = std::find(remaining.begin(), remaining.end(), mapped);
    if (it == remaining.end()) {
      report.unmatched_source.push_back(c.event);
    } else {
      remaining.erase(it);
    }
  }
  report.unmatched_target = std::move(remaining);
  report.maps_success = report.success_matches && report.unmatched_source.empty() &&
                        report.unmatched_target.empty();
  return report;
}

}  // namespace hardy

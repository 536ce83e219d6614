#include "hardy/lhv.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>

namespace hardy {

std::uint64_t strategy_count(const Scenario& sc) {
  std::uint64_t count = 1;
  for (int i = 0; i < 2 * sc.k; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / sc.d) {
      throw std::overflow_error("strategy count for " + to_string(sc) +
                                " overflows 64 bits");
    }
    count *= static_cast<std::uint64_t>(sc.d);
  }
  return count;
}

DeterministicStrategy strategy_at(const Scenario& sc, std::uint64_t index) {
  if (index >= strategy_count(sc)) {
    throw std::out_of_range("strategy rank out of range");
  }
  DeterministicStrategy s{std::vector<int>(sc.k), std::vector<int>(sc.k)};
  for (int pos = 2 * sc.k - 1; pos >= 0; --pos) {
    const int digit = static_cast<int>(index % sc.d);
    index /= sc.d;
    if (pos < sc.k) {
      s.sA[pos] = digit;
    } else {
      s.sB[pos - sc.k] = digit;
    }
  }
  return s;
}

StrategyRange::iterator::iterator(const Scenario& sc, std::uint64_t rank)
    : d_(sc.d), rank_(rank) {
  if (rank < strategy_count(sc)) current_ = strategy_at(sc, rank);
}

StrategyRange::iterator& StrategyRange::iterator::operator++() {
  ++rank_;
  // Odometer step, least significant digit is sB.back().
  for (auto* digits : {&current_.sB, &current_.sA}) {
    for (auto it = digits->rbegin(); it != digits->rend(); ++it) {
      if (++*it < d_) return *this;
      *it = 0;
    }
  }
  return *this;
}

StrategyRange::StrategyRange(const Scenario& sc, std::uint64_t first,
                             std::uint64_t last)
    : sc_(sc), first_(first), last_(last) {
  if (first > last || last > strategy_count(sc)) {
    throw std::out_of_range("invalid strategy rank range");
  }
}

StrategyRange::iterator StrategyRange::end() const {
  iterator it;
  it.d_ = sc_.d;
  it.rank_ = last_;
  return it;
}

StrategyRange enumerate_deterministic(const Scenario& sc, std::uint64_t cap) {
  const std::uint64_t count = strategy_count(sc);
  if (count > cap) {
    throw std::length_error("refusing to enumerate " + std::to_string(count) +
                            " deterministic strategies for " + to_string(sc) +
                            " (cap " + std::to_string(cap) + ")");
  }
  return StrategyRange(sc, 0, count);
}

namespace {

// d*d firing table for one event.
struct EventMask {
  int x;
  int y;
  std::vector<char> fires;
};

EventMask make_mask(const Event& e, int d) {
  EventMask m{e.x(), e.y(), std::vector<char>(static_cast<std::size_t>(d) * d, 0)};
  for (const auto& [a, b] : e.pairs()) m.fires[a * d + b] = 1;
  return m;
}

struct ChunkResult {
  long long best = std::numeric_limits<long long>::min();
  long long feasible_best = std::numeric_limits<long long>::min();
  std::vector<DeterministicStrategy> argmax;
  std::uint64_t argmax_count = 0;
  std::uint64_t feasible_count = 0;
  std::uint64_t checked = 0;
};

ChunkResult scan(const Scenario& sc, std::uint64_t first, std::uint64_t last,
                 const EventMask& success, const std::vector<EventMask>& penalties,
                 const std::vector<EventMask>& constraints, std::size_t max_argmax) {
  ChunkResult r;
  const int d = sc.d;
  auto fired = [d](const EventMask& m, const DeterministicStrategy& s) {
    return static_cast<int>(m.fires[s.sA[m.x] * d + s.sB[m.y]]);
  };
  for (const auto& s : StrategyRange(sc, first, last)) {
    ++r.checked;
    const int gain = fired(success, s);
    int pen = 0;
    for (const auto& m : penalties) pen += fired(m, s);
    int broken = 0;
    for (const auto& m : constraints) broken += fired(m, s);
    const long long value = gain - pen - broken;
    if (value > r.best) {
      r.best = value;
      r.argmax.clear();
      r.argmax_count = 0;
    }
    if (value == r.best) {
      ++r.argmax_count;
      if (r.argmax.size() < max_argmax) r.argmax.push_back(s);
    }
    if (broken == 0) {
      ++r.feasible_count;
      r.feasible_best = std::max<long long>(r.feasible_best, gain - pen);
    }
  }
  return r;
}

}  // namespace

LocalBoundReport local_max_ds(const ParadoxSpec& spec, const LhvOptions& opts) {
  const Scenario& sc = spec.scenario();
  const std::uint64_t total = enumerate_deterministic(sc, opts.cap).size();

  const EventMask success = make_mask(spec.success(), sc.d);
  std::vector<EventMask> penalties;
  for (const auto& e : spec.penalties()) penalties.push_back(make_mask(e, sc.d));
  std::vector<EventMask> constraints;
  for (const auto& c : spec.constraints())
    constraints.push_back(make_mask(c.event, sc.d));

  const unsigned threads = std::max(1u, std::min<unsigned>(
      opts.threads, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::vector<ChunkResult> chunks(threads);
  auto bounds = [&](unsigned t) { return total * t / threads; };
  if (threads == 1) {
    chunks[0] = scan(sc, 0, total, success, penalties, constraints, opts.max_argmax);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        chunks[t] = scan(sc, bounds(t), bounds(t + 1), success, penalties,
                         constraints, opts.max_argmax);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Chunks are in rank order, so appending keeps argmax lexicographic.
  LocalBoundReport report;
  report.spec_name = spec.name();
  long long best = std::numeric_limits<long long>::min();
  long long feasible_best = std::numeric_limits<long long>::min();
  for (const auto& c : chunks) {
    best = std::max(best, c.best);
    feasible_best = std::max(feasible_best, c.feasible_best);
  }
  for (const auto& c : chunks) {
    report.strategies_checked += c.checked;
    report.feasible_count += c.feasible_count;
    if (c.best != best) continue;
    report.argmax_count += c.argmax_count;
    for (const auto& s : c.argmax) {
      if (report.argmax.size() < opts.max_argmax) report.argmax.push_back(s);
    }
  }
  report.max_ds = static_cast<double>(best);
  report.feasible_max_ds = static_cast<double>(feasible_best) - spec.epsilon_offset();
  return report;
}

ChainReport verify_chain(const DeterministicStrategy& s, const ParadoxSpec& spec) {
  const Scenario& sc = spec.scenario();
  s.validate(sc);
  if (!spec.chain()) {
    throw std::invalid_argument("spec " + spec.name() + " carries no chain");
  }
  const ChainStructure& chain = *spec.chain();
  ChainReport report;
  report.success_fires = s.fires(spec.success());
  report.terminal_fires = s.fires(chain.terminal);
  for (const auto& n : chain.nodes) {
    const int raw = n.party == Party::A ? s.sA[n.input] : s.sB[n.input];
    report.chain.push_back(n.reversed ? sc.d - 1 - raw : raw);
  }
  for (std::size_t i = 0; i < spec.constraints().size(); ++i) {
    if (s.fires(spec.constraints()[i].event)) {
      report.violated_constraint = i;
      return report;
    }
  }
  bool ordered = true;
  for (std::size_t i = 0; i + 1 < report.chain.size(); ++i) {
    if (i == chain.strict_link) {
      if (report.success_fires && !(report.chain[i] < report.chain[i + 1]))
        ordered = false;
    } else if (!(report.chain[i] <= report.chain[i + 1])) {
      ordered = false;
    }
  }
  report.holds = ordered && (!report.success_fires || report.terminal_fires);
  return report;
}

double ch_functional(const Behavior& b) {
  if (!(b.scenario() == Scenario(2, 2))) {
    throw std::invalid_argument("CH functional needs a (2,2) behavior");
  }
  return b(1, 1, 1, 1) - b(1, 1, 1, 0) - b(1, 1, 0, 1) - b(0, 0, 0, 0);
}

}  // namespace hardy

#pragma once

// JSON forms of the data types and reports. Reports round reals to 9
// significant digits; specs and behaviors keep full precision so they
// round-trip.

#include <vector>

#include <json.hpp>

#include "hardy/lhv.hpp"
#include "hardy/npa.hpp"
#include "hardy/optimize.hpp"
#include "hardy/paradox.hpp"
#include "hardy/quantum.hpp"
#include "hardy/relabel.hpp"
#include "hardy/scenario.hpp"

namespace hardy {

using Json = nlohmann::ordered_json;

/// v rounded to 9 significant digits.
double round9(double v);

Json to_json(const Event& e);
Event event_from_json(const Json& j);

Json to_json(const DeterministicStrategy& s);

/// {"k", "d", "p"} with p nested as p[a][b][x][y].
Json to_json(const Behavior& b);
Behavior behavior_from_json(const Json& j);

Json to_json(const ParadoxSpec& spec);
ParadoxSpec spec_from_json(const Json& j);

/// Dimensions, state amplitudes and per-input bases (row-major), with
/// imaginary parts only when some entry is complex.
Json to_json(const QuantumStrategy& qs);
QuantumStrategy strategy_from_json(const Json& j);

Json to_json(const RelabelingMap& m);
Json to_json(const LocalBoundReport& r);
Json to_json(const OptimizationResult& r);
Json to_json(const std::vector<TableRow>& rows);
Json to_json(const EquivalenceReport& r);
Json to_json(const MomentProblem& mp);

}  // namespace hardy

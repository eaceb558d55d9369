#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "repval/beliefs.hpp"
#include "repval/game.hpp"
#include "repval/matrix_game.hpp"
#include "repval/nonrevealing.hpp"
#include "repval/piecewise.hpp"
#include "repval/recursion.hpp"
#include "repval/walk.hpp"

namespace repval {

// Key order is fixed (ordered_json) so identical inputs serialize to
// byte-identical reports.
using Json = nlohmann::ordered_json;

/// Game wire format:
///   {"states": [names...], "rows": int, "cols": int,
///    "payoffs": {state: [[entry]]}}
/// with each entry either a JSON integer or a rational string "a/b";
/// any other numeric (floats in particular) is rejected.
Json game_to_json(const GameFamily& family);
GameFamily game_from_json(const Json& j);

/// File wrappers; throw std::runtime_error with the path on IO errors
/// and std::invalid_argument on malformed content.
GameFamily load_game_json(const std::string& path);
void save_game_json(const GameFamily& family, const std::string& path);

Json to_json(const Belief& p);
Json to_json(const MixedAction& x);
Json to_json(const MatrixGameSolution& sol);
Json to_json(const OptimalSetBounds& bounds);
Json to_json(const AlmostFairReport& report);
Json to_json(const BreakpointReport& report);
Json to_json(const Region& region);
Json to_json(const PiecewiseCertificate& cert);
Json to_json(const NonPiecewiseEvidence& evidence);
Json to_json(const PiecewiseInconclusive& inconclusive);
Json to_json(const PiecewiseResult& result);
Json to_json(const CoverReport& report);
Json to_json(const RevelationConstants& constants);
Json to_json(const ValueCurve& curve);
Json to_json(const OperatorPropertyReport& report);
Json to_json(const WalkBound& bound);
Json to_json(const WalkSimulation& sim);

/// CSV for the value curve: N,V_N,grid_size,lower_bound_flag rows,
/// one per stage from 0 to n_max.
std::string value_curve_csv(const ValueCurve& curve);

/// CSV for a simulated trace: stage,z,alpha,absorbed,contribution.
std::string walk_trace_csv(const WalkSimulation& sim);

}  // namespace repval

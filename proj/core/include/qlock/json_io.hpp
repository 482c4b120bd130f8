#pragma once

// JSON documents for ensembles, POVMs, optimizer settings and reports.
//
// Field names are snake_case. A complex number is a two-element array
// [re, im]; a matrix is an array of rows. Example ensemble:
//
//   {"labels": [0, 1], "probs": [0.5, 0.5], "dim_b": 2,
//    "states": [[[[1,0],[0,0]], [[0,0],[0,0]]], ...]}
//
// Parsing failures of any kind surface as InputError.

#include <nlohmann/json.hpp>

#include "qlock/accessible.hpp"
#include "qlock/discord.hpp"
#include "qlock/measurement.hpp"
#include "qlock/protocol.hpp"
#include "qlock/states.hpp"

namespace qlock {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json ensemble_to_json(const CQEnsemble& ens);
CQEnsemble ensemble_from_json(const Json& j);

/// {"dim": d, "elements": [matrix, ...]}
Json povm_to_json(const Povm& povm);
Povm povm_from_json(const Json& j);

/// Scalar settings only; the MUB partner unitary is not serialized.
Json optimizer_config_to_json(const OptimizerConfig& cfg);
OptimizerConfig optimizer_config_from_json(const Json& j);

void to_json(Json& j, const CandidateValue& v);
void from_json(const Json& j, CandidateValue& v);
void to_json(Json& j, const OptimizerDiagnostics& d);
void from_json(const Json& j, OptimizerDiagnostics& d);
void to_json(Json& j, const DiscordReport& r);
void from_json(const Json& j, DiscordReport& r);
void to_json(Json& j, const LockingReport& r);
void from_json(const Json& j, LockingReport& r);
void to_json(Json& j, const IdentityChainReport& r);
void to_json(Json& j, const EmpiricalReport& r);
void from_json(const Json& j, EmpiricalReport& r);
void to_json(Json& j, const KeyBoundReport& r);

}  // namespace qlock

#pragma once

// JSON forms of operators, POVMs and instruments.
//
//   operator:   {"dim": n, "entries": [[re, im], ...]}   (row-major, n*n pairs)
//   POVM:       {"labels": [...], "effects": [operator, ...]}
//   instrument: {"labels": [...], "kraus": [[operator, ...], ...]}

#include "qax/linalg.hpp"
#include "qax/measurement.hpp"

#include <json.hpp>

namespace qax::io {

using nlohmann::json;

json operator_to_json(const Operator& op);
Operator operator_from_json(const json& j);

json povm_to_json(const Povm<double>& p);
Povm<double> povm_from_json(const json& j, const Tolerances<double>& tol = {});

json instrument_to_json(const Instrument<double>& ins);
Instrument<double> instrument_from_json(const json& j, const Tolerances<double>& tol = {});

}  // namespace qax::io

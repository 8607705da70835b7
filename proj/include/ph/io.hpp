#pragma once

#include <string>

#include "json.hpp"
#include "ph/automata.hpp"
#include "ph/holonomic.hpp"
#include "ph/inclusion.hpp"

namespace ph::io {

using nlohmann::json;

// every reader throws std::invalid_argument with a message naming the offending field

json to_json(const MPoly& p);
MPoly mpoly_from_json(const json& j);

json to_json(const SemilinearSet& s);
SemilinearSet semilinear_from_json(const json& j);

json to_json(const Constraint& c);
Constraint constraint_from_json(const json& j);

json to_json(const VectorAutomaton& v);
VectorAutomaton va_from_json(const json& j);

json to_json(const ParikhAutomaton& a);
ParikhAutomaton pa_from_json(const json& j);

json to_json(const RCM& r);
RCM rcm_from_json(const json& j);

json to_json(const RatFun& f);  // {"numerator", "denominator"}

json to_json(const LinearODE& o);
LinearODE ode_from_json(const json& j);

json to_json(const PRecurrence& r);
PRecurrence recurrence_from_json(const json& j);

json to_json(const BoundReport& r);
json to_json(const WitnessBound& w);
// witness letters are written by name
json to_json(const InclusionVerdict& v, const std::vector<std::string>& alphabet);

// every field is optional and defaults to Limits{}
Limits limits_from_json(const json& j);
json to_json(const Limits& l);

std::string kind_of(const json& j);
json read_file(const std::string& path);

}  // namespace ph::io

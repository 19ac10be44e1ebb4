#pragma once

#include <initializer_list>
#include <string>

#include "json.hpp"

#include "hyperlab/constructions.hpp"
#include "hyperlab/criteria.hpp"
#include "hyperlab/integer_sets.hpp"
#include "hyperlab/operators.hpp"
#include "hyperlab/orbits.hpp"

namespace hyperlab::cli {

using json = nlohmann::json;

// Rejects keys outside `allowed`; `where` names the object in diagnostics.
void expect_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where);

double get_number(const json& obj, const char* key, double fallback);
std::int64_t get_int(const json& obj, const char* key, std::int64_t fallback);
std::string get_string(const json& obj, const char* key, const std::string& fallback);
bool get_bool(const json& obj, const char* key, bool fallback);
double as_number(const json& v, const std::string& where);  // accepts "inf" and "-inf"

Interval parse_interval(const json& v, bool open, const std::string& where);
Rational parse_rational(const json& v, const std::string& where);
WeightSequence parse_weights(const json& v, Side side);
SpaceSpec parse_space(const json& v, Side side);
OperatorFamily parse_family(const json& v);
// inline {"side","coords"} or {"file","pointer"}; pointer defaults to /results/x
SeqVector parse_vector(const json& v, Side side);
IndexSequence parse_sequence(const json& v);
TailCertificate parse_tail(const json& v);

json num(double v);  // non-finite values become strings
json to_json(const Rational& r);
json to_json(const SeqVector& x);
json to_json(const Verdict& v);
json to_json(const DensityReport& d);
json to_json(const Interval& k);

}  // namespace hyperlab::cli

#pragma once

#include <string>

#include <json.hpp>

#include "twistor/metric.hpp"
#include "twistor/twistor.hpp"

namespace tw {

using json = nlohmann::json;

// Malformed or out-of-domain input data.
struct InputError : Error {
    using Error::Error;
};

json to_json(cplx z);
json to_json(const ProjVec& v);
json to_json(const FlagPoint& x);
json to_json(const Curve11& c);
json to_json(const Mat3& A);  // bare 3x3 array of [re, im]
json matrix_json(const Mat3& A);  // {"A": ...}
json to_json(const CanonicalClass& c);
json to_json(const UnitaryForm& f);
json to_json(const SingularLocus& s);
json to_json(const FiberSet& f);
json to_json(const Intersection& I);

cplx cplx_from_json(const json& j);
ProjVec projvec_from_json(const json& j);
FlagPoint flag_from_json(const json& j);
Curve11 curve_from_json(const json& j);
Mat3 mat3_from_json(const json& j);  // bare array
Mat3 matrix_from_json(const json& j);  // {"A": ...}
CanonicalClass canonical_class_from_json(const json& j);
FiberSet fiberset_from_json(const json& j);

json parse_json(const std::string& text);
// Emits with round-trip exact doubles.
std::string dump(const json& j);

}  // namespace tw

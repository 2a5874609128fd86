#pragma once

#include <string>

#include "json.hpp"
#include "phibv/equinorm.hpp"
#include "phibv/grid.hpp"
#include "phibv/integral_operator.hpp"
#include "phibv/luxemburg.hpp"
#include "phibv/seqspace.hpp"
#include "phibv/variation.hpp"
#include "phibv/young.hpp"

namespace phibv {

using nlohmann::json;

// Every reader throws Error(Parse) on malformed documents; validation errors
// of the value types themselves (BadGrid, InvalidYoung, ...) pass through.

json read_json_file(const std::string& path);

YoungFunction young_function_from_json(const json& j);
json to_json(const YoungFunction& phi);

/// {"kind":"jordan"} | {"kind":"wiener","p":2} | {"kind":"waterman","lambda":[...]}
/// | {"kind":"young","function":F} | {"kind":"custom","functions":[F,...]}
YoungSequence young_sequence_from_json(const json& j);
json to_json(const YoungSequence& seq);

/// jordan | wiener:P | waterman:l1,l2,... | helly | inline JSON | @path
YoungSequence parse_young_argument(const std::string& text);

GridFunction grid_function_from_json(const json& j);
json to_json(const GridFunction& x);
/// First non-empty line is the grid, second the values; commas or whitespace separate.
GridFunction grid_function_from_csv(const std::string& text);
/// By extension: .csv or JSON otherwise.
GridFunction load_grid_function(const std::string& path);

Kernel kernel_from_json(const json& j);
json to_json(const Kernel& k);

TruncatedSequence truncated_sequence_from_json(const json& j);
json to_json(const TruncatedSequence& x);

IntervalFamily interval_family_from_json(const json& j);
json to_json(const IntervalFamily& family);
json to_json(const IntervalSelection& sel);

json to_json(const VariationResult& r);
json to_json(const SeminormValue& v);
json to_json(const FiveSuprema& f);
json to_json(const DefectReport& r);
json to_json(const CompactnessRow& r);
json to_json(const CompactnessReport& r);
json to_json(const LpCompactnessResult& r);
json to_json(const H2Certificate& c);
json to_json(const H3Modulus& m);
json to_json(const H3ImpliesH2& r);
json to_json(const ContinuityReport& r);
json to_json(const ProbeReport& r);
json to_json(const AxiomReport& r);
json to_json(const SuiteRow& r);

}  // namespace phibv

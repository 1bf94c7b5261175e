#pragma once

#include <json.hpp>

#include "lieortho/coxeter.hpp"
#include "lieortho/descent.hpp"
#include "lieortho/types.hpp"

namespace lieortho {

using Json = nlohmann::json;

/// Complex matrix as row-major nested arrays, each entry a [re, im] pair.
Json mat_to_json(const Mat& m);

/// Real vector as a plain array of numbers.
Json rvec_to_json(const RVec& v);

/// Parses the mat_to_json format.  Entries may also be plain numbers,
/// read as real.  Throws std::invalid_argument on anything malformed:
/// non-array input, ragged rows, entries that are neither numbers nor
/// two-element numeric arrays.
Mat mat_from_json(const Json& j);

Json coxeter_lift_to_json(const CoxeterLift& l);
Json descent_trace_to_json(const DescentTrace& t);
Json goto_witness_to_json(const GotoWitness& w);

}  // namespace lieortho

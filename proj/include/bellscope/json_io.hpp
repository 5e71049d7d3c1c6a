#pragma once

#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "bellscope/classical_rep.hpp"
#include "bellscope/common_cause.hpp"
#include "bellscope/polytope.hpp"
#include "bellscope/quantum.hpp"

namespace bellscope {

using json = nlohmann::json;

/// {"n": 2, "S": [[1,2]], "singles": ["2/5","2/5"], "pairs": {"1,2": "1/5"}}
/// Entries may be "a/b" strings, decimal strings or JSON numbers.
CorrelationVector correlation_from_json(const json& j, ArithmeticMode mode);
CorrelationVector correlation_from_text(const std::string& text, ArithmeticMode mode);
json to_json(const CorrelationVector& p);

json to_json(const Scalar& x);
json to_json(const std::vector<Scalar>& xs);
json to_json(const Certificate& c);
json to_json(const MembershipResult& r);
json to_json(const FacetReport& r);

json to_json(const FiniteProbSpace& space);
json event_to_json(const FiniteProbSpace& space, const Event& e);
json to_json(const ConditionalVerification& v);
json to_json(const NonsignalingReport& r);

json to_json(const ScreeningReport& r);
json to_json(const CommonCauseDecomposition& d);

/// Row-major list of [re, im] pairs.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);
Direction direction_from_json(const json& j);
json to_json(const Direction& d);
json to_json(const EprResult& r);
json to_json(const QuantumCommonCauseReport& r);

}  // namespace bellscope

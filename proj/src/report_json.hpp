#pragma once

#include <json.hpp>

#include "combalg/coordinate.hpp"
#include "combalg/freegroup.hpp"
#include "combalg/groebner.hpp"
#include "combalg/polynomial.hpp"
#include "combalg/tame.hpp"

namespace combalg::io {

using json = nlohmann::json;

json to_json(const Rational& r);
Rational rational_from(const json& j);
json to_json(const Polynomial& p);
Polynomial polynomial_from(const json& j, std::size_t nvars);
json to_json(const Monomial& m);
Monomial monomial_from(const json& j);
json to_json(const Term& t);
Term term_from(const json& j);
json to_json(const PolyMap& phi);
PolyMap polymap_from(const json& j, std::size_t nvars);

json to_json(const fg::NielsenMove& m);
json to_json(const fg::WhiteheadMove& m);
json to_json(const fg::MoveTrace& trace);
fg::MoveTrace move_trace_from(const json& j);

json to_json(const ElementaryFactor& f);
ElementaryFactor factor_from(const json& j);
json to_json(const Decomposition& d);
Decomposition decomposition_from(const json& j);

json to_json(const GEFactor& f);
GEFactor ge_factor_from(const json& j);
json to_json(const ReductionStep& s);
ReductionStep reduction_step_from(const json& j);
json to_json(const ReductionTrace& t);
ReductionTrace reduction_trace_from(const json& j);

json to_json(const UnivariateStep& s);
UnivariateStep univariate_step_from(const json& j);

}  // namespace combalg::io

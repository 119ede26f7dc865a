#pragma once

#include "json.hpp"

#include "mvcurl/document.hpp"
#include "mvcurl/cohomology.hpp"

namespace mvcurl {

using Json = nlohmann::json;

// Exact rationals travel as {"num": "<int>", "den": "<int>"} strings; blade
// indices are 1-based.
Json to_json(const Rational& q);
Json to_json(const RationalFunc& f);
Json to_json(const Multivector& a);
Json to_json(const DifferentialForm& omega);
Json to_json(const VolumeForm& v);
Json to_json(const StructureConstants& c);
Json to_json(const Binding& b);
Json to_json(const Document& doc);
Json to_json(const TruncatedComplexReport& r);

Rational rational_from_json(const Json& j);
RationalFunc rational_func_from_json(const Json& j, std::size_t nvars);
Multivector multivector_from_json(const Json& j, const ChartPtr& chart);
DifferentialForm form_from_json(const Json& j, const ChartPtr& chart);
Document document_from_json(const Json& j);

}  // namespace mvcurl

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "reflekt/diagram.hpp"
#include "reflekt/fincat.hpp"
#include "reflekt/homotopy.hpp"
#include "reflekt/linrep.hpp"
#include "reflekt/presentation.hpp"
#include "reflekt/quiver.hpp"

namespace reflekt {

using json = nlohmann::ordered_json;

// The file-format tag stamped on every emitted document and required of
// every parsed one.
extern const char* const kFormatVersion;

// Serializers produce complete documents: the version tag first, then the
// payload fields in a fixed order.  Parsers reject a missing or foreign
// tag with BadInput and validate the decoded object before returning.
// Nested payloads (the category inside a functor, the base inside a
// diagram) carry no tag of their own; parsers ignore one if present.

json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const json& j);

// Plan documents wrap the step list under a "plan" key so the file can
// carry the version tag.
json plan_to_json(const std::vector<ReflectionStep>& plan);
std::vector<ReflectionStep> plan_from_json(const json& j);

json representation_to_json(const Representation& m);
Representation representation_from_json(const json& j);

json fincat_to_json(const FinCat& c);
FinCat fincat_from_json(const json& j);

// Functor documents embed their endpoint categories under "source" and
// "target" next to the object and morphism maps.
json functor_to_json(const CatFunctor& u);
CatFunctor functor_from_json(const json& j);

json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

json square_to_json(const TwoSidedSquare& s);
TwoSidedSquare square_from_json(const json& j);

json diagram_to_json(const VectDiagram& x);
VectDiagram diagram_from_json(const json& j);

// Matrix rows as arrays of scalar strings, row-major target x source.
json matrix_to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const json& rows, long expected_rows, long expected_cols,
                             const FieldSpec& field);

// Verdict report in the shared case-list layout: a top-level verdict plus
// one record per factorization case, sorted by (gamma, a, b).
json check_result_to_json(const CheckResult& r);

}  // namespace reflekt

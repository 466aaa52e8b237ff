#pragma once

#include <string>

#include "json.hpp"
#include "morphcat/endo.hpp"
#include "morphcat/invariants.hpp"
#include "morphcat/oracle.hpp"
#include "morphcat/tmodule.hpp"

namespace morphcat {

using json = nlohmann::json;

// Scalars: integers and residues as decimal strings, rationals as "num/den"
// (plain "num" when the denominator is 1). Numeric JSON values are accepted
// on input.
json scalar_to_json(const Ring& ring, const mpq_class& x);
mpq_class scalar_from_json(const Ring& ring, const json& j);

json ring_to_json(const Ring& ring);
Ring ring_from_json(const json& j);

json matrix_to_json(const Matrix& m);  // array of row arrays
Matrix matrix_from_json(const Ring& ring, const json& j);

json module_to_json(const FPModule& m);
FPModule module_from_json(const Ring& ring, const json& j);

json hom_to_json(const ModuleHom& f);
ModuleHom hom_from_json(const Ring& ring, const json& j);

json morph_object_to_json(const MorphObject& m);
MorphObject morph_object_from_json(const Ring& ring, const json& j);

json morph_map_to_json(const MorphMap& u);  // endpoints implied by context

json invariants_to_json(const ModuleInvariants& inv);
json iso_result_to_json(const IsoResult& r);
json tmodule_to_json(const TModuleRep& rep);
json ideal_check_to_json(const IdealCheckReport& rep);
json sequence_report_to_json(const SequenceReport& rep);
json endo_classification_to_json(const EndoClassification& cls);
json predicate_reports_to_json(const IdealPredicateResult& res);
json locality_report_to_json(const LocalityReport& rep);
json class_report_to_json(const ClassReport& rep);
json match_result_to_json(const MatchResult& r);
json diag_equiv_to_json(const DiagEquivResult& r);

// One canonical JSON object per line, for regression pinning.
std::string corpus_to_jsonl(const Corpus& corpus);

// Sorted keys, no insignificant whitespace.
std::string canonical_dump(const json& j);

}  // namespace morphcat

#pragma once

#include <json.hpp>

#include "oprew/averaging.hpp"

namespace oprew {

using Json = nlohmann::ordered_json;

Json placement_to_json(const Placement& p);
Placement placement_from_json(const nlohmann::json& j);

Json tri_to_json(Tri t);

Json rule_to_json(const RuleInstance& r, const Alphabet& alphabet);
Json redex_to_json(const Word& from, const Redex& r, const LinComb& to,
                   const Alphabet& alphabet);
Json edge_to_json(const Edge& e, const Alphabet& alphabet);
Json step_to_json(const StepRecord& s, const Alphabet& alphabet);
Json closure_to_json(const ClosureReport& r, const Alphabet& alphabet);
Json confluence_to_json(const ConfluenceReport& r, const Alphabet& alphabet);
Json gs_to_json(const GsReport& r, const Alphabet& alphabet);
Json basis_audit_to_json(const BasisAuditReport& r, const Alphabet& alphabet);
Json orientation_to_json(AvgFamily family, const Word& u1, const Word& u2,
                         const OrientationAudit& audit, const Alphabet& alphabet);

// {"name": ..., "arity": k, "body": "<polynomial over x1..xk>"}
Opi opi_from_json(const nlohmann::json& j);

}  // namespace oprew

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "normic/obstruct.hpp"

namespace normic::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDescSchemaId = "normic/desc/v1";
inline constexpr const char* kPlanSchemaId = "normic/plan/v1";
inline constexpr const char* kTargetsSchemaId = "normic/targets/v1";

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);  // "p/q" string or integer

Json to_json(const RatPoly& f);  // coefficients low first, as strings
RatPoly ratpoly_from_json(const Json& j);

Json to_json(const CycloElement& x);
CycloElement cyclo_from_json(std::int64_t conductor, const Json& j);  // rational or coordinate array

Json to_json(const KummerElement& x);
KummerElement kummer_from_json(const KummerExt& K, const Json& j);

Json to_json(const PlaceModel& P);
PlaceModel place_from_json(const Json& j);

Json to_json(const IrreducibilityCertificate& c);
IrreducibilityCertificate certificate_from_json(const KummerExt& K, const Json& j);

Json to_json(const FinAbGroup& G);
Json to_json(const GroupElement& x);
Json to_json(const Character& chi);
Character character_from_json(const FinAbGroup& B, const Json& j);

Json to_json(const BrauerPresentation& P);
Json to_json(const PlanReport& r);
Json to_json(const ConstructionPlan& plan);
ConstructionPlan plan_from_json(const Json& j);  // validates against the plan schema first
Json to_json(const LocalImageSet& img);
Json to_json(const ObstructionReport& r);
Json to_json(const ObstructionPipeline& p);

/// Builds a desc from JSON: numeric (d, r) pairs, or polynomials over Q(zeta_n)(a^(1/n)) whose
/// certificates and missing splitting degrees are computed.
NormicBundleDesc desc_from_json(const Json& j, std::int64_t samples = kDefaultSplittingSamples);

// ---- schemas

/// The shipped schema with the given file stem ("desc", "plan", ...).
const Json& schema(const std::string& name);
std::vector<std::string> schema_names();

/// Violations of the supported JSON Schema subset; empty when valid.
std::vector<std::string> validate(const Json& instance, const Json& schema);
/// Throws InputError listing the violations.
void require_valid(const Json& instance, const std::string& schema_name);

}  // namespace normic::io

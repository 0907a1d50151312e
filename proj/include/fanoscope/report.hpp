#pragma once

// JSON documents for verdicts, representation families and lineage runs. Field names of the
// verdict document are fixed: inscribed, witness{v0, basis, facets[{normal, offset}]},
// refutation[{vertex, kind, detail}], boundary{coefficients, divisor_count}.

#include "fanoscope/additivity.hpp"
#include "fanoscope/engine.hpp"
#include "fanoscope/local_algebra.hpp"

#include <json.hpp>

#include <optional>

namespace fanoscope {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& v);
Json to_json(const LatticeVector& v);
Integer integer_from_json(const Json& j);
LatticeVector vector_from_json(const Json& j);

Json verdict_to_json(const InscribedVerdict& v, const std::optional<BoundaryProfile>& boundary = std::nullopt);

struct ParsedVerdict {
  InscribedVerdict verdict;
  std::optional<BoundaryProfile> boundary;
};

/// Inverse of verdict_to_json; throws std::invalid_argument when a required field is missing or
/// has the wrong type.
ParsedVerdict verdict_from_json(const Json& j);

/// Entry (r, c) becomes a list of {exponents, coefficient} terms in ascending monomial order, with
/// the coefficient written as an exact string.
Json family_to_json(const PolyMatrixFamily& f);

Json fact_to_json(const KnowledgeBase& kb, const Fact& f);
Json lineage_to_json(const KnowledgeBase& kb, const MainTheoremReport& r, const ConsistencyReport& c);

}  // namespace fanoscope

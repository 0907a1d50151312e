#include "fanoscope/report.hpp"

#include <limits>
#include <stdexcept>

namespace fanoscope {

Json to_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return Json(v.convert_to<long long>());
  return Json(v.str());  // too wide for a JSON integer on most readers
}

Json to_json(const LatticeVector& v) {
  Json out = Json::array();
  for (const auto& c : v.coords()) out.push_back(to_json(c));
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("verdict document: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' is not a string");
  return v.get<std::string>();
}

FailureKind kind_from_string(const std::string& s) {
  for (auto k : {FailureKind::NotSimple, FailureKind::NotUnimodular, FailureKind::FacetViolation})
    if (to_string(k) == s) return k;
  bad("unknown refutation kind '" + s + "'");
}

std::vector<LatticeVector> vectors_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of vectors");
  std::vector<LatticeVector> out;
  for (const auto& v : j) out.push_back(vector_from_json(v));
  return out;
}

}  // namespace

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
      bad("malformed integer string");
    }
  }
  bad("expected an integer");
}

LatticeVector vector_from_json(const Json& j) {
  if (!j.is_array()) bad("expected a vector");
  std::vector<Integer> c;
  for (const auto& x : j) c.push_back(integer_from_json(x));
  return LatticeVector(std::move(c));
}

Json verdict_to_json(const InscribedVerdict& v, const std::optional<BoundaryProfile>& boundary) {
  Json out;
  out["inscribed"] = v.inscribed;
  if (v.witness) {
    Json w;
    w["v0"] = to_json(v.witness->v0);
    w["basis"] = Json::array();
    for (const auto& e : v.witness->basis) w["basis"].push_back(to_json(e));
    w["facets"] = Json::array();
    for (const auto& f : v.witness->checked_facets) w["facets"].push_back({{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}});
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  out["refutation"] = Json::array();
  for (const auto& r : v.refutation) {
    Json rec{{"vertex", to_json(r.vertex)}, {"kind", to_string(r.kind)}, {"detail", r.detail}};
    if (r.violation)
      rec["violation"] = {{"normal", to_json(r.violation->normal)},
                          {"edge", to_json(r.violation->edge)},
                          {"pairing", to_json(r.violation->pairing)}};
    out["refutation"].push_back(std::move(rec));
  }
  if (boundary) {
    Json b;
    b["vertex"] = to_json(boundary->witness_vertex);
    b["normals"] = Json::array();
    for (const auto& n : boundary->normals) b["normals"].push_back(to_json(n));
    b["coefficients"] = Json::array();
    for (const auto& c : boundary->coefficients) b["coefficients"].push_back(to_json(c));
    b["divisor_count"] = boundary->divisor_count;
    out["boundary"] = std::move(b);
  } else {
    out["boundary"] = nullptr;
  }
  out["very_ampleness_unverified"] = v.very_ampleness_unverified;
  return out;
}

ParsedVerdict verdict_from_json(const Json& j) {
  ParsedVerdict out;
  const auto& ins = field(j, "inscribed");
  if (!ins.is_boolean()) bad("field 'inscribed' is not a boolean");
  out.verdict.inscribed = ins.get<bool>();

  const auto& w = field(j, "witness");
  if (!w.is_null()) {
    Witness wit;
    wit.v0 = vector_from_json(field(w, "v0"));
    wit.basis = vectors_from_json(field(w, "basis"));
    const auto& facets = field(w, "facets");
    if (!facets.is_array()) bad("field 'facets' is not an array");
    for (const auto& f : facets) wit.checked_facets.push_back({vector_from_json(field(f, "normal")), integer_from_json(field(f, "offset"))});
    out.verdict.witness = std::move(wit);
  }
  if (out.verdict.inscribed != out.verdict.witness.has_value()) bad("'inscribed' and 'witness' disagree");

  const auto& refs = field(j, "refutation");
  if (!refs.is_array()) bad("field 'refutation' is not an array");
  for (const auto& r : refs) {
    VertexFailure f{vector_from_json(field(r, "vertex")), kind_from_string(string_field(r, "kind")), string_field(r, "detail"),
                    std::nullopt};
    if (r.contains("violation"))
      f.violation = FacetViolation{vector_from_json(field(r["violation"], "normal")), vector_from_json(field(r["violation"], "edge")),
                                   integer_from_json(field(r["violation"], "pairing"))};
    out.verdict.refutation.push_back(std::move(f));
  }

  const auto& b = field(j, "boundary");
  if (!b.is_null()) {
    BoundaryProfile p;
    if (b.contains("vertex")) p.witness_vertex = vector_from_json(b["vertex"]);
    if (b.contains("normals")) p.normals = vectors_from_json(b["normals"]);
    const auto& cs = field(b, "coefficients");
    if (!cs.is_array()) bad("field 'coefficients' is not an array");
    for (const auto& c : cs) p.coefficients.push_back(integer_from_json(c));
    const auto& dc = field(b, "divisor_count");
    if (!dc.is_number_unsigned()) bad("field 'divisor_count' is not a count");
    p.divisor_count = dc.get<std::size_t>();
    out.boundary = std::move(p);
  }
  if (j.contains("very_ampleness_unverified")) out.verdict.very_ampleness_unverified = j["very_ampleness_unverified"].get<bool>();
  return out;
}

Json family_to_json(const PolyMatrixFamily& f) {
  Json out;
  out["name"] = f.name;
  out["params"] = f.params;
  out["size"] = f.size();
  Json rows = Json::array();
  for (std::size_t r = 0; r < f.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < f.size(); ++c) {
      Json terms = Json::array();
      for (const auto& [m, coeff] : f.at(r, c).terms()) {
        Json exps = Json::array();
        for (std::size_t k = 0; k < f.params; ++k) exps.push_back(m.exponent(k));
        terms.push_back({{"exponents", exps}, {"coefficient", to_string(coeff)}});
      }
      row.push_back(std::move(terms));
    }
    rows.push_back(std::move(row));
  }
  out["entries"] = std::move(rows);
  return out;
}

Json fact_to_json(const KnowledgeBase& kb, const Fact& f) {
  Json out;
  out["id"] = f.id;
  out["node"] = f.node;
  out["status"] = to_string(f.status);
  out["provenance"] = to_string(f.kind);
  switch (f.kind) {
    case ProvenanceKind::Computed: out["evidence"] = f.evidence; break;
    case ProvenanceKind::Cited:
      out["cite"] = f.cite;
      out["quote"] = f.quote;
      break;
    case ProvenanceKind::Derived:
      out["rule"] = f.rule;
      out["premises"] = f.premises;
      out["edge"] = f.edge;
      break;
  }
  if (f.note) out["note"] = *f.note;
  out["derivation"] = derivation(kb, f);
  return out;
}

Json lineage_to_json(const KnowledgeBase& kb, const MainTheoremReport& r, const ConsistencyReport& c) {
  Json out;
  Json entries = Json::array();
  for (const auto& e : r.additive) {
    Json entry{{"id", e.id}, {"picard", e.picard}};
    if (e.note) entry["note"] = *e.note;
    entry["facts"] = Json::array();
    for (auto id : e.facts) entry["facts"].push_back(fact_to_json(kb, kb.facts[id]));
    entries.push_back(std::move(entry));
  }
  out["additive"] = std::move(entries);
  out["unknown"] = r.unknown;
  out["missing"] = r.missing;
  out["unexpected"] = r.unexpected;
  out["consistent"] = c.ok;
  out["problems"] = c.problems;
  return out;
}

}  // namespace fanoscope

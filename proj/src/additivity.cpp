#include "fanoscope/additivity.hpp"

#include "fanoscope/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace fanoscope {

namespace {

// Condition (2) at one vertex given its edge basis. Returns the first violation in canonical
// (facet, edge) order, or nullopt.
std::optional<FacetViolation> first_violation(const std::vector<CheckedFacet>& facets,
                                              const std::vector<LatticeVector>& basis) {
  for (const auto& f : facets)
    for (const auto& e : basis) {
      Integer s = dot(f.normal, e);
      if (s < 0) return FacetViolation{f.normal, e, s};
    }
  return std::nullopt;
}

VertexFailure violation_record(const LatticeVector& v, FacetViolation fv) {
  VertexFailure rec{v, FailureKind::FacetViolation, {}, std::nullopt};
  rec.detail = "<" + to_string(fv.normal) + "," + to_string(fv.edge) + "> = " + fv.pairing.str();
  rec.violation = std::move(fv);
  return rec;
}

}  // namespace

std::string to_string(FailureKind k) {
  switch (k) {
    case FailureKind::NotSimple:
      return "not-simple";
    case FailureKind::NotUnimodular:
      return "not-unimodular";
    case FailureKind::FacetViolation:
      return "facet-violation";
  }
  return "unknown";
}

InscribedVerdict inscribed_in_rectangle(const LatticePolytope& p) {
  const auto facets = facet_enumeration(p);
  InscribedVerdict verdict;
  for (std::size_t vi = 0; vi < p.vertex_count(); ++vi) {
    const auto fig = vertex_edges(p, facets, vi);
    const auto& v = fig.vertex;
    if (fig.edge_directions.size() != p.dim()) {
      verdict.refutation.push_back({v, FailureKind::NotSimple,
                                    std::to_string(fig.edge_directions.size()) + " edges at a vertex of a " +
                                        std::to_string(p.dim()) + "-polytope",
                                    std::nullopt});
      continue;
    }
    const Integer det = determinant(fig.edge_directions);
    if (abs(det) != 1) {
      verdict.refutation.push_back(
          {v, FailureKind::NotUnimodular, "edge determinant " + det.str(), std::nullopt});
      continue;
    }
    std::vector<CheckedFacet> away;
    for (const auto& f : facets)
      if (!f.contains(vi)) away.push_back({f.normal, f.offset});
    if (auto bad = first_violation(away, fig.edge_directions)) {
      verdict.refutation.push_back(violation_record(v, std::move(*bad)));
      continue;
    }
    verdict.inscribed = true;
    verdict.witness = Witness{v, fig.edge_directions, std::move(away)};
    verdict.refutation.clear();
    return verdict;
  }
  return verdict;
}

InscribedVerdict reflexive_fast_path(const LatticePolytope& p) {
  const auto fan = normal_fan_rays(p);
  const std::size_t n = p.dim();
  InscribedVerdict verdict;
  for (std::size_t vi = 0; vi < p.vertex_count(); ++vi) {
    const auto& v = p.vertices()[vi];
    const auto& cone = fan.vertex_cones[vi];
    if (cone.size() != n) throw std::invalid_argument("reflexive_fast_path: polytope is not smooth");
    linalg::Matrix<Rational> u(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u[i][j] = Rational(fan.rays[cone[i]][j]);
    const auto inv = linalg::inverse(u);
    if (!inv) throw std::invalid_argument("reflexive_fast_path: polytope is not smooth");

    // Edge e_i is column i of U^{-1}: <u_j, e_i> = delta_ij.
    std::vector<LatticeVector> basis;
    for (std::size_t i = 0; i < n; ++i) {
      LatticeVector e(n);
      for (std::size_t k = 0; k < n; ++k) {
        if (!is_integral((*inv)[k][i])) throw std::invalid_argument("reflexive_fast_path: polytope is not smooth");
        e[k] = numerator((*inv)[k][i]);
      }
      basis.push_back(std::move(e));
    }
    std::sort(basis.begin(), basis.end());

    std::vector<CheckedFacet> away;
    for (std::size_t r = 0; r < fan.rays.size(); ++r)
      if (std::find(cone.begin(), cone.end(), r) == cone.end()) away.push_back({-fan.rays[r], Integer(1)});

    if (auto bad = first_violation(away, basis)) {
      verdict.refutation.push_back(violation_record(v, std::move(*bad)));
      continue;
    }
    verdict.inscribed = true;
    verdict.witness = Witness{v, std::move(basis), std::move(away)};
    verdict.refutation.clear();
    return verdict;
  }
  return verdict;
}

bool verify_witness(const Witness& w) {
  const std::size_t n = w.v0.dim();
  if (w.basis.size() != n) return false;
  for (const auto& e : w.basis)
    if (e.dim() != n) return false;
  if (abs(determinant(w.basis)) != 1) return false;
  for (const auto& f : w.checked_facets)
    for (const auto& e : w.basis)
      if (dot(f.normal, e) < 0) return false;
  return true;
}

bool verify_witness(const Witness& w, const LatticePolytope& p) {
  if (!verify_witness(w)) return false;
  if (!p.index_of(w.v0)) return false;
  for (const auto& f : w.checked_facets) {
    if (dot(f.normal, w.v0) >= f.offset) return false;
    bool attained = false;
    for (const auto& x : p.vertices()) {
      const Integer s = dot(f.normal, x);
      if (s > f.offset) return false;
      attained = attained || s == f.offset;
    }
    if (!attained) return false;
  }
  // Every facet missing v0 must be listed, and the basis must be the edge directions at v0.
  const auto facets = facet_enumeration(p);
  std::size_t missing_v0 = 0;
  for (const auto& f : facets) {
    if (dot(f.normal, w.v0) == f.offset) continue;
    ++missing_v0;
    bool listed = std::any_of(w.checked_facets.begin(), w.checked_facets.end(), [&](const CheckedFacet& c) {
      return c.normal == f.normal && c.offset == f.offset;
    });
    if (!listed) return false;
  }
  if (missing_v0 != w.checked_facets.size()) return false;
  auto edges = vertex_edges(p, facets, *p.index_of(w.v0)).edge_directions;
  auto basis = w.basis;
  std::sort(edges.begin(), edges.end());
  std::sort(basis.begin(), basis.end());
  return edges == basis;
}

std::optional<Integer> BoundaryProfile::coefficient_for(const LatticeVector& normal) const {
  for (std::size_t j = 0; j < normals.size(); ++j)
    if (normals[j] == normal) return coefficients[j];
  return std::nullopt;
}

BoundaryProfile boundary_coefficients(const LatticePolytope& p, const LatticeVector& v0) {
  const auto idx = p.index_of(v0);
  if (!idx) throw std::invalid_argument(to_string(v0) + " is not a vertex of the polytope");
  const auto facets = facet_enumeration(p);
  for (const auto& f : facets)
    if (f.offset != 1) throw std::invalid_argument("boundary_coefficients: polytope is not reflexive");
  const auto fig = vertex_edges(p, facets, *idx);
  if (fig.edge_directions.size() != p.dim() || abs(determinant(fig.edge_directions)) != 1)
    throw std::invalid_argument("edge vectors not unimodular");

  BoundaryProfile prof;
  prof.witness_vertex = v0;
  for (const auto& f : facets) {
    if (f.contains(*idx)) continue;
    Integer a = 1;
    for (const auto& e : fig.edge_directions) a += dot(e, f.normal);
    prof.normals.push_back(f.normal);
    prof.coefficients.push_back(std::move(a));
  }
  prof.divisor_count = facets.size() - p.dim();
  return prof;
}

}  // namespace fanoscope

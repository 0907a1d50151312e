#pragma once

// Inscribed-in-a-rectangle test for lattice polytopes. For the anticanonical polytope of a
// smooth toric Fano variety a positive verdict is equivalent to the variety admitting an
// additive (G_a^n) structure.

#include "fanoscope/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fanoscope {

enum class FailureKind { NotSimple, NotUnimodular, FacetViolation };

std::string to_string(FailureKind k);

struct CheckedFacet {
  LatticeVector normal;
  Integer offset;
  friend bool operator==(const CheckedFacet&, const CheckedFacet&) = default;
};

/// Offending pairing <p, e_i> < 0 on a facet that misses the vertex.
struct FacetViolation {
  LatticeVector normal;
  LatticeVector edge;
  Integer pairing;
};

struct VertexFailure {
  LatticeVector vertex;
  FailureKind kind;
  std::string detail;
  std::optional<FacetViolation> violation;  // set for FacetViolation
};

struct Witness {
  LatticeVector v0;
  std::vector<LatticeVector> basis;           // primitive edge vectors at v0
  std::vector<CheckedFacet> checked_facets;   // every facet not through v0
};

struct InscribedVerdict {
  bool inscribed = false;
  std::optional<Witness> witness;
  std::vector<VertexFailure> refutation;  // one record per vertex when not inscribed
  // The equivalence with additivity is only established for very ample polytopes; this is
  // not checked here.
  bool very_ampleness_unverified = true;
};

/// Scans vertices in canonical order and returns the first witness, or a complete refutation.
InscribedVerdict inscribed_in_rectangle(const LatticePolytope& p);

/// Same verdict computed from the normal fan: facet data p_i = -u_i with offset 1 and edge
/// vectors taken as the dual basis of each vertex cone. Requires P reflexive and smooth.
InscribedVerdict reflexive_fast_path(const LatticePolytope& p);

/// Data-only re-check of a witness: |det basis| = 1 and <p, e_i> >= 0 for every listed facet.
bool verify_witness(const Witness& w);

/// Stronger re-check against the polytope: additionally the listed facets are exactly the facets
/// of P missing v0, and the basis is the set of primitive edge directions at v0.
bool verify_witness(const Witness& w, const LatticePolytope& p);

struct BoundaryProfile {
  LatticeVector witness_vertex;
  std::vector<LatticeVector> normals;  // facets not through the vertex, lexicographic order
  std::vector<Integer> coefficients;   // coefficients[j] belongs to normals[j]
  std::size_t divisor_count = 0;

  /// Coefficient attached to a given facet normal, if that facet misses the vertex.
  std::optional<Integer> coefficient_for(const LatticeVector& normal) const;
};

/// Coefficients a_j of -K_X = sum a_j D_j over the boundary divisors of the additive structure
/// with fixed point v0: a_j = 1 + sum_i <e_i, p_j>. Requires P reflexive and v0 a vertex whose
/// primitive edge vectors form a lattice basis.
BoundaryProfile boundary_coefficients(const LatticePolytope& p, const LatticeVector& v0);

}  // namespace fanoscope

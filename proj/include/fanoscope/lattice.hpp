#pragma once

#include "fanoscope/arith.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanoscope {

/// Raised when a polytope is not full-dimensional in its ambient lattice.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Element of M or N, both identified with Z^n.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t dim) : coords_(dim, Integer(0)) {}
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long> coords);

  std::size_t dim() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }

  bool is_zero() const;
  Integer content() const;  // gcd of the coordinates

  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  LatticeVector operator-() const;
  friend LatticeVector operator*(const Integer& k, LatticeVector v);

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b);

 private:
  std::vector<Integer> coords_;
};

Integer dot(const LatticeVector& a, const LatticeVector& b);
std::string to_string(const LatticeVector& v);
std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

/// v divided by the gcd of its coordinates. Throws std::invalid_argument on zero.
LatticeVector primitive(const LatticeVector& v);

/// Determinant of the square matrix whose rows are `rows`.
Integer determinant(std::span<const LatticeVector> rows);

/// Rank over Q of the given row vectors.
std::size_t rank(std::span<const LatticeVector> rows);

/// Full-dimensional lattice polytope given by its vertices, kept sorted and duplicate-free.
class LatticePolytope {
 public:
  struct HullReport {
    std::size_t duplicates = 0;
    std::size_t non_vertices = 0;
  };

  /// Builds conv(points). Points that are not vertices are dropped and counted in `report`.
  static LatticePolytope from_points(std::vector<LatticeVector> points, HullReport* report = nullptr);

  std::size_t dim() const { return dim_; }
  const std::vector<LatticeVector>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::optional<std::size_t> index_of(const LatticeVector& v) const;

  friend bool operator==(const LatticePolytope&, const LatticePolytope&) = default;

 private:
  LatticePolytope(std::size_t dim, std::vector<LatticeVector> vertices)
      : dim_(dim), vertices_(std::move(vertices)) {}

  std::size_t dim_ = 0;
  std::vector<LatticeVector> vertices_;
};

/// Facet inequality <normal, x> <= offset with a primitive outward normal.
struct Facet {
  LatticeVector normal;
  Integer offset;
  std::vector<std::size_t> incident;  // indices into the polytope's vertex list

  bool contains(std::size_t vertex_index) const;
};

struct VertexFigure {
  LatticeVector vertex;
  std::vector<LatticeVector> edge_directions;  // primitive, sorted
  std::vector<std::size_t> neighbours;         // vertex index at the far end of each edge
};

/// Complete facet list, sorted lexicographically by normal.
std::vector<Facet> facet_enumeration(const LatticePolytope& p);

/// Edges at `v`, derived from facet incidence. Throws if `v` is not a vertex.
VertexFigure vertex_edges(const LatticePolytope& p, const LatticeVector& v);
VertexFigure vertex_edges(const LatticePolytope& p, std::span<const Facet> facets, std::size_t vertex_index);

/// Vertex list with rational coordinates, used for duals of non-reflexive polytopes.
struct RationalPolytope {
  std::size_t dim = 0;
  std::vector<std::vector<Rational>> vertices;  // sorted lexicographically
  bool integral = false;

  /// Converts to a lattice polytope; throws if some vertex is not integral.
  LatticePolytope to_lattice() const;
};

/// P* = { y : <y,x> >= -1 for all x in P }. Requires the origin in the interior of P.
RationalPolytope dual_polytope(const LatticePolytope& p);

bool origin_is_interior(const LatticePolytope& p);
bool is_reflexive(const LatticePolytope& p);

struct VertexSmoothness {
  LatticeVector vertex;
  bool simple = false;
  bool unimodular = false;
  Integer edge_determinant;  // 0 when not simple
};

struct SmoothnessReport {
  bool smooth = false;
  std::vector<VertexSmoothness> vertices;
};

SmoothnessReport is_smooth(const LatticePolytope& p);

struct NormalFan {
  std::vector<LatticeVector> rays;                  // rays[i] = -facets[i].normal
  std::vector<std::vector<std::size_t>> vertex_cones;  // per vertex: indices of rays whose facet contains it
};

/// Rays of the normal fan of a reflexive polytope. Throws if P is not reflexive.
NormalFan normal_fan_rays(const LatticePolytope& p);

/// T(P) + t for an integer matrix T (rows of T act on column vectors).
LatticePolytope transformed(const LatticePolytope& p, std::span<const LatticeVector> matrix,
                            const LatticeVector& translation);

/// Cartesian product P x Q in dimension dim(P) + dim(Q).
LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q);

}  // namespace fanoscope

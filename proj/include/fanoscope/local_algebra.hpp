#pragma once

// Finite-dimensional commutative local algebras over Q(i), their truncated exponentials, and
// the unipotent representation families they induce. Also stores representation matrices as
// printed in the literature so that they can be checked against the generated ones.

#include "fanoscope/linalg.hpp"
#include "fanoscope/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanoscope {

class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Multiplication table on a basis x_0 = 1, x_1, ..., x_{l-1}:
/// x_j * x_k = sum_m products[j][k][m] * x_m.
struct StructureTable {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<Scalar>>> products;
  std::vector<std::size_t> generators;  // basis indices X_1..X_n spanning U
};

class LocalAlgebra {
 public:
  const std::string& name() const { return t_.name; }
  std::size_t dim() const { return t_.labels.size(); }
  const std::vector<std::string>& labels() const { return t_.labels; }
  const std::vector<std::size_t>& generators() const { return t_.generators; }
  const std::vector<Scalar>& product(std::size_t j, std::size_t k) const { return t_.products[j][k]; }

 private:
  friend LocalAlgebra make_algebra(StructureTable t);
  StructureTable t_;
};

/// Validates the table: unit, commutativity, associativity, nilpotent maximal ideal, and that the
/// generators generate. Throws AlgebraError naming the first failed property.
LocalAlgebra make_algebra(StructureTable t);

/// Built-in algebras: P3/I1..P3/I4, P2/tau, P2/rho, Q1..Q6, Q0_3/rho1..Q0_3/rho3.
LocalAlgebra make_algebra(const std::string& name);
std::vector<std::string> algebra_names();

/// Element of an algebra: coordinates in the stored basis, entries may be polynomials.
using Element = std::vector<Polynomial>;

Element multiply(const LocalAlgebra& a, const Element& x, const Element& y);
Element unit(const LocalAlgebra& a);

/// sum_{k < l} x^k / k!. Requires a zero unit component.
Element exp_element(const LocalAlgebra& a, const Element& x);

/// Square matrix family with polynomial entries in a_1..a_n.
struct PolyMatrixFamily {
  std::string name;
  std::size_t params = 0;
  std::vector<std::vector<Polynomial>> entries;

  std::size_t size() const { return entries.size(); }
  const Polynomial& at(std::size_t r, std::size_t c) const { return entries[r][c]; }
  /// Entry-wise equality, ignoring name and declared parameter count.
  bool same_entries(const PolyMatrixFamily& o) const { return entries == o.entries; }
};

/// Matrix of multiplication by exp(a_1 X_1 + ... + a_n X_n); column j is the image of x_j.
PolyMatrixFamily generic_rep(const LocalAlgebra& a);

/// Matrices stored exactly as printed: P2/tau, P2/rho, P3/rho1..P3/rho4, Qn/sharoyko/n=n for
/// n = 1..6, Q0_3/rho1..Q0_3/rho3.
PolyMatrixFamily paper_rep(const std::string& name);
std::vector<std::string> paper_rep_names();

/// Built-in algebra whose exponential is compared with the printed family.
std::optional<std::string> paper_rep_algebra(const std::string& rep_name);

/// Quadratic form left invariant by a printed family, when one is registered.
std::optional<linalg::Matrix<Scalar>> registered_quadric(const std::string& rep_name);

linalg::Matrix<Scalar> evaluate(const PolyMatrixFamily& f, const std::vector<Scalar>& point);
PolyMatrixFamily multiply(const PolyMatrixFamily& x, const PolyMatrixFamily& y);

struct HomomorphismReport {
  bool holds = true;
  std::size_t row = 0, col = 0;  // 0-based position of the first failing entry
  Polynomial difference;         // rho(a) rho(b) - rho(a+b) at that entry, in a1..an, b1..bn
};

/// Symbolic check of rho(a) rho(b) = rho(a+b), entries scanned row by row.
HomomorphismReport is_homomorphism(const PolyMatrixFamily& f);

struct FixedLocus {
  int projective_dimension = -1;
  std::vector<std::vector<Scalar>> basis;
};

/// Common kernel of the coefficient matrices of every monomial in rho(a) - Id.
FixedLocus fixed_locus(const PolyMatrixFamily& f);

/// rho(a)^T Q rho(a) = Q identically. Throws std::invalid_argument on a size mismatch.
bool preserves_quadric(const PolyMatrixFamily& f, const linalg::Matrix<Scalar>& q);

/// The linear parts of the entries are independent, so rho(a) = Id forces a = 0.
bool is_faithful(const PolyMatrixFamily& f);

/// C rho C^{-1} for an invertible constant matrix C.
PolyMatrixFamily conjugate(const PolyMatrixFamily& f, const linalg::Matrix<Scalar>& c);

/// Removes row and column k.
PolyMatrixFamily delete_index(const PolyMatrixFamily& f, std::size_t k);

struct MatchReport {
  bool matched = false;
  bool transposed = false;
  std::vector<std::size_t> permutation;  // candidate(r, c) = generated(perm[r], perm[c])
  bool conjugated = false;               // i replaced by -i in the generated family
  std::optional<Polynomial> shift;       // last parameter a_n replaced by a_n + shift
  std::size_t params = 0;

  std::string describe() const;
};

/// Searches transpose x basis permutations x Galois conjugation for an exact match, first
/// without and then with a reparametrization of the last parameter.
MatchReport match_paper(const PolyMatrixFamily& generated, const PolyMatrixFamily& printed);

/// Applies the convention recorded in a report to a generated family.
PolyMatrixFamily apply_convention(const PolyMatrixFamily& generated, const MatchReport& m);

/// Aligned text rendering, one row per line.
std::string format_matrix(const PolyMatrixFamily& f);

}  // namespace fanoscope

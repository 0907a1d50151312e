#pragma once

#include "fanoscope/arith.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fanoscope {

/// Exponent vector with trailing zeros trimmed, so x1 in 2 variables equals x1 in 5.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint16_t> exps);
  static Monomial variable(std::size_t index);

  const std::vector<std::uint16_t>& exponents() const { return exps_; }
  std::uint16_t exponent(std::size_t var) const { return var < exps_.size() ? exps_[var] : 0; }
  unsigned degree() const;
  bool is_one() const { return exps_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void trim();
  std::vector<std::uint16_t> exps_;
};

/// Graded order: total degree first, then the exponent of the highest-index variable, and so on
/// downwards. Variables are ordered a1 < a2 < ... < b1 < b2 < ...
struct GradedOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial over Q(i).
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar, GradedOrder>;

  Polynomial() = default;
  Polynomial(const Scalar& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(const Monomial& m, const Scalar& c);
  static Polynomial variable(std::size_t index);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const { return coefficient(Monomial{}); }
  Scalar coefficient(const Monomial& m) const;
  int degree() const;  // -1 for the zero polynomial
  bool involves(std::size_t var) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned k) const;

  /// Simultaneous substitution x_i -> images[i]; variables without an image are kept.
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  /// Value when every variable is replaced by the corresponding scalar.
  Scalar evaluate(const std::vector<Scalar>& point) const;

  /// Coefficient-wise complex conjugation.
  Polynomial conj() const;

  /// Split p = c * x_var + rest where c does not involve x_var. Returns false when p is not of
  /// that shape (x_var appears non-linearly or with a non-constant coefficient).
  bool split_linear(std::size_t var, Scalar& c, Polynomial& rest) const;

 private:
  void add_term(const Monomial& m, const Scalar& c);
  Terms terms_;
};

/// Variable names a1..an for the first `params` indices, then b1, b2, ... for the rest.
std::string variable_name(std::size_t index, std::size_t params);
std::string to_string(const Polynomial& p, std::size_t params);

/// Reads expressions such as "a3 + a1*a2 + 1/6*a1^3" or "(1/2)*(a1*a2 + i*a2^2)". Accepts
/// integers, fractions, i, a<k>, b<k>, + - * ^ and parentheses. Throws std::invalid_argument.
Polynomial parse_polynomial(const std::string& text, std::size_t params);

}  // namespace fanoscope

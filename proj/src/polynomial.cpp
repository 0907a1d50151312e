#include "fanoscope/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace fanoscope {

Monomial::Monomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) { trim(); }

Monomial Monomial::variable(std::size_t index) {
  std::vector<std::uint16_t> e(index + 1, 0);
  e[index] = 1;
  return Monomial(std::move(e));
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exps_) d += e;
  return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  std::vector<std::uint16_t> e(std::max(a.exps_.size(), b.exps_.size()), 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const unsigned s = unsigned(a.exponent(i)) + b.exponent(i);
    if (s > std::numeric_limits<std::uint16_t>::max()) throw std::overflow_error("monomial exponent overflow");
    e[i] = static_cast<std::uint16_t>(s);
  }
  return Monomial(std::move(e));
}

bool GradedOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const std::size_t n = std::max(a.exponents().size(), b.exponents().size());
  for (std::size_t i = n; i-- > 0;) {
    if (a.exponent(i) != b.exponent(i)) return a.exponent(i) < b.exponent(i);
  }
  return false;
}

Polynomial::Polynomial(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Polynomial::Polynomial(const Monomial& m, const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(m, c);
}

Polynomial Polynomial::variable(std::size_t index) { return Polynomial(Monomial::variable(index), Scalar(1)); }

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

int Polynomial::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree()); }

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.exponent(var) > 0; });
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  Polynomial r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  *this = std::move(r);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r(1);
  for (unsigned i = 0; i < k; ++i) r *= *this;
  return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial term(c);
    std::vector<std::uint16_t> kept(m.exponents().size(), 0);
    for (std::size_t v = 0; v < m.exponents().size(); ++v) {
      const unsigned e = m.exponent(v);
      if (e == 0) continue;
      if (v < images.size())
        term *= images[v].pow(e);
      else
        kept[v] = static_cast<std::uint16_t>(e);
    }
    term *= Polynomial(Monomial(std::move(kept)), Scalar(1));
    out += term;
  }
  return out;
}

Scalar Polynomial::evaluate(const std::vector<Scalar>& point) const {
  Scalar total(0);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (std::size_t v = 0; v < m.exponents().size(); ++v) {
      const unsigned e = m.exponent(v);
      if (e == 0) continue;
      if (v >= point.size()) throw std::invalid_argument("evaluate: missing value for a variable");
      for (unsigned k = 0; k < e; ++k) t *= point[v];
    }
    total += t;
  }
  return total;
}

Polynomial Polynomial::conj() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = c.conj();
  return r;
}

bool Polynomial::split_linear(std::size_t var, Scalar& c, Polynomial& rest) const {
  c = Scalar(0);
  rest = Polynomial();
  const Monomial x = Monomial::variable(var);
  for (const auto& [m, coef] : terms_) {
    const auto e = m.exponent(var);
    if (e == 0)
      rest.add_term(m, coef);
    else if (e == 1 && m == x)
      c = coef;
    else
      return false;
  }
  return true;
}

std::string variable_name(std::size_t index, std::size_t params) {
  if (params == 0 || index < params) return "a" + std::to_string(index + 1);
  return "b" + std::to_string(index - params + 1);
}

std::string to_string(const Polynomial& p, std::size_t params) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string coef = to_string(c);
    bool negative = false;
    if (c.is_real() && c.re() < 0) {
      negative = true;
      coef = to_string(Scalar(-c.re()));
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;

    std::string mono;
    for (std::size_t v = 0; v < m.exponents().size(); ++v) {
      const unsigned e = m.exponent(v);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_name(v, params);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      out += coef;
    else if (coef == "1")
      out += mono;
    else
      out += coef + "*" + mono;
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, std::size_t params) : s_(s), params_(params) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial '" + s_ + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  unsigned long number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(s_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial acc;
    bool negative = eat('-');
    if (!negative) eat('+');
    acc = negative ? -term() : term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    while (eat('*')) acc *= power();
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (eat('^')) base = base.pow(static_cast<unsigned>(number()));
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational v{Integer(number())};
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/' ) {
        ++pos_;
        const auto d = number();
        if (d == 0) fail("division by zero");
        v /= Rational{Integer(d)};
      }
      return Polynomial(Scalar(v));
    }
    if (c == 'i') {
      ++pos_;
      return Polynomial(Scalar::i());
    }
    if (c == 'a' || c == 'b') {
      ++pos_;
      const auto k = number();
      if (k == 0) fail("variables are numbered from 1");
      std::size_t index = k - 1;
      if (c == 'b') {
        if (params_ == 0) fail("b-variables need a parameter count");
        index += params_;
      } else if (params_ && index >= params_) {
        fail("a" + std::to_string(k) + " exceeds the parameter count");
      }
      return Polynomial::variable(index);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t params_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, std::size_t params) { return Parser(text, params).parse(); }

}  // namespace fanoscope

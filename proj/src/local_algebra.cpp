#include "fanoscope/local_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fanoscope {

namespace {

using Coords = std::vector<Scalar>;

Coords basis_vector(std::size_t dim, std::size_t k) {
  Coords e(dim, Scalar(0));
  e[k] = Scalar(1);
  return e;
}

Coords mul_coords(const StructureTable& t, const Coords& x, const Coords& y) {
  const std::size_t n = t.labels.size();
  Coords out(n, Scalar(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (y[k].is_zero()) continue;
      const Scalar f = x[j] * y[k];
      const auto& p = t.products[j][k];
      for (std::size_t m = 0; m < n; ++m)
        if (!p[m].is_zero()) out[m] += f * p[m];
    }
  }
  return out;
}

bool is_zero(const Coords& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

class TableBuilder {
 public:
  TableBuilder(std::string name, std::vector<std::string> labels, std::vector<std::size_t> gens) {
    const std::size_t n = labels.size();
    t_.name = std::move(name);
    t_.labels = std::move(labels);
    t_.generators = std::move(gens);
    t_.products.assign(n, std::vector<Coords>(n, Coords(n, Scalar(0))));
    for (std::size_t k = 0; k < n; ++k) {
      t_.products[0][k] = basis_vector(n, k);
      t_.products[k][0] = basis_vector(n, k);
    }
  }

  TableBuilder& set(std::size_t j, std::size_t k, const std::vector<std::pair<std::size_t, Scalar>>& terms) {
    Coords v(t_.labels.size(), Scalar(0));
    for (const auto& [m, c] : terms) v[m] += c;
    t_.products[j][k] = v;
    t_.products[k][j] = v;
    return *this;
  }

  StructureTable take() { return std::move(t_); }

 private:
  StructureTable t_;
};

Scalar half() { return Scalar(Rational(1, 2)); }

StructureTable quadric_cone_table(const std::string& name, const Scalar& l12, const Scalar& l11_minus_l22) {
  // Basis 1, S1, S2, S3, T with T = S1^2; the ideal forces S1 S3 = S2 S3 = S3^2 = 0.
  TableBuilder b(name, {"1", "S1", "S2", "S3", "T"}, {1, 2, 3});
  b.set(1, 1, {{4, Scalar(1)}});
  b.set(1, 2, {{3, l12}});
  b.set(2, 2, {{4, Scalar(1)}, {3, -l11_minus_l22}});
  return b.take();
}

StructureTable builtin_table(const std::string& name) {
  if (name == "P3/I1")
    return TableBuilder(name, {"1", "S1", "S2", "S3"}, {1, 2, 3})
        .set(1, 1, {{2, Scalar(1)}})
        .set(1, 2, {{3, Scalar(1)}})
        .take();
  if (name == "P3/I2") return TableBuilder(name, {"1", "S1", "S2", "S3"}, {1, 2, 3}).set(1, 1, {{2, Scalar(1)}}).take();
  if (name == "P3/I3") return TableBuilder(name, {"1", "S1", "S2", "S3"}, {1, 2, 3}).set(1, 2, {{3, Scalar(1)}}).take();
  if (name == "P3/I4") return TableBuilder(name, {"1", "S1", "S2", "S3"}, {1, 2, 3}).take();
  if (name == "P2/tau") return TableBuilder(name, {"1", "S1", "S2"}, {1, 2}).take();
  if (name == "P2/rho") return TableBuilder(name, {"1", "S1", "S2"}, {1, 2}).set(1, 1, {{2, Scalar(1)}}).take();
  if (name == "Q0_3/rho1") return quadric_cone_table(name, Scalar(0), Scalar(0));
  if (name == "Q0_3/rho2") return quadric_cone_table(name, Scalar(0), Scalar(-1));
  if (name == "Q0_3/rho3") return quadric_cone_table(name, half(), Scalar::i());
  if (name.size() == 2 && name[0] == 'Q' && name[1] >= '1' && name[1] <= '6') {
    const std::size_t n = static_cast<std::size_t>(name[1] - '0');
    std::vector<std::string> labels{"1"};
    std::vector<std::size_t> gens;
    for (std::size_t i = 1; i <= n; ++i) {
      labels.push_back("S" + std::to_string(i));
      gens.push_back(i);
    }
    labels.push_back("T");
    TableBuilder b(name, labels, gens);
    for (std::size_t i = 1; i <= n; ++i) b.set(i, i, {{n + 1, Scalar(1)}});
    return b.take();
  }
  throw AlgebraError("unknown algebra '" + name + "'");
}

// Verbatim matrix data; entries are parsed with a fixed parameter count.
PolyMatrixFamily from_rows(const std::string& name, std::size_t params,
                           const std::vector<std::vector<std::string>>& rows) {
  PolyMatrixFamily f{name, params, {}};
  for (const auto& r : rows) {
    std::vector<Polynomial> row;
    for (const auto& e : r) row.push_back(parse_polynomial(e, params));
    f.entries.push_back(std::move(row));
  }
  return f;
}

PolyMatrixFamily sharoyko(std::size_t n) {
  const std::size_t l = n + 2;
  PolyMatrixFamily f{"Q" + std::to_string(n) + "/sharoyko/n=" + std::to_string(n), n,
                     std::vector<std::vector<Polynomial>>(l, std::vector<Polynomial>(l))};
  for (std::size_t i = 0; i < l; ++i) f.entries[i][i] = Polynomial(1);
  Polynomial corner;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto a = Polynomial::variable(i - 1);
    f.entries[i][0] = a;
    f.entries[n + 1][i] = a;
    corner += a * a;
  }
  f.entries[n + 1][0] = corner * half();
  return f;
}

std::optional<std::size_t> sharoyko_index(const std::string& name) {
  for (std::size_t n = 1; n <= 6; ++n)
    if (name == "Q" + std::to_string(n) + "/sharoyko/n=" + std::to_string(n)) return n;
  return std::nullopt;
}

PolyMatrixFamily substitute(const PolyMatrixFamily& f, const std::vector<Polynomial>& images) {
  PolyMatrixFamily g = f;
  for (auto& row : g.entries)
    for (auto& e : row) e = e.substitute(images);
  return g;
}

PolyMatrixFamily arrange(const PolyMatrixFamily& f, bool transposed, const std::vector<std::size_t>& perm,
                         bool conjugated) {
  const std::size_t l = f.size();
  PolyMatrixFamily g{f.name, f.params, std::vector<std::vector<Polynomial>>(l, std::vector<Polynomial>(l))};
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t c = 0; c < l; ++c) {
      const auto& src = transposed ? f.at(perm[c], perm[r]) : f.at(perm[r], perm[c]);
      g.entries[r][c] = conjugated ? src.conj() : src;
    }
  return g;
}

// Finds q with candidate(a_n -> a_n + q) == printed, q free of a_n and nonzero.
std::optional<Polynomial> find_shift(const PolyMatrixFamily& cand, const PolyMatrixFamily& printed) {
  if (cand.params == 0) return std::nullopt;
  const std::size_t last = cand.params - 1;
  for (std::size_t r = 0; r < cand.size(); ++r)
    for (std::size_t c = 0; c < cand.size(); ++c) {
      if (!cand.at(r, c).involves(last)) continue;
      Scalar kc, pc;
      Polynomial kr, pr;
      if (!cand.at(r, c).split_linear(last, kc, kr) || !printed.at(r, c).split_linear(last, pc, pr)) return std::nullopt;
      if (kc != pc || kc.is_zero() || kr.involves(last) || pr.involves(last)) return std::nullopt;
      Polynomial q = (pr - kr) * (Scalar(1) / kc);
      if (q.is_zero()) return std::nullopt;
      std::vector<Polynomial> images;
      for (std::size_t v = 0; v < cand.params; ++v) images.push_back(Polynomial::variable(v));
      images[last] += q;
      if (substitute(cand, images).same_entries(printed)) return q;
      return std::nullopt;
    }
  return std::nullopt;
}

}  // namespace

LocalAlgebra make_algebra(StructureTable t) {
  const std::size_t n = t.labels.size();
  if (n == 0) throw AlgebraError(t.name + ": empty basis");
  if (t.products.size() != n) throw AlgebraError(t.name + ": table has wrong size");
  for (const auto& row : t.products) {
    if (row.size() != n) throw AlgebraError(t.name + ": table has wrong size");
    for (const auto& v : row)
      if (v.size() != n) throw AlgebraError(t.name + ": table has wrong size");
  }
  for (std::size_t k = 0; k < n; ++k)
    if (t.products[0][k] != basis_vector(n, k) || t.products[k][0] != basis_vector(n, k))
      throw AlgebraError(t.name + ": basis element 0 is not a unit");
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      if (t.products[j][k] != t.products[k][j])
        throw AlgebraError(t.name + ": not commutative at (" + t.labels[j] + "," + t.labels[k] + ")");
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = 0; m < n; ++m) {
        const auto left = mul_coords(t, t.products[j][k], basis_vector(n, m));
        const auto right = mul_coords(t, basis_vector(n, j), t.products[k][m]);
        if (left != right)
          throw AlgebraError(t.name + ": not associative at (" + t.labels[j] + "," + t.labels[k] + "," +
                             t.labels[m] + ")");
      }
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t k = 1; k < n; ++k)
      if (!t.products[j][k][0].is_zero()) throw AlgebraError(t.name + ": maximal ideal is not nilpotent");
  for (std::size_t j = 1; j < n; ++j) {
    Coords p = basis_vector(n, j);
    for (std::size_t e = 1; e < n && !is_zero(p); ++e) p = mul_coords(t, p, basis_vector(n, j));
    if (!is_zero(p)) throw AlgebraError(t.name + ": maximal ideal is not nilpotent");
  }

  if (t.generators.empty()) throw AlgebraError(t.name + ": no generators");
  linalg::Matrix<Scalar> span{basis_vector(n, 0)};
  std::vector<Coords> frontier;
  for (auto g : t.generators) {
    if (g == 0 || g >= n) throw AlgebraError(t.name + ": generator index out of range");
    frontier.push_back(basis_vector(n, g));
  }
  // Grow the span of generator monomials one degree at a time.
  for (std::size_t round = 0; round < n && !frontier.empty(); ++round) {
    std::vector<Coords> next;
    for (const auto& v : frontier) {
      auto trial = span;
      trial.push_back(v);
      if (linalg::rank(trial) > linalg::rank(span)) {
        span.push_back(v);
        for (auto g : t.generators) next.push_back(mul_coords(t, v, basis_vector(n, g)));
      }
    }
    frontier = std::move(next);
  }
  if (linalg::rank(span) != n) throw AlgebraError(t.name + ": generators do not generate the algebra");

  LocalAlgebra a;
  a.t_ = std::move(t);
  return a;
}

LocalAlgebra make_algebra(const std::string& name) { return make_algebra(builtin_table(name)); }

std::vector<std::string> algebra_names() {
  return {"P2/rho", "P2/tau", "P3/I1", "P3/I2", "P3/I3", "P3/I4", "Q0_3/rho1", "Q0_3/rho2", "Q0_3/rho3",
          "Q1",     "Q2",     "Q3",    "Q4",    "Q5",    "Q6"};
}

Element unit(const LocalAlgebra& a) {
  Element e(a.dim());
  e[0] = Polynomial(1);
  return e;
}

Element multiply(const LocalAlgebra& a, const Element& x, const Element& y) {
  const std::size_t n = a.dim();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("multiply: element length does not match the algebra");
  Element out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (y[k].is_zero()) continue;
      const Polynomial f = x[j] * y[k];
      const auto& p = a.product(j, k);
      for (std::size_t m = 0; m < n; ++m)
        if (!p[m].is_zero()) out[m] += f * p[m];
    }
  }
  return out;
}

Element exp_element(const LocalAlgebra& a, const Element& x) {
  if (x.size() != a.dim()) throw std::invalid_argument("exp_element: element length does not match the algebra");
  if (!x[0].is_zero()) throw std::invalid_argument("not in the maximal ideal");
  Element sum = unit(a);
  Element power = unit(a);
  for (std::size_t k = 1; k < a.dim(); ++k) {
    power = multiply(a, power, x);
    const Scalar inv_k(Rational(1, static_cast<long>(k)));
    for (auto& c : power) c *= inv_k;  // power now holds x^k / k!
    for (std::size_t m = 0; m < sum.size(); ++m) sum[m] += power[m];
  }
  return sum;
}

PolyMatrixFamily generic_rep(const LocalAlgebra& a) {
  const std::size_t n = a.dim();
  Element x(n);
  for (std::size_t i = 0; i < a.generators().size(); ++i) x[a.generators()[i]] += Polynomial::variable(i);
  const Element e = exp_element(a, x);
  PolyMatrixFamily f{a.name(), a.generators().size(),
                     std::vector<std::vector<Polynomial>>(n, std::vector<Polynomial>(n))};
  for (std::size_t j = 0; j < n; ++j) {
    Element basis(n);
    basis[j] = Polynomial(1);
    const Element col = multiply(a, e, basis);
    for (std::size_t m = 0; m < n; ++m) f.entries[m][j] = col[m];
  }
  return f;
}

PolyMatrixFamily paper_rep(const std::string& name) {
  if (name == "P2/tau") return from_rows(name, 2, {{"1", "0", "a2"}, {"0", "1", "a1"}, {"0", "0", "1"}});
  if (name == "P2/rho")
    return from_rows(name, 2, {{"1", "a1", "a2+1/2*a1^2"}, {"0", "1", "a1"}, {"0", "0", "1"}});
  if (name == "P3/rho1")
    return from_rows(name, 3,
                     {{"1", "a1", "a2+1/2*a1^2", "a3 + a1*a2"},
                      {"0", "1", "a1", "a2+1/2*a1^2"},
                      {"0", "0", "1", "a1"},
                      {"0", "0", "0", "1"}});
  if (name == "P3/rho2")
    return from_rows(name, 3,
                     {{"1", "0", "0", "a3"}, {"0", "1", "a1", "a2+1/2*a1^2"}, {"0", "0", "1", "a1"}, {"0", "0", "0", "1"}});
  if (name == "P3/rho3")
    return from_rows(name, 3,
                     {{"1", "a1", "a2", "a3 + a1*a2"}, {"0", "1", "0", "a2"}, {"0", "0", "1", "a1"}, {"0", "0", "0", "1"}});
  if (name == "P3/rho4")
    return from_rows(name, 3, {{"1", "0", "0", "a3"}, {"0", "1", "0", "a2"}, {"0", "0", "1", "a1"}, {"0", "0", "0", "1"}});
  if (name == "Q0_3/rho1")
    return from_rows(name, 3,
                     {{"1", "0", "0", "0", "0"},
                      {"a1", "1", "0", "0", "0"},
                      {"a2", "0", "1", "0", "0"},
                      {"a3", "0", "0", "1", "0"},
                      {"1/2*(a1^2+a2^2)", "a1", "a2", "0", "1"}});
  if (name == "Q0_3/rho2")
    return from_rows(name, 3,
                     {{"1", "0", "0", "0", "0"},
                      {"a1", "1", "0", "0", "0"},
                      {"a2", "0", "1", "0", "0"},
                      {"1/2*a2^2+a3", "0", "a2", "1", "0"},
                      {"1/2*(a1^2+a2^2)", "a1", "a2", "0", "1"}});
  if (name == "Q0_3/rho3")
    return from_rows(name, 3,
                     {{"1", "0", "0", "0", "0"},
                      {"a1", "1", "0", "0", "0"},
                      {"a2", "0", "1", "0", "0"},
                      {"1/2*(a1*a2+i*a2^2)+a3", "1/2*a2", "1/2*a1+i*a2", "1", "0"},
                      {"1/2*(a1^2+a2^2)", "a1", "a2", "0", "1"}});
  if (auto n = sharoyko_index(name)) return sharoyko(*n);
  throw std::invalid_argument("unknown representation '" + name + "'");
}

std::vector<std::string> paper_rep_names() {
  std::vector<std::string> names{"P2/tau",    "P2/rho",    "P3/rho1",  "P3/rho2", "P3/rho3",
                                 "P3/rho4",   "Q0_3/rho1", "Q0_3/rho2", "Q0_3/rho3"};
  for (std::size_t n = 1; n <= 6; ++n) names.push_back(sharoyko(n).name);
  return names;
}

std::optional<std::string> paper_rep_algebra(const std::string& rep_name) {
  if (rep_name == "P2/tau" || rep_name == "P2/rho") return rep_name;
  if (rep_name.rfind("P3/rho", 0) == 0 && rep_name.size() == 7) return "P3/I" + rep_name.substr(6);
  if (rep_name.rfind("Q0_3/rho", 0) == 0) return rep_name;
  if (auto n = sharoyko_index(rep_name)) return "Q" + std::to_string(*n);
  return std::nullopt;
}

std::optional<linalg::Matrix<Scalar>> registered_quadric(const std::string& rep_name) {
  // sum of x_i^2 over the middle coordinates minus 2 x_0 x_last
  auto form = [](std::size_t size, const std::vector<std::size_t>& squares) {
    linalg::Matrix<Scalar> q(size, std::vector<Scalar>(size, Scalar(0)));
    for (auto i : squares) q[i][i] = Scalar(1);
    q[0][size - 1] = Scalar(-1);
    q[size - 1][0] = Scalar(-1);
    return q;
  };
  if (auto n = sharoyko_index(rep_name)) {
    std::vector<std::size_t> sq(*n);
    std::iota(sq.begin(), sq.end(), std::size_t{1});
    return form(*n + 2, sq);
  }
  if (rep_name.rfind("Q0_3/rho", 0) == 0) return form(5, {1, 2});
  return std::nullopt;
}

linalg::Matrix<Scalar> evaluate(const PolyMatrixFamily& f, const std::vector<Scalar>& point) {
  linalg::Matrix<Scalar> m(f.size(), std::vector<Scalar>(f.size()));
  for (std::size_t r = 0; r < f.size(); ++r)
    for (std::size_t c = 0; c < f.size(); ++c) m[r][c] = f.at(r, c).evaluate(point);
  return m;
}

PolyMatrixFamily multiply(const PolyMatrixFamily& x, const PolyMatrixFamily& y) {
  if (x.size() != y.size()) throw std::invalid_argument("multiply: size mismatch");
  const std::size_t l = x.size();
  PolyMatrixFamily out{x.name, std::max(x.params, y.params),
                       std::vector<std::vector<Polynomial>>(l, std::vector<Polynomial>(l))};
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t k = 0; k < l; ++k) {
      if (x.at(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < l; ++c)
        if (!y.at(k, c).is_zero()) out.entries[r][c] += x.at(r, k) * y.at(k, c);
    }
  return out;
}

HomomorphismReport is_homomorphism(const PolyMatrixFamily& f) {
  const std::size_t n = f.params;
  std::vector<Polynomial> to_b, to_sum;
  for (std::size_t i = 0; i < n; ++i) {
    to_b.push_back(Polynomial::variable(n + i));
    to_sum.push_back(Polynomial::variable(i) + Polynomial::variable(n + i));
  }
  const auto lhs = multiply(f, substitute(f, to_b));
  const auto rhs = substitute(f, to_sum);
  HomomorphismReport rep;
  for (std::size_t r = 0; r < f.size(); ++r)
    for (std::size_t c = 0; c < f.size(); ++c) {
      Polynomial d = lhs.at(r, c) - rhs.at(r, c);
      if (!d.is_zero()) {
        rep.holds = false;
        rep.row = r;
        rep.col = c;
        rep.difference = std::move(d);
        return rep;
      }
    }
  return rep;
}

FixedLocus fixed_locus(const PolyMatrixFamily& f) {
  const std::size_t l = f.size();
  // One coefficient matrix per monomial of rho(a) - Id, stacked into a single system.
  std::map<Monomial, linalg::Matrix<Scalar>, GradedOrder> coeff;
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t c = 0; c < l; ++c) {
      Polynomial e = f.at(r, c);
      if (r == c) e -= Polynomial(1);
      for (const auto& [m, s] : e.terms()) {
        auto& mat = coeff[m];
        if (mat.empty()) mat.assign(l, std::vector<Scalar>(l, Scalar(0)));
        mat[r][c] = s;
      }
    }
  linalg::Matrix<Scalar> system;
  for (const auto& [m, mat] : coeff)
    for (const auto& row : mat) system.push_back(row);
  FixedLocus fl;
  fl.basis = linalg::kernel(std::move(system), l);
  fl.projective_dimension = static_cast<int>(fl.basis.size()) - 1;
  return fl;
}

bool preserves_quadric(const PolyMatrixFamily& f, const linalg::Matrix<Scalar>& q) {
  const std::size_t l = f.size();
  if (q.size() != l) throw std::invalid_argument("size mismatch between family and quadric");
  for (const auto& row : q)
    if (row.size() != l) throw std::invalid_argument("size mismatch between family and quadric");
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t c = 0; c < l; ++c) {
      Polynomial s;
      for (std::size_t j = 0; j < l; ++j)
        for (std::size_t k = 0; k < l; ++k)
          if (!q[j][k].is_zero()) s += f.at(j, r) * f.at(k, c) * q[j][k];
      if (s != Polynomial(q[r][c])) return false;
    }
  return true;
}

bool is_faithful(const PolyMatrixFamily& f) {
  linalg::Matrix<Scalar> rows;
  for (std::size_t i = 0; i < f.params; ++i) {
    const Monomial m = Monomial::variable(i);
    std::vector<Scalar> flat;
    for (const auto& row : f.entries)
      for (const auto& e : row) flat.push_back(e.coefficient(m));
    rows.push_back(std::move(flat));
  }
  return f.params == 0 || linalg::rank(rows) == f.params;
}

PolyMatrixFamily conjugate(const PolyMatrixFamily& f, const linalg::Matrix<Scalar>& c) {
  const auto inv = linalg::inverse(c);
  if (!inv || c.size() != f.size()) throw std::invalid_argument("conjugate: matrix is not invertible of matching size");
  const std::size_t l = f.size();
  auto constant = [l](const linalg::Matrix<Scalar>& m) {
    PolyMatrixFamily g{"", 0, std::vector<std::vector<Polynomial>>(l, std::vector<Polynomial>(l))};
    for (std::size_t r = 0; r < l; ++r)
      for (std::size_t k = 0; k < l; ++k) g.entries[r][k] = Polynomial(m[r][k]);
    return g;
  };
  auto out = multiply(multiply(constant(c), f), constant(*inv));
  out.name = f.name;
  out.params = f.params;
  return out;
}

PolyMatrixFamily delete_index(const PolyMatrixFamily& f, std::size_t k) {
  if (k >= f.size()) throw std::invalid_argument("delete_index: index out of range");
  PolyMatrixFamily g{f.name, f.params, {}};
  for (std::size_t r = 0; r < f.size(); ++r) {
    if (r == k) continue;
    std::vector<Polynomial> row;
    for (std::size_t c = 0; c < f.size(); ++c)
      if (c != k) row.push_back(f.at(r, c));
    g.entries.push_back(std::move(row));
  }
  return g;
}

std::string MatchReport::describe() const {
  if (!matched) return "no match";
  std::vector<std::string> parts;
  if (transposed) parts.emplace_back("transpose");
  std::vector<std::size_t> id(permutation.size());
  std::iota(id.begin(), id.end(), std::size_t{0});
  if (permutation != id) {
    std::string p = "basis order (";
    for (std::size_t i = 0; i < permutation.size(); ++i) p += (i ? "," : "") + std::to_string(permutation[i] + 1);
    parts.push_back(p + ")");
  }
  if (conjugated) parts.emplace_back("i -> -i");
  if (shift) {
    const std::string v = variable_name(params - 1, params);
    std::string s = to_string(*shift, params);
    if (s.front() == '-')
      s = v + " - " + s.substr(1);
    else
      s = v + " + " + s;
    parts.push_back(v + " -> " + s);
  }
  if (parts.empty()) return "identity";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out;
}

PolyMatrixFamily apply_convention(const PolyMatrixFamily& generated, const MatchReport& m) {
  auto cand = arrange(generated, m.transposed, m.permutation, m.conjugated);
  if (m.shift) {
    std::vector<Polynomial> images;
    for (std::size_t v = 0; v < generated.params; ++v) images.push_back(Polynomial::variable(v));
    images.back() += *m.shift;
    cand = substitute(cand, images);
  }
  return cand;
}

MatchReport match_paper(const PolyMatrixFamily& generated, const PolyMatrixFamily& printed) {
  MatchReport rep;
  rep.params = generated.params;
  if (generated.size() != printed.size() || generated.params != printed.params) return rep;
  const std::size_t l = generated.size();
  for (int pass = 0; pass < 2; ++pass)
    for (bool transposed : {false, true}) {
      std::vector<std::size_t> perm(l);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      do {
        for (bool conj : {false, true}) {
          const auto cand = arrange(generated, transposed, perm, conj);
          std::optional<Polynomial> shift;
          if (pass == 0) {
            if (!cand.same_entries(printed)) continue;
          } else {
            shift = find_shift(cand, printed);
            if (!shift) continue;
          }
          rep.matched = true;
          rep.transposed = transposed;
          rep.permutation = perm;
          rep.conjugated = conj;
          rep.shift = std::move(shift);
          return rep;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  return rep;
}

std::string format_matrix(const PolyMatrixFamily& f) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(f.size(), 1);
  for (const auto& row : f.entries) {
    std::vector<std::string> r;
    for (std::size_t c = 0; c < row.size(); ++c) {
      r.push_back(to_string(row[c], f.params));
      width[c] = std::max(width[c], r.back().size());
    }
    cells.push_back(std::move(r));
  }
  std::ostringstream os;
  for (const auto& r : cells) {
    os << "[ ";
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << r[c] << std::string(width[c] - r[c].size(), ' ');
      os << (c + 1 < r.size() ? "  " : " ]\n");
    }
  }
  return os.str();
}

}  // namespace fanoscope

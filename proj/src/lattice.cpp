#include "fanoscope/lattice.hpp"

#include "fanoscope/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fanoscope {

namespace {

using Bits = boost::dynamic_bitset<>;

Integer content_of(const std::vector<Integer>& v, std::size_t first = 0) {
  Integer g = 0;
  for (std::size_t i = first; i < v.size(); ++i) g = gcd(g, v[i]);
  return g;
}

linalg::Matrix<Rational> to_rational(std::span<const LatticeVector> rows) {
  linalg::Matrix<Rational> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<Rational> row;
    row.reserve(r.dim());
    for (const auto& c : r.coords()) row.emplace_back(c);
    m.push_back(std::move(row));
  }
  return m;
}

std::size_t affine_rank(std::span<const LatticeVector> points) {
  if (points.size() < 2) return 0;
  std::vector<LatticeVector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return rank(diffs);
}

struct Ray {
  std::vector<Integer> z;  // (offset, normal...)
  Bits zeros;
};

void normalise(std::vector<Integer>& z) {
  Integer g = content_of(z);
  if (g > 1)
    for (auto& c : z) c /= g;
}

Integer eval(const std::vector<Integer>& row, const std::vector<Integer>& z) {
  Integer s = 0;
  for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * z[i];
  return s;
}

// Double description on the cone { (a, p) : a - <p, x_i> >= 0 }. Its extreme rays are the
// facet inequalities of conv(points); the cone is pointed because the points span affinely.
std::vector<Facet> facets_of_points(std::size_t n, const std::vector<LatticeVector>& points) {
  const std::size_t m = points.size();
  const std::size_t d = n + 1;
  std::vector<std::vector<Integer>> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i].reserve(d);
    rows[i].emplace_back(1);
    for (const auto& c : points[i].coords()) rows[i].push_back(-c);
  }

  // Initial simplicial cone from d linearly independent constraints.
  std::vector<std::size_t> basis;
  {
    linalg::Matrix<Rational> acc;
    for (std::size_t i = 0; i < m && basis.size() < d; ++i) {
      std::vector<Rational> r(rows[i].begin(), rows[i].end());
      acc.push_back(r);
      if (linalg::rank(acc) == acc.size())
        basis.push_back(i);
      else
        acc.pop_back();
    }
  }
  if (basis.size() < d) throw DimensionError("polytope is not full-dimensional");

  linalg::Matrix<Rational> ab;
  for (auto i : basis) ab.emplace_back(rows[i].begin(), rows[i].end());
  const auto inv = linalg::inverse(ab);

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < d; ++j) {
    Integer lcm = 1;
    for (std::size_t i = 0; i < d; ++i) {
      const Integer den = denominator((*inv)[i][j]);
      lcm = lcm / gcd(lcm, den) * den;
    }
    Ray r;
    r.z.reserve(d);
    for (std::size_t i = 0; i < d; ++i) r.z.push_back(numerator((*inv)[i][j] * lcm));
    normalise(r.z);
    r.zeros.resize(m);
    for (std::size_t k = 0; k < d; ++k)
      if (k != j) r.zeros.set(basis[k]);
    rays.push_back(std::move(r));
  }

  std::vector<bool> done(m, false);
  for (auto i : basis) done[i] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (done[i]) continue;
    done[i] = true;
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = eval(rows[i], rays[r].z);
      if (val[r] > 0)
        pos.push_back(r);
      else if (val[r] < 0)
        neg.push_back(r);
    }
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (val[r] == 0) rays[r].zeros.set(i);
      continue;
    }

    std::vector<Ray> next;
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(rays[r].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr;
        nr.z.resize(d);
        const Integer& sp = val[p];
        const Integer& sq = val[q];
        for (std::size_t k = 0; k < d; ++k) nr.z[k] = sp * rays[q].z[k] - sq * rays[p].z[k];
        normalise(nr.z);
        nr.zeros = std::move(common);
        nr.zeros.set(i);
        next.push_back(std::move(nr));
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (val[r] < 0) continue;
      if (val[r] == 0) rays[r].zeros.set(i);
      next.push_back(std::move(rays[r]));
    }
    rays = std::move(next);
  }

  std::vector<Facet> facets;
  facets.reserve(rays.size());
  for (auto& r : rays) {
    Integer g = content_of(r.z, 1);
    Facet f;
    std::vector<Integer> normal(r.z.begin() + 1, r.z.end());
    for (auto& c : normal) c /= g;
    f.normal = LatticeVector(std::move(normal));
    f.offset = r.z[0] / g;
    for (std::size_t k = 0; k < m; ++k)
      if (r.zeros.test(k)) f.incident.push_back(k);
    facets.push_back(std::move(f));
  }
  std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
  return facets;
}

}  // namespace

LatticeVector::LatticeVector(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

Integer LatticeVector::content() const { return content_of(coords_); }

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

LatticeVector operator*(const Integer& k, LatticeVector v) {
  for (auto& c : v.coords_) c *= k;
  return v;
}

std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return std::strong_ordering::less;
    if (a[i] > b[i]) return std::strong_ordering::greater;
  }
  return a.dim() <=> b.dim();
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const LatticeVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << to_string(v); }

LatticeVector primitive(const LatticeVector& v) {
  if (v.is_zero()) throw std::invalid_argument("zero has no primitive direction");
  const Integer g = v.content();
  LatticeVector r(v);
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] /= g;
  return r;
}

Integer determinant(std::span<const LatticeVector> rows) {
  // Bareiss fraction-free elimination.
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a;
  for (const auto& r : rows) {
    if (r.dim() != n) throw std::invalid_argument("determinant: matrix is not square");
    a.push_back(r.coords());
  }
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::size_t rank(std::span<const LatticeVector> rows) {
  if (rows.empty()) return 0;
  return linalg::rank(to_rational(rows));
}

LatticePolytope LatticePolytope::from_points(std::vector<LatticeVector> points, HullReport* report) {
  if (points.empty()) throw DimensionError("empty point set");
  const std::size_t n = points.front().dim();
  if (n == 0) throw DimensionError("dimension must be at least 1");
  for (const auto& p : points)
    if (p.dim() != n) throw std::invalid_argument("points of mixed dimension");

  const std::size_t before = points.size();
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  HullReport rep;
  rep.duplicates = before - points.size();

  if (affine_rank(points) != n) throw DimensionError("polytope is not full-dimensional");

  const auto facets = facets_of_points(n, points);
  std::vector<LatticeVector> vertices;
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::vector<LatticeVector> normals;
    for (const auto& f : facets)
      if (f.contains(k)) normals.push_back(f.normal);
    if (rank(normals) == n) vertices.push_back(points[k]);
  }
  rep.non_vertices = points.size() - vertices.size();
  if (report) *report = rep;
  return LatticePolytope(n, std::move(vertices));
}

std::optional<std::size_t> LatticePolytope::index_of(const LatticeVector& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool Facet::contains(std::size_t vertex_index) const {
  return std::binary_search(incident.begin(), incident.end(), vertex_index);
}

std::vector<Facet> facet_enumeration(const LatticePolytope& p) { return facets_of_points(p.dim(), p.vertices()); }

VertexFigure vertex_edges(const LatticePolytope& p, std::span<const Facet> facets, std::size_t vi) {
  const std::size_t n = p.dim();
  VertexFigure fig;
  fig.vertex = p.vertices().at(vi);
  std::vector<std::size_t> through;
  for (std::size_t f = 0; f < facets.size(); ++f)
    if (facets[f].contains(vi)) through.push_back(f);

  std::vector<std::pair<LatticeVector, std::size_t>> edges;
  for (std::size_t w = 0; w < p.vertex_count(); ++w) {
    if (w == vi) continue;
    std::vector<LatticeVector> normals;
    for (auto f : through)
      if (facets[f].contains(w)) normals.push_back(facets[f].normal);
    if (rank(normals) == n - 1) edges.emplace_back(primitive(p.vertices()[w] - fig.vertex), w);
  }
  std::sort(edges.begin(), edges.end());
  for (auto& [dir, w] : edges) {
    fig.edge_directions.push_back(dir);
    fig.neighbours.push_back(w);
  }
  return fig;
}

VertexFigure vertex_edges(const LatticePolytope& p, const LatticeVector& v) {
  const auto idx = p.index_of(v);
  if (!idx) throw std::invalid_argument(to_string(v) + " is not a vertex of the polytope");
  const auto facets = facet_enumeration(p);
  return vertex_edges(p, facets, *idx);
}

LatticePolytope RationalPolytope::to_lattice() const {
  if (!integral) throw std::invalid_argument("polytope has non-integral vertices");
  std::vector<LatticeVector> pts;
  for (const auto& v : vertices) {
    std::vector<Integer> c;
    for (const auto& q : v) c.push_back(numerator(q));
    pts.emplace_back(std::move(c));
  }
  return LatticePolytope::from_points(std::move(pts));
}

bool origin_is_interior(const LatticePolytope& p) {
  const auto facets = facet_enumeration(p);
  return std::all_of(facets.begin(), facets.end(), [](const Facet& f) { return f.offset > 0; });
}

RationalPolytope dual_polytope(const LatticePolytope& p) {
  const auto facets = facet_enumeration(p);
  RationalPolytope d;
  d.dim = p.dim();
  d.integral = true;
  for (const auto& f : facets) {
    if (f.offset <= 0) throw std::invalid_argument("origin is not in the interior of the polytope");
    std::vector<Rational> v;
    for (const auto& c : f.normal.coords()) {
      v.emplace_back(Rational(-c) / Rational(f.offset));
      if (!is_integral(v.back())) d.integral = false;
    }
    d.vertices.push_back(std::move(v));
  }
  std::sort(d.vertices.begin(), d.vertices.end());
  return d;
}

bool is_reflexive(const LatticePolytope& p) {
  const auto facets = facet_enumeration(p);
  return std::all_of(facets.begin(), facets.end(), [](const Facet& f) { return f.offset == 1; });
}

SmoothnessReport is_smooth(const LatticePolytope& p) {
  const auto facets = facet_enumeration(p);
  SmoothnessReport rep;
  rep.smooth = true;
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    const auto fig = vertex_edges(p, facets, v);
    VertexSmoothness vs;
    vs.vertex = fig.vertex;
    vs.simple = fig.edge_directions.size() == p.dim();
    vs.edge_determinant = vs.simple ? determinant(fig.edge_directions) : Integer(0);
    vs.unimodular = vs.simple && abs(vs.edge_determinant) == 1;
    rep.smooth = rep.smooth && vs.unimodular;
    rep.vertices.push_back(std::move(vs));
  }
  return rep;
}

NormalFan normal_fan_rays(const LatticePolytope& p) {
  const auto facets = facet_enumeration(p);
  for (const auto& f : facets)
    if (f.offset != 1) throw std::invalid_argument("normal_fan_rays: polytope is not reflexive");
  NormalFan fan;
  fan.vertex_cones.resize(p.vertex_count());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    fan.rays.push_back(-facets[i].normal);
    for (auto v : facets[i].incident) fan.vertex_cones[v].push_back(i);
  }
  return fan;
}

LatticePolytope transformed(const LatticePolytope& p, std::span<const LatticeVector> matrix,
                            const LatticeVector& translation) {
  std::vector<LatticeVector> pts;
  pts.reserve(p.vertex_count());
  for (const auto& v : p.vertices()) {
    LatticeVector w(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) w[i] = dot(matrix[i], v) + translation[i];
    pts.push_back(std::move(w));
  }
  return LatticePolytope::from_points(std::move(pts));
}

LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q) {
  std::vector<LatticeVector> pts;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) {
      std::vector<Integer> c = a.coords();
      c.insert(c.end(), b.coords().begin(), b.coords().end());
      pts.emplace_back(std::move(c));
    }
  return LatticePolytope::from_points(std::move(pts));
}

}  // namespace fanoscope

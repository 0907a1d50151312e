#include "fanoscope/lattice.hpp"
#include "fanoscope/polytope_db.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace fanoscope;
using fanoscope::testing::brute_force_facets;

namespace {

LatticePolytope cube() {
  std::vector<LatticeVector> pts;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) pts.push_back({a, b, c});
  return LatticePolytope::from_points(pts);
}

std::set<std::pair<LatticeVector, Integer>> facet_set(const LatticePolytope& p) {
  std::set<std::pair<LatticeVector, Integer>> out;
  for (const auto& f : facet_enumeration(p)) out.insert({f.normal, f.offset});
  return out;
}

std::size_t edge_count(const LatticePolytope& p) {
  auto facets = facet_enumeration(p);
  std::size_t twice = 0;
  for (std::size_t v = 0; v < p.vertex_count(); ++v) twice += vertex_edges(p, facets, v).neighbours.size();
  return twice / 2;
}

}  // namespace

TEST_CASE("lattice vectors") {
  LatticeVector v{2, -4, 6};
  CHECK(v.content() == 2);
  CHECK(primitive(v) == LatticeVector{1, -2, 3});
  CHECK(dot(v, LatticeVector{1, 1, 1}) == 4);
  CHECK(to_string(v) == "(2,-4,6)");
  CHECK((v - v).is_zero());
  std::vector<LatticeVector> rows{{1, 0, 0}, {0, 1, 0}, {1, 1, 1}};
  CHECK(determinant(rows) == 1);
  std::vector<LatticeVector> flat{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  CHECK(rank(flat) == 2);
}

TEST_CASE("hull drops interior points and duplicates") {
  LatticePolytope::HullReport rep;
  auto p = LatticePolytope::from_points({{0, 0}, {2, 0}, {0, 2}, {1, 0}, {0, 0}, {2, 2}, {1, 1}}, &rep);
  CHECK(p.vertex_count() == 4);
  CHECK(rep.duplicates == 1);
  CHECK(rep.non_vertices == 2);
  CHECK(p.index_of(LatticeVector{1, 1}) == std::nullopt);
}

TEST_CASE("lower-dimensional input is rejected") {
  CHECK_THROWS_AS(LatticePolytope::from_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), DimensionError);
}

TEST_CASE("facet enumeration agrees with the brute-force oracle on every built-in polytope") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const auto p = builtin_polytope(name).polytope;
    if (p.dim() < 2) continue;
    CHECK(facet_set(p) == brute_force_facets(p.vertices()));
  }
}

TEST_CASE("facet enumeration agrees with the oracle on random point clouds") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 3 + trial % 2;
    std::vector<LatticeVector> pts;
    for (int k = 0; k < 9; ++k) {
      LatticeVector v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = c(rng);
      pts.push_back(v);
    }
    LatticePolytope p = [&] {
      try {
        return LatticePolytope::from_points(pts);
      } catch (const DimensionError&) {
        return cube();
      }
    }();
    CAPTURE(trial);
    CHECK(facet_set(p) == brute_force_facets(p.vertices()));
  }
}

TEST_CASE("every facet contains at least dim vertices and vertex edges are primitive") {
  auto p = builtin_polytope("IV_11").polytope;
  auto facets = facet_enumeration(p);
  for (const auto& f : facets) CHECK(f.incident.size() >= p.dim());
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    auto fig = vertex_edges(p, facets, v);
    for (const auto& e : fig.edge_directions) CHECK(e.content() == 1);
    for (std::size_t k = 0; k < fig.neighbours.size(); ++k) {
      auto diff = p.vertices()[fig.neighbours[k]] - p.vertices()[v];
      CHECK(primitive(diff) == fig.edge_directions[k]);
    }
  }
  CHECK_THROWS(vertex_edges(p, LatticeVector{0, 0, 0}));
}

TEST_CASE("Euler relation V - E + F = 2 for three-dimensional polytopes") {
  for (const auto& name : builtin_threefold_names()) {
    CAPTURE(name);
    auto p = builtin_polytope(name).polytope;
    long v = static_cast<long>(p.vertex_count());
    long e = static_cast<long>(edge_count(p));
    long f = static_cast<long>(facet_enumeration(p).size());
    CHECK(v - e + f == 2);
  }
}

TEST_CASE("Euler relation for polygons and a 4-polytope") {
  for (const auto& name : builtin_surface_names()) {
    auto p = builtin_polytope(name).polytope;
    CHECK(p.vertex_count() == edge_count(p));
    CHECK(p.vertex_count() == facet_enumeration(p).size());
  }
  // f-vector of the 4-cube: 16 - 32 + 24 - 8 = 0
  std::vector<LatticeVector> pts;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1})
        for (int d : {-1, 1}) pts.push_back({a, b, c, d});
  auto p = LatticePolytope::from_points(pts);
  CHECK(p.vertex_count() == 16);
  CHECK(edge_count(p) == 32);
  CHECK(facet_enumeration(p).size() == 8);
}

TEST_CASE("duality is an involution on reflexive polytopes") {
  for (const auto& name : builtin_names()) {
    auto p = builtin_polytope(name).polytope;
    if (!is_reflexive(p)) continue;
    CAPTURE(name);
    auto d = dual_polytope(p);
    REQUIRE(d.integral);
    auto dl = d.to_lattice();
    CHECK(is_reflexive(dl));
    auto dd = dual_polytope(dl);
    REQUIRE(dd.integral);
    CHECK(dd.to_lattice() == p);
  }
}

TEST_CASE("duals of non-reflexive polytopes can be rational") {
  auto p = LatticePolytope::from_points({{-2, -1}, {1, -1}, {-2, 1}, {1, 1}});
  CHECK(origin_is_interior(p));
  CHECK_FALSE(is_reflexive(p));
  auto d = dual_polytope(p);
  CHECK_FALSE(d.integral);
  CHECK_THROWS(d.to_lattice());
  auto off = LatticePolytope::from_points({{1, 1}, {2, 1}, {1, 2}});
  CHECK_FALSE(origin_is_interior(off));
  CHECK_THROWS(dual_polytope(off));
}

TEST_CASE("smoothness and normal fans") {
  auto c = cube();
  CHECK(is_reflexive(c));
  CHECK(is_smooth(c).smooth);
  auto fan = normal_fan_rays(c);
  CHECK(fan.rays.size() == 6);
  for (const auto& cone : fan.vertex_cones) CHECK(cone.size() == 3);

  // The reflexive polygon of P(1,1,2) has a singular vertex.
  auto wp = LatticePolytope::from_points({{-1, -1}, {3, -1}, {-1, 1}});
  CHECK(is_reflexive(wp));
  auto rep = is_smooth(wp);
  CHECK_FALSE(rep.smooth);
  bool found_singular = false;
  for (const auto& v : rep.vertices) found_singular = found_singular || !v.unimodular;
  CHECK(found_singular);
}

TEST_CASE("affine images and products") {
  std::vector<LatticeVector> shear{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  auto c = cube();
  auto t = transformed(c, shear, LatticeVector{1, 0, 0});
  CHECK(t.vertex_count() == 8);
  CHECK(t.index_of(LatticeVector{-1, -1, -1}));
  CHECK(t.index_of(LatticeVector{3, 1, 1}));

  auto seg = builtin_polytope("P1").polytope;
  auto sq = product(seg, seg);
  CHECK(sq == builtin_polytope("P1xP1").polytope);
  auto prism = product(builtin_polytope("P2").polytope, seg);
  CHECK(prism.dim() == 3);
  CHECK(prism.vertex_count() == 6);
  CHECK(facet_enumeration(prism).size() == 5);
}

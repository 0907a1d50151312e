#include "fanoscope/additivity.hpp"
#include "fanoscope/poly_format.hpp"
#include "fanoscope/polytope_db.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

using namespace fanoscope;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& file, const std::string& text) const { std::ofstream(path / file) << text; }
};

}  // namespace

TEST_CASE("built-in names, aliases and unknown names") {
  CHECK(builtin_threefold_names().size() == 18);
  CHECK(builtin_surface_names().size() == 5);
  const auto names = builtin_names();
  CHECK(names.size() == 24);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  CHECK(builtin_polytope("dP6").polytope == builtin_polytope("S6").polytope);
  CHECK_THROWS_AS(builtin_polytope("II_99"), std::out_of_range);
}

TEST_CASE("appendix entries keep the printed vertex lists") {
  auto p = builtin_polytope("III_29");
  CHECK(p.source == PolytopeSource::PaperAppendix);
  CHECK(p.polytope.vertex_count() == 8);
  std::set<LatticeVector> expected{{-1, -1, -1}, {-1, -1, 3}, {-1, 3, -1}, {1, -1, -1},
                                   {0, -1, 2},   {1, -1, 0},   {0, 2, -1},  {1, 0, -1}};
  CHECK(std::set<LatticeVector>(p.polytope.vertices().begin(), p.polytope.vertices().end()) == expected);
  auto q = builtin_polytope("IV_12");
  CHECK(q.polytope.vertex_count() == 10);
  CHECK(q.polytope.index_of(LatticeVector{-1, -1, 3}));
  CHECK(builtin_polytope("III_25").source == PolytopeSource::DerivedConstruction);

  // The shipped files list the vertices in the same order as printed.
  std::ifstream in(data_directory() / "appendix" / "III_29.poly");
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(all.find("-1 -1 -1\n-1 -1 3\n-1 3 -1\n1 -1 -1\n0 -1 2\n1 -1 0\n0 2 -1\n1 0 -1\n") != std::string::npos);
}

TEST_CASE("threefold entries are reflexive and smooth with rays = 3 + Picard number") {
  for (const auto& name : builtin_threefold_names()) {
    CAPTURE(name);
    auto np = builtin_polytope(name);
    CHECK(is_reflexive(np.polytope));
    CHECK(is_smooth(np.polytope).smooth);
    REQUIRE(np.picard);
    CHECK(np.rays.size() == 3 + static_cast<std::size_t>(*np.picard));
    CHECK(normal_fan_rays(np.polytope).rays.size() == np.rays.size());
  }
}

TEST_CASE("each polytope is the dual of the convex hull of its fan rays") {
  for (const auto& name : builtin_names()) {
    auto np = builtin_polytope(name);
    if (np.rays.empty()) continue;
    CAPTURE(name);
    auto hull = LatticePolytope::from_points(np.rays);
    CHECK(hull.vertex_count() == np.rays.size());
    auto d = dual_polytope(hull);
    REQUIRE(d.integral);
    CHECK(d.to_lattice() == np.polytope);
    auto fan = normal_fan_rays(np.polytope);
    CHECK(std::set<LatticeVector>(fan.rays.begin(), fan.rays.end()) ==
          std::set<LatticeVector>(np.rays.begin(), np.rays.end()));
  }
}

TEST_CASE("built-in verdicts match the recorded expectations") {
  std::size_t yes = 0, no = 0;
  for (const auto& name : builtin_threefold_names()) {
    auto np = builtin_polytope(name);
    bool v = inscribed_in_rectangle(np.polytope).inscribed;
    CHECK(v == *np.expected);
    (v ? yes : no)++;
  }
  CHECK(yes == 14);
  CHECK(no == 4);
  for (const auto& name : builtin_surface_names()) {
    CAPTURE(name);
    CHECK(inscribed_in_rectangle(builtin_polytope(name).polytope).inscribed == (name != "S6"));
  }
}

TEST_CASE("the shipped manifest agrees with the built-in table") {
  auto m = load_manifest(data_directory() / "manifest.tsv");
  REQUIRE(m.size() == builtin_names().size());
  for (const auto& e : m) {
    CAPTURE(e.name);
    auto np = builtin_polytope(e.name);
    CHECK(e.source == np.source);
    REQUIRE(np.expected);
    CHECK(e.expected_inscribed == *np.expected);
    CHECK(inscribed_in_rectangle(np.polytope).inscribed == e.expected_inscribed);
  }
}

TEST_CASE("manifest parsing") {
  TempDir dir("fanoscope_manifest_test");
  dir.write("m.tsv", "# comment\nP3\tderived-construction\tinscribed\tref\nS6\tderived-construction\tnot-inscribed\tref\n");
  auto m = load_manifest(dir.path / "m.tsv");
  REQUIRE(m.size() == 2);
  CHECK(m[0].expected_inscribed);
  CHECK_FALSE(m[1].expected_inscribed);
  dir.write("bad.tsv", "P3\tsomewhere\tinscribed\tref\n");
  CHECK_THROWS(load_manifest(dir.path / "bad.tsv"));
  dir.write("bad2.tsv", "P3\tderived-construction\tmaybe\tref\n");
  CHECK_THROWS(load_manifest(dir.path / "bad2.tsv"));
}

TEST_CASE("ingesting the appendix directory") {
  auto r = ingest_directory(data_directory() / "appendix");
  REQUIRE(r.polytopes.size() == 3);
  CHECK(r.errors.empty());
  for (const auto& np : r.polytopes) {
    CAPTURE(np.name);
    CHECK(np.source == PolytopeSource::IngestedFile);
    CHECK(np.polytope == builtin_polytope(np.name).polytope);
    CHECK(inscribed_in_rectangle(np.polytope).inscribed);
  }
}

TEST_CASE("ingestion collects per-file problems") {
  TempDir dir("fanoscope_ingest_test");
  CHECK(ingest_directory(dir.path).polytopes.empty());
  dir.write("b.poly", write_poly(builtin_polytope("P3").polytope, "P3"));
  dir.write("a.poly", "dim 2\nvertices 4\n0 0\n1 0\n0 1\n1 0\n");
  dir.write("c.poly", "dim 2\nvertices 3\n0 0\n1 zz\n0 1\n");
  dir.write("notes.txt", "ignored");
  auto r = ingest_directory(dir.path);
  REQUIRE(r.polytopes.size() == 2);
  CHECK(r.polytopes[0].name <= r.polytopes[1].name);
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].file.find("c.poly") != std::string::npos);
  CHECK(r.errors[0].message.find(":4:") != std::string::npos);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("duplicate") != std::string::npos);
  CHECK_THROWS_AS(ingest_directory(dir.path / "missing"), std::runtime_error);
}

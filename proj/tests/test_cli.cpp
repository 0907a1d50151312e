#include "fanoscope/cli.hpp"
#include "fanoscope/poly_format.hpp"
#include "fanoscope/polytope_db.hpp"
#include "fanoscope/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fanoscope;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
  bool has(const std::string& s) const { return out.find(s) != std::string::npos; }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string appendix(const char* name) { return (data_directory() / "appendix" / (std::string(name) + ".poly")).string(); }

struct Scratch {
  fs::path dir = fs::temp_directory_path() / "fanoscope_cli_test";
  Scratch() {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
};

}  // namespace

TEST_CASE("check on an appendix polytope") {
  auto r = run({"check", appendix("III_29")});
  CHECK(r.code == kExitOk);
  CHECK(r.has("III_29: inscribed: yes, v0=(-1,-1,-1)"));
  CHECK(r.has("boundary: coefficients 2 4 5, divisors 3"));

  auto j = run({"--json", "check", appendix("IV_11")});
  CHECK(j.code == kExitOk);
  auto doc = Json::parse(j.out);
  CHECK(doc["command"] == "check");
  CHECK(doc["exit_status"] == 0);
  CHECK_FALSE(doc.contains("timing_ms"));
  auto parsed = verdict_from_json(doc["results"][0]);
  REQUIRE(parsed.verdict.inscribed);
  CHECK(verify_witness(*parsed.verdict.witness, builtin_polytope("IV_11").polytope));

  auto fast = run({"check", "--fast-path", appendix("IV_12")});
  CHECK(fast.code == kExitOk);
  CHECK(fast.has("v0=(-1,-1,-1)"));

  auto t = run({"--json", "--timing", "check", appendix("IV_12")});
  CHECK(Json::parse(t.out).contains("timing_ms"));
}

TEST_CASE("check: negative verdicts, input errors and quiet mode") {
  Scratch s;
  auto hex = s.file("hex.poly", write_poly(builtin_polytope("S6").polytope, "S6"));
  auto r = run({"check", hex});
  CHECK(r.code == kExitNegative);
  CHECK(r.has("S6: inscribed: no"));
  CHECK(r.has("facet-violation"));

  auto q = run({"--quiet", "check", hex});
  CHECK(q.code == kExitNegative);
  CHECK(q.out.empty());

  auto bad = s.file("bad.poly", "dim 2\nvertices 3\n0 0\n1 q\n0 1\n");
  auto e = run({"check", bad});
  CHECK(e.code == kExitInputError);
  CHECK(e.err.find("bad.poly:4") != std::string::npos);
  CHECK(run({"check", (s.dir / "missing.poly").string()}).code == kExitInputError);

  auto tri = s.file("tri.poly", "dim 2\nvertices 3\n0 0\n3 0\n0 3\n");
  CHECK(run({"check", tri}).code == kExitOk);
  CHECK(run({"check", "--fast-path", tri}).code == kExitInputError);
}

TEST_CASE("classify the built-in datasets") {
  auto r = run({"classify", "--builtin-threefolds"});
  CHECK(r.code == kExitOk);
  CHECK(r.has("14 inscribed, 4 not inscribed"));
  CHECK(r.has("diff against manifest: empty"));

  auto s = run({"classify", "--builtin-surfaces", "--fast-path"});
  CHECK(s.code == kExitOk);
  CHECK(s.has("4 inscribed, 1 not inscribed"));

  auto j = run({"--json", "classify", "--builtin-threefolds"});
  auto doc = Json::parse(j.out);
  CHECK(doc["summary"]["inscribed"] == 14);
  CHECK(doc["diff"].empty());
  CHECK(doc["results"].size() == 18);

  CHECK(run({"classify"}).code == kExitInputError);
  CHECK(run({"classify", "--builtin-threefolds", "--builtin-surfaces"}).code == kExitInputError);
}

TEST_CASE("classify a directory") {
  Scratch s;
  CHECK(run({"classify", "--dir", s.dir.string()}).code == kExitOk);
  s.file("a.poly", write_poly(builtin_polytope("III_25").polytope, "III_25"));
  s.file("b.poly", write_poly(builtin_polytope("P3").polytope, "P3"));
  auto r = run({"classify", "--dir", s.dir.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.has("2 polytopes: 1 inscribed, 1 not inscribed"));
  CHECK(r.out.find("III_25") < r.out.find("P3 "));

  s.file("c.poly", "garbage\n");
  auto p = run({"classify", "--dir", s.dir.string()});
  CHECK(p.code == kExitPartialIngestion);
  CHECK(p.has("error: c.poly"));
  CHECK(run({"classify", "--dir", (s.dir / "nope").string()}).code == kExitInputError);
}

TEST_CASE("rep subcommand") {
  auto r = run({"rep", "P3/rho1", "--verify"});
  CHECK(r.code == kExitNegative);
  CHECK(r.has("group law FAILS at (1,4)"));
  CHECK(r.has("a3 -> a3 - 1/6*a1^3"));

  auto ok = run({"rep", "P3/rho2", "--verify", "--fixed-locus"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.has("group law holds"));
  CHECK(ok.has("fixed locus: line (dim 1)"));

  auto q = run({"rep", "Q2/sharoyko/n=2", "--fixed-locus", "--quadric"});
  CHECK(q.code == kExitOk);
  CHECK(q.has("fixed locus: point (dim 0)"));
  CHECK(q.has("[0:0:0:1]"));
  CHECK(q.has("quadric: preserved"));

  auto generic = run({"--json", "rep", "P3/I1", "--verify"});
  CHECK(generic.code == kExitOk);
  CHECK(Json::parse(generic.out)["family"]["size"] == 4);

  CHECK(run({"rep", "P3/rho2", "--quadric"}).has("none registered"));
  CHECK(run({"rep", "no/such"}).code == kExitInputError);
}

TEST_CASE("lineage subcommand") {
  auto r = run({"lineage"});
  CHECK(r.code == kExitOk);
  CHECK(r.has("additive threefolds (19):"));
  CHECK(r.has("diff against expected list: empty"));
  CHECK(r.has("consistency: ok"));

  auto rep = run({"lineage", "--report"});
  CHECK(rep.has("II_33 <= R1 <= Computed(IV_12)"));

  auto t = run({"lineage", "--toric-only"});
  CHECK(t.code == kExitOk);
  CHECK(t.has("additive threefolds (14):"));

  auto j = Json::parse(run({"--json", "lineage"}).out);
  CHECK(j["results"]["additive"].size() == 19);
  CHECK(j["results"]["consistent"] == true);

  Scratch s;
  auto kb = s.file("broken.kb", "node X | picard: 1 | toric: no | description: d\nblowdown X -> Y | center: c\n");
  auto e = run({"lineage", "--kb", kb});
  CHECK(e.code == kExitInputError);
  CHECK(e.err.find("broken.kb:2") != std::string::npos);

  // A kb that loads but lists fewer families than expected exits with the negative status.
  auto small = s.file("small.kb", "node P3 | picard: 1 | toric: yes | polytope: P3 | description: space\n");
  CHECK(run({"lineage", "--kb", small}).code == kExitNegative);
}

TEST_CASE("dual and info") {
  Scratch s;
  auto cube = s.file("cube.poly", write_poly(builtin_polytope("III_27").polytope, "cube"));
  auto d = run({"dual", cube});
  CHECK(d.code == kExitOk);
  auto recs = [&] {
    std::istringstream in(d.out);
    return parse_poly(in, "dual");
  }();
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].name == "cube_dual");
  CHECK(recs[0].polytope.vertex_count() == 6);

  auto off = s.file("off.poly", "dim 2\nvertices 3\n0 0\n1 0\n0 1\n");
  CHECK(run({"dual", off}).code == kExitInputError);

  auto i = run({"info"});
  CHECK(i.code == kExitOk);
  CHECK(i.has("III_29"));
  auto one = run({"info", "III_29"});
  CHECK(one.code == kExitOk);
  CHECK(one.has("reflexive: yes, smooth: yes"));
  CHECK(run({"info", "XYZ"}).code == kExitInputError);
  CHECK(run({"bogus"}).code == kExitInputError);
  CHECK(run({}).code == kExitInputError);
}

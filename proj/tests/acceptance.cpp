// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit if any fails.
// Usage: acceptance [scratch directory for the fourfold corpus]

#include "fanoscope/additivity.hpp"
#include "fanoscope/cli.hpp"
#include "fanoscope/engine.hpp"
#include "fanoscope/local_algebra.hpp"
#include "fanoscope/poly_format.hpp"
#include "fanoscope/polytope_db.hpp"
#include "fanoscope/report.hpp"
#include "test_support.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace fanoscope;
namespace fs = std::filesystem;

namespace {

// Records the first few failed conditions of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::string s;
    for (const auto& n : notes_) s += (s.empty() ? "" : "; ") + n;
    if (failures_ > notes_.size()) s += "; and " + std::to_string(failures_ - notes_.size()) + " more";
    return s;
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::set<LatticeVector> as_set(const std::vector<LatticeVector>& v) { return {v.begin(), v.end()}; }

void criterion1(Check& c) {
  const std::pair<const char*, std::set<LatticeVector>> goldens[] = {
      {"III_29", {{1, 1, 1}, {1, 0, 0}, {2, 1, 1}}},
      {"IV_11", {{1, 1, 0}, {0, 0, 1}, {1, 0, 0}, {1, 0, 1}}},
      {"IV_12", {{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}},
  };
  const std::set<LatticeVector> standard{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto t0 = Clock::now();
  for (const auto& [name, normals] : goldens) {
    auto recs = read_poly_file(data_directory() / "appendix" / (std::string(name) + ".poly"));
    c.expect(recs.size() == 1, std::string(name) + ": file does not hold one record");
    if (recs.empty()) continue;
    auto v = inscribed_in_rectangle(recs[0].polytope);
    c.expect(v.inscribed, std::string(name) + " not inscribed");
    if (!v.witness) continue;
    c.expect(v.witness->v0 == LatticeVector{-1, -1, -1}, std::string(name) + ": v0 = " + to_string(v.witness->v0));
    c.expect(as_set(v.witness->basis) == standard, std::string(name) + ": basis is not the standard basis");
    std::set<LatticeVector> got;
    for (const auto& f : v.witness->checked_facets) got.insert(f.normal);
    c.expect(got == normals, std::string(name) + ": facet normals differ");
  }
  double s = seconds_since(t0);
  c.expect(s < 1.0, "took " + std::to_string(s) + " s");
}

void criterion2(Check& c) {
  auto t0 = Clock::now();
  std::set<std::string> negatives;
  std::size_t positives = 0;
  for (const auto& name : builtin_threefold_names()) {
    if (inscribed_in_rectangle(builtin_polytope(name).polytope).inscribed)
      ++positives;
    else
      negatives.insert(name);
  }
  double s = seconds_since(t0);
  c.expect(positives == 14, std::to_string(positives) + " additive");
  c.expect(negatives == std::set<std::string>{"III_25", "IV_9", "V_2", "V_3"}, "wrong non-additive set");
  c.expect(s < 5.0, "took " + std::to_string(s) + " s");
}

void criterion3(Check& c) {
  for (const auto& [name, expected] : std::vector<std::pair<std::string, bool>>{
           {"P2", true}, {"P1xP1", true}, {"S8", true}, {"S7", true}, {"S6", false}}) {
    c.expect(inscribed_in_rectangle(builtin_polytope(name).polytope).inscribed == expected, name + " has the wrong verdict");
  }
}

std::vector<Integer> coefficients_in(const BoundaryProfile& b, const std::vector<LatticeVector>& order) {
  std::vector<Integer> out;
  for (const auto& n : order) out.push_back(b.coefficient_for(n).value_or(Integer(-1)));
  return out;
}

void criterion4(Check& c) {
  for (const auto& name : builtin_threefold_names()) {
    auto np = builtin_polytope(name);
    auto v = inscribed_in_rectangle(np.polytope);
    if (!v.inscribed) continue;
    auto b = boundary_coefficients(np.polytope, v.witness->v0);
    for (const auto& a : b.coefficients) c.expect(a >= 2, name + ": coefficient " + a.str());
    c.expect(b.divisor_count == np.rays.size() - 3, name + ": divisor count vs rays");
    c.expect(np.picard && b.divisor_count == static_cast<std::size_t>(*np.picard), name + ": divisor count vs Picard number");
    auto oracle = fanoscope::testing::divisor_class_oracle(np.rays, v.witness->v0);
    for (const auto& [ray, coeff] : oracle) {
      auto got = b.coefficient_for(-ray);
      c.expect(got && Rational(*got) == coeff, name + ": oracle disagrees at ray " + to_string(ray));
    }
  }
  auto spot = [&](const char* name, const std::vector<LatticeVector>& order, const std::vector<Integer>& want) {
    auto p = builtin_polytope(name).polytope;
    auto v = inscribed_in_rectangle(p);
    if (!v.witness) {
      c.expect(false, std::string(name) + " has no witness");
      return;
    }
    c.expect(coefficients_in(boundary_coefficients(p, v.witness->v0), order) == want, std::string(name) + ": spot values");
  };
  spot("III_27", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {2, 2, 2});
  spot("P3", {{1, 1, 1}}, {4});
  spot("III_29", {{1, 1, 1}, {1, 0, 0}, {2, 1, 1}}, {4, 2, 5});
}

void criterion5(Check& c) {
  auto t0 = Clock::now();
  for (const auto& name : paper_rep_names()) {
    auto h = is_homomorphism(paper_rep(name));
    if (name == "P3/rho1") {
      c.expect(!h.holds, "rho1 passes the group law");
      c.expect(h.row == 0 && h.col == 3, "rho1 fails at the wrong entry");
      c.expect(to_string(h.difference, paper_rep(name).params) == "1/2*a1^2*b1 + 1/2*a1*b1^2", "rho1 difference");
    } else {
      c.expect(h.holds, name + " fails the group law");
    }
  }
  auto m = match_paper(generic_rep(make_algebra("P3/I1")), paper_rep("P3/rho1"));
  c.expect(m.matched && m.describe().find("a3 -> a3 - 1/6*a1^3") != std::string::npos, "rho1 does not match exp of I1");

  const std::pair<const char*, int> loci[] = {{"P3/rho1", 0}, {"P3/rho2", 1}, {"P3/rho3", 0},
                                              {"P3/rho4", 2}, {"P2/tau", 1},  {"P2/rho", 0}};
  for (const auto& [name, d] : loci)
    c.expect(fixed_locus(paper_rep(name)).projective_dimension == d, std::string(name) + ": fixed locus dimension");
  for (int n = 1; n <= 3; ++n) {
    auto name = "Q" + std::to_string(n) + "/sharoyko/n=" + std::to_string(n);
    auto fl = fixed_locus(paper_rep(name));
    bool point = fl.projective_dimension == 0 && fl.basis.size() == 1 && fl.basis[0].back() != Scalar(0);
    if (point)
      for (std::size_t k = 0; k + 1 < fl.basis[0].size(); ++k) point = point && fl.basis[0][k] == Scalar(0);
    c.expect(point, name + ": fixed locus is not [0:...:0:1]");
    auto q = registered_quadric(name);
    c.expect(q && preserves_quadric(paper_rep(name), *q), name + ": quadric not preserved");
  }
  auto n2 = paper_rep("Q2/sharoyko/n=2");
  for (const char* name : {"Q0_3/rho1", "Q0_3/rho2", "Q0_3/rho3"}) {
    auto q = registered_quadric(name);
    c.expect(q && preserves_quadric(paper_rep(name), *q), std::string(name) + ": quadric not preserved");
    c.expect(delete_index(paper_rep(name), 3).same_entries(n2), std::string(name) + ": deletion does not give n=2");
  }
  double s = seconds_since(t0);
  c.expect(s < 5.0, "took " + std::to_string(s) + " s");
}

void criterion6(Check& c) {
  auto kb = load_knowledge_base();
  propagate(kb);
  auto r = main_theorem_report(kb, expected_additive_threefolds());
  std::vector<std::string> ids;
  for (const auto& e : r.additive) ids.push_back(e.id);
  c.expect(ids == expected_additive_threefolds(), "additive list differs from the expected 19");
  bool note = false;
  for (const auto& e : r.additive)
    if (e.id == "III_23" && e.note && e.note->find("particular member") != std::string::npos) note = true;
  c.expect(note, "III_23 lacks its note");
  auto cons = consistency(kb);
  c.expect(cons.ok, cons.problems.empty() ? "inconsistent" : cons.problems.front());

  auto toric = load_knowledge_base(LoadOptions{true});
  propagate(toric);
  auto rt = main_theorem_report(toric, expected_additive_toric_threefolds());
  std::vector<std::string> tids;
  for (const auto& e : rt.additive) tids.push_back(e.id);
  c.expect(tids == expected_additive_toric_threefolds(), "toric-only list differs from the expected 14");
  c.expect(consistency(toric).ok, "toric-only run inconsistent");
  for (const auto& n : toric.nodes)
    if (n.primitive && n.toric) c.expect(toric.status(n.id) == Status::Additive, n.id + " (primitive) not additive");
}

void criterion7(Check& c) {
  std::mt19937 rng(7);
  const auto names = builtin_threefold_names();
  int transforms = 0;
  for (int trial = 0; trial < 126; ++trial) {
    const auto& name = names[static_cast<std::size_t>(trial) % names.size()];
    auto np = builtin_polytope(name);
    auto q = transformed(np.polytope, fanoscope::testing::random_unimodular(3, rng), fanoscope::testing::random_translation(3, rng));
    auto v = inscribed_in_rectangle(q);
    c.expect(v.inscribed == *np.expected, name + ": verdict changed under a unimodular map");
    if (v.witness) c.expect(verify_witness(*v.witness, q), name + ": transformed witness fails");
    ++transforms;
  }
  c.expect(transforms >= 100, "too few transforms");

  for (const auto& name : builtin_names()) {
    auto p = builtin_polytope(name).polytope;
    auto v = inscribed_in_rectangle(p);
    if (v.witness) c.expect(verify_witness(*v.witness, p), name + ": witness fails re-verification");
    if (!is_reflexive(p)) continue;
    auto d = dual_polytope(p);
    c.expect(d.integral && dual_polytope(d.to_lattice()).integral && dual_polytope(d.to_lattice()).to_lattice() == p,
             name + ": duality is not an involution");
    if (!is_smooth(p).smooth) continue;
    auto f = reflexive_fast_path(p);
    c.expect(f.inscribed == v.inscribed, name + ": fast path disagrees");
    if (f.witness && v.witness) c.expect(f.witness->v0 == v.witness->v0, name + ": fast path picks another vertex");
  }
}

struct CorpusEntry {
  std::string name;
  LatticePolytope polytope;
  bool expected;  // a product is inscribed exactly when both factors are
};

// Fourfold corpus: products with P1, products of polygons, the simplex, then random unimodular
// images. Returns the expected verdict of every file by record name.
std::map<std::string, bool> write_fourfold_corpus(const fs::path& dir, std::size_t target) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto verdict = [](const std::string& name) { return *builtin_polytope(name).expected; };
  std::vector<CorpusEntry> base;
  auto p1 = builtin_polytope("P1").polytope;
  for (const auto& name : builtin_threefold_names())
    base.push_back({"P1x" + name, product(p1, builtin_polytope(name).polytope), verdict(name)});
  auto surfaces = builtin_surface_names();
  for (std::size_t i = 0; i < surfaces.size(); ++i)
    for (std::size_t j = i; j < surfaces.size(); ++j)
      base.push_back({surfaces[i] + "x" + surfaces[j],
                      product(builtin_polytope(surfaces[i]).polytope, builtin_polytope(surfaces[j]).polytope),
                      verdict(surfaces[i]) && verdict(surfaces[j])});
  base.push_back({"P4", LatticePolytope::from_points({{-1, -1, -1, -1}, {4, -1, -1, -1}, {-1, 4, -1, -1}, {-1, -1, 4, -1}, {-1, -1, -1, 4}}), true});
  // The simplex of the fan rays: every vertex cone has index 5.
  base.push_back({"P4_rays", LatticePolytope::from_points({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, -1, -1}}), false});

  std::mt19937 rng(4);
  std::map<std::string, bool> expected;
  auto emit = [&](const std::string& name, const LatticePolytope& p, bool e) {
    char prefix[8];
    std::snprintf(prefix, sizeof prefix, "%03zu_", expected.size());
    const std::string full = prefix + name;
    write_poly_file(dir / (full + ".poly"), p, full);
    expected[full] = e;
  };
  for (const auto& b : base) emit(b.name, b.polytope, b.expected);
  for (std::size_t k = 0; expected.size() < target; ++k) {
    const auto& b = base[k % base.size()];
    emit(b.name + "_t" + std::to_string(k),
         transformed(b.polytope, fanoscope::testing::random_unimodular(4, rng), fanoscope::testing::random_translation(4, rng)),
         b.expected);
  }
  return expected;
}

void criterion8(Check& c, const fs::path& dir) {
  const auto expected = write_fourfold_corpus(dir, 124);
  const std::size_t files = expected.size();
  auto t0 = Clock::now();
  auto classify = [&](std::string& out) {
    std::ostringstream o, e;
    int code = run_cli({"--json", "classify", "--dir", dir.string()}, o, e);
    out = o.str();
    return code;
  };
  std::string first, second;
  int code1 = classify(first);
  double s = seconds_since(t0);
  int code2 = classify(second);
  c.expect(code1 == kExitOk && code2 == kExitOk, "classify exited with " + std::to_string(code1));
  c.expect(first == second, "reruns differ");

  Json doc;
  try {
    doc = Json::parse(first);
  } catch (const std::exception& e) {
    c.expect(false, std::string("unparseable report: ") + e.what());
    return;
  }
  c.expect(doc["results"].size() == files, std::to_string(doc["results"].size()) + " verdicts for " + std::to_string(files) + " files");
  std::size_t positives = 0;
  for (const auto& row : doc["results"]) {
    const auto name = row["name"].get<std::string>();
    auto parsed = verdict_from_json(row);
    auto want = expected.find(name);
    c.expect(want != expected.end() && want->second == parsed.verdict.inscribed, name + ": verdict differs from its factors");
    if (!parsed.verdict.inscribed) continue;
    ++positives;
    auto recs = read_poly_file(dir / (name + ".poly"));
    c.expect(verify_witness(*parsed.verdict.witness, recs.at(0).polytope), name + ": witness fails re-verification");
  }
  c.expect(positives > 0, "no positive verdicts in the corpus");
  c.expect(s < 60.0, "took " + std::to_string(s) + " s");
  std::cout << "  fourfold corpus: " << files << " files, " << positives << " inscribed, " << s << " s per run\n";
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "fanoscope_fourfolds";
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"appendix golden witnesses", criterion1},
      {"built-in threefold table 14/4", criterion2},
      {"del Pezzo polygons", criterion3},
      {"boundary coefficients", criterion4},
      {"representation suite", criterion5},
      {"closure of the fact graph", criterion6},
      {"property suites", criterion7},
      {"fourfold smoke", [&](Check& c) { criterion8(c, scratch); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": " << criteria[i].first;
    if (!c.ok()) {
      std::cout << " (" << c.summary() << ")";
      ++failed;
    }
    std::cout << '\n';
  }
  return failed == 0 ? 0 : 1;
}

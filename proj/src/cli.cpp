#include "fanoscope/cli.hpp"

#include "fanoscope/additivity.hpp"
#include "fanoscope/engine.hpp"
#include "fanoscope/local_algebra.hpp"
#include "fanoscope/poly_format.hpp"
#include "fanoscope/polytope_db.hpp"
#include "fanoscope/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace fanoscope {
namespace {

struct Globals {
  bool json = false;
  bool quiet = false;
  bool timing = false;
};

// Collects the machine-readable document and the text lines of one command.
class Run {
 public:
  Run(std::string command, const Globals& g, std::ostream& out, std::ostream& err)
      : g_(g), out_(out), err_(err), start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["inputs"] = Json::array();
  }

  Json& doc() { return doc_; }
  void input(const std::string& s) { doc_["inputs"].push_back(s); }

  std::ostream& text() { return text_; }

  int error(const std::string& msg, int code = kExitInputError) {
    err_ << "error: " << msg << '\n';
    doc_["error"] = msg;
    return finish(code);
  }

  int finish(int code) {
    doc_["exit_status"] = code;
    if (g_.timing) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
      doc_["timing_ms"] = ms;
      text_ << "time: " << std::fixed << std::setprecision(1) << ms << " ms\n";
    }
    if (g_.json)
      out_ << doc_.dump(2) << '\n';
    else if (!g_.quiet)
      out_ << text_.str();
    return code;
  }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  Json doc_;
  std::ostringstream text_;
};

std::string join(const std::vector<LatticeVector>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? " " : "") + to_string(vs[i]);
  return out;
}

std::string join(const std::vector<Integer>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? " " : "") + vs[i].str();
  return out;
}

struct Evaluation {
  InscribedVerdict verdict;
  std::optional<BoundaryProfile> boundary;
};

Evaluation evaluate_polytope(const LatticePolytope& p, bool fast_path) {
  Evaluation e;
  e.verdict = fast_path ? reflexive_fast_path(p) : inscribed_in_rectangle(p);
  if (e.verdict.inscribed && is_reflexive(p)) e.boundary = boundary_coefficients(p, e.verdict.witness->v0);
  return e;
}

void print_verdict(std::ostream& os, const std::string& name, const Evaluation& e) {
  const auto& v = e.verdict;
  if (v.inscribed) {
    const auto& w = *v.witness;
    os << name << ": inscribed: yes, v0=" << to_string(w.v0) << '\n';
    os << "  basis: " << join(w.basis) << '\n';
    os << "  facets missing v0:";
    for (const auto& f : w.checked_facets) os << ' ' << to_string(f.normal) << "<=" << f.offset.str();
    os << '\n';
    if (e.boundary)
      os << "  boundary: coefficients " << join(e.boundary->coefficients) << ", divisors " << e.boundary->divisor_count
         << '\n';
  } else {
    os << name << ": inscribed: no\n";
    for (const auto& r : v.refutation) os << "  " << to_string(r.vertex) << ' ' << to_string(r.kind) << ": " << r.detail << '\n';
  }
}

int cmd_check(const Globals& g, const std::string& file, bool fast_path, std::ostream& out, std::ostream& err) {
  Run run("check", g, out, err);
  run.input(file);
  std::vector<PolyRecord> records;
  try {
    records = read_poly_file(file);
  } catch (const std::exception& e) {
    return run.error(e.what());
  }
  if (records.empty()) return run.error(file + ": no polytope records");
  bool all = true;
  run.doc()["results"] = Json::array();
  for (const auto& rec : records) {
    if (fast_path && !(is_reflexive(rec.polytope) && is_smooth(rec.polytope).smooth))
      return run.error(rec.name + ": the fast path needs a reflexive smooth polytope");
    for (const auto& w : rec.warnings) err << "warning: " << file << ": " << w << '\n';
    Evaluation e;
    try {
      e = evaluate_polytope(rec.polytope, fast_path);
    } catch (const std::exception& ex) {
      return run.error(rec.name + ": " + ex.what());
    }
    all = all && e.verdict.inscribed;
    print_verdict(run.text(), rec.name, e);
    Json r = verdict_to_json(e.verdict, e.boundary);
    r["name"] = rec.name;
    run.doc()["results"].push_back(std::move(r));
  }
  return run.finish(all ? kExitOk : kExitNegative);
}

Json table_row(const std::string& name, const Evaluation& e) {
  Json row;
  row["name"] = name;
  auto v = verdict_to_json(e.verdict, e.boundary);
  for (auto it = v.begin(); it != v.end(); ++it) row[it.key()] = it.value();
  return row;
}

void print_row(std::ostream& os, const std::string& name, const Evaluation& e) {
  os << std::left << std::setw(10) << name << ' ' << std::setw(14) << (e.verdict.inscribed ? "inscribed" : "not-inscribed");
  if (e.verdict.inscribed) {
    os << " v0=" << to_string(e.verdict.witness->v0);
    if (e.boundary) os << " a=(" << join(e.boundary->coefficients) << ")";
  }
  os << '\n';
}

int cmd_classify_builtin(const Globals& g, bool surfaces, bool fast_path, std::ostream& out, std::ostream& err) {
  Run run("classify", g, out, err);
  const auto names = surfaces ? builtin_surface_names() : builtin_threefold_names();
  run.input(surfaces ? "builtin-surfaces" : "builtin-threefolds");
  std::map<std::string, ManifestEntry> manifest;
  const auto manifest_path = data_directory() / "manifest.tsv";
  try {
    for (auto& m : load_manifest(manifest_path)) manifest.emplace(m.name, m);
  } catch (const std::exception& e) {
    return run.error(e.what());
  }
  run.input(manifest_path.string());
  Json rows = Json::array();
  Json diff = Json::array();
  std::size_t additive = 0;
  for (const auto& name : names) {
    auto np = builtin_polytope(name);
    auto e = evaluate_polytope(np.polytope, fast_path);
    additive += e.verdict.inscribed;
    print_row(run.text(), name, e);
    auto row = table_row(name, e);
    row["source"] = to_string(np.source);
    rows.push_back(std::move(row));
    auto m = manifest.find(name);
    if (m == manifest.end())
      diff.push_back({{"name", name}, {"problem", "no manifest entry"}});
    else if (m->second.expected_inscribed != e.verdict.inscribed)
      diff.push_back({{"name", name}, {"expected", m->second.expected_inscribed}, {"got", e.verdict.inscribed}});
  }
  run.text() << additive << " inscribed, " << names.size() - additive << " not inscribed\n";
  run.text() << "diff against manifest: " << (diff.empty() ? "empty" : std::to_string(diff.size()) + " entries") << '\n';
  for (const auto& d : diff) run.text() << "  " << d.dump() << '\n';
  run.doc()["results"] = std::move(rows);
  run.doc()["summary"] = {{"inscribed", additive}, {"not_inscribed", names.size() - additive}};
  run.doc()["diff"] = diff;
  return run.finish(diff.empty() ? kExitOk : kExitNegative);
}

int cmd_classify_dir(const Globals& g, const std::string& dir, bool fast_path, std::ostream& out, std::ostream& err) {
  Run run("classify", g, out, err);
  run.input(dir);
  IngestResult ingest;
  try {
    ingest = ingest_directory(dir);
  } catch (const std::exception& e) {
    return run.error(e.what());
  }
  Json rows = Json::array();
  Json errors = Json::array();
  for (const auto& e : ingest.errors) errors.push_back({{"file", e.file}, {"message", e.message}});
  std::size_t additive = 0;
  for (const auto& np : ingest.polytopes) {
    Evaluation e;
    try {
      if (fast_path && !(is_reflexive(np.polytope) && is_smooth(np.polytope).smooth))
        throw std::invalid_argument("the fast path needs a reflexive smooth polytope");
      e = evaluate_polytope(np.polytope, fast_path);
    } catch (const std::exception& ex) {
      errors.push_back({{"file", np.name}, {"message", ex.what()}});
      continue;
    }
    additive += e.verdict.inscribed;
    print_row(run.text(), np.name, e);
    rows.push_back(table_row(np.name, e));
  }
  run.text() << rows.size() << " polytopes: " << additive << " inscribed, " << rows.size() - additive << " not inscribed\n";
  for (const auto& w : ingest.warnings) err << "warning: " << w << '\n';
  for (const auto& e : errors) {
    run.text() << "error: " << e["file"].get<std::string>() << ": " << e["message"].get<std::string>() << '\n';
  }
  run.doc()["results"] = std::move(rows);
  run.doc()["errors"] = errors;
  run.doc()["warnings"] = ingest.warnings;
  return run.finish(errors.empty() ? kExitOk : kExitPartialIngestion);
}

std::string locus_name(int d) {
  switch (d) {
    case -1: return "empty";
    case 0: return "point";
    case 1: return "line";
    case 2: return "plane";
    default: return "linear subspace";
  }
}

int cmd_rep(const Globals& g, const std::string& name, bool verify, bool fixed, bool quadric, std::ostream& out,
            std::ostream& err) {
  Run run("rep", g, out, err);
  run.input(name);
  PolyMatrixFamily fam;
  std::optional<std::string> algebra;
  const auto reps = paper_rep_names();
  const auto algs = algebra_names();
  if (std::find(reps.begin(), reps.end(), name) != reps.end()) {
    fam = paper_rep(name);
    algebra = paper_rep_algebra(name);
  } else if (std::find(algs.begin(), algs.end(), name) != algs.end()) {
    fam = generic_rep(make_algebra(name));
  } else {
    return run.error("unknown representation '" + name + "'");
  }
  bool ok = true;
  run.text() << fam.name << " (" << fam.size() << "x" << fam.size() << ", " << fam.params << " parameters)\n"
             << format_matrix(fam);
  run.doc()["family"] = family_to_json(fam);
  Json checks;
  if (verify) {
    auto h = is_homomorphism(fam);
    Json hv{{"holds", h.holds}};
    if (h.holds) {
      run.text() << "group law holds\n";
    } else {
      ok = false;
      auto diff = to_string(h.difference, fam.params);
      run.text() << "group law FAILS at (" << h.row + 1 << "," << h.col + 1 << "): difference " << diff << '\n';
      hv["row"] = h.row + 1;
      hv["col"] = h.col + 1;
      hv["difference"] = diff;
    }
    checks["homomorphism"] = hv;
    if (algebra) {
      auto m = match_paper(generic_rep(make_algebra(*algebra)), fam);
      ok = ok && m.matched;
      if (m.matched)
        run.text() << "matches exponential of " << *algebra << " after " << m.describe() << '\n';
      else
        run.text() << "does not match the exponential of " << *algebra << '\n';
      checks["match"] = {{"algebra", *algebra}, {"matched", m.matched}, {"convention", m.describe()}};
    }
  }
  if (fixed) {
    auto fl = fixed_locus(fam);
    run.text() << "fixed locus: " << locus_name(fl.projective_dimension) << " (dim " << fl.projective_dimension << ")\n";
    Json basis = Json::array();
    for (const auto& b : fl.basis) {
      std::string s = "[";
      Json v = Json::array();
      for (std::size_t i = 0; i < b.size(); ++i) {
        s += (i ? ":" : "") + to_string(b[i]);
        v.push_back(to_string(b[i]));
      }
      run.text() << "  " << s << "]\n";
      basis.push_back(v);
    }
    checks["fixed_locus"] = {{"projective_dimension", fl.projective_dimension}, {"basis", basis}};
  }
  if (quadric) {
    auto q = registered_quadric(name);
    if (!q) {
      run.text() << "quadric: none registered\n";
      checks["quadric"] = nullptr;
    } else {
      bool kept = preserves_quadric(fam, *q);
      ok = ok && kept;
      run.text() << "quadric: " << (kept ? "preserved" : "NOT preserved") << '\n';
      checks["quadric"] = {{"preserved", kept}};
    }
  }
  run.doc()["checks"] = checks;
  return run.finish(ok ? kExitOk : kExitNegative);
}

int cmd_lineage(const Globals& g, bool report, bool toric_only, const std::string& kb_path, std::ostream& out,
                std::ostream& err) {
  Run run("lineage", g, out, err);
  std::filesystem::path path = kb_path.empty() ? default_knowledge_base_path() : std::filesystem::path(kb_path);
  run.input(path.string());
  KnowledgeBase kb;
  try {
    kb = load_knowledge_base(path, LoadOptions{toric_only});
  } catch (const std::exception& e) {
    return run.error(e.what());
  }
  propagate(kb);
  auto cons = consistency(kb);
  const auto& expected = toric_only ? expected_additive_toric_threefolds() : expected_additive_threefolds();
  auto r = main_theorem_report(kb, expected);

  auto& os = run.text();
  os << "additive threefolds (" << r.additive.size() << "):\n";
  for (const auto& e : r.additive) {
    const auto& first = kb.facts[e.facts.front()];
    os << "  " << std::left << std::setw(8) << e.id << ' ' << to_string(first.kind);
    if (e.note) os << "  [" << *e.note << "]";
    os << '\n';
    if (!report) continue;
    for (auto id : e.facts) {
      const auto& f = kb.facts[id];
      os << "      " << derivation(kb, f);
      if (f.kind == ProvenanceKind::Cited) os << "  {" << f.cite << ": " << f.quote << "}";
      if (f.kind == ProvenanceKind::Computed) os << "  {" << f.evidence << "}";
      os << '\n';
    }
  }
  if (!r.unknown.empty()) {
    os << "unknown:";
    for (const auto& u : r.unknown) os << ' ' << u;
    os << '\n';
  }
  os << "diff against expected list: ";
  if (r.matches()) {
    os << "empty\n";
  } else {
    os << '\n';
    for (const auto& m : r.missing) os << "  missing " << m << '\n';
    for (const auto& u : r.unexpected) os << "  unexpected " << u << '\n';
  }
  os << "consistency: " << (cons.ok ? "ok" : "FAILED") << '\n';
  for (const auto& p : cons.problems) os << "  " << p << '\n';
  run.doc()["results"] = lineage_to_json(kb, r, cons);
  return run.finish(r.matches() && cons.ok ? kExitOk : kExitNegative);
}

int cmd_dual(const Globals& g, const std::string& file, std::ostream& out, std::ostream& err) {
  Run run("dual", g, out, err);
  run.input(file);
  std::vector<PolyRecord> records;
  try {
    records = read_poly_file(file);
  } catch (const std::exception& e) {
    return run.error(e.what());
  }
  Json results = Json::array();
  for (const auto& rec : records) {
    if (!origin_is_interior(rec.polytope)) return run.error(rec.name + ": the origin is not an interior point");
    auto d = dual_polytope(rec.polytope);
    Json verts = Json::array();
    for (const auto& v : d.vertices) {
      Json row = Json::array();
      for (const auto& c : v) row.push_back(to_string(c));
      verts.push_back(std::move(row));
    }
    results.push_back({{"name", rec.name}, {"integral", d.integral}, {"reflexive", is_reflexive(rec.polytope)}, {"vertices", verts}});
    if (d.integral) {
      run.text() << write_poly(d.to_lattice(), rec.name + "_dual");
    } else {
      run.text() << "# dual of " << rec.name << " has non-integral vertices\n";
      for (const auto& v : d.vertices) {
        for (std::size_t i = 0; i < v.size(); ++i) run.text() << (i ? " " : "") << to_string(v[i]);
        run.text() << '\n';
      }
    }
  }
  run.doc()["results"] = std::move(results);
  return run.finish(kExitOk);
}

int cmd_info(const Globals& g, const std::string& name, std::ostream& out, std::ostream& err) {
  Run run("info", g, out, err);
  auto& os = run.text();
  if (name.empty()) {
    os << "data directory: " << data_directory().string() << '\n';
    os << "knowledge base: " << default_knowledge_base_path().string() << '\n';
    auto list = [&](const char* label, const std::vector<std::string>& xs) {
      os << label << ':';
      for (const auto& x : xs) os << ' ' << x;
      os << '\n';
    };
    list("polytopes", builtin_names());
    list("representations", paper_rep_names());
    list("algebras", algebra_names());
    run.doc()["results"] = {{"data_directory", data_directory().string()},
                            {"polytopes", builtin_names()},
                            {"representations", paper_rep_names()},
                            {"algebras", algebra_names()}};
    return run.finish(kExitOk);
  }
  run.input(name);
  std::optional<NamedPolytope> found;
  try {
    found = builtin_polytope(name);
  } catch (const std::out_of_range&) {
    return run.error("unknown polytope '" + name + "'");
  }
  const NamedPolytope& np = *found;
  const auto& p = np.polytope;
  auto facets = facet_enumeration(p);
  bool refl = is_reflexive(p);
  bool smooth = is_smooth(p).smooth;
  os << np.name << " (" << to_string(np.source) << ")\n";
  os << "  dimension " << p.dim() << ", " << p.vertex_count() << " vertices, " << facets.size() << " facets\n";
  os << "  reflexive: " << (refl ? "yes" : "no") << ", smooth: " << (smooth ? "yes" : "no") << '\n';
  if (np.picard) os << "  Picard number " << *np.picard << '\n';
  os << "  vertices: " << join(p.vertices()) << '\n';
  if (!np.rays.empty()) os << "  fan rays: " << join(np.rays) << '\n';
  if (!np.note.empty()) os << "  note: " << np.note << '\n';
  Json j{{"name", np.name},       {"source", to_string(np.source)}, {"dim", p.dim()},
         {"vertices", Json::array()}, {"facets", facets.size()},     {"reflexive", refl},
         {"smooth", smooth}};
  for (const auto& v : p.vertices()) j["vertices"].push_back(to_json(v));
  if (np.picard) j["picard"] = *np.picard;
  run.doc()["results"] = std::move(j);
  return run.finish(kExitOk);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Additive structures on toric Fano varieties: polytope checks, representations, lineage"};
  app.name("fanoscope");
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Print a JSON report instead of text");
  app.add_flag("--quiet", g.quiet, "Suppress text output; only the exit status is reported");
  app.add_flag("--timing", g.timing, "Include elapsed time in the report");

  std::string file, dir, name, kb_path;
  bool fast_path = false, threefolds = false, surfaces = false;
  bool verify = false, fixed = false, quadric = false, report = false, toric_only = false;

  auto* check = app.add_subcommand("check", "Test whether a polytope is inscribed in a rectangle");
  check->add_option("file", file, "Input .poly file")->required();
  check->add_flag("--fast-path", fast_path, "Use the reflexive normal-fan path");

  auto* classify = app.add_subcommand("classify", "Run the criterion over a dataset");
  auto* o1 = classify->add_flag("--builtin-threefolds", threefolds, "The 18 built-in toric Fano threefolds");
  auto* o2 = classify->add_flag("--builtin-surfaces", surfaces, "The built-in toric del Pezzo polygons");
  auto* o3 = classify->add_option("--dir", dir, "Directory of .poly files");
  o1->excludes(o2)->excludes(o3);
  o2->excludes(o3);
  classify->add_flag("--fast-path", fast_path, "Use the reflexive normal-fan path");

  auto* rep = app.add_subcommand("rep", "Show and check a representation family");
  rep->add_option("name", name, "Stored family or built-in algebra name")->required();
  rep->add_flag("--verify", verify, "Check the group law and compare with the exponential");
  rep->add_flag("--fixed-locus", fixed, "Projective dimension of the fixed locus");
  rep->add_flag("--quadric", quadric, "Check invariance of the registered quadric");

  auto* lineage = app.add_subcommand("lineage", "Propagate the knowledge base and list additive threefolds");
  lineage->add_flag("--report", report, "Show every fact with its derivation");
  lineage->add_flag("--toric-only", toric_only, "Ignore cited axioms");
  lineage->add_option("--kb", kb_path, "Knowledge base file");

  auto* dual = app.add_subcommand("dual", "Print the dual polytope");
  dual->add_option("file", file, "Input .poly file")->required();

  auto* info = app.add_subcommand("info", "Describe the built-in data or one polytope");
  info->add_option("name", name, "Built-in polytope name");

  for (auto* sub : {check, classify, rep, lineage, dual, info}) sub->fallthrough();

  std::vector<const char*> argv{"fanoscope"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  if (*check) return cmd_check(g, file, fast_path, out, err);
  if (*classify) {
    if (threefolds || surfaces) return cmd_classify_builtin(g, surfaces, fast_path, out, err);
    if (!dir.empty()) return cmd_classify_dir(g, dir, fast_path, out, err);
    err << "error: classify needs --builtin-threefolds, --builtin-surfaces or --dir\n";
    return kExitInputError;
  }
  if (*rep) return cmd_rep(g, name, verify, fixed, quadric, out, err);
  if (*lineage) return cmd_lineage(g, report, toric_only, kb_path, out, err);
  if (*dual) return cmd_dual(g, file, out, err);
  if (*info) return cmd_info(g, name, out, err);
  return kExitInputError;
}

}  // namespace fanoscope

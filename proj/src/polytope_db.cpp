#include "fanoscope/polytope_db.hpp"

#include "fanoscope/poly_format.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef FANOSCOPE_DEFAULT_DATA_DIR
#define FANOSCOPE_DEFAULT_DATA_DIR "data"
#endif

namespace fanoscope {

namespace {

using Points = std::vector<LatticeVector>;

struct Entry {
  const char* name;
  PolytopeSource source;
  int picard;
  bool inscribed;
  Points vertices;
  Points rays;
  const char* note;
};

// Threefold polytopes other than the three with published vertex lists were obtained as duals of conv(rays)
// for the fans listed below and checked to be reflexive and smooth before being frozen here.
const std::vector<Entry>& table() {
  using S = PolytopeSource;
  static const std::vector<Entry> entries = {
      {"P3", S::DerivedConstruction, 1, true,
       {{-1, -1, -1}, {-1, -1, 3}, {-1, 3, -1}, {3, -1, -1}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
       "projective space"},
      {"II_33", S::DerivedConstruction, 2, true,
       {{-1, 0, -1}, {-1, 0, 2}, {-1, 3, -1}, {0, -1, -1}, {0, -1, 2}, {3, -1, -1}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 0}},
       "blow-up of P3 along a torus-invariant line"},
      {"II_34", S::DerivedConstruction, 2, true,
       {{-1, -1, -1}, {-1, -1, 2}, {-1, 2, -1}, {1, -1, -1}, {1, -1, 2}, {1, 2, -1}},
       {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, -1}},
       "P1 x P2"},
      {"II_35", S::DerivedConstruction, 2, true,
       {{-1, -1, 1}, {-1, -1, 3}, {-1, 1, -1}, {-1, 3, -1}, {1, -1, -1}, {3, -1, -1}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 1}},
       "blow-up of P3 at a torus-fixed point"},
      {"II_36", S::DerivedConstruction, 2, true,
       {{-1, -1, -1}, {-1, -1, 1}, {-1, 0, -1}, {-1, 4, 1}, {0, -1, -1}, {4, -1, 1}},
       {{1, 0, 0}, {0, 1, 0}, {-1, -1, 2}, {0, 0, 1}, {0, 0, -1}},
       "P(O + O(2)) over P2"},
      {"III_25", S::DerivedConstruction, 3, false,
       {{-1, 0, -1}, {-1, 0, 2}, {-1, 2, -1}, {-1, 2, 0}, {0, -1, -1}, {0, -1, 2}, {2, -1, -1}, {2, -1, 0}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 0}, {-1, -1, 0}},
       "blow-up of P3 along two disjoint torus-invariant lines"},
      {"III_26", S::DerivedConstruction, 3, true,
       {{-1, 0, -1}, {-1, 0, 2}, {-1, 1, -1}, {-1, 1, 1}, {0, -1, -1}, {0, -1, 2}, {1, 1, -1}, {3, -1, -1}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 0}, {0, -1, 0}},
       "blow-up of P3 along a line and a point off it"},
      {"III_27", S::DerivedConstruction, 3, true,
       {{-1, -1, -1}, {-1, -1, 1}, {-1, 1, -1}, {-1, 1, 1}, {1, -1, -1}, {1, -1, 1}, {1, 1, -1}, {1, 1, 1}},
       {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
       "P1 x P1 x P1"},
      {"III_28", S::DerivedConstruction, 3, true,
       {{-1, -1, -1}, {-1, -1, 1}, {-1, 0, -1}, {-1, 2, 1}, {1, -1, -1}, {1, -1, 1}, {1, 0, -1}, {1, 2, 1}},
       {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, 1}, {0, 0, -1}},
       "P1 x S8"},
      {"III_29", S::PaperAppendix, 3, true,
       {{-1, -1, -1}, {-1, -1, 3}, {-1, 3, -1}, {1, -1, -1}, {0, -1, 2}, {1, -1, 0}, {0, 2, -1}, {1, 0, -1}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {-1, 0, 0}, {-2, -1, -1}},
       "vertex list and rays in their published order"},
      {"III_30", S::DerivedConstruction, 3, true,
       {{-1, 0, 0}, {-1, 0, 2}, {-1, 1, -1}, {-1, 3, -1}, {0, -1, 0}, {0, -1, 2}, {1, -1, -1}, {3, -1, -1}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 1}, {1, 1, 0}},
       "blow-up of II_35 along the strict transform of a line through the centre"},
      {"III_31", S::DerivedConstruction, 3, true,
       {{-1, -1, -1}, {-1, -1, 1}, {-1, 0, -1}, {-1, 2, 1}, {0, -1, -1}, {0, 0, -1}, {2, -1, 1}, {2, 2, 1}},
       {{1, 0, 0}, {-1, 0, 1}, {0, 1, 0}, {0, -1, 1}, {0, 0, 1}, {0, 0, -1}},
       "P(O + O(1,1)) over P1 x P1"},
      {"IV_9", S::DerivedConstruction, 4, false,
       {{-1, 0, 0}, {-1, 0, 2}, {-1, 1, -1}, {-1, 2, -1}, {-1, 2, 0}, {0, -1, 0}, {0, -1, 2}, {1, -1, -1},
        {2, -1, -1}, {2, -1, 0}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 0}, {-1, -1, 0}, {1, 1, 1}},
       "blow-up of III_25 along an exceptional line"},
      {"IV_10", S::DerivedConstruction, 4, true,
       {{-1, -1, 0}, {-1, -1, 1}, {-1, 0, -1}, {-1, 1, -1}, {-1, 1, 1}, {1, -1, 0}, {1, -1, 1}, {1, 0, -1},
        {1, 1, -1}, {1, 1, 1}},
       {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 1, 1}, {0, 0, 1}, {0, -1, 0}, {0, 0, -1}},
       "P1 x S7"},
      {"IV_11", S::PaperAppendix, 4, true,
       {{-1, -1, -1}, {-1, -1, 1}, {-1, 2, -1}, {-1, 2, 1}, {1, -1, -1}, {0, -1, 1}, {1, -1, 0}, {1, 0, -1},
        {0, 1, 1}, {1, 0, 0}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, 0}, {0, 0, -1}, {-1, 0, 0}, {-1, 0, -1}},
       "vertex list and rays in their published order"},
      {"IV_12", S::PaperAppendix, 4, true,
       {{-1, -1, -1}, {-1, -1, 3}, {-1, 1, -1}, {-1, 1, 1}, {1, -1, -1}, {1, -1, 1}, {1, 0, -1}, {0, 1, -1},
        {1, 0, 0}, {0, 1, 0}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {-1, 0, 0}, {0, -1, 0}, {-1, -1, 0}},
       "vertex list and rays in their published order"},
      {"V_2", S::DerivedConstruction, 5, false,
       {{-1, 0, 0}, {-1, 0, 1}, {-1, 1, -1}, {-1, 1, 1}, {-1, 2, -1}, {-1, 2, 0}, {0, -1, 0}, {0, -1, 1},
        {1, -1, -1}, {1, -1, 1}, {2, -1, -1}, {2, -1, 0}},
       {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 0}, {-1, -1, 0}, {1, 1, 1}, {0, 0, -1}},
       "blow-up of III_25 along two exceptional lines"},
      {"V_3", S::DerivedConstruction, 5, false,
       {{-1, -1, 0}, {-1, -1, 1}, {-1, 0, -1}, {-1, 0, 1}, {-1, 1, -1}, {-1, 1, 0}, {1, -1, 0}, {1, -1, 1},
        {1, 0, -1}, {1, 0, 1}, {1, 1, -1}, {1, 1, 0}},
       {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 1, 1}, {0, 0, 1}, {0, -1, 0}, {0, -1, -1}, {0, 0, -1}},
       "P1 x S6"},
      {"P1", S::DerivedConstruction, 1, true, {{-1}, {1}}, {{1}, {-1}}, "projective line"},
      {"P2", S::DerivedConstruction, 1, true,
       {{-1, -1}, {2, -1}, {-1, 2}},
       {{1, 0}, {0, 1}, {-1, -1}},
       "projective plane"},
      {"P1xP1", S::DerivedConstruction, 2, true,
       {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}},
       {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
       "product of two projective lines"},
      {"S8", S::DerivedConstruction, 2, true,
       {{-1, 0}, {-1, 2}, {0, -1}, {2, -1}},
       {{1, 0}, {0, 1}, {-1, -1}, {1, 1}},
       "del Pezzo surface of degree 8: P2 blown up in one point"},
      {"S7", S::DerivedConstruction, 3, true,
       {{-1, 0}, {-1, 1}, {0, -1}, {1, -1}, {1, 1}},
       {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}},
       "del Pezzo surface of degree 7: P2 blown up in two points"},
      {"S6", S::DerivedConstruction, 4, false,
       {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}},
       {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
       "del Pezzo surface of degree 6: P2 blown up in three points"},
  };
  return entries;
}

NamedPolytope materialize(const Entry& e) {
  return NamedPolytope{e.name,   LatticePolytope::from_points(e.vertices), e.source, e.picard, e.inscribed,
                       e.rays,   e.note};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

std::string to_string(PolytopeSource s) {
  switch (s) {
    case PolytopeSource::PaperAppendix:
      return "paper-appendix";
    case PolytopeSource::DerivedConstruction:
      return "derived-construction";
    case PolytopeSource::IngestedFile:
      return "ingested-file";
  }
  return "unknown";
}

NamedPolytope builtin_polytope(const std::string& name) {
  const std::string key = name == "dP6" ? "S6" : name;
  for (const auto& e : table())
    if (key == e.name) return materialize(e);
  throw std::out_of_range("unknown built-in polytope '" + name + "'");
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& e : table()) out.emplace_back(e.name);
  return out;
}

std::vector<std::string> builtin_threefold_names() {
  std::vector<std::string> out;
  for (const auto& e : table())
    if (e.vertices.front().dim() == 3) out.emplace_back(e.name);
  return out;
}

std::vector<std::string> builtin_surface_names() {
  std::vector<std::string> out;
  for (const auto& e : table())
    if (e.vertices.front().dim() == 2) out.emplace_back(e.name);
  return out;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(trim(f));
    if (fields.size() < 3)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected at least 3 tab-separated fields");
    ManifestEntry e;
    e.name = fields[0];
    if (fields[1] == "paper-appendix")
      e.source = PolytopeSource::PaperAppendix;
    else if (fields[1] == "derived-construction")
      e.source = PolytopeSource::DerivedConstruction;
    else if (fields[1] == "ingested-file")
      e.source = PolytopeSource::IngestedFile;
    else
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": unknown source '" + fields[1] + "'");
    if (fields[2] == "inscribed")
      e.expected_inscribed = true;
    else if (fields[2] == "not-inscribed")
      e.expected_inscribed = false;
    else
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": unknown verdict '" + fields[2] + "'");
    if (fields.size() > 3) e.reference = fields[3];
    out.push_back(std::move(e));
  }
  return out;
}

IngestResult ingest_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".poly") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  IngestResult result;
  for (const auto& file : files) {
    try {
      for (auto& rec : read_poly_file(file)) {
        for (const auto& w : rec.warnings) result.warnings.push_back(file.filename().string() + ": " + w);
        result.polytopes.push_back(
            NamedPolytope{rec.name, std::move(rec.polytope), PolytopeSource::IngestedFile, {}, {}, {}, file.string()});
      }
    } catch (const std::exception& e) {
      result.errors.push_back({file.filename().string(), e.what()});
    }
  }
  std::stable_sort(result.polytopes.begin(), result.polytopes.end(),
                   [](const NamedPolytope& a, const NamedPolytope& b) { return a.name < b.name; });
  return result;
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("FANOSCOPE_DATA"); env && *env) return env;
  return FANOSCOPE_DEFAULT_DATA_DIR;
}

}  // namespace fanoscope

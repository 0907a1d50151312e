#pragma once

#include "fanoscope/lattice.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fanoscope {

enum class PolytopeSource { PaperAppendix, DerivedConstruction, IngestedFile };

std::string to_string(PolytopeSource s);

struct NamedPolytope {
  std::string name;
  LatticePolytope polytope;
  PolytopeSource source = PolytopeSource::IngestedFile;
  std::optional<int> picard;          // Picard number of the toric variety, for built-ins
  std::optional<bool> expected;       // expected inscribed verdict, for built-ins
  std::vector<LatticeVector> rays;    // fan rays of the toric variety, for built-ins
  std::string note;                   // how the fan was obtained
};

/// Threefolds P3, II_33..V_3 in Mori-Mukai order, then P1, P2, P1xP1, S8, S7, S6.
/// "dP6" is accepted as another name for S6. Throws std::out_of_range for unknown names.
NamedPolytope builtin_polytope(const std::string& name);
std::vector<std::string> builtin_names();
std::vector<std::string> builtin_threefold_names();
std::vector<std::string> builtin_surface_names();

struct ManifestEntry {
  std::string name;
  PolytopeSource source;
  bool expected_inscribed;
  std::string reference;
};

/// Tab-separated manifest: name, source tag, expected verdict (inscribed/not-inscribed), reference.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

struct IngestError {
  std::string file;
  std::string message;
};

struct IngestResult {
  std::vector<NamedPolytope> polytopes;  // ordered by name
  std::vector<IngestError> errors;
  std::vector<std::string> warnings;     // "file: message"
};

/// Reads every *.poly file in a directory. Per-file failures are collected, not thrown; a missing
/// directory throws std::runtime_error.
IngestResult ingest_directory(const std::filesystem::path& dir);

/// Dataset directory: $FANOSCOPE_DATA if set, otherwise the directory configured at build time.
std::filesystem::path data_directory();

}  // namespace fanoscope

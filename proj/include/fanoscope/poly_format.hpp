#pragma once

// ".poly" text format:
//
//   # comment
//   name <label>        (optional)
//   dim N
//   vertices K
//   x_1 ... x_N         (K lines)
//
// A file may hold several records separated by blank lines.

#include "fanoscope/lattice.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanoscope {

class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(std::string source, std::size_t line, const std::string& what);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

struct PolyRecord {
  std::string name;
  LatticePolytope polytope;
  std::vector<std::string> warnings;
};

/// Parses every record in the stream. `source` names the input in error messages; records without
/// a "name" line are called `default_name`, or `source` when that is not given.
std::vector<PolyRecord> parse_poly(std::istream& in, const std::string& source,
                                   const std::optional<std::string>& default_name = std::nullopt);

/// Errors carry the path as given; the default record name is the file stem.
std::vector<PolyRecord> read_poly_file(const std::filesystem::path& path);

/// Canonical text for one record (vertices in sorted order).
std::string write_poly(const LatticePolytope& p, const std::optional<std::string>& name = std::nullopt);
void write_poly_file(const std::filesystem::path& path, const LatticePolytope& p,
                     const std::optional<std::string>& name = std::nullopt);

}  // namespace fanoscope

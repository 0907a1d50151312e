#include "fanoscope/poly_format.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fanoscope {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_integer(const std::string& tok, Integer& out) {
  std::size_t i = 0;
  if (tok.empty()) return false;
  if (tok[0] == '-' || tok[0] == '+') i = 1;
  if (i == tok.size()) return false;
  for (std::size_t k = i; k < tok.size(); ++k)
    if (tok[k] < '0' || tok[k] > '9') return false;
  out = Integer(tok[0] == '+' ? tok.substr(1) : tok);
  return true;
}

std::size_t parse_count(const std::string& tok, const std::string& src, std::size_t line, const char* what) {
  Integer v;
  if (!parse_integer(tok, v) || v < 0 || v > 1'000'000)
    throw PolyParseError(src, line, std::string("invalid ") + what + " '" + tok + "'");
  return v.convert_to<std::size_t>();
}

}  // namespace

PolyParseError::PolyParseError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), source_(std::move(source)), line_(line) {}

std::vector<PolyRecord> parse_poly(std::istream& in, const std::string& source,
                                   const std::optional<std::string>& default_name) {
  enum class State { Header, Vertices };
  std::vector<PolyRecord> out;
  State state = State::Header;
  std::optional<std::string> name;
  std::size_t dim = 0;  // 0 until the 'dim' line is seen
  std::size_t expected = 0;
  std::size_t header_line = 0;
  std::vector<LatticeVector> pts;

  auto finish = [&](std::size_t line) {
    std::vector<std::string> warnings;
    LatticePolytope::HullReport rep;
    try {
      auto poly = LatticePolytope::from_points(pts, &rep);
      if (rep.duplicates)
        warnings.push_back(std::to_string(rep.duplicates) + " duplicate vertex line(s) dropped");
      if (rep.non_vertices)
        warnings.push_back(std::to_string(rep.non_vertices) + " listed point(s) are not vertices and were dropped");
      std::string nm = name.value_or(default_name.value_or(source));
      if (!name && !out.empty()) nm += "#" + std::to_string(out.size() + 1);
      out.push_back(PolyRecord{std::move(nm), std::move(poly), std::move(warnings)});
    } catch (const DimensionError& e) {
      throw PolyParseError(source, header_line ? header_line : line, e.what());
    }
    state = State::Header;
    name.reset();
    dim = 0;
    pts.clear();
    expected = 0;
    header_line = 0;
  };

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (!line.empty() && line[0] == '#') continue;

    if (state == State::Vertices) {
      if (line.empty()) throw PolyParseError(source, lineno, "blank line inside vertex list");
      std::istringstream ss(line);
      std::vector<Integer> c;
      std::string tok;
      while (ss >> tok) {
        Integer v;
        if (!parse_integer(tok, v)) throw PolyParseError(source, lineno, "non-integer coordinate '" + tok + "'");
        c.push_back(std::move(v));
      }
      if (c.size() != dim)
        throw PolyParseError(source, lineno,
                             "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(c.size()));
      pts.emplace_back(std::move(c));
      if (pts.size() == expected) finish(lineno);
      continue;
    }

    if (line.empty()) {
      if (name || dim) throw PolyParseError(source, lineno, "incomplete record");
      continue;
    }
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (header_line == 0) header_line = lineno;
    if (key == "name") {
      if (name || dim) throw PolyParseError(source, lineno, "unexpected 'name' line");
      std::string rest;
      std::getline(ss, rest);
      name = trim(rest);
      if (name->empty()) throw PolyParseError(source, lineno, "empty name");
    } else if (key == "dim") {
      if (dim) throw PolyParseError(source, lineno, "duplicate 'dim' line");
      std::string tok, extra;
      if (!(ss >> tok) || (ss >> extra)) throw PolyParseError(source, lineno, "malformed 'dim' line");
      dim = parse_count(tok, source, lineno, "dimension");
      if (dim == 0) throw PolyParseError(source, lineno, "dimension must be at least 1");
    } else if (key == "vertices") {
      if (!dim) throw PolyParseError(source, lineno, "'vertices' before 'dim'");
      std::string tok, extra;
      if (!(ss >> tok) || (ss >> extra)) throw PolyParseError(source, lineno, "malformed 'vertices' line");
      expected = parse_count(tok, source, lineno, "vertex count");
      if (expected == 0) throw PolyParseError(source, lineno, "vertex count must be positive");
      state = State::Vertices;
    } else {
      throw PolyParseError(source, lineno, "unexpected '" + key + "'");
    }
  }
  if (state == State::Vertices)
    throw PolyParseError(source, lineno, "expected " + std::to_string(expected) + " vertices, found " +
                                             std::to_string(pts.size()));
  if (name || dim) throw PolyParseError(source, lineno, "incomplete record");
  if (out.empty()) throw PolyParseError(source, std::max<std::size_t>(lineno, 1), "no polytope record found");
  return out;
}

std::vector<PolyRecord> read_poly_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PolyParseError(path.string(), 0, "cannot open file");
  return parse_poly(in, path.string(), path.stem().string());
}

std::string write_poly(const LatticePolytope& p, const std::optional<std::string>& name) {
  std::ostringstream os;
  if (name) os << "name " << *name << "\n";
  os << "dim " << p.dim() << "\n";
  os << "vertices " << p.vertex_count() << "\n";
  for (const auto& v : p.vertices()) {
    for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? " " : "") << v[i];
    os << "\n";
  }
  return os.str();
}

void write_poly_file(const std::filesystem::path& path, const LatticePolytope& p,
                     const std::optional<std::string>& name) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_poly(p, name);
}

}  // namespace fanoscope

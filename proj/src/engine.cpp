#include "fanoscope/engine.hpp"

#include "fanoscope/additivity.hpp"
#include "fanoscope/polytope_db.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fanoscope {

std::string to_string(Status s) { return s == Status::Additive ? "Additive" : "NotAdditive"; }

std::string to_string(ProvenanceKind k) {
  switch (k) {
    case ProvenanceKind::Computed: return "Computed";
    case ProvenanceKind::Cited: return "Cited";
    case ProvenanceKind::Derived: return "Derived";
  }
  return "?";
}

const VarietyNode* KnowledgeBase::find(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::vector<const Fact*> KnowledgeBase::facts_for(const std::string& id) const {
  std::vector<const Fact*> out;
  for (const auto& f : facts)
    if (f.node == id) out.push_back(&f);
  return out;
}

std::optional<Status> KnowledgeBase::status(const std::string& id) const {
  for (const auto& f : facts)
    if (f.node == id) return f.status;
  return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto bar = line.find(" | ", pos);
    out.push_back(trim(line.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos)));
    if (bar == std::string::npos) break;
    pos = bar + 3;
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class Loader {
 public:
  Loader(std::string source, LoadOptions opts) : source_(std::move(source)), opts_(opts) {}

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
    throw KnowledgeBaseError(source_ + ":" + std::to_string(line) + ": " + msg);
  }

  void record(std::size_t line, const std::string& text) {
    auto fields = split_fields(text);
    auto head = words(fields[0]);
    std::map<std::string, std::string> kv;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto colon = fields[i].find(':');
      if (colon == std::string::npos) fail(line, "field without ':' (" + fields[i] + ")");
      auto key = trim(fields[i].substr(0, colon));
      if (kv.count(key)) fail(line, "duplicate field '" + key + "'");
      kv[key] = trim(fields[i].substr(colon + 1));
    }
    if (head.empty()) fail(line, "empty record");
    if (head[0] == "node") node(line, head, kv);
    else if (head[0] == "blowdown") blowdown(line, head, kv);
    else if (head[0] == "product") product(line, head, kv);
    else if (head[0] == "axiom") axiom(line, head, kv);
    else fail(line, "unknown record type '" + head[0] + "'");
  }

  KnowledgeBase finish() {
    auto known = [&](const std::string& id) { return kb_.find(id) != nullptr; };
    for (std::size_t e = 0; e < kb_.edges.size(); ++e) {
      const auto& edge = kb_.edges[e];
      std::size_t line = edge_lines_[e];
      if (!known(edge.source)) fail(line, "unknown node '" + edge.source + "'");
      for (const auto& id : edge.targets) if (!known(id)) fail(line, "unknown node '" + id + "'");
      const auto& x = *kb_.find(edge.source);
      if (edge.kind == EdgeKind::BlowDown) {
        const auto& y = *kb_.find(edge.targets[0]);
        if (x.dim != y.dim) fail(line, "blow-down " + x.id + " -> " + y.id + " changes dimension");
        if (x.picard - y.picard != edge.components)
          fail(line, "blow-down " + x.id + " -> " + y.id + ": Picard numbers " + std::to_string(x.picard) + " and " +
                         std::to_string(y.picard) + " do not differ by the " + std::to_string(edge.components) +
                         " centre component(s)");
      } else {
        const auto& y = *kb_.find(edge.targets[0]);
        const auto& z = *kb_.find(edge.targets[1]);
        if (x.picard != y.picard + z.picard || x.dim != y.dim + z.dim)
          fail(line, "product " + x.id + " = " + y.id + " x " + z.id + ": Picard number or dimension does not add up");
      }
    }
    for (std::size_t i = 0; i < kb_.facts.size(); ++i) {
      const auto* n = kb_.find(kb_.facts[i].node);
      if (!n) fail(fact_lines_[i], "axiom on unknown node '" + kb_.facts[i].node + "'");
      if (n->toric) fail(fact_lines_[i], "axiom on toric node '" + n->id + "'; its status must be computed");
    }
    if (opts_.toric_only) kb_.facts.clear();
    for (std::size_t i = 0; i < kb_.facts.size(); ++i) kb_.facts[i].id = i;
    return std::move(kb_);
  }

 private:
  static bool yes_no(const std::string& v, bool& out) {
    if (v == "yes") out = true;
    else if (v == "no") out = false;
    else return false;
    return true;
  }

  static bool parse_int(const std::string& v, int& out) {
    if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); })) return false;
    out = std::stoi(v);
    return true;
  }

  void check_keys(std::size_t line, const std::map<std::string, std::string>& kv, std::set<std::string> allowed) const {
    for (const auto& [k, v] : kv)
      if (!allowed.count(k)) fail(line, "unexpected field '" + k + "'");
  }

  void node(std::size_t line, const std::vector<std::string>& head, const std::map<std::string, std::string>& kv) {
    if (head.size() != 2) fail(line, "expected 'node ID'");
    check_keys(line, kv, {"picard", "dim", "toric", "polytope", "primitive", "description"});
    VarietyNode n;
    n.id = head[1];
    if (kb_.find(n.id)) fail(line, "duplicate node '" + n.id + "'");
    if (!kv.count("picard") || !parse_int(kv.at("picard"), n.picard) || n.picard < 1)
      fail(line, "node " + n.id + ": missing or invalid picard");
    if (kv.count("dim") && (!parse_int(kv.at("dim"), n.dim) || n.dim < 1)) fail(line, "node " + n.id + ": invalid dim");
    if (!kv.count("toric") || !yes_no(kv.at("toric"), n.toric)) fail(line, "node " + n.id + ": toric must be yes or no");
    if (kv.count("primitive") && !yes_no(kv.at("primitive"), n.primitive))
      fail(line, "node " + n.id + ": primitive must be yes or no");
    if (kv.count("polytope")) n.polytope = kv.at("polytope");
    if (kv.count("description")) n.description = kv.at("description");
    if (n.toric) {
      if (!n.polytope) fail(line, "toric node " + n.id + " has no polytope");
      try {
        auto p = builtin_polytope(*n.polytope);
        if (static_cast<int>(p.polytope.dim()) != n.dim)
          fail(line, "node " + n.id + ": polytope " + *n.polytope + " has the wrong dimension");
      } catch (const std::out_of_range&) {
        fail(line, "node " + n.id + ": unknown polytope '" + *n.polytope + "'");
      }
    } else if (n.polytope) {
      fail(line, "non-toric node " + n.id + " references a polytope");
    }
    n.order = kb_.nodes.size();
    kb_.nodes.push_back(std::move(n));
  }

  void blowdown(std::size_t line, const std::vector<std::string>& head, const std::map<std::string, std::string>& kv) {
    if (head.size() != 4 || head[2] != "->") fail(line, "expected 'blowdown X -> Y'");
    check_keys(line, kv, {"center", "components"});
    LineageEdge e;
    e.kind = EdgeKind::BlowDown;
    e.source = head[1];
    e.targets = {head[3]};
    if (kv.count("center")) e.center = kv.at("center");
    if (kv.count("components") && (!parse_int(kv.at("components"), e.components) || e.components < 1))
      fail(line, "invalid components");
    kb_.edges.push_back(std::move(e));
    edge_lines_.push_back(line);
  }

  void product(std::size_t line, const std::vector<std::string>& head, const std::map<std::string, std::string>& kv) {
    if (head.size() != 6 || head[2] != "=" || head[4] != "x") fail(line, "expected 'product X = Y x Z'");
    check_keys(line, kv, {});
    LineageEdge e;
    e.kind = EdgeKind::Product;
    e.source = head[1];
    e.targets = {head[3], head[5]};
    kb_.edges.push_back(std::move(e));
    edge_lines_.push_back(line);
  }

  void axiom(std::size_t line, const std::vector<std::string>& head, const std::map<std::string, std::string>& kv) {
    if (head.size() != 3) fail(line, "expected 'axiom ID additive|not-additive'");
    check_keys(line, kv, {"cite", "quote", "note"});
    Fact f;
    f.node = head[1];
    if (head[2] == "additive") f.status = Status::Additive;
    else if (head[2] == "not-additive") f.status = Status::NotAdditive;
    else fail(line, "status must be additive or not-additive");
    f.kind = ProvenanceKind::Cited;
    if (!kv.count("cite") || kv.at("cite").empty()) fail(line, "axiom on " + f.node + " lacks a cite field");
    if (!kv.count("quote") || kv.at("quote").empty()) fail(line, "axiom on " + f.node + " lacks a quote field");
    f.cite = kv.at("cite");
    f.quote = kv.at("quote");
    if (kv.count("note")) f.note = kv.at("note");
    kb_.facts.push_back(std::move(f));
    fact_lines_.push_back(line);
  }

  std::string source_;
  LoadOptions opts_;
  KnowledgeBase kb_;
  std::vector<std::size_t> edge_lines_;
  std::vector<std::size_t> fact_lines_;
};

std::string summarize(const InscribedVerdict& v) {
  std::ostringstream os;
  if (v.inscribed) {
    const auto& w = *v.witness;
    os << "witness v0=" << to_string(w.v0) << " basis";
    for (const auto& e : w.basis) os << ' ' << to_string(e);
  } else {
    std::map<std::string, int> counts;
    for (const auto& r : v.refutation) ++counts[to_string(r.kind)];
    os << "no vertex is a witness (" << v.refutation.size() << " vertices:";
    for (const auto& [k, c] : counts) os << ' ' << k << '=' << c;
    os << ')';
  }
  return os.str();
}

InscribedVerdict run_criterion(const VarietyNode& n) {
  return inscribed_in_rectangle(builtin_polytope(*n.polytope).polytope);
}

// Leading number after the underscore ("II_23b" -> 23), or 0 when there is none.
int family_index(const std::string& id) {
  auto us = id.find('_');
  if (us == std::string::npos) return 0;
  int v = 0;
  for (std::size_t i = us + 1; i < id.size() && std::isdigit(static_cast<unsigned char>(id[i])); ++i) v = 10 * v + (id[i] - '0');
  return v;
}

const Fact* first_with(const KnowledgeBase& kb, const std::string& id, Status s) {
  for (const auto& f : kb.facts)
    if (f.node == id && f.status == s) return &f;
  return nullptr;
}

}  // namespace

KnowledgeBase parse_knowledge_base(std::istream& in, const std::string& source, LoadOptions opts) {
  Loader loader(source, opts);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    loader.record(no, t);
  }
  return loader.finish();
}

KnowledgeBase load_knowledge_base(const std::filesystem::path& path, LoadOptions opts) {
  std::ifstream in(path);
  if (!in) throw KnowledgeBaseError("cannot open knowledge base " + path.string());
  return parse_knowledge_base(in, path.string(), opts);
}

std::filesystem::path default_knowledge_base_path() { return data_directory() / "fano3.kb"; }

KnowledgeBase load_knowledge_base(LoadOptions opts) { return load_knowledge_base(default_knowledge_base_path(), opts); }

void compute_toric_facts(KnowledgeBase& kb) {
  for (const auto& n : kb.nodes) {
    if (!n.toric) continue;
    bool have = std::any_of(kb.facts.begin(), kb.facts.end(),
                            [&](const Fact& f) { return f.node == n.id && f.kind == ProvenanceKind::Computed; });
    if (have) continue;
    auto verdict = run_criterion(n);
    Fact f;
    f.id = kb.facts.size();
    f.node = n.id;
    f.status = verdict.inscribed ? Status::Additive : Status::NotAdditive;
    f.kind = ProvenanceKind::Computed;
    f.evidence = summarize(verdict);
    kb.facts.push_back(std::move(f));
  }
}

std::size_t propagate(KnowledgeBase& kb) {
  std::size_t before = kb.facts.size();
  compute_toric_facts(kb);

  std::set<std::pair<std::string, std::size_t>> fired;
  for (const auto& f : kb.facts)
    if (f.kind == ProvenanceKind::Derived) fired.insert({f.rule, f.edge});

  auto add = [&](const std::string& node, Status s, const std::string& rule, std::size_t edge,
                 std::vector<std::size_t> premises) {
    Fact f;
    f.id = kb.facts.size();
    f.node = node;
    f.status = s;
    f.kind = ProvenanceKind::Derived;
    f.rule = rule;
    f.edge = edge;
    f.premises = std::move(premises);
    kb.facts.push_back(std::move(f));
    fired.insert({rule, edge});
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < kb.edges.size(); ++e) {
      const auto edge = kb.edges[e];  // copy: kb.facts grows below, edges do not
      if (edge.kind == EdgeKind::BlowDown) {
        const auto& y = edge.targets[0];
        if (!fired.count({"R1", e})) {
          if (const Fact* p = first_with(kb, edge.source, Status::Additive)) {
            add(y, Status::Additive, "R1", e, {p->id});
            changed = true;
          }
        }
        if (!fired.count({"R2", e})) {
          if (const Fact* p = first_with(kb, y, Status::NotAdditive)) {
            add(edge.source, Status::NotAdditive, "R2", e, {p->id});
            changed = true;
          }
        }
      } else if (!fired.count({"R3", e})) {
        const Fact* p = first_with(kb, edge.targets[0], Status::Additive);
        const Fact* q = first_with(kb, edge.targets[1], Status::Additive);
        if (p && q) {
          add(edge.source, Status::Additive, "R3", e, {p->id, q->id});
          changed = true;
        }
      }
    }
  }
  return kb.facts.size() - before;
}

bool replay(const KnowledgeBase& kb, const Fact& f) {
  if (f.kind != ProvenanceKind::Derived) return true;
  if (f.edge >= kb.edges.size()) return false;
  const auto& edge = kb.edges[f.edge];
  for (auto p : f.premises)
    if (p >= f.id || p >= kb.facts.size()) return false;
  auto premise = [&](std::size_t i) -> const Fact& { return kb.facts[f.premises[i]]; };
  if (f.rule == "R1") {
    return edge.kind == EdgeKind::BlowDown && f.premises.size() == 1 && premise(0).node == edge.source &&
           premise(0).status == Status::Additive && f.node == edge.targets[0] && f.status == Status::Additive;
  }
  if (f.rule == "R2") {
    return edge.kind == EdgeKind::BlowDown && f.premises.size() == 1 && premise(0).node == edge.targets[0] &&
           premise(0).status == Status::NotAdditive && f.node == edge.source && f.status == Status::NotAdditive;
  }
  if (f.rule == "R3") {
    return edge.kind == EdgeKind::Product && f.premises.size() == 2 && premise(0).node == edge.targets[0] &&
           premise(1).node == edge.targets[1] && premise(0).status == Status::Additive &&
           premise(1).status == Status::Additive && f.node == edge.source && f.status == Status::Additive;
  }
  return false;
}

std::string derivation(const KnowledgeBase& kb, const Fact& f) {
  switch (f.kind) {
    case ProvenanceKind::Computed: return "Computed(" + f.node + ")";
    case ProvenanceKind::Cited: return "Cited(" + f.node + ")";
    case ProvenanceKind::Derived: break;
  }
  std::string out = f.node + " <= " + f.rule + " <= ";
  if (f.premises.size() == 1) return out + derivation(kb, kb.facts[f.premises[0]]);
  out += "(";
  for (std::size_t i = 0; i < f.premises.size(); ++i) {
    if (i) out += ", ";
    out += derivation(kb, kb.facts[f.premises[i]]);
  }
  return out + ")";
}

ConsistencyReport consistency(const KnowledgeBase& kb) {
  ConsistencyReport r;
  auto problem = [&](std::string s) {
    r.ok = false;
    r.problems.push_back(std::move(s));
  };
  for (const auto& n : kb.nodes) {
    const Fact* a = first_with(kb, n.id, Status::Additive);
    const Fact* b = first_with(kb, n.id, Status::NotAdditive);
    if (a && b) problem("contradiction on " + n.id + ": " + derivation(kb, *a) + " vs " + derivation(kb, *b));
  }
  for (const auto& f : kb.facts) {
    if (f.id >= kb.facts.size() || &kb.facts[f.id] != &f) problem("fact id mismatch at " + f.node);
    if (!kb.find(f.node)) problem("fact on unknown node " + f.node);
    if (f.kind == ProvenanceKind::Computed) {
      const auto* n = kb.find(f.node);
      if (!n || !n->toric) {
        problem("computed fact on non-toric node " + f.node);
        continue;
      }
      auto v = run_criterion(*n);
      if ((v.inscribed ? Status::Additive : Status::NotAdditive) != f.status)
        problem("computed fact on " + f.node + " disagrees with the criterion");
    } else if (f.kind == ProvenanceKind::Derived && !replay(kb, f)) {
      problem("derived fact " + std::to_string(f.id) + " on " + f.node + " does not replay");
    }
  }
  return r;
}

bool node_order(const VarietyNode& a, const VarietyNode& b) {
  if (a.picard != b.picard) return a.picard < b.picard;
  int ia = family_index(a.id), ib = family_index(b.id);
  if (ia != ib) return ia < ib;
  return a.order < b.order;
}

MainTheoremReport main_theorem_report(const KnowledgeBase& kb, const std::vector<std::string>& expected, int dim) {
  MainTheoremReport r;
  std::vector<const VarietyNode*> nodes;
  for (const auto& n : kb.nodes)
    if (n.dim == dim) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(), [](const VarietyNode* a, const VarietyNode* b) { return node_order(*a, *b); });
  std::set<std::string> additive;
  for (const auto* n : nodes) {
    auto facts = kb.facts_for(n->id);
    if (facts.empty()) {
      r.unknown.push_back(n->id);
      continue;
    }
    ReportEntry e{n->id, n->picard, {}, std::nullopt};
    for (const auto* f : facts) {
      if (f->status != Status::Additive) continue;
      e.facts.push_back(f->id);
      if (f->note && !e.note) e.note = f->note;
    }
    if (e.facts.empty()) continue;
    additive.insert(n->id);
    r.additive.push_back(std::move(e));
  }
  std::set<std::string> want(expected.begin(), expected.end());
  for (const auto& id : expected)
    if (!additive.count(id)) r.missing.push_back(id);
  for (const auto& e : r.additive)
    if (!want.count(e.id)) r.unexpected.push_back(e.id);
  return r;
}

const std::vector<std::string>& expected_additive_threefolds() {
  static const std::vector<std::string> list = {"P3",     "Q3",     "II_28",  "II_30",  "II_31", "II_33", "II_34",
                                                "II_35",  "II_36",  "III_23", "III_26", "III_27", "III_28", "III_29",
                                                "III_30", "III_31", "IV_10",  "IV_11",  "IV_12"};
  return list;
}

const std::vector<std::string>& expected_additive_toric_threefolds() {
  static const std::vector<std::string> list = {"P3",     "II_33",  "II_34",  "II_35", "II_36", "III_26", "III_27",
                                                "III_28", "III_29", "III_30", "III_31", "IV_10", "IV_11", "IV_12"};
  return list;
}

}  // namespace fanoscope

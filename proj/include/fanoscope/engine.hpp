#pragma once

// Fact graph over Fano families. Toric nodes get their status from the polytope criterion, the
// rest from cited axioms, and three descent rules close the graph:
//   R1  Additive(X), X -> Y blow-down      =>  Additive(Y)
//   R2  NotAdditive(Y), X -> Y blow-down   =>  NotAdditive(X)
//   R3  Additive(Y), Additive(Z), X = YxZ  =>  Additive(X)

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanoscope {

class KnowledgeBaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Status { Additive, NotAdditive };
enum class ProvenanceKind { Computed, Cited, Derived };

std::string to_string(Status s);
std::string to_string(ProvenanceKind k);

struct VarietyNode {
  std::string id;
  int picard = 0;
  int dim = 3;
  bool toric = false;
  bool primitive = false;
  std::optional<std::string> polytope;  // built-in polytope name
  std::string description;
  std::size_t order = 0;  // position in the knowledge base file
};

enum class EdgeKind { BlowDown, Product };

struct LineageEdge {
  EdgeKind kind = EdgeKind::BlowDown;
  std::string source;                // X
  std::vector<std::string> targets;  // Y for a blow-down, Y and Z for a product X = Y x Z
  std::string center;
  int components = 1;                // irreducible components of the blow-up centre
};

struct Fact {
  std::size_t id = 0;
  std::string node;
  Status status = Status::Additive;
  ProvenanceKind kind = ProvenanceKind::Cited;
  std::string cite;                  // Cited: literature reference
  std::string quote;                 // Cited: short statement anchor
  std::string evidence;              // Computed: witness or refutation summary
  std::string rule;                  // Derived: R1, R2 or R3
  std::size_t edge = 0;              // Derived: index of the edge used
  std::vector<std::size_t> premises; // Derived: fact ids
  std::optional<std::string> note;
};

struct KnowledgeBase {
  std::vector<VarietyNode> nodes;
  std::vector<LineageEdge> edges;
  std::vector<Fact> facts;

  const VarietyNode* find(const std::string& id) const;
  std::vector<const Fact*> facts_for(const std::string& id) const;
  std::optional<Status> status(const std::string& id) const;  // first fact, if any
};

struct LoadOptions {
  bool toric_only = false;  // drop every cited axiom
};

/// Parses the text format; dangling references, toric nodes without a known polytope, axioms on
/// toric nodes and Picard-number mismatches along edges are load errors.
KnowledgeBase parse_knowledge_base(std::istream& in, const std::string& source, LoadOptions opts = {});
KnowledgeBase load_knowledge_base(const std::filesystem::path& path, LoadOptions opts = {});

/// The shipped knowledge base in the data directory.
KnowledgeBase load_knowledge_base(LoadOptions opts = {});
std::filesystem::path default_knowledge_base_path();

/// Runs the polytope criterion on every toric node that has no computed fact yet.
void compute_toric_facts(KnowledgeBase& kb);

/// Adds computed facts if missing, then applies R1, R2, R3 until nothing changes. Iteration order
/// is edge order then rule order, so the result is deterministic. Returns the number of facts
/// added.
std::size_t propagate(KnowledgeBase& kb);

/// Re-derives a derived fact from its premises and edge; true for non-derived facts.
bool replay(const KnowledgeBase& kb, const Fact& f);

struct ConsistencyReport {
  bool ok = true;
  std::vector<std::string> problems;
};

/// No node carries both statuses, computed facts agree with a fresh run of the criterion, and
/// every derived fact replays.
ConsistencyReport consistency(const KnowledgeBase& kb);

struct ReportEntry {
  std::string id;
  int picard = 0;
  std::vector<std::size_t> facts;  // all Additive facts for the node
  std::optional<std::string> note;
};

struct MainTheoremReport {
  std::vector<ReportEntry> additive;   // ordered by (Picard number, family index)
  std::vector<std::string> unknown;    // nodes with no status
  std::vector<std::string> missing;    // expected but not additive
  std::vector<std::string> unexpected; // additive but not expected
  bool matches() const { return missing.empty() && unexpected.empty(); }
};

/// Additive nodes of the given dimension, diffed against `expected`.
MainTheoremReport main_theorem_report(const KnowledgeBase& kb, const std::vector<std::string>& expected, int dim = 3);

/// The 19 additive families, and the 14 toric ones among them.
const std::vector<std::string>& expected_additive_threefolds();
const std::vector<std::string>& expected_additive_toric_threefolds();

/// Sort key of a node id: Picard number, then family index ("P3" before "Q3").
bool node_order(const VarietyNode& a, const VarietyNode& b);

/// "II_33 <= R1 <= Computed(IV_12)" style rendering of one fact.
std::string derivation(const KnowledgeBase& kb, const Fact& f);

}  // namespace fanoscope

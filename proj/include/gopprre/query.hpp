#pragma once

// Conjunctive basic-graph-pattern matching over a TripleSet, and the two
// verification suites built on it: completeness (membership, structure and
// property facts) and logic (connections and their direction).

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gopprre/core.hpp"
#include "gopprre/kg.hpp"

namespace gopprre::query {

using kg::Term;
using kg::TripleSet;

struct Variable {
  std::string name;  // without the leading '?'
  friend bool operator==(const Variable&, const Variable&) = default;
};

using Slot = std::variant<Term, Variable>;

struct TriplePattern {
  Slot subject;
  Slot predicate;
  Slot object;
};

struct Pattern {
  std::vector<TriplePattern> triples;
  /// Projection. Empty selects every variable in order of first appearance.
  std::vector<std::string> select;
};

/// Parses `?name`, `<iri>`, `prefix:local` (se, rdf, rdfs, owl, xsd) and
/// `"literal"` / `"literal"^^<iri>` slots, e.g.
/// `?g se:graphIncludingObject ?o . ?o rdf:type ?t`.
/// Throws Error(MalformedPattern).
Pattern parse_pattern(std::string_view text, const kg::Vocabulary& vocab = kg::Vocabulary());

struct BindingSet {
  std::vector<std::string> variables;
  /// Sorted by the N-Triples text of each row, duplicate free.
  std::vector<std::vector<Term>> rows;

  friend bool operator==(const BindingSet&, const BindingSet&) = default;
};

/// Dictionary-encoded store with SPO, POS and OSP permutations. Immutable
/// after construction, so concurrent reads are safe.
class TripleStore {
 public:
  using TermId = std::uint32_t;
  struct Row {
    TermId s, p, o;
  };
  static constexpr TermId kNoTerm = ~TermId{0};

  explicit TripleStore(const TripleSet& ts);

  std::size_t size() const noexcept { return spo_.size(); }
  const Term& term(TermId id) const { return terms_[id]; }
  /// kNoTerm when the term does not occur in the store.
  TermId lookup(const Term& t) const;

  /// Rows matching the bound positions (kNoTerm = unbound). The returned
  /// span covers a contiguous index range; when only subject and object are
  /// bound the OSP range is returned and the caller filters nothing else.
  std::span<const Row> scan(TermId s, TermId p, TermId o) const;

 private:
  std::vector<Term> terms_;
  std::unordered_map<std::string, TermId> ids_;
  std::vector<Row> spo_, pos_, osp_;
};

/// OpenMP-parallel evaluation: patterns are reordered by estimated
/// selectivity and the candidates of the first pattern are split across
/// threads. Throws Error(MalformedPattern).
BindingSet match(const TripleStore& store, const Pattern& pattern);
BindingSet match(const TripleSet& ts, const Pattern& pattern);

/// Serial reference: left-to-right nested index join, no reordering.
/// Produces exactly the same BindingSet as match().
BindingSet match_serial(const TripleStore& store, const Pattern& pattern);

/// Validates a pattern; throws Error(MalformedPattern).
void check_pattern(const Pattern& pattern);

// ---------------------------------------------------------------------------
// Reports. Facts carry IRIs (and literal N-Triples text for values).

enum class MemberKind { Object, Relationship };
enum class PartKind { Point, Role };

struct MembershipFact {
  std::string graph, member;
  MemberKind kind;
  friend auto operator<=>(const MembershipFact&, const MembershipFact&) = default;
};

struct StructureFact {
  std::string owner, part;
  PartKind kind;
  friend auto operator<=>(const StructureFact&, const StructureFact&) = default;
};

struct PropertyFact {
  std::string owner, property;
  friend auto operator<=>(const PropertyFact&, const PropertyFact&) = default;
};

struct ValueFact {
  std::string property, value;  // value in N-Triples form
  friend auto operator<=>(const ValueFact&, const ValueFact&) = default;
};

struct CompletenessReport {
  std::set<MembershipFact> graph_members;
  std::set<StructureFact> structure_links;
  std::set<PropertyFact> property_links;
  std::set<ValueFact> property_values;

  friend bool operator==(const CompletenessReport&, const CompletenessReport&) = default;
};

struct ConnectionFact {
  std::string relationship, input, output;
  friend auto operator<=>(const ConnectionFact&, const ConnectionFact&) = default;
};

struct DirectionFact {
  std::string graph, relationship, input;
  friend auto operator<=>(const DirectionFact&, const DirectionFact&) = default;
};

/// Which object (and optionally which of its points) a role binds to.
struct RoleBindingFact {
  std::string relationship, role, object;
  std::optional<std::string> point;
  friend auto operator<=>(const RoleBindingFact&, const RoleBindingFact&) = default;
};

struct LogicReport {
  std::set<ConnectionFact> connections;
  std::set<DirectionFact> directions;
  std::set<RoleBindingFact> role_bindings;

  friend bool operator==(const LogicReport&, const LogicReport&) = default;
};

CompletenessReport completeness_report(const TripleStore& store, const kg::Vocabulary& vocab = kg::Vocabulary());
CompletenessReport completeness_report(const TripleSet& ts, const kg::Vocabulary& vocab = kg::Vocabulary());
LogicReport logic_report(const TripleStore& store, const kg::Vocabulary& vocab = kg::Vocabulary());
LogicReport logic_report(const TripleSet& ts, const kg::Vocabulary& vocab = kg::Vocabulary());

/// The patterns behind the reports, exposed for inspection and the CLI.
Pattern completeness_pattern(MemberKind kind, const kg::Vocabulary& vocab);
Pattern structure_pattern(PartKind kind, const kg::Vocabulary& vocab);
Pattern property_pattern(const kg::Vocabulary& vocab);
Pattern connection_pattern(const kg::Vocabulary& vocab);

/// What the reports must contain for `m`, computed from the model itself.
CompletenessReport expected_completeness(const Model& m, const kg::Vocabulary& vocab = kg::Vocabulary());
LogicReport expected_logic(const Model& m, const kg::Vocabulary& vocab = kg::Vocabulary());

struct DiffEntry {
  enum class Kind { Missing, Unexpected, DirectionReversed };
  std::string section;
  Kind kind;
  std::string fact;  // tab-separated
  friend auto operator<=>(const DiffEntry&, const DiffEntry&) = default;
};

struct VerificationDiff {
  CompletenessReport completeness;
  LogicReport logic;
  std::vector<DiffEntry> entries;
  bool empty() const noexcept { return entries.empty(); }
};

/// Runs both reports over `ts` and diffs them against the model. Throws
/// Error(InvalidInput) if the model does not validate against `mm`.
VerificationDiff verify(const Model& m, const MetaModel& mm, const TripleSet& ts,
                        const kg::Vocabulary& vocab = kg::Vocabulary());

std::string_view to_string(DiffEntry::Kind kind);

/// Line-oriented form: one `section<TAB>field...` row per fact, sorted.
std::string to_tsv(const CompletenessReport& r);
std::string to_tsv(const LogicReport& r);
std::string to_tsv(const VerificationDiff& d);
/// Canonical JSON text (sorted keys, two-space indent, trailing newline).
std::string to_json(const CompletenessReport& r);
std::string to_json(const LogicReport& r);
std::string to_json(const VerificationDiff& d);

}  // namespace gopprre::query

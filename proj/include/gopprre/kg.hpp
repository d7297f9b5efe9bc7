#pragma once

// Knowledge-graph export: meta-models become classes, models become
// individuals linked by a fixed set of object, data and annotation
// properties under the `se` namespace.

#include <compare>
#include <set>
#include <string>
#include <string_view>

#include "gopprre/core.hpp"
#include "gopprre/error.hpp"

namespace gopprre::kg {

namespace ns {
inline constexpr std::string_view kSe = "http://www.zkhoneycomb.com/formats/metagInOwl#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

/// True for `scheme:rest` with no whitespace, controls or <>"{}|^`\ characters.
bool is_absolute_iri(std::string_view iri);

/// An IRI or a literal. Literals carry either no datatype (plain) or one of
/// xsd:string/integer/decimal/boolean. Terms order by their N-Triples form.
class Term {
 public:
  enum class Kind { Iri, Literal };

  /// Throws Error(InvalidInput) unless `iri` is absolute.
  static Term iri(std::string iri);
  /// Throws Error(InvalidInput) for an unsupported datatype.
  static Term literal(std::string lexical, std::string datatype_iri = {});
  static Term typed(const Literal& value);

  Kind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == Kind::Iri; }
  bool is_literal() const noexcept { return kind_ == Kind::Literal; }
  /// IRI text or literal lexical form.
  const std::string& value() const noexcept { return value_; }
  /// Empty for IRIs and plain literals.
  const std::string& datatype() const noexcept { return datatype_; }
  /// Canonical N-Triples spelling.
  const std::string& ntriples() const noexcept { return text_; }

  friend bool operator==(const Term& a, const Term& b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) { return a.text_ <=> b.text_; }

 private:
  Term(Kind kind, std::string value, std::string datatype);

  Kind kind_;
  std::string value_;
  std::string datatype_;
  std::string text_;
};

struct Triple {
  /// Throws Error(InvalidInput) unless subject and predicate are IRIs.
  Triple(Term s, Term p, Term o);

  Term subject;
  Term predicate;
  Term object;

  std::string ntriples() const;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
};

/// Duplicate-free, ordered by (subject, predicate, object) N-Triples text,
/// which is also the order of serialized lines.
using TripleSet = std::set<Triple>;

enum class Predicate {
  GraphIncludingObject,
  GraphIncludingRelationship,
  LinkObjectAndPoint,
  LinkRelationshipAndRole,
  HasProperty,
  GraphIncludingConnector,
  LinkFromRelationship,
  LinkToObject,
  Connect,
  RoleBindingObject,
  RoleBindingPoint,
  // annotation property
  IconPath,
  // data properties
  HasValue,
  ModelIconPath,
};

enum class PropertyKind { Object, Data, Annotation };

inline constexpr Predicate kAllPredicates[] = {
    Predicate::GraphIncludingObject, Predicate::GraphIncludingRelationship,
    Predicate::LinkObjectAndPoint,   Predicate::LinkRelationshipAndRole,
    Predicate::HasProperty,          Predicate::GraphIncludingConnector,
    Predicate::LinkFromRelationship, Predicate::LinkToObject,
    Predicate::Connect,              Predicate::RoleBindingObject,
    Predicate::RoleBindingPoint,     Predicate::IconPath,
    Predicate::HasValue,             Predicate::ModelIconPath};

std::string_view local_name(Predicate p);
PropertyKind property_kind(Predicate p);

/// IRI minting for one export. The base namespace defaults to the `se`
/// namespace and may be overridden.
class Vocabulary {
 public:
  explicit Vocabulary(std::string base = std::string(ns::kSe));

  const std::string& base() const noexcept { return base_; }

  Term predicate(Predicate p) const;
  Term kind_class(MetaKind kind) const;
  Term type_class(const TypeName& type) const;
  Term individual(const TypeName& type, const InstanceId& id) const;
  Term connector_rule(const InstanceId& connector) const;
  Term binding(const ConnectorBinding& binding) const;

  static Term rdf_type();
  static Term rdfs_subclass_of();
  static Term owl_class();
  static Term owl_object_property();
  static Term owl_datatype_property();
  static Term owl_annotation_property();
  static std::string xsd(Datatype type);

  /// True for the fixed predicates plus rdf:type and rdfs:subClassOf.
  bool is_closed_predicate(const Term& predicate) const;

 private:
  std::string base_;
};

/// Class and property declarations, one subclass triple per declared type,
/// one iconPath annotation per icon, four triples per connector (type,
/// relationship, object type, role type) plus roleBindingPoint for
/// point-targeted connectors. Throws Error(InvalidInput) for an invalid
/// meta-model.
TripleSet export_metamodel(const MetaModel& mm, const Vocabulary& vocab = Vocabulary());

/// Individuals and their links for one model; meta-model triples are not
/// included. Throws Error(InvalidInput) unless validate_model(mm, m).ok().
TripleSet export_model(const MetaModel& mm, const Model& m, const Vocabulary& vocab = Vocabulary());

/// One line per triple in set order, LF-terminated. Empty set -> "".
std::string serialize_ntriples(const TripleSet& ts);
/// Prefix block, then one block per subject with predicates in set order.
std::string serialize_turtle(const TripleSet& ts, const Vocabulary& vocab = Vocabulary());

/// Accepts any line order, blank lines, `#` comments and extra whitespace.
/// Throws Error(SyntaxError) with the 1-based line number on bad input.
TripleSet parse_ntriples(std::string_view text);

}  // namespace gopprre::kg

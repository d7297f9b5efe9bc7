#include <algorithm>

#include "gopprre/kg.hpp"

namespace gopprre::kg {
namespace {

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size());
  for (char c : lexical) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

bool is_supported_datatype(std::string_view iri) {
  if (iri.empty()) return true;
  for (Datatype d : {Datatype::String, Datatype::Integer, Datatype::Decimal, Datatype::Boolean}) {
    if (iri == Vocabulary::xsd(d)) return true;
  }
  return false;
}

}  // namespace

bool is_absolute_iri(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  auto scheme_char = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '+' || c == '-' || c == '.';
  };
  const char first = iri.front();
  if (!((first >= 'a' && first <= 'z') || (first >= 'A' && first <= 'Z'))) return false;
  if (!std::all_of(iri.begin(), iri.begin() + colon, scheme_char)) return false;
  return std::none_of(iri.begin(), iri.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
           c == '^' || c == '`' || c == '\\';
  });
}

Term::Term(Kind kind, std::string value, std::string datatype)
    : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)) {
  if (kind_ == Kind::Iri) {
    text_ = "<" + value_ + ">";
  } else {
    text_ = "\"" + escape_literal(value_) + "\"";
    if (!datatype_.empty()) text_ += "^^<" + datatype_ + ">";
  }
}

Term Term::iri(std::string iri) {
  if (!is_absolute_iri(iri)) {
    throw Error(ErrorCode::InvalidInput, "", "not an absolute IRI: '" + iri + "'");
  }
  return Term(Kind::Iri, std::move(iri), {});
}

Term Term::literal(std::string lexical, std::string datatype_iri) {
  if (!is_supported_datatype(datatype_iri)) {
    throw Error(ErrorCode::InvalidInput, "", "unsupported literal datatype <" + datatype_iri + ">");
  }
  return Term(Kind::Literal, std::move(lexical), std::move(datatype_iri));
}

Term Term::typed(const Literal& value) {
  return Term(Kind::Literal, value.lexical, Vocabulary::xsd(value.datatype));
}

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (!subject.is_iri() || !predicate.is_iri()) {
    throw Error(ErrorCode::InvalidInput, "", "triple subject and predicate must be IRIs");
  }
}

std::string Triple::ntriples() const {
  return subject.ntriples() + " " + predicate.ntriples() + " " + object.ntriples() + " .";
}

std::string_view local_name(Predicate p) {
  switch (p) {
    case Predicate::GraphIncludingObject: return "graphIncludingObject";
    case Predicate::GraphIncludingRelationship: return "graphIncludingRelationship";
    case Predicate::LinkObjectAndPoint: return "linkObjectAndPoint";
    case Predicate::LinkRelationshipAndRole: return "linkRelationshipAndRole";
    case Predicate::HasProperty: return "hasProperty";
    case Predicate::GraphIncludingConnector: return "graphIncludingConnector";
    case Predicate::LinkFromRelationship: return "linkFromRelationship";
    case Predicate::LinkToObject: return "linkToObject";
    case Predicate::Connect: return "connect";
    case Predicate::RoleBindingObject: return "roleBindingObject";
    case Predicate::RoleBindingPoint: return "roleBindingPoint";
    case Predicate::IconPath: return "iconPath";
    case Predicate::HasValue: return "hasValue";
    case Predicate::ModelIconPath: return "modelIconPath";
  }
  return "";
}

PropertyKind property_kind(Predicate p) {
  switch (p) {
    case Predicate::IconPath: return PropertyKind::Annotation;
    case Predicate::HasValue:
    case Predicate::ModelIconPath: return PropertyKind::Data;
    default: return PropertyKind::Object;
  }
}

Vocabulary::Vocabulary(std::string base) : base_(std::move(base)) {
  // Minted IRIs are base + local name, so the base itself must be usable as
  // an IRI prefix.
  if (!is_absolute_iri(base_)) {
    throw Error(ErrorCode::InvalidInput, "", "base namespace is not an absolute IRI: '" + base_ + "'");
  }
}

Term Vocabulary::predicate(Predicate p) const { return Term::iri(base_ + std::string(local_name(p))); }

Term Vocabulary::kind_class(MetaKind kind) const { return Term::iri(base_ + std::string(class_name(kind))); }

Term Vocabulary::type_class(const TypeName& type) const { return Term::iri(base_ + type.str()); }

Term Vocabulary::individual(const TypeName& type, const InstanceId& id) const {
  return Term::iri(base_ + individual_local_name(type, id));
}

Term Vocabulary::connector_rule(const InstanceId& connector) const {
  return Term::iri(base_ + connector_rule_local_name(connector));
}

Term Vocabulary::binding(const ConnectorBinding& binding) const {
  return Term::iri(base_ + binding_local_name(binding));
}

Term Vocabulary::rdf_type() { return Term::iri(std::string(ns::kRdf) + "type"); }
Term Vocabulary::rdfs_subclass_of() { return Term::iri(std::string(ns::kRdfs) + "subClassOf"); }
Term Vocabulary::owl_class() { return Term::iri(std::string(ns::kOwl) + "Class"); }
Term Vocabulary::owl_object_property() { return Term::iri(std::string(ns::kOwl) + "ObjectProperty"); }
Term Vocabulary::owl_datatype_property() { return Term::iri(std::string(ns::kOwl) + "DatatypeProperty"); }
Term Vocabulary::owl_annotation_property() {
  return Term::iri(std::string(ns::kOwl) + "AnnotationProperty");
}

std::string Vocabulary::xsd(Datatype type) { return std::string(ns::kXsd) + std::string(to_string(type)); }

bool Vocabulary::is_closed_predicate(const Term& predicate) const {
  if (predicate == rdf_type() || predicate == rdfs_subclass_of()) return true;
  return std::any_of(std::begin(kAllPredicates), std::end(kAllPredicates),
                     [&](Predicate p) { return this->predicate(p) == predicate; });
}

}  // namespace gopprre::kg

#include <algorithm>
#include <cctype>

#include "gopprre/core.hpp"
#include "gopprre/error.hpp"

namespace gopprre {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
    case ErrorCode::SemanticError: return "SEMANTIC_ERROR";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::UnknownRelationship: return "UNKNOWN_RELATIONSHIP";
    case ErrorCode::DanglingRelationship: return "DANGLING_RELATIONSHIP";
    case ErrorCode::MalformedPattern: return "MALFORMED_PATTERN";
    case ErrorCode::UnknownPack: return "UNKNOWN_PACK";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN";
}

namespace {

std::string format_error(ErrorCode code, const std::string& detail, const std::string& message,
                         const std::optional<SourcePosition>& position) {
  std::string out(to_string(code));
  if (!detail.empty() && detail != out) out += " " + detail;
  if (position) {
    out += " at line " + std::to_string(position->line) + ", column " +
           std::to_string(position->column);
  }
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, const std::string& message,
             std::optional<SourcePosition> position)
    : std::runtime_error(format_error(code, detail, message, position)),
      code_(code),
      detail_(std::move(detail)),
      position_(position) {}

std::string_view to_string(MetaKind kind) {
  switch (kind) {
    case MetaKind::Graph: return "graph";
    case MetaKind::Object: return "object";
    case MetaKind::Point: return "point";
    case MetaKind::Relationship: return "relationship";
    case MetaKind::Role: return "role";
    case MetaKind::Property: return "property";
    case MetaKind::Connector: return "connector";
  }
  return "";
}

std::string_view class_name(MetaKind kind) {
  switch (kind) {
    case MetaKind::Graph: return "Graph";
    case MetaKind::Object: return "Object";
    case MetaKind::Point: return "Point";
    case MetaKind::Relationship: return "Relationship";
    case MetaKind::Role: return "Role";
    case MetaKind::Property: return "Property";
    case MetaKind::Connector: return "Connector";
  }
  return "";
}

std::optional<MetaKind> meta_kind_from_string(std::string_view text) {
  for (MetaKind k : kAllMetaKinds) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(MetaLevel level) {
  switch (level) {
    case MetaLevel::MetaMetaModel: return "M0";
    case MetaLevel::MetaModel: return "M1";
    case MetaLevel::Model: return "M2";
    case MetaLevel::RealWorld: return "M3";
  }
  return "";
}

std::string_view to_string(Datatype type) {
  switch (type) {
    case Datatype::String: return "string";
    case Datatype::Integer: return "integer";
    case Datatype::Decimal: return "decimal";
    case Datatype::Boolean: return "boolean";
  }
  return "";
}

std::optional<Datatype> datatype_from_string(std::string_view text) {
  for (Datatype d : {Datatype::String, Datatype::Integer, Datatype::Decimal, Datatype::Boolean}) {
    if (to_string(d) == text) return d;
  }
  return std::nullopt;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::string_view strip_sign(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  return s;
}

}  // namespace

bool is_valid_lexical(Datatype type, std::string_view lexical) {
  switch (type) {
    case Datatype::String:
      return true;
    case Datatype::Integer: {
      auto digits = strip_sign(lexical);
      return !digits.empty() && std::all_of(digits.begin(), digits.end(), is_digit);
    }
    case Datatype::Decimal: {
      auto body = strip_sign(lexical);
      auto dot = body.find('.');
      auto whole = body.substr(0, dot);
      auto frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
      if (whole.empty() && frac.empty()) return false;
      return std::all_of(whole.begin(), whole.end(), is_digit) &&
             std::all_of(frac.begin(), frac.end(), is_digit);
    }
    case Datatype::Boolean:
      return lexical == "true" || lexical == "false" || lexical == "1" || lexical == "0";
  }
  return false;
}

bool is_valid_type_name(std::string_view name) {
  if (name.empty() || !is_alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return is_alpha(c) || is_digit(c) || c == '_'; });
}

bool is_valid_instance_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return is_alpha(c) || is_digit(c) || c == '_';
  });
}

std::string_view to_string(Decomposition d) {
  return d == Decomposition::Decompose ? "decompose" : "explore";
}

std::optional<Decomposition> decomposition_from_string(std::string_view text) {
  if (text == "decompose") return Decomposition::Decompose;
  if (text == "explore") return Decomposition::Explore;
  return std::nullopt;
}

const std::set<std::string>& reserved_local_names() {
  static const std::set<std::string> names = [] {
    std::set<std::string> out;
    for (MetaKind k : kAllMetaKinds) out.emplace(class_name(k));
    for (const char* p :
         {"graphIncludingObject", "graphIncludingRelationship", "linkObjectAndPoint",
          "linkRelationshipAndRole", "hasProperty", "graphIncludingConnector",
          "linkFromRelationship", "linkToObject", "connect", "roleBindingObject",
          "roleBindingPoint", "iconPath", "hasValue", "modelIconPath"}) {
      out.emplace(p);
    }
    return out;
  }();
  return names;
}

std::string individual_local_name(const TypeName& type, const InstanceId& id) {
  return type.str() + "_" + id.str();
}

std::string connector_rule_local_name(const InstanceId& connector) {
  return "Connector_" + connector.str();
}

std::string binding_local_name(const ConnectorBinding& binding) {
  return binding.connector.str() + "_" + binding.role.str();
}

}  // namespace gopprre

#pragma once

// GOPPRRE data model: meta-model declarations (M1) and model instances (M2).

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gopprre {

enum class MetaKind { Graph, Object, Point, Relationship, Role, Property, Connector };

inline constexpr std::array<MetaKind, 7> kAllMetaKinds = {
    MetaKind::Graph, MetaKind::Object,   MetaKind::Point,    MetaKind::Relationship,
    MetaKind::Role,  MetaKind::Property, MetaKind::Connector};

/// Lower-case document spelling ("graph", "object", ...).
std::string_view to_string(MetaKind kind);
/// Capitalised class name used in exported IRIs ("Graph", "Object", ...).
std::string_view class_name(MetaKind kind);
std::optional<MetaKind> meta_kind_from_string(std::string_view text);

/// Modeling layers. Kinds live at M0, meta-models at M1, models at M2 and
/// the systems they describe at M3.
enum class MetaLevel { MetaMetaModel = 0, MetaModel = 1, Model = 2, RealWorld = 3 };

std::string_view to_string(MetaLevel level);

enum class Datatype { String, Integer, Decimal, Boolean };

std::string_view to_string(Datatype type);
std::optional<Datatype> datatype_from_string(std::string_view text);
/// True if `lexical` is a valid lexical form for `type` (XSD rules).
bool is_valid_lexical(Datatype type, std::string_view lexical);

template <class Tag>
class StrongName {
 public:
  StrongName() = default;
  StrongName(std::string value) : value_(std::move(value)) {}
  StrongName(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const StrongName&, const StrongName&) = default;
  friend bool operator==(const StrongName&, const StrongName&) = default;

 private:
  std::string value_;
};

using TypeName = StrongName<struct TypeNameTag>;
using InstanceId = StrongName<struct InstanceIdTag>;

/// `[A-Za-z][A-Za-z0-9_]*`
bool is_valid_type_name(std::string_view name);
/// `[A-Za-z0-9_]+`
bool is_valid_instance_id(std::string_view id);

// ---------------------------------------------------------------------------
// Meta-model (M1)

struct GraphTypeDef {
  std::optional<std::string> icon_path;
  friend bool operator==(const GraphTypeDef&, const GraphTypeDef&) = default;
};

enum class Decomposition { Decompose, Explore };

std::string_view to_string(Decomposition d);
std::optional<Decomposition> decomposition_from_string(std::string_view text);

/// Object -> Graph link. Both modes validate identically.
struct DecompositionLink {
  TypeName graph_type;
  Decomposition mode = Decomposition::Decompose;
  friend bool operator==(const DecompositionLink&, const DecompositionLink&) = default;
};

struct ObjectTypeDef {
  std::set<TypeName> point_types;
  std::optional<DecompositionLink> decomposes_to;
  std::optional<std::string> icon_path;
  friend bool operator==(const ObjectTypeDef&, const ObjectTypeDef&) = default;
};

struct PointTypeDef {
  std::optional<std::string> icon_path;
  friend bool operator==(const PointTypeDef&, const PointTypeDef&) = default;
};

/// A valid relationship type names exactly two distinct role types: the
/// first is the start role, the second the end role.
struct RelationshipTypeDef {
  std::vector<TypeName> role_types;
  std::optional<std::string> icon_path;

  const TypeName& start_role() const { return role_types.at(0); }
  const TypeName& end_role() const { return role_types.at(1); }
  friend bool operator==(const RelationshipTypeDef&, const RelationshipTypeDef&) = default;
};

struct RoleTypeDef {
  std::optional<std::string> icon_path;
  friend bool operator==(const RoleTypeDef&, const RoleTypeDef&) = default;
};

struct PropertyTypeDef {
  std::optional<std::string> icon_path;
  friend bool operator==(const PropertyTypeDef&, const PropertyTypeDef&) = default;
};

/// Licenses a Property type on a non-property owner type.
struct PropertySlot {
  MetaKind owner_kind = MetaKind::Object;
  TypeName owner_type;
  TypeName property_type;
  Datatype datatype = Datatype::String;

  friend auto operator<=>(const PropertySlot&, const PropertySlot&) = default;
  friend bool operator==(const PropertySlot&, const PropertySlot&) = default;
};

/// One side of a connection: relationship type, the role it uses on that
/// side, and the object type (optionally one of its point types) the role
/// may bind to.
struct Connector {
  TypeName relationship_type;
  TypeName role_type;
  TypeName object_type;
  std::optional<TypeName> point_type;

  friend auto operator<=>(const Connector&, const Connector&) = default;
  friend bool operator==(const Connector&, const Connector&) = default;
};

/// A connection rule: the ordered pair of connectors that may form the start
/// and end of one connection.
struct ConnectionRule {
  InstanceId start;
  InstanceId end;

  friend auto operator<=>(const ConnectionRule&, const ConnectionRule&) = default;
  friend bool operator==(const ConnectionRule&, const ConnectionRule&) = default;
};

struct MetaModel {
  static constexpr MetaLevel level = MetaLevel::MetaModel;

  std::string language_name;
  std::map<TypeName, GraphTypeDef> graph_types;
  std::map<TypeName, ObjectTypeDef> object_types;
  std::map<TypeName, PointTypeDef> point_types;
  std::map<TypeName, RelationshipTypeDef> relationship_types;
  std::map<TypeName, RoleTypeDef> role_types;
  std::map<TypeName, PropertyTypeDef> property_types;
  std::set<PropertySlot> property_slots;
  std::map<InstanceId, Connector> connectors;
  std::set<ConnectionRule> rules;
  /// Graph type -> object/relationship types it may contain. A graph type
  /// without an entry is unrestricted.
  std::map<TypeName, std::set<TypeName>> graph_membership;

  /// Kind under which `name` is declared, if any.
  std::optional<MetaKind> kind_of(const TypeName& name) const;
  bool declares(MetaKind kind, const TypeName& name) const;

  friend bool operator==(const MetaModel&, const MetaModel&) = default;
};

// ---------------------------------------------------------------------------
// Model (M2)

struct ObjectInstance {
  TypeName type;
  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

struct RelationshipInstance {
  TypeName type;
  friend bool operator==(const RelationshipInstance&, const RelationshipInstance&) = default;
};

struct PointInstance {
  TypeName type;
  InstanceId owner;  // object
  friend bool operator==(const PointInstance&, const PointInstance&) = default;
};

struct RoleInstance {
  TypeName type;
  InstanceId owner;  // relationship
  friend bool operator==(const RoleInstance&, const RoleInstance&) = default;
};

struct Literal {
  Datatype datatype = Datatype::String;
  std::string lexical;
  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct PropertyValue {
  TypeName type;
  InstanceId owner;  // any non-property instance, including the graph
  Literal value;
  friend bool operator==(const PropertyValue&, const PropertyValue&) = default;
};

struct ConnectorBinding {
  InstanceId connector;  // connector id in the meta-model
  InstanceId role;
  InstanceId object;
  std::optional<InstanceId> point;

  /// The point when bound, otherwise the object.
  const InstanceId& endpoint() const { return point ? *point : object; }
  friend auto operator<=>(const ConnectorBinding&, const ConnectorBinding&) = default;
  friend bool operator==(const ConnectorBinding&, const ConnectorBinding&) = default;
};

/// Link from `start` to `end` realised by one relationship instance (the key
/// of Model::connections).
struct Connection {
  ConnectorBinding start;
  ConnectorBinding end;
  friend bool operator==(const Connection&, const Connection&) = default;
};

struct Model {
  static constexpr MetaLevel level = MetaLevel::Model;

  InstanceId graph_id;
  TypeName graph_type;
  std::map<InstanceId, ObjectInstance> objects;
  std::map<InstanceId, RelationshipInstance> relationships;
  std::map<InstanceId, PointInstance> points;
  std::map<InstanceId, RoleInstance> roles;
  std::map<InstanceId, PropertyValue> properties;
  std::map<InstanceId, Connection> connections;  // keyed by relationship
  std::map<InstanceId, std::string> icon_overrides;

  /// Kind of the instance with this id (Graph for graph_id), if any.
  std::optional<MetaKind> kind_of(const InstanceId& id) const;
  /// Declared type of the instance with this id, if any.
  std::optional<TypeName> type_of(const InstanceId& id) const;

  friend bool operator==(const Model&, const Model&) = default;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string code;
  std::string message;
  std::vector<std::string> ids;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(std::string_view code) const;
  std::size_t count(std::string_view code) const;
};

ValidationReport validate_metamodel(const MetaModel& mm);

/// Assumes validate_metamodel(mm).ok(); a broken meta-model yields
/// unspecified (but non-crashing) results.
ValidationReport validate_model(const MetaModel& mm, const Model& m);

/// Ids of the connectors whose signature matches a binding. Used by the
/// validator; exposed for diagnostics.
std::vector<InstanceId> matching_connectors(const MetaModel& mm, const TypeName& relationship_type,
                                            const TypeName& role_type, const TypeName& object_type,
                                            const std::optional<TypeName>& point_type);

// ---------------------------------------------------------------------------
// Queries over the data model

struct Endpoint {
  InstanceId object;
  std::optional<InstanceId> point;

  const InstanceId& id() const { return point ? *point : object; }
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct ConnectionEndpoints {
  Endpoint input;
  Endpoint output;
  friend bool operator==(const ConnectionEndpoints&, const ConnectionEndpoints&) = default;
};

/// Throws Error(UnknownRelationship) or Error(DanglingRelationship).
ConnectionEndpoints connection_endpoints(const Model& m, const InstanceId& relationship);

/// Declaration counts per kind, in column order
/// Graph / Object / Point / Property / Relationship / Role.
struct CountSummary {
  std::size_t graph = 0;
  std::size_t object = 0;
  std::size_t point = 0;
  std::size_t property = 0;
  std::size_t relationship = 0;
  std::size_t role = 0;
  friend bool operator==(const CountSummary&, const CountSummary&) = default;
};

CountSummary count_summary(const MetaModel& mm);

/// rules = |mm.rules|, connectors = |mm.connectors|, shared_roles = number of
/// rule ends served by an already-counted connector. For a valid meta-model
/// connectors == 2 * rules - shared_roles.
struct ConnectorArithmetic {
  std::size_t rules = 0;
  std::size_t connectors = 0;
  std::size_t shared_roles = 0;
  friend bool operator==(const ConnectorArithmetic&, const ConnectorArithmetic&) = default;
};

ConnectorArithmetic connector_arithmetic(const MetaModel& mm);

// ---------------------------------------------------------------------------
// IRI local names. Kept here because validation must reject models whose
// minted names collide.

/// Local names of the kind classes and the fixed vocabulary predicates.
const std::set<std::string>& reserved_local_names();
/// `<type>_<id>` for individuals.
std::string individual_local_name(const TypeName& type, const InstanceId& id);
/// `Connector_<id>` for a meta-level connector.
std::string connector_rule_local_name(const InstanceId& connector);
/// `<connector>_<role>` for the instance-level connector of one binding.
std::string binding_local_name(const ConnectorBinding& binding);

}  // namespace gopprre

template <class Tag>
struct std::hash<gopprre::StrongName<Tag>> {
  std::size_t operator()(const gopprre::StrongName<Tag>& n) const noexcept {
    return std::hash<std::string>{}(n.str());
  }
};

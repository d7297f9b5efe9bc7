#include <algorithm>

#include "gopprre/core.hpp"
#include "gopprre/error.hpp"

namespace gopprre {

std::optional<MetaKind> MetaModel::kind_of(const TypeName& name) const {
  if (graph_types.contains(name)) return MetaKind::Graph;
  if (object_types.contains(name)) return MetaKind::Object;
  if (point_types.contains(name)) return MetaKind::Point;
  if (relationship_types.contains(name)) return MetaKind::Relationship;
  if (role_types.contains(name)) return MetaKind::Role;
  if (property_types.contains(name)) return MetaKind::Property;
  return std::nullopt;
}

bool MetaModel::declares(MetaKind kind, const TypeName& name) const {
  switch (kind) {
    case MetaKind::Graph: return graph_types.contains(name);
    case MetaKind::Object: return object_types.contains(name);
    case MetaKind::Point: return point_types.contains(name);
    case MetaKind::Relationship: return relationship_types.contains(name);
    case MetaKind::Role: return role_types.contains(name);
    case MetaKind::Property: return property_types.contains(name);
    case MetaKind::Connector: return false;
  }
  return false;
}

std::optional<MetaKind> Model::kind_of(const InstanceId& id) const {
  if (id == graph_id) return MetaKind::Graph;
  if (objects.contains(id)) return MetaKind::Object;
  if (relationships.contains(id)) return MetaKind::Relationship;
  if (points.contains(id)) return MetaKind::Point;
  if (roles.contains(id)) return MetaKind::Role;
  if (properties.contains(id)) return MetaKind::Property;
  return std::nullopt;
}

std::optional<TypeName> Model::type_of(const InstanceId& id) const {
  if (id == graph_id) return graph_type;
  if (auto it = objects.find(id); it != objects.end()) return it->second.type;
  if (auto it = relationships.find(id); it != relationships.end()) return it->second.type;
  if (auto it = points.find(id); it != points.end()) return it->second.type;
  if (auto it = roles.find(id); it != roles.end()) return it->second.type;
  if (auto it = properties.find(id); it != properties.end()) return it->second.type;
  return std::nullopt;
}

bool ValidationReport::has(std::string_view code) const { return count(code) > 0; }

std::size_t ValidationReport::count(std::string_view code) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; }));
}

ConnectionEndpoints connection_endpoints(const Model& m, const InstanceId& relationship) {
  if (!m.relationships.contains(relationship)) {
    throw Error(ErrorCode::UnknownRelationship, "", "no relationship '" + relationship.str() + "'");
  }
  auto it = m.connections.find(relationship);
  if (it == m.connections.end()) {
    throw Error(ErrorCode::DanglingRelationship, "",
                "relationship '" + relationship.str() + "' has no connection");
  }
  const Connection& c = it->second;
  return {Endpoint{c.start.object, c.start.point}, Endpoint{c.end.object, c.end.point}};
}

CountSummary count_summary(const MetaModel& mm) {
  return CountSummary{mm.graph_types.size(),    mm.object_types.size(),
                      mm.point_types.size(),    mm.property_types.size(),
                      mm.relationship_types.size(), mm.role_types.size()};
}

ConnectorArithmetic connector_arithmetic(const MetaModel& mm) {
  // Every rule has two ends; an end served by a connector that an earlier
  // end already used is a shared role.
  std::map<InstanceId, std::size_t> uses;
  for (const auto& rule : mm.rules) {
    ++uses[rule.start];
    ++uses[rule.end];
  }
  std::size_t shared = 0;
  for (const auto& [id, n] : uses) shared += n - 1;
  return ConnectorArithmetic{mm.rules.size(), mm.connectors.size(), shared};
}

}  // namespace gopprre

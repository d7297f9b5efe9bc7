#include <string>
#include <unordered_map>

#include "gopprre/core.hpp"

namespace gopprre {
namespace {

class Reporter {
 public:
  void add(std::string code, std::string message, std::vector<std::string> ids = {}) {
    report_.violations.push_back({std::move(code), std::move(message), std::move(ids)});
  }
  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

std::string q(const std::string& s) { return "'" + s + "'"; }

template <class Map>
void check_names(const Map& decls, MetaKind kind, Reporter& out) {
  for (const auto& [name, def] : decls) {
    if (!is_valid_type_name(name.str())) {
      out.add("BAD_NAME", std::string(to_string(kind)) + " type name " + q(name.str()) +
                              " does not match [A-Za-z][A-Za-z0-9_]*",
              {name.str()});
    }
    if (reserved_local_names().contains(name.str())) {
      out.add("RESERVED_NAME", "type name " + q(name.str()) + " is reserved by the vocabulary",
              {name.str()});
    }
  }
}

std::string signature(const TypeName& rel, const TypeName& role, const TypeName& obj,
                      const std::optional<TypeName>& point) {
  std::string s = rel.str() + '\x1f' + role.str() + '\x1f' + obj.str();
  if (point) s += '\x1f' + point->str();
  return s;
}

using ConnectorIndex = std::unordered_map<std::string, std::vector<InstanceId>>;

ConnectorIndex index_connectors(const MetaModel& mm) {
  ConnectorIndex index;
  for (const auto& [id, c] : mm.connectors) {
    index[signature(c.relationship_type, c.role_type, c.object_type, c.point_type)].push_back(id);
  }
  return index;
}

// Records every minted local name and reports the first clash per name.
class NameRegistry {
 public:
  explicit NameRegistry(Reporter& out) : out_(out) {
    for (const auto& n : reserved_local_names()) owners_.emplace(n, "vocabulary term " + q(n));
  }
  void seed(const std::string& local, const std::string& owner) { owners_.emplace(local, owner); }
  void claim(const std::string& local, const std::string& owner, const std::string& id) {
    auto [it, inserted] = owners_.emplace(local, owner);
    if (!inserted) {
      out_.add("IRI_COLLISION", owner + " mints IRI local name " + q(local) + " already used by " +
                                    it->second,
               {id});
    }
  }

 private:
  Reporter& out_;
  std::map<std::string, std::string> owners_;
};

}  // namespace

ValidationReport validate_metamodel(const MetaModel& mm) {
  Reporter out;

  check_names(mm.graph_types, MetaKind::Graph, out);
  check_names(mm.object_types, MetaKind::Object, out);
  check_names(mm.point_types, MetaKind::Point, out);
  check_names(mm.relationship_types, MetaKind::Relationship, out);
  check_names(mm.role_types, MetaKind::Role, out);
  check_names(mm.property_types, MetaKind::Property, out);

  // Type names share one IRI namespace, so they must be unique across kinds.
  {
    std::map<TypeName, std::vector<MetaKind>> seen;
    auto note = [&](const auto& decls, MetaKind kind) {
      for (const auto& [name, def] : decls) seen[name].push_back(kind);
    };
    note(mm.graph_types, MetaKind::Graph);
    note(mm.object_types, MetaKind::Object);
    note(mm.point_types, MetaKind::Point);
    note(mm.relationship_types, MetaKind::Relationship);
    note(mm.role_types, MetaKind::Role);
    note(mm.property_types, MetaKind::Property);
    for (const auto& [name, kinds] : seen) {
      if (kinds.size() > 1) {
        std::string list;
        for (MetaKind k : kinds) list += (list.empty() ? "" : ", ") + std::string(to_string(k));
        out.add("DUPLICATE_TYPE", "type name " + q(name.str()) + " declared as " + list,
                {name.str()});
      }
    }
  }

  for (const auto& [name, def] : mm.object_types) {
    for (const auto& p : def.point_types) {
      if (!mm.point_types.contains(p)) {
        out.add("UNKNOWN_TYPE_REF",
                "object type " + q(name.str()) + " lists undeclared point type " + q(p.str()),
                {name.str(), p.str()});
      }
    }
    if (def.decomposes_to && !mm.graph_types.contains(def.decomposes_to->graph_type)) {
      out.add("UNKNOWN_TYPE_REF",
              "object type " + q(name.str()) + " decomposes to undeclared graph type " +
                  q(def.decomposes_to->graph_type.str()),
              {name.str(), def.decomposes_to->graph_type.str()});
    }
  }

  for (const auto& [name, def] : mm.point_types) {
    bool owned = false;
    for (const auto& [oname, odef] : mm.object_types) owned = owned || odef.point_types.contains(name);
    if (!owned) {
      out.add("POINT_UNOWNED", "point type " + q(name.str()) + " is not attached to any object type",
              {name.str()});
    }
  }

  for (const auto& [name, def] : mm.relationship_types) {
    if (def.role_types.size() != 2 || def.role_types[0] == def.role_types[1]) {
      out.add("REL_ROLE_ARITY",
              "relationship type " + q(name.str()) + " must declare exactly two distinct role types (has " +
                  std::to_string(def.role_types.size()) + ")",
              {name.str()});
    }
    for (const auto& r : def.role_types) {
      if (!mm.role_types.contains(r)) {
        out.add("UNKNOWN_TYPE_REF",
                "relationship type " + q(name.str()) + " uses undeclared role type " + q(r.str()),
                {name.str(), r.str()});
      }
    }
  }

  {
    std::map<std::tuple<MetaKind, TypeName, TypeName>, Datatype> slot_types;
    for (const auto& slot : mm.property_slots) {
      const std::string where = std::string(to_string(slot.owner_kind)) + " " +
                                q(slot.owner_type.str()) + " / property " +
                                q(slot.property_type.str());
      if (slot.owner_kind == MetaKind::Property || slot.owner_kind == MetaKind::Connector) {
        out.add("SLOT_OWNER_KIND", "property slot " + where + " has a non-owner kind",
                {slot.owner_type.str(), slot.property_type.str()});
      } else if (!mm.declares(slot.owner_kind, slot.owner_type)) {
        out.add("UNKNOWN_TYPE_REF", "property slot " + where + " names an undeclared owner type",
                {slot.owner_type.str()});
      }
      if (!mm.property_types.contains(slot.property_type)) {
        out.add("UNKNOWN_TYPE_REF", "property slot " + where + " names an undeclared property type",
                {slot.property_type.str()});
      }
      auto [it, inserted] = slot_types.emplace(
          std::tuple{slot.owner_kind, slot.owner_type, slot.property_type}, slot.datatype);
      if (!inserted && it->second != slot.datatype) {
        out.add("SLOT_CONFLICT", "property slot " + where + " declared with two datatypes",
                {slot.owner_type.str(), slot.property_type.str()});
      }
    }
  }

  for (const auto& [id, c] : mm.connectors) {
    const std::vector<std::string> ids{id.str()};
    const std::string who = "connector " + q(id.str());
    if (!is_valid_instance_id(id.str())) {
      out.add("BAD_NAME", who + " id does not match [A-Za-z0-9_]+", ids);
    }
    const auto rel = mm.relationship_types.find(c.relationship_type);
    if (rel == mm.relationship_types.end()) {
      out.add("CONN_UNKNOWN_TYPE", who + " cites undeclared relationship type " + q(c.relationship_type.str()), ids);
    }
    if (!mm.role_types.contains(c.role_type)) {
      out.add("CONN_UNKNOWN_TYPE", who + " cites undeclared role type " + q(c.role_type.str()), ids);
    } else if (rel != mm.relationship_types.end() &&
               std::find(rel->second.role_types.begin(), rel->second.role_types.end(),
                         c.role_type) == rel->second.role_types.end()) {
      out.add("CONN_ROLE_MISMATCH", who + " role type " + q(c.role_type.str()) +
                                        " is not a role of relationship type " +
                                        q(c.relationship_type.str()),
              ids);
    }
    const auto obj = mm.object_types.find(c.object_type);
    if (obj == mm.object_types.end()) {
      out.add("CONN_UNKNOWN_TYPE", who + " cites undeclared object type " + q(c.object_type.str()), ids);
    }
    if (c.point_type) {
      if (!mm.point_types.contains(*c.point_type)) {
        out.add("CONN_UNKNOWN_TYPE", who + " cites undeclared point type " + q(c.point_type->str()), ids);
      } else if (obj != mm.object_types.end() && !obj->second.point_types.contains(*c.point_type)) {
        out.add("CONN_POINT_MISMATCH", who + " point type " + q(c.point_type->str()) +
                                           " is not a point of object type " + q(c.object_type.str()),
                ids);
      }
    }
  }

  for (const auto& [sig, ids] : index_connectors(mm)) {
    if (ids.size() > 1) {
      std::vector<std::string> names;
      for (const auto& id : ids) names.push_back(id.str());
      out.add("CONN_DUPLICATE", "connectors with identical signature must be shared, not repeated",
              names);
    }
  }

  std::set<InstanceId> used;
  for (const auto& rule : mm.rules) {
    const std::vector<std::string> ids{rule.start.str(), rule.end.str()};
    const std::string who = "rule (" + rule.start.str() + " => " + rule.end.str() + ")";
    used.insert(rule.start);
    used.insert(rule.end);
    auto s = mm.connectors.find(rule.start);
    auto e = mm.connectors.find(rule.end);
    if (s == mm.connectors.end() || e == mm.connectors.end()) {
      out.add("RULE_UNKNOWN_CONNECTOR", who + " cites an undeclared connector", ids);
      continue;
    }
    if (s->second.relationship_type != e->second.relationship_type) {
      out.add("RULE_REL_MISMATCH", who + " joins connectors of different relationship types", ids);
      continue;
    }
    auto rel = mm.relationship_types.find(s->second.relationship_type);
    if (rel == mm.relationship_types.end() || rel->second.role_types.size() != 2) continue;
    if (s->second.role_type != rel->second.start_role() ||
        e->second.role_type != rel->second.end_role()) {
      out.add("RULE_ROLE_SIDE",
              who + " must use the start role on its start connector and the end role on its end connector",
              ids);
    }
  }
  for (const auto& [id, c] : mm.connectors) {
    if (!used.contains(id)) {
      out.add("CONN_ORPHAN", "connector " + q(id.str()) + " is not part of any connection rule",
              {id.str()});
    }
  }

  for (const auto& [graph, members] : mm.graph_membership) {
    if (!mm.graph_types.contains(graph)) {
      out.add("UNKNOWN_TYPE_REF", "graph membership names undeclared graph type " + q(graph.str()),
              {graph.str()});
    }
    for (const auto& t : members) {
      if (!mm.object_types.contains(t) && !mm.relationship_types.contains(t)) {
        out.add("UNKNOWN_TYPE_REF",
                "graph type " + q(graph.str()) + " admits " + q(t.str()) +
                    ", which is not a declared object or relationship type",
                {graph.str(), t.str()});
      }
    }
  }

  NameRegistry names(out);
  auto claim_types = [&](const auto& decls, MetaKind kind) {
    for (const auto& [name, def] : decls) {
      // Reserved names and cross-kind duplicates already have their own codes.
      if (reserved_local_names().contains(name.str())) continue;
      if (mm.kind_of(name) != kind) continue;
      names.claim(name.str(), std::string(to_string(kind)) + " type " + q(name.str()), name.str());
    }
  };
  claim_types(mm.graph_types, MetaKind::Graph);
  claim_types(mm.object_types, MetaKind::Object);
  claim_types(mm.point_types, MetaKind::Point);
  claim_types(mm.relationship_types, MetaKind::Relationship);
  claim_types(mm.role_types, MetaKind::Role);
  claim_types(mm.property_types, MetaKind::Property);
  for (const auto& [id, c] : mm.connectors) {
    names.claim(connector_rule_local_name(id), "connector " + q(id.str()), id.str());
  }

  return out.take();
}

std::vector<InstanceId> matching_connectors(const MetaModel& mm, const TypeName& relationship_type,
                                            const TypeName& role_type, const TypeName& object_type,
                                            const std::optional<TypeName>& point_type) {
  // Linear scan kept for one-off lookups; validate_model uses a hashed index.
  std::vector<InstanceId> out;
  for (const auto& [id, c] : mm.connectors) {
    if (c.relationship_type == relationship_type && c.role_type == role_type &&
        c.object_type == object_type && c.point_type == point_type) {
      out.push_back(id);
    }
  }
  return out;
}

ValidationReport validate_model(const MetaModel& mm, const Model& m) {
  Reporter out;
  const auto& gid = m.graph_id;

  // Ids and their uniqueness across kinds.
  {
    std::map<InstanceId, std::vector<std::string_view>> seen;
    seen[gid].push_back("graph");
    auto note = [&](const auto& instances, MetaKind kind) {
      for (const auto& [id, inst] : instances) seen[id].push_back(to_string(kind));
    };
    note(m.objects, MetaKind::Object);
    note(m.relationships, MetaKind::Relationship);
    note(m.points, MetaKind::Point);
    note(m.roles, MetaKind::Role);
    note(m.properties, MetaKind::Property);
    for (const auto& [id, kinds] : seen) {
      if (!is_valid_instance_id(id.str())) {
        out.add("BAD_ID", "instance id " + q(id.str()) + " does not match [A-Za-z0-9_]+", {id.str()});
      }
      if (kinds.size() > 1) {
        std::string list;
        for (auto k : kinds) list += (list.empty() ? "" : ", ") + std::string(k);
        out.add("DUPLICATE_ID", "instance id " + q(id.str()) + " used by " + list, {id.str()});
      }
    }
  }

  if (!mm.graph_types.contains(m.graph_type)) {
    out.add("UNKNOWN_TYPE", "graph " + q(gid.str()) + " has undeclared graph type " + q(m.graph_type.str()),
            {gid.str()});
  }
  const auto membership = mm.graph_membership.find(m.graph_type);
  auto check_membership = [&](const InstanceId& id, const TypeName& type) {
    if (membership != mm.graph_membership.end() && !membership->second.contains(type)) {
      out.add("GRAPH_MEMBERSHIP", "graph type " + q(m.graph_type.str()) + " does not admit " +
                                      q(type.str()) + " instance " + q(id.str()),
              {id.str()});
    }
  };

  for (const auto& [id, o] : m.objects) {
    if (!mm.object_types.contains(o.type)) {
      out.add("UNKNOWN_TYPE", "object " + q(id.str()) + " has undeclared object type " + q(o.type.str()),
              {id.str()});
    } else {
      check_membership(id, o.type);
    }
  }
  for (const auto& [id, r] : m.relationships) {
    if (!mm.relationship_types.contains(r.type)) {
      out.add("UNKNOWN_TYPE",
              "relationship " + q(id.str()) + " has undeclared relationship type " + q(r.type.str()),
              {id.str()});
    } else {
      check_membership(id, r.type);
    }
  }

  for (const auto& [id, p] : m.points) {
    if (!mm.point_types.contains(p.type)) {
      out.add("UNKNOWN_TYPE", "point " + q(id.str()) + " has undeclared point type " + q(p.type.str()),
              {id.str()});
    }
    auto owner = m.objects.find(p.owner);
    if (owner == m.objects.end()) {
      out.add("POINT_OWNER", "point " + q(id.str()) + " is owned by " + q(p.owner.str()) +
                                 ", which is not an object",
              {id.str(), p.owner.str()});
      continue;
    }
    auto otype = mm.object_types.find(owner->second.type);
    if (otype != mm.object_types.end() && mm.point_types.contains(p.type) &&
        !otype->second.point_types.contains(p.type)) {
      out.add("POINT_NOT_ALLOWED", "object type " + q(owner->second.type.str()) +
                                       " has no point type " + q(p.type.str()),
              {id.str(), p.owner.str()});
    }
  }

  std::map<InstanceId, std::vector<InstanceId>> roles_of;
  for (const auto& [id, r] : m.roles) {
    if (!mm.role_types.contains(r.type)) {
      out.add("UNKNOWN_TYPE", "role " + q(id.str()) + " has undeclared role type " + q(r.type.str()),
              {id.str()});
    }
    auto owner = m.relationships.find(r.owner);
    if (owner == m.relationships.end()) {
      out.add("ROLE_OWNER", "role " + q(id.str()) + " is owned by " + q(r.owner.str()) +
                                ", which is not a relationship",
              {id.str(), r.owner.str()});
      continue;
    }
    roles_of[r.owner].push_back(id);
    auto rtype = mm.relationship_types.find(owner->second.type);
    if (rtype != mm.relationship_types.end() &&
        std::find(rtype->second.role_types.begin(), rtype->second.role_types.end(), r.type) ==
            rtype->second.role_types.end()) {
      out.add("ROLE_TYPE_MISMATCH", "role " + q(id.str()) + " of type " + q(r.type.str()) +
                                        " is not a role of relationship type " +
                                        q(owner->second.type.str()),
              {id.str(), r.owner.str()});
    }
  }

  for (const auto& [id, rel] : m.relationships) {
    auto rtype = mm.relationship_types.find(rel.type);
    if (rtype == mm.relationship_types.end()) continue;
    const auto& owned = roles_of[id];
    std::set<TypeName> types;
    for (const auto& r : owned) types.insert(m.roles.at(r).type);
    const std::set<TypeName> declared(rtype->second.role_types.begin(), rtype->second.role_types.end());
    if (owned.size() != 2 || types != declared) {
      out.add("REL_ROLE_COUNT", "relationship " + q(id.str()) +
                                    " must own exactly two roles, one per declared role type (owns " +
                                    std::to_string(owned.size()) + ")",
              {id.str()});
    }
  }

  for (const auto& [id, pv] : m.properties) {
    if (!mm.property_types.contains(pv.type)) {
      out.add("UNKNOWN_TYPE", "property " + q(id.str()) + " has undeclared property type " + q(pv.type.str()),
              {id.str()});
    }
    const auto owner_kind = m.kind_of(pv.owner);
    if (!owner_kind || *owner_kind == MetaKind::Property) {
      out.add("PROP_OWNER", "property " + q(id.str()) + " is attached to " + q(pv.owner.str()) +
                                ", which is not a non-property instance",
              {id.str(), pv.owner.str()});
      continue;
    }
    const TypeName owner_type = *m.type_of(pv.owner);
    const PropertySlot* slot = nullptr;
    for (const auto& s : mm.property_slots) {
      if (s.owner_kind == *owner_kind && s.owner_type == owner_type && s.property_type == pv.type) {
        slot = &s;
        break;
      }
    }
    if (!slot) {
      out.add("PROP_NO_SLOT", std::string(to_string(*owner_kind)) + " type " + q(owner_type.str()) +
                                  " has no property slot " + q(pv.type.str()),
              {id.str(), pv.owner.str()});
    } else if (slot->datatype != pv.value.datatype) {
      out.add("PROP_DATATYPE", "property " + q(id.str()) + " is " +
                                   std::string(to_string(pv.value.datatype)) + " but its slot expects " +
                                   std::string(to_string(slot->datatype)),
              {id.str()});
    }
    if (!is_valid_lexical(pv.value.datatype, pv.value.lexical)) {
      out.add("PROP_LEXICAL", "property " + q(id.str()) + " value " + q(pv.value.lexical) +
                                  " is not a valid " + std::string(to_string(pv.value.datatype)),
              {id.str()});
    }
  }

  const ConnectorIndex index = index_connectors(mm);
  for (const auto& [rel_id, conn] : m.connections) {
    auto rel = m.relationships.find(rel_id);
    if (rel == m.relationships.end()) {
      out.add("CONN_UNKNOWN_REL", "connection cites " + q(rel_id.str()) + ", which is not a relationship",
              {rel_id.str()});
      continue;
    }
    if (conn.start.role == conn.end.role) {
      out.add("CONN_ROLE_MISMATCH",
              "connection " + q(rel_id.str()) + " uses role " + q(conn.start.role.str()) + " on both sides",
              {rel_id.str(), conn.start.role.str()});
    }
    std::optional<InstanceId> matched[2];
    const ConnectorBinding* sides[2] = {&conn.start, &conn.end};
    for (int side = 0; side < 2; ++side) {
      const ConnectorBinding& b = *sides[side];
      const std::string where =
          "connection " + q(rel_id.str()) + (side == 0 ? " start" : " end") + " binding";
      bool complete = true;
      auto role = m.roles.find(b.role);
      if (role == m.roles.end() || role->second.owner != rel_id) {
        out.add("CONN_ROLE_MISMATCH", where + " cites role " + q(b.role.str()) +
                                          ", which is not a role of the relationship",
                {rel_id.str(), b.role.str()});
        complete = false;
      }
      auto obj = m.objects.find(b.object);
      if (obj == m.objects.end()) {
        out.add("CONN_UNKNOWN_ENDPOINT", where + " cites " + q(b.object.str()) + ", which is not an object",
                {rel_id.str(), b.object.str()});
        complete = false;
      }
      std::optional<TypeName> point_type;
      if (b.point) {
        auto pt = m.points.find(*b.point);
        if (pt == m.points.end() || pt->second.owner != b.object) {
          out.add("CONN_POINT_OWNER", where + " cites point " + q(b.point->str()) +
                                          ", which is not a point of " + q(b.object.str()),
                  {rel_id.str(), b.point->str()});
          complete = false;
        } else {
          point_type = pt->second.type;
        }
      }
      auto cited = mm.connectors.find(b.connector);
      if (cited == mm.connectors.end()) {
        out.add("CONN_UNKNOWN_RULE", where + " cites undeclared connector " + q(b.connector.str()),
                {rel_id.str(), b.connector.str()});
      }
      if (!complete) continue;
      const auto sig = signature(rel->second.type, role->second.type, obj->second.type, point_type);
      auto hit = index.find(sig);
      if (hit == index.end()) {
        out.add("CONN_NO_RULE",
                where + " (" + rel->second.type.str() + ", " + role->second.type.str() + ", " +
                    obj->second.type.str() + (point_type ? "." + point_type->str() : "") +
                    ") is not licensed by any connector",
                {rel_id.str(), b.role.str(), b.endpoint().str()});
        continue;
      }
      if (cited == mm.connectors.end()) continue;
      if (std::find(hit->second.begin(), hit->second.end(), b.connector) == hit->second.end()) {
        out.add("CONN_RULE_MISMATCH",
                where + " cites connector " + q(b.connector.str()) + " but matches " +
                    q(hit->second.front().str()),
                {rel_id.str(), b.connector.str()});
        continue;
      }
      matched[side] = b.connector;
    }
    if (matched[0] && matched[1] && !mm.rules.contains(ConnectionRule{*matched[0], *matched[1]})) {
      out.add("CONN_PAIR_NOT_LICENSED",
              "connection " + q(rel_id.str()) + " pairs connectors " + q(matched[0]->str()) + " => " +
                  q(matched[1]->str()) + ", which no connection rule declares",
              {rel_id.str()});
    }
  }

  for (const auto& [id, path] : m.icon_overrides) {
    const auto kind = m.kind_of(id);
    if (!kind || *kind == MetaKind::Property) {
      out.add("ICON_UNKNOWN_ID", "icon override for " + q(id.str()) + ", which is not a non-property instance",
              {id.str()});
    }
  }

  // Minted IRIs must be distinct from each other and from the meta-model's.
  // Clashes inside the meta-model itself are validate_metamodel's business.
  NameRegistry names(out);
  auto seed = [&](const auto& decls) {
    for (const auto& [name, def] : decls) names.seed(name.str(), "type " + q(name.str()));
  };
  seed(mm.graph_types);
  seed(mm.object_types);
  seed(mm.point_types);
  seed(mm.relationship_types);
  seed(mm.role_types);
  seed(mm.property_types);
  for (const auto& [id, c] : mm.connectors) {
    names.seed(connector_rule_local_name(id), "connector " + q(id.str()));
  }

  auto claim_instance = [&](const InstanceId& id, const TypeName& type, std::string_view kind) {
    names.claim(individual_local_name(type, id), std::string(kind) + " " + q(id.str()), id.str());
  };
  claim_instance(gid, m.graph_type, "graph");
  for (const auto& [id, o] : m.objects) claim_instance(id, o.type, "object");
  for (const auto& [id, r] : m.relationships) claim_instance(id, r.type, "relationship");
  for (const auto& [id, p] : m.points) claim_instance(id, p.type, "point");
  for (const auto& [id, r] : m.roles) claim_instance(id, r.type, "role");
  for (const auto& [id, p] : m.properties) claim_instance(id, p.type, "property");
  for (const auto& [rel_id, conn] : m.connections) {
    names.claim(binding_local_name(conn.start), "start connector of " + q(rel_id.str()), rel_id.str());
    names.claim(binding_local_name(conn.end), "end connector of " + q(rel_id.str()), rel_id.str());
  }

  return out.take();
}

}  // namespace gopprre

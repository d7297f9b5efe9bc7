#include "gopprre/dsl.hpp"

#include <algorithm>
#include <initializer_list>
#include <json.hpp>
#include <vector>

namespace gopprre::dsl {
namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& detail, const std::string& message) {
  throw Error(ErrorCode::SchemaError, detail, message);
}

SourcePosition position_of(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based offset of the last byte it read.
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  SourcePosition pos{1, 1};
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

json parse_json(std::string_view text) {
  // One key set per open object, to reject duplicate keys the DOM would
  // silently overwrite.
  std::vector<std::vector<std::string>> open_objects;
  json::parser_callback_t on_event = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        open_objects.emplace_back();
        break;
      case json::parse_event_t::object_end:
        if (!open_objects.empty()) open_objects.pop_back();
        break;
      case json::parse_event_t::key: {
        auto& keys = open_objects.back();
        const auto& key = parsed.get_ref<const std::string&>();
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
          schema_error("DUPLICATE_KEY", "key '" + key + "' appears twice in one object");
        }
        keys.push_back(key);
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), on_event);
  } catch (const json::parse_error& e) {
    std::string message = e.what();
    if (auto colon = message.find("syntax error"); colon != std::string::npos) {
      message = message.substr(colon);
    }
    throw Error(ErrorCode::SyntaxError, "", message, position_of(text, e.byte));
  }
}

// Strict accessors over one JSON object. `where` names the object in error
// messages (e.g. "object_types[2]").
class Fields {
 public:
  Fields(const json& j, std::string where, std::initializer_list<std::string_view> allowed)
      : j_(j), where_(std::move(where)) {
    if (!j.is_object()) schema_error("WRONG_TYPE", where_ + " must be an object");
    for (const auto& [key, value] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        schema_error("UNKNOWN_KEY", where_ + " has unknown key '" + key + "'");
      }
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& at(const std::string& key) const {
    if (!j_.contains(key)) schema_error("MISSING_KEY", where_ + " lacks required key '" + key + "'");
    return j_.at(key);
  }

  std::string string(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_string()) schema_error("WRONG_TYPE", where_ + "." + key + " must be a string");
    return v.get<std::string>();
  }

  std::optional<std::string> optional_string(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return string(key);
  }

  const json& array(const std::string& key, bool required = false) const {
    static const json empty = json::array();
    if (!has(key)) {
      if (required) at(key);
      return empty;
    }
    const json& v = j_.at(key);
    if (!v.is_array()) schema_error("WRONG_TYPE", where_ + "." + key + " must be an array");
    return v;
  }

  std::vector<std::string> string_list(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& v : array(key)) {
      if (!v.is_string()) schema_error("WRONG_TYPE", where_ + "." + key + " must hold strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  const std::string& where() const { return where_; }

 private:
  const json& j_;
  std::string where_;
};

std::string item(const std::string& key, std::size_t i) {
  return key + "[" + std::to_string(i) + "]";
}

void check_header(const Fields& f, std::string_view kind) {
  const json& version = f.at("format_version");
  if (!version.is_number_integer()) schema_error("WRONG_TYPE", "format_version must be an integer");
  if (version.get<long long>() != kFormatVersion) {
    schema_error("BAD_VERSION", "unsupported format_version " + version.dump());
  }
  if (f.string("kind") != kind) {
    schema_error("WRONG_KIND", "expected a " + std::string(kind) + " document, got '" +
                                   f.string("kind") + "'");
  }
}

template <class Def>
void insert_unique(std::map<TypeName, Def>& decls, const std::string& name, Def def,
                   std::string_view kind) {
  if (!decls.emplace(TypeName(name), std::move(def)).second) {
    schema_error("DUPLICATE_TYPE",
                 std::string(kind) + " type '" + name + "' is declared more than once");
  }
}

template <class Value>
void insert_unique_id(std::map<InstanceId, Value>& items, const std::string& id, Value v,
                      std::string_view what) {
  if (!items.emplace(InstanceId(id), std::move(v)).second) {
    schema_error("DUPLICATE_ID", std::string(what) + " id '" + id + "' appears more than once");
  }
}

template <class Def>
void read_simple_decls(const Fields& doc, const std::string& key, std::map<TypeName, Def>& out,
                       std::string_view kind) {
  const json& list = doc.array(key);
  for (std::size_t i = 0; i < list.size(); ++i) {
    Fields f(list[i], item(key, i), {"name", "icon"});
    Def def;
    def.icon_path = f.optional_string("icon");
    insert_unique(out, f.string("name"), std::move(def), kind);
  }
}

ConnectorBinding read_binding(const json& j, const std::string& where) {
  Fields f(j, where, {"connector", "role", "object", "point"});
  ConnectorBinding b;
  b.connector = f.string("connector");
  b.role = f.string("role");
  b.object = f.string("object");
  if (auto p = f.optional_string("point")) b.point = InstanceId(*p);
  return b;
}

// ---------------------------------------------------------------------------
// Emission helpers

void put_icon(json& j, const std::optional<std::string>& icon) {
  if (icon) j["icon"] = *icon;
}

template <class Def>
json simple_decls(const std::map<TypeName, Def>& decls) {
  json out = json::array();
  for (const auto& [name, def] : decls) {
    json j{{"name", name.str()}};
    put_icon(j, def.icon_path);
    out.push_back(std::move(j));
  }
  return out;
}

json binding_json(const ConnectorBinding& b) {
  json j{{"connector", b.connector.str()}, {"role", b.role.str()}, {"object", b.object.str()}};
  if (b.point) j["point"] = b.point->str();
  return j;
}

std::string canonical_text(const json& j) {
  // std::map-backed objects keep keys sorted; ensure_ascii=false keeps UTF-8.
  return j.dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

}  // namespace

SemanticErrorWithReport::SemanticErrorWithReport(ValidationReport report)
    : Error(ErrorCode::SemanticError,
            report.violations.empty() ? std::string() : report.violations.front().code,
            report.violations.empty() ? std::string() : report.violations.front().message),
      report_(std::move(report)) {}

MetaModel decode_metamodel(std::string_view text) {
  const json root = parse_json(text);
  const Fields doc(root, "metamodel document",
                   {"format_version", "kind", "language", "graph_types", "object_types",
                    "point_types", "relationship_types", "role_types", "property_types",
                    "property_slots", "connectors", "rules", "graph_membership"});
  check_header(doc, "metamodel");

  MetaModel mm;
  if (auto lang = doc.optional_string("language")) mm.language_name = *lang;

  read_simple_decls(doc, "graph_types", mm.graph_types, "graph");
  read_simple_decls(doc, "point_types", mm.point_types, "point");
  read_simple_decls(doc, "role_types", mm.role_types, "role");
  read_simple_decls(doc, "property_types", mm.property_types, "property");

  const json& objects = doc.array("object_types");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    Fields f(objects[i], item("object_types", i), {"name", "points", "decomposes_to", "icon"});
    ObjectTypeDef def;
    for (auto& p : f.string_list("points")) {
      if (!def.point_types.insert(TypeName(p)).second) {
        schema_error("DUPLICATE_TYPE", f.where() + " lists point type '" + p + "' twice");
      }
    }
    if (f.has("decomposes_to")) {
      Fields d(f.at("decomposes_to"), f.where() + ".decomposes_to", {"graph", "mode"});
      DecompositionLink link;
      link.graph_type = d.string("graph");
      if (auto mode = d.optional_string("mode")) {
        auto parsed = decomposition_from_string(*mode);
        if (!parsed) schema_error("BAD_VALUE", d.where() + ".mode must be 'decompose' or 'explore'");
        link.mode = *parsed;
      }
      def.decomposes_to = std::move(link);
    }
    def.icon_path = f.optional_string("icon");
    insert_unique(mm.object_types, f.string("name"), std::move(def), "object");
  }

  const json& rels = doc.array("relationship_types");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    Fields f(rels[i], item("relationship_types", i), {"name", "roles", "icon"});
    RelationshipTypeDef def;
    f.array("roles", true);
    for (auto& r : f.string_list("roles")) def.role_types.emplace_back(r);
    def.icon_path = f.optional_string("icon");
    insert_unique(mm.relationship_types, f.string("name"), std::move(def), "relationship");
  }

  const json& slots = doc.array("property_slots");
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Fields f(slots[i], item("property_slots", i), {"owner_kind", "owner_type", "property", "datatype"});
    PropertySlot slot;
    auto kind = meta_kind_from_string(f.string("owner_kind"));
    if (!kind) schema_error("BAD_VALUE", f.where() + ".owner_kind is not a meta kind");
    slot.owner_kind = *kind;
    slot.owner_type = f.string("owner_type");
    slot.property_type = f.string("property");
    auto dt = datatype_from_string(f.string("datatype"));
    if (!dt) schema_error("BAD_VALUE", f.where() + ".datatype must be string, integer, decimal or boolean");
    slot.datatype = *dt;
    if (!mm.property_slots.insert(slot).second) {
      schema_error("DUPLICATE_SLOT", f.where() + " repeats an earlier property slot");
    }
  }

  const json& connectors = doc.array("connectors");
  for (std::size_t i = 0; i < connectors.size(); ++i) {
    Fields f(connectors[i], item("connectors", i), {"id", "relationship", "role", "object", "point"});
    Connector c;
    c.relationship_type = f.string("relationship");
    c.role_type = f.string("role");
    c.object_type = f.string("object");
    if (auto p = f.optional_string("point")) c.point_type = TypeName(*p);
    insert_unique_id(mm.connectors, f.string("id"), std::move(c), "connector");
  }

  const json& rules = doc.array("rules");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    Fields f(rules[i], item("rules", i), {"start", "end"});
    if (!mm.rules.insert(ConnectionRule{f.string("start"), f.string("end")}).second) {
      schema_error("DUPLICATE_RULE", f.where() + " repeats an earlier rule");
    }
  }

  if (doc.has("graph_membership")) {
    const json& membership = doc.at("graph_membership");
    if (!membership.is_object()) schema_error("WRONG_TYPE", "graph_membership must be an object");
    for (const auto& [graph, members] : membership.items()) {
      if (!members.is_array()) {
        schema_error("WRONG_TYPE", "graph_membership." + graph + " must be an array");
      }
      auto& allowed = mm.graph_membership[TypeName(graph)];
      for (const auto& t : members) {
        if (!t.is_string()) schema_error("WRONG_TYPE", "graph_membership." + graph + " must hold strings");
        if (!allowed.insert(TypeName(t.get<std::string>())).second) {
          schema_error("DUPLICATE_TYPE", "graph_membership." + graph + " lists '" +
                                             t.get<std::string>() + "' twice");
        }
      }
    }
  }
  return mm;
}

Model decode_model(std::string_view text) {
  const json root = parse_json(text);
  const Fields doc(root, "model document",
                   {"format_version", "kind", "graph", "objects", "relationships", "points", "roles",
                    "properties", "connections", "icons"});
  check_header(doc, "model");

  Model m;
  {
    Fields g(doc.at("graph"), "graph", {"id", "type"});
    m.graph_id = g.string("id");
    m.graph_type = g.string("type");
  }

  const json& objects = doc.array("objects");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    Fields f(objects[i], item("objects", i), {"id", "type"});
    insert_unique_id(m.objects, f.string("id"), ObjectInstance{f.string("type")}, "object");
  }
  const json& rels = doc.array("relationships");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    Fields f(rels[i], item("relationships", i), {"id", "type"});
    insert_unique_id(m.relationships, f.string("id"), RelationshipInstance{f.string("type")},
                     "relationship");
  }
  const json& points = doc.array("points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    Fields f(points[i], item("points", i), {"id", "type", "owner"});
    insert_unique_id(m.points, f.string("id"), PointInstance{f.string("type"), f.string("owner")},
                     "point");
  }
  const json& roles = doc.array("roles");
  for (std::size_t i = 0; i < roles.size(); ++i) {
    Fields f(roles[i], item("roles", i), {"id", "type", "owner"});
    insert_unique_id(m.roles, f.string("id"), RoleInstance{f.string("type"), f.string("owner")},
                     "role");
  }
  const json& props = doc.array("properties");
  for (std::size_t i = 0; i < props.size(); ++i) {
    Fields f(props[i], item("properties", i), {"id", "type", "owner", "datatype", "value"});
    auto dt = datatype_from_string(f.string("datatype"));
    if (!dt) schema_error("BAD_VALUE", f.where() + ".datatype must be string, integer, decimal or boolean");
    PropertyValue pv{f.string("type"), f.string("owner"), Literal{*dt, f.string("value")}};
    insert_unique_id(m.properties, f.string("id"), std::move(pv), "property");
  }
  const json& conns = doc.array("connections");
  for (std::size_t i = 0; i < conns.size(); ++i) {
    Fields f(conns[i], item("connections", i), {"relationship", "start", "end"});
    Connection c{read_binding(f.at("start"), f.where() + ".start"),
                 read_binding(f.at("end"), f.where() + ".end")};
    const std::string rel = f.string("relationship");
    if (!m.connections.emplace(InstanceId(rel), std::move(c)).second) {
      schema_error("DUPLICATE_CONNECTION", "relationship '" + rel + "' has more than one connection");
    }
  }
  if (doc.has("icons")) {
    const json& icons = doc.at("icons");
    if (!icons.is_object()) schema_error("WRONG_TYPE", "icons must be an object");
    for (const auto& [id, path] : icons.items()) {
      if (!path.is_string()) schema_error("WRONG_TYPE", "icons." + id + " must be a string");
      m.icon_overrides.emplace(InstanceId(id), path.get<std::string>());
    }
  }
  return m;
}

MetaModel parse_metamodel(std::string_view text) {
  MetaModel mm = decode_metamodel(text);
  ValidationReport report = validate_metamodel(mm);
  if (!report.ok()) throw SemanticErrorWithReport(std::move(report));
  return mm;
}

Model parse_model(std::string_view text, const MetaModel& mm) {
  if (!validate_metamodel(mm).ok()) {
    throw Error(ErrorCode::InvalidInput, "", "parse_model needs a valid meta-model");
  }
  Model m = decode_model(text);
  ValidationReport report = validate_model(mm, m);
  if (!report.ok()) throw SemanticErrorWithReport(std::move(report));
  return m;
}

std::string emit_metamodel(const MetaModel& mm) {
  json root;
  root["format_version"] = kFormatVersion;
  root["kind"] = "metamodel";
  root["language"] = mm.language_name;
  root["graph_types"] = simple_decls(mm.graph_types);
  root["point_types"] = simple_decls(mm.point_types);
  root["role_types"] = simple_decls(mm.role_types);
  root["property_types"] = simple_decls(mm.property_types);

  json objects = json::array();
  for (const auto& [name, def] : mm.object_types) {
    json j{{"name", name.str()}, {"points", json::array()}};
    for (const auto& p : def.point_types) j["points"].push_back(p.str());
    if (def.decomposes_to) {
      j["decomposes_to"] = {{"graph", def.decomposes_to->graph_type.str()},
                            {"mode", std::string(to_string(def.decomposes_to->mode))}};
    }
    put_icon(j, def.icon_path);
    objects.push_back(std::move(j));
  }
  root["object_types"] = std::move(objects);

  json rels = json::array();
  for (const auto& [name, def] : mm.relationship_types) {
    json j{{"name", name.str()}, {"roles", json::array()}};
    for (const auto& r : def.role_types) j["roles"].push_back(r.str());
    put_icon(j, def.icon_path);
    rels.push_back(std::move(j));
  }
  root["relationship_types"] = std::move(rels);

  json slots = json::array();
  for (const auto& s : mm.property_slots) {
    slots.push_back({{"owner_kind", std::string(to_string(s.owner_kind))},
                     {"owner_type", s.owner_type.str()},
                     {"property", s.property_type.str()},
                     {"datatype", std::string(to_string(s.datatype))}});
  }
  root["property_slots"] = std::move(slots);

  json connectors = json::array();
  for (const auto& [id, c] : mm.connectors) {
    json j{{"id", id.str()},
           {"relationship", c.relationship_type.str()},
           {"role", c.role_type.str()},
           {"object", c.object_type.str()}};
    if (c.point_type) j["point"] = c.point_type->str();
    connectors.push_back(std::move(j));
  }
  root["connectors"] = std::move(connectors);

  json rules = json::array();
  for (const auto& r : mm.rules) rules.push_back({{"start", r.start.str()}, {"end", r.end.str()}});
  root["rules"] = std::move(rules);

  json membership = json::object();
  for (const auto& [graph, members] : mm.graph_membership) {
    json list = json::array();
    for (const auto& t : members) list.push_back(t.str());
    membership[graph.str()] = std::move(list);
  }
  root["graph_membership"] = std::move(membership);
  return canonical_text(root);
}

std::string emit_model(const Model& m) {
  json root;
  root["format_version"] = kFormatVersion;
  root["kind"] = "model";
  root["graph"] = {{"id", m.graph_id.str()}, {"type", m.graph_type.str()}};

  json objects = json::array();
  for (const auto& [id, o] : m.objects) objects.push_back({{"id", id.str()}, {"type", o.type.str()}});
  root["objects"] = std::move(objects);

  json rels = json::array();
  for (const auto& [id, r] : m.relationships) rels.push_back({{"id", id.str()}, {"type", r.type.str()}});
  root["relationships"] = std::move(rels);

  json points = json::array();
  for (const auto& [id, p] : m.points) {
    points.push_back({{"id", id.str()}, {"type", p.type.str()}, {"owner", p.owner.str()}});
  }
  root["points"] = std::move(points);

  json roles = json::array();
  for (const auto& [id, r] : m.roles) {
    roles.push_back({{"id", id.str()}, {"type", r.type.str()}, {"owner", r.owner.str()}});
  }
  root["roles"] = std::move(roles);

  json props = json::array();
  for (const auto& [id, p] : m.properties) {
    props.push_back({{"id", id.str()},
                     {"type", p.type.str()},
                     {"owner", p.owner.str()},
                     {"datatype", std::string(to_string(p.value.datatype))},
                     {"value", p.value.lexical}});
  }
  root["properties"] = std::move(props);

  json conns = json::array();
  for (const auto& [rel, c] : m.connections) {
    conns.push_back(
        {{"relationship", rel.str()}, {"start", binding_json(c.start)}, {"end", binding_json(c.end)}});
  }
  root["connections"] = std::move(conns);

  json icons = json::object();
  for (const auto& [id, path] : m.icon_overrides) icons[id.str()] = path;
  root["icons"] = std::move(icons);
  return canonical_text(root);
}

}  // namespace gopprre::dsl

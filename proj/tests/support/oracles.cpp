#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

using namespace gopprre;

namespace oracle {
namespace {

const std::string kRdfType = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
const std::string kSubClass = "<http://www.w3.org/2000/01/rdf-schema#subClassOf>";
const std::string kOwl = "http://www.w3.org/2002/07/owl#";
const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";

std::string angle(const std::string& iri) { return "<" + iri + ">"; }

std::string quoted(const std::string& lex) {
  std::string out = "\"";
  for (char c : lex) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string xsd_name(Datatype dt) {
  switch (dt) {
    case Datatype::String: return "string";
    case Datatype::Integer: return "integer";
    case Datatype::Decimal: return "decimal";
    case Datatype::Boolean: return "boolean";
  }
  return "";
}

std::string line(const std::string& s, const std::string& p, const std::string& o) {
  return s + " " + p + " " + o + " .";
}

std::optional<TypeName> type_in_model(const Model& m, const InstanceId& id) {
  if (id == m.graph_id) return m.graph_type;
  if (auto it = m.objects.find(id); it != m.objects.end()) return it->second.type;
  if (auto it = m.relationships.find(id); it != m.relationships.end()) return it->second.type;
  if (auto it = m.points.find(id); it != m.points.end()) return it->second.type;
  if (auto it = m.roles.find(id); it != m.roles.end()) return it->second.type;
  if (auto it = m.properties.find(id); it != m.properties.end()) return it->second.type;
  return std::nullopt;
}

}  // namespace

std::vector<InstanceId> scan_connectors(const MetaModel& mm, const Model& m, const InstanceId& relationship,
                                        const ConnectorBinding& b) {
  std::vector<InstanceId> out;
  const auto& rel_type = m.relationships.at(relationship).type;
  const auto& role_type = m.roles.at(b.role).type;
  const auto& obj_type = m.objects.at(b.object).type;
  std::optional<TypeName> pt;
  if (b.point) pt = m.points.at(*b.point).type;
  for (const auto& [id, c] : mm.connectors) {
    if (c.relationship_type.str() == rel_type.str() && c.role_type.str() == role_type.str() &&
        c.object_type.str() == obj_type.str() && c.point_type.has_value() == pt.has_value() &&
        (!pt || c.point_type->str() == pt->str())) {
      out.push_back(id);
    }
  }
  return out;
}

bool connection_licensed(const MetaModel& mm, const Model& m, const InstanceId& rel) {
  const auto& c = m.connections.at(rel);
  const auto s = scan_connectors(mm, m, rel, c.start);
  const auto e = scan_connectors(mm, m, rel, c.end);
  if (std::find(s.begin(), s.end(), c.start.connector) == s.end()) return false;
  if (std::find(e.begin(), e.end(), c.end.connector) == e.end()) return false;
  for (const auto& r : mm.rules) {
    if (r.start == c.start.connector && r.end == c.end.connector) return true;
  }
  return false;
}

std::size_t distinct_rule_connectors(const MetaModel& mm) {
  std::vector<std::string> ends;
  for (const auto& r : mm.rules) {
    ends.push_back(r.start.str());
    ends.push_back(r.end.str());
  }
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    bool earlier = false;
    for (std::size_t j = 0; j < i; ++j) earlier = earlier || ends[j] == ends[i];
    if (!earlier) ++distinct;
  }
  return distinct;
}

std::size_t metamodel_triple_count(const MetaModel& mm) {
  const std::size_t vocabulary = 7 + 14;  // kind classes + declared predicates
  std::size_t types = 0, icons = 0, points = 0;
  auto count = [&](const auto& decls) {
    for (const auto& [name, def] : decls) {
      ++types;
      if (def.icon_path) ++icons;
    }
  };
  count(mm.graph_types);
  count(mm.object_types);
  count(mm.point_types);
  count(mm.relationship_types);
  count(mm.role_types);
  count(mm.property_types);
  for (const auto& [id, c] : mm.connectors) points += c.point_type ? 1 : 0;
  return vocabulary + types + icons + 4 * mm.connectors.size() + points;
}

std::vector<std::string> metamodel_lines(const MetaModel& mm, const std::string& base) {
  std::vector<std::string> out;
  auto se = [&](const std::string& local) { return angle(base + local); };
  for (const char* k : {"Graph", "Object", "Point", "Relationship", "Role", "Property", "Connector"}) {
    out.push_back(line(se(k), kRdfType, angle(kOwl + "Class")));
  }
  for (const char* p : {"graphIncludingObject", "graphIncludingRelationship", "linkObjectAndPoint",
                        "linkRelationshipAndRole", "hasProperty", "graphIncludingConnector", "linkFromRelationship",
                        "linkToObject", "connect", "roleBindingObject", "roleBindingPoint"}) {
    out.push_back(line(se(p), kRdfType, angle(kOwl + "ObjectProperty")));
  }
  out.push_back(line(se("hasValue"), kRdfType, angle(kOwl + "DatatypeProperty")));
  out.push_back(line(se("modelIconPath"), kRdfType, angle(kOwl + "DatatypeProperty")));
  out.push_back(line(se("iconPath"), kRdfType, angle(kOwl + "AnnotationProperty")));

  auto decls = [&](const auto& map, const char* kind) {
    for (const auto& [name, def] : map) {
      out.push_back(line(se(name.str()), kSubClass, se(kind)));
      if (def.icon_path) out.push_back(line(se(name.str()), se("iconPath"), quoted(*def.icon_path)));
    }
  };
  decls(mm.graph_types, "Graph");
  decls(mm.object_types, "Object");
  decls(mm.point_types, "Point");
  decls(mm.relationship_types, "Relationship");
  decls(mm.role_types, "Role");
  decls(mm.property_types, "Property");
  for (const auto& [id, c] : mm.connectors) {
    const std::string subj = se("Connector_" + id.str());
    out.push_back(line(subj, kRdfType, se("Connector")));
    out.push_back(line(subj, se("linkFromRelationship"), se(c.relationship_type.str())));
    out.push_back(line(subj, se("linkToObject"), se(c.object_type.str())));
    out.push_back(line(subj, se("roleBindingObject"), se(c.role_type.str())));
    if (c.point_type) out.push_back(line(subj, se("roleBindingPoint"), se(c.point_type->str())));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> model_lines(const MetaModel&, const Model& m, const std::string& base) {
  std::vector<std::string> out;
  auto se = [&](const std::string& local) { return angle(base + local); };
  auto ind = [&](const InstanceId& id) { return se(type_in_model(m, id)->str() + "_" + id.str()); };
  auto conn = [&](const ConnectorBinding& b) { return se(b.connector.str() + "_" + b.role.str()); };
  const std::string g = ind(m.graph_id);

  out.push_back(line(g, kRdfType, se(m.graph_type.str())));
  for (const auto& [id, o] : m.objects) {
    out.push_back(line(ind(id), kRdfType, se(o.type.str())));
    out.push_back(line(g, se("graphIncludingObject"), ind(id)));
  }
  for (const auto& [id, r] : m.relationships) {
    out.push_back(line(ind(id), kRdfType, se(r.type.str())));
    out.push_back(line(g, se("graphIncludingRelationship"), ind(id)));
  }
  for (const auto& [id, p] : m.points) {
    out.push_back(line(ind(id), kRdfType, se(p.type.str())));
    out.push_back(line(ind(p.owner), se("linkObjectAndPoint"), ind(id)));
  }
  for (const auto& [id, r] : m.roles) {
    out.push_back(line(ind(id), kRdfType, se(r.type.str())));
    out.push_back(line(ind(r.owner), se("linkRelationshipAndRole"), ind(id)));
  }
  for (const auto& [id, p] : m.properties) {
    out.push_back(line(ind(id), kRdfType, se(p.type.str())));
    out.push_back(line(ind(p.owner), se("hasProperty"), ind(id)));
    out.push_back(line(ind(id), se("hasValue"), quoted(p.value.lexical) + "^^" + angle(kXsd + xsd_name(p.value.datatype))));
  }
  for (const auto& [rel, c] : m.connections) {
    for (const ConnectorBinding* b : {&c.start, &c.end}) {
      out.push_back(line(conn(*b), kRdfType, se("Connector")));
      out.push_back(line(g, se("graphIncludingConnector"), conn(*b)));
      out.push_back(line(conn(*b), se("linkFromRelationship"), ind(rel)));
      out.push_back(line(conn(*b), se("linkToObject"), ind(b->object)));
      out.push_back(line(ind(b->role), se("roleBindingObject"), ind(b->object)));
      if (b->point) out.push_back(line(ind(b->role), se("roleBindingPoint"), ind(*b->point)));
    }
    out.push_back(line(conn(c.start), se("connect"), conn(c.end)));
  }
  for (const auto& [id, path] : m.icon_overrides) out.push_back(line(ind(id), se("modelIconPath"), quoted(path)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::set<Row> nested_loop_join(const kg::TripleSet& ts, const query::Pattern& p) {
  const std::vector<kg::Triple> all(ts.begin(), ts.end());
  std::vector<std::string> select = p.select;
  if (select.empty()) {
    for (const auto& t : p.triples) {
      for (const auto* s : {&t.subject, &t.predicate, &t.object}) {
        if (auto* v = std::get_if<query::Variable>(s);
            v && std::find(select.begin(), select.end(), v->name) == select.end()) {
          select.push_back(v->name);
        }
      }
    }
  }
  std::set<Row> out;
  std::map<std::string, std::string> env;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == p.triples.size()) {
      Row r;
      for (const auto& v : select) r.push_back(env.at(v));
      out.insert(r);
      return;
    }
    const auto& tp = p.triples[i];
    for (const auto& t : all) {
      auto saved = env;
      bool ok = true;
      const std::pair<const query::Slot*, const kg::Term*> pos[3] = {
          {&tp.subject, &t.subject}, {&tp.predicate, &t.predicate}, {&tp.object, &t.object}};
      for (const auto& [slot, term] : pos) {
        if (auto* v = std::get_if<query::Variable>(slot)) {
          auto [it, fresh] = env.emplace(v->name, term->ntriples());
          if (!fresh && it->second != term->ntriples()) ok = false;
        } else if (std::get<kg::Term>(*slot).ntriples() != term->ntriples()) {
          ok = false;
        }
        if (!ok) break;
      }
      if (ok) walk(i + 1);
      env = std::move(saved);
    }
  };
  walk(0);
  return out;
}

std::set<Row> rows_of(const query::BindingSet& b) {
  std::set<Row> out;
  for (const auto& r : b.rows) {
    Row row;
    for (const auto& t : r) row.push_back(t.ntriples());
    out.insert(row);
  }
  return out;
}

std::set<std::string> completeness_facts(const Model& m, const std::string& base) {
  auto iri = [&](const InstanceId& id) { return base + type_in_model(m, id)->str() + "_" + id.str(); };
  std::set<std::string> out;
  const std::string g = iri(m.graph_id);
  for (const auto& [id, o] : m.objects) out.insert("member\t" + g + "\t" + iri(id) + "\tobject");
  for (const auto& [id, r] : m.relationships) out.insert("member\t" + g + "\t" + iri(id) + "\trelationship");
  for (const auto& [id, p] : m.points) out.insert("structure\t" + iri(p.owner) + "\t" + iri(id) + "\tpoint");
  for (const auto& [id, r] : m.roles) out.insert("structure\t" + iri(r.owner) + "\t" + iri(id) + "\trole");
  for (const auto& [id, p] : m.properties) out.insert("property\t" + iri(p.owner) + "\t" + iri(id));
  return out;
}

std::set<std::string> completeness_facts(const query::CompletenessReport& r) {
  std::set<std::string> out;
  for (const auto& f : r.graph_members) {
    out.insert("member\t" + f.graph + "\t" + f.member + "\t" +
               (f.kind == query::MemberKind::Object ? "object" : "relationship"));
  }
  for (const auto& f : r.structure_links) {
    out.insert("structure\t" + f.owner + "\t" + f.part + "\t" + (f.kind == query::PartKind::Point ? "point" : "role"));
  }
  for (const auto& f : r.property_links) out.insert("property\t" + f.owner + "\t" + f.property);
  return out;
}

std::set<std::string> logic_connections(const Model& m, const std::string& base) {
  auto iri = [&](const InstanceId& id) { return base + type_in_model(m, id)->str() + "_" + id.str(); };
  std::set<std::string> out;
  for (const auto& [rel, c] : m.connections) {
    const auto ep = connection_endpoints(m, rel);
    out.insert(iri(rel) + "\t" + iri(ep.input.object) + "\t" + iri(ep.output.object));
  }
  return out;
}

std::set<std::string> logic_connections(const query::LogicReport& r) {
  std::set<std::string> out;
  for (const auto& f : r.connections) out.insert(f.relationship + "\t" + f.input + "\t" + f.output);
  return out;
}

std::set<std::string> logic_role_bindings(const Model& m, const std::string& base) {
  auto iri = [&](const InstanceId& id) { return base + type_in_model(m, id)->str() + "_" + id.str(); };
  std::set<std::string> out;
  for (const auto& [rel, c] : m.connections) {
    const auto ep = connection_endpoints(m, rel);
    const std::pair<const ConnectorBinding*, const Endpoint*> sides[] = {{&c.start, &ep.input}, {&c.end, &ep.output}};
    for (const auto& [b, e] : sides) {
      out.insert(iri(rel) + "\t" + iri(b->role) + "\t" + iri(e->object) + "\t" + (e->point ? iri(*e->point) : "-"));
    }
  }
  return out;
}

std::set<std::string> logic_role_bindings(const query::LogicReport& r) {
  std::set<std::string> out;
  for (const auto& f : r.role_bindings) {
    out.insert(f.relationship + "\t" + f.role + "\t" + f.object + "\t" + f.point.value_or("-"));
  }
  return out;
}

std::set<std::string> logic_directions(const Model& m, const std::string& base) {
  auto iri = [&](const InstanceId& id) { return base + type_in_model(m, id)->str() + "_" + id.str(); };
  std::set<std::string> out;
  for (const auto& [rel, c] : m.connections) {
    out.insert(iri(m.graph_id) + "\t" + iri(rel) + "\t" + iri(c.start.object));
  }
  return out;
}

std::set<std::string> logic_directions(const query::LogicReport& r) {
  std::set<std::string> out;
  for (const auto& f : r.directions) out.insert(f.graph + "\t" + f.relationship + "\t" + f.input);
  return out;
}

}  // namespace oracle

namespace oracle {

std::vector<std::string> turtle_lines(const std::string& text) {
  std::map<std::string, std::string> prefixes;
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\n' || c == '\t') {
      ++i;
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (text[j] != '"') j += text[j] == '\\' ? 2 : 1;
      ++j;
      if (text.compare(j, 2, "^^") == 0) {
        j += 2;
        while (j < text.size() && text[j] != ' ' && text[j] != '\n') ++j;
      }
      tokens.push_back(text.substr(i, j - i));
      i = j;
    } else if (c == '<') {
      const auto j = text.find('>', i);
      tokens.push_back(text.substr(i, j + 1 - i));
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '\n') ++j;
      tokens.push_back(text.substr(i, j - i));
      i = j;
    }
  }
  auto expand = [&](const std::string& tok) -> std::string {
    if (tok == "a") return "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
    if (tok.front() == '<') return tok;
    if (tok.front() == '"') {
      const auto dt = tok.rfind("^^");
      if (dt == std::string::npos || tok.back() == '"') return tok;
      const std::string d = tok.substr(dt + 2);
      if (d.front() == '<') return tok;
      const auto colon = d.find(':');
      return tok.substr(0, dt) + "^^<" + prefixes.at(d.substr(0, colon)) + d.substr(colon + 1) + ">";
    }
    const auto colon = tok.find(':');
    return "<" + prefixes.at(tok.substr(0, colon)) + tok.substr(colon + 1) + ">";
  };
  std::vector<std::string> out;
  std::size_t k = 0;
  while (k < tokens.size()) {
    if (tokens[k] == "@prefix") {
      const std::string name = tokens[k + 1].substr(0, tokens[k + 1].size() - 1);
      prefixes[name] = tokens[k + 2].substr(1, tokens[k + 2].size() - 2);
      k += 4;
      continue;
    }
    const std::string s = expand(tokens[k++]);
    while (true) {
      const std::string p = expand(tokens[k]);
      const std::string o = expand(tokens[k + 1]);
      out.push_back(s + " " + p + " " + o + " .");
      const std::string sep = tokens[k + 2];
      k += 3;
      if (sep == ".") break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle

#include <algorithm>
#include <map>

#include <json.hpp>

#include "gopprre/query.hpp"

namespace gopprre::query {
namespace {

using kg::Predicate;
using Json = nlohmann::json;

Variable var(std::string name) { return Variable{std::move(name)}; }

std::string_view to_string(MemberKind k) { return k == MemberKind::Object ? "object" : "relationship"; }
std::string_view to_string(PartKind k) { return k == PartKind::Point ? "point" : "role"; }

const std::string& iri_of(const std::vector<Term>& row, std::size_t i) { return row[i].value(); }

// Fields of each fact, in TSV column order.
std::vector<std::string> fields(const MembershipFact& f) {
  return {f.graph, f.member, std::string(to_string(f.kind))};
}
std::vector<std::string> fields(const StructureFact& f) { return {f.owner, f.part, std::string(to_string(f.kind))}; }
std::vector<std::string> fields(const PropertyFact& f) { return {f.owner, f.property}; }
std::vector<std::string> fields(const ValueFact& f) { return {f.property, f.value}; }
std::vector<std::string> fields(const ConnectionFact& f) { return {f.relationship, f.input, f.output}; }
std::vector<std::string> fields(const DirectionFact& f) { return {f.graph, f.relationship, f.input}; }
std::vector<std::string> fields(const RoleBindingFact& f) {
  return {f.relationship, f.role, f.object, f.point.value_or("-")};
}

std::string tsv_field(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\t') out += "\\t";
    else if (c == '\n') out += "\\n";
    else out += c;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '\t';
    out += tsv_field(parts[i]);
  }
  return out;
}

template <class Fact>
void add_rows(std::vector<std::string>& rows, std::string_view section, const std::set<Fact>& facts) {
  for (const auto& f : facts) rows.push_back(std::string(section) + "\t" + join(fields(f)));
}

std::string finish_rows(std::vector<std::string> rows) {
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& r : rows) out += r + "\n";
  return out;
}

Json to_json_fact(const MembershipFact& f) {
  return {{"graph", f.graph}, {"member", f.member}, {"kind", to_string(f.kind)}};
}
Json to_json_fact(const StructureFact& f) { return {{"owner", f.owner}, {"part", f.part}, {"kind", to_string(f.kind)}}; }
Json to_json_fact(const PropertyFact& f) { return {{"owner", f.owner}, {"property", f.property}}; }
Json to_json_fact(const ValueFact& f) { return {{"property", f.property}, {"value", f.value}}; }
Json to_json_fact(const ConnectionFact& f) {
  return {{"relationship", f.relationship}, {"input", f.input}, {"output", f.output}};
}
Json to_json_fact(const DirectionFact& f) {
  return {{"graph", f.graph}, {"relationship", f.relationship}, {"input", f.input}};
}
Json to_json_fact(const RoleBindingFact& f) {
  Json j = {{"relationship", f.relationship}, {"role", f.role}, {"object", f.object}};
  j["point"] = f.point ? Json(*f.point) : Json(nullptr);
  return j;
}

template <class Fact>
Json to_json_set(const std::set<Fact>& facts) {
  Json arr = Json::array();
  for (const auto& f : facts) arr.push_back(to_json_fact(f));
  return arr;
}

Json json_of(const CompletenessReport& r) {
  return {{"graph_members", to_json_set(r.graph_members)},
          {"structure_links", to_json_set(r.structure_links)},
          {"property_links", to_json_set(r.property_links)},
          {"property_values", to_json_set(r.property_values)}};
}

Json json_of(const LogicReport& r) {
  return {{"connections", to_json_set(r.connections)},
          {"directions", to_json_set(r.directions)},
          {"role_bindings", to_json_set(r.role_bindings)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <class Fact>
void diff_section(std::vector<DiffEntry>& out, std::string_view section, const std::set<Fact>& expected,
                  const std::set<Fact>& actual) {
  for (const auto& f : expected) {
    if (!actual.count(f)) out.push_back({std::string(section), DiffEntry::Kind::Missing, join(fields(f))});
  }
  for (const auto& f : actual) {
    if (!expected.count(f)) out.push_back({std::string(section), DiffEntry::Kind::Unexpected, join(fields(f))});
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Patterns

Pattern completeness_pattern(MemberKind kind, const kg::Vocabulary& vocab) {
  const auto p = kind == MemberKind::Object ? Predicate::GraphIncludingObject : Predicate::GraphIncludingRelationship;
  return Pattern{{{var("graph"), vocab.predicate(p), var("member")}}, {"graph", "member"}};
}

Pattern structure_pattern(PartKind kind, const kg::Vocabulary& vocab) {
  const auto p = kind == PartKind::Point ? Predicate::LinkObjectAndPoint : Predicate::LinkRelationshipAndRole;
  return Pattern{{{var("owner"), vocab.predicate(p), var("part")}}, {"owner", "part"}};
}

Pattern property_pattern(const kg::Vocabulary& vocab) {
  return Pattern{{{var("owner"), vocab.predicate(Predicate::HasProperty), var("property")}}, {"owner", "property"}};
}

Pattern connection_pattern(const kg::Vocabulary& vocab) {
  const Term type = kg::Vocabulary::rdf_type();
  const Term connector = vocab.kind_class(MetaKind::Connector);
  auto p = [&](Predicate x) { return vocab.predicate(x); };
  Pattern out;
  out.triples = {
      {var("c1"), type, connector},
      {var("c2"), type, connector},
      {var("graph"), p(Predicate::GraphIncludingConnector), var("c1")},
      {var("graph"), p(Predicate::GraphIncludingConnector), var("c2")},
      {var("c1"), p(Predicate::LinkFromRelationship), var("relationship")},
      {var("c2"), p(Predicate::LinkFromRelationship), var("relationship")},
      {var("c1"), p(Predicate::LinkToObject), var("input")},
      {var("c2"), p(Predicate::LinkToObject), var("output")},
      {var("c1"), p(Predicate::Connect), var("c2")},
  };
  out.select = {"graph", "relationship", "input", "output"};
  return out;
}

// ---------------------------------------------------------------------------
// Reports over triples

CompletenessReport completeness_report(const TripleStore& store, const kg::Vocabulary& vocab) {
  CompletenessReport r;
  for (MemberKind k : {MemberKind::Object, MemberKind::Relationship}) {
    for (const auto& row : match(store, completeness_pattern(k, vocab)).rows) {
      r.graph_members.insert({iri_of(row, 0), iri_of(row, 1), k});
    }
  }
  for (PartKind k : {PartKind::Point, PartKind::Role}) {
    for (const auto& row : match(store, structure_pattern(k, vocab)).rows) {
      r.structure_links.insert({iri_of(row, 0), iri_of(row, 1), k});
    }
  }
  for (const auto& row : match(store, property_pattern(vocab)).rows) {
    r.property_links.insert({iri_of(row, 0), iri_of(row, 1)});
  }
  const Pattern values{{{var("property"), vocab.predicate(Predicate::HasValue), var("value")}}, {}};
  for (const auto& row : match(store, values).rows) {
    if (row[0].is_iri()) r.property_values.insert({row[0].value(), row[1].ntriples()});
  }
  return r;
}

CompletenessReport completeness_report(const TripleSet& ts, const kg::Vocabulary& vocab) {
  return completeness_report(TripleStore(ts), vocab);
}

LogicReport logic_report(const TripleStore& store, const kg::Vocabulary& vocab) {
  LogicReport r;
  for (const auto& row : match(store, connection_pattern(vocab)).rows) {
    r.connections.insert({iri_of(row, 1), iri_of(row, 2), iri_of(row, 3)});
    r.directions.insert({iri_of(row, 0), iri_of(row, 1), iri_of(row, 2)});
  }

  // The point a role binds to is looked up per role rather than per
  // connector: a self-loop has two connectors on the same object.
  std::map<std::string, std::vector<std::string>> points;
  const Pattern point_pattern{{{var("role"), vocab.predicate(Predicate::RoleBindingPoint), var("point")}}, {}};
  for (const auto& row : match(store, point_pattern).rows) {
    if (row[1].is_iri()) points[row[0].value()].push_back(row[1].value());
  }
  const Pattern role_pattern{{{var("relationship"), vocab.predicate(Predicate::LinkRelationshipAndRole), var("role")},
                              {var("role"), vocab.predicate(Predicate::RoleBindingObject), var("object")}},
                             {}};
  for (const auto& row : match(store, role_pattern).rows) {
    if (!row[2].is_iri()) continue;
    auto it = points.find(iri_of(row, 1));
    if (it == points.end()) {
      r.role_bindings.insert({iri_of(row, 0), iri_of(row, 1), iri_of(row, 2), std::nullopt});
    } else {
      for (const auto& pt : it->second) r.role_bindings.insert({iri_of(row, 0), iri_of(row, 1), iri_of(row, 2), pt});
    }
  }
  return r;
}

LogicReport logic_report(const TripleSet& ts, const kg::Vocabulary& vocab) {
  return logic_report(TripleStore(ts), vocab);
}

// ---------------------------------------------------------------------------
// Ground truth from the model

CompletenessReport expected_completeness(const Model& m, const kg::Vocabulary& vocab) {
  auto iri = [&](const InstanceId& id) { return vocab.individual(*m.type_of(id), id).value(); };
  const std::string graph = vocab.individual(m.graph_type, m.graph_id).value();
  CompletenessReport r;
  for (const auto& [id, o] : m.objects) r.graph_members.insert({graph, iri(id), MemberKind::Object});
  for (const auto& [id, o] : m.relationships) r.graph_members.insert({graph, iri(id), MemberKind::Relationship});
  for (const auto& [id, p] : m.points) r.structure_links.insert({iri(p.owner), iri(id), PartKind::Point});
  for (const auto& [id, ro] : m.roles) r.structure_links.insert({iri(ro.owner), iri(id), PartKind::Role});
  for (const auto& [id, p] : m.properties) {
    r.property_links.insert({iri(p.owner), iri(id)});
    r.property_values.insert({iri(id), Term::typed(p.value).ntriples()});
  }
  return r;
}

LogicReport expected_logic(const Model& m, const kg::Vocabulary& vocab) {
  auto iri = [&](const InstanceId& id) { return vocab.individual(*m.type_of(id), id).value(); };
  const std::string graph = vocab.individual(m.graph_type, m.graph_id).value();
  LogicReport r;
  for (const auto& [rel, c] : m.connections) {
    const std::string rel_iri = iri(rel);
    r.connections.insert({rel_iri, iri(c.start.object), iri(c.end.object)});
    r.directions.insert({graph, rel_iri, iri(c.start.object)});
    for (const ConnectorBinding* b : {&c.start, &c.end}) {
      std::optional<std::string> point;
      if (b->point) point = iri(*b->point);
      r.role_bindings.insert({rel_iri, iri(b->role), iri(b->object), point});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Verification

std::string_view to_string(DiffEntry::Kind kind) {
  switch (kind) {
    case DiffEntry::Kind::Missing: return "missing";
    case DiffEntry::Kind::Unexpected: return "unexpected";
    case DiffEntry::Kind::DirectionReversed: return "direction_reversed";
  }
  return "?";
}

VerificationDiff verify(const Model& m, const MetaModel& mm, const TripleSet& ts, const kg::Vocabulary& vocab) {
  if (auto report = validate_model(mm, m); !report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::InvalidInput, v.code, "invalid model: " + v.message);
  }
  const TripleStore store(ts);
  VerificationDiff d;
  d.completeness = completeness_report(store, vocab);
  d.logic = logic_report(store, vocab);
  const auto want_c = expected_completeness(m, vocab);
  const auto want_l = expected_logic(m, vocab);

  diff_section(d.entries, "graph_members", want_c.graph_members, d.completeness.graph_members);
  diff_section(d.entries, "structure_links", want_c.structure_links, d.completeness.structure_links);
  diff_section(d.entries, "property_links", want_c.property_links, d.completeness.property_links);
  diff_section(d.entries, "property_values", want_c.property_values, d.completeness.property_values);

  // A connection found only the other way round is one reversed fact, not
  // a missing plus an unexpected one.
  std::set<ConnectionFact> missing, unexpected;
  for (const auto& f : want_l.connections) {
    if (!d.logic.connections.count(f)) missing.insert(f);
  }
  for (const auto& f : d.logic.connections) {
    if (!want_l.connections.count(f)) unexpected.insert(f);
  }
  for (auto it = missing.begin(); it != missing.end();) {
    const ConnectionFact flipped{it->relationship, it->output, it->input};
    if (unexpected.count(flipped)) {
      d.entries.push_back({"connections", DiffEntry::Kind::DirectionReversed, join(fields(*it))});
      unexpected.erase(flipped);
      it = missing.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& f : missing) d.entries.push_back({"connections", DiffEntry::Kind::Missing, join(fields(f))});
  for (const auto& f : unexpected) d.entries.push_back({"connections", DiffEntry::Kind::Unexpected, join(fields(f))});

  diff_section(d.entries, "directions", want_l.directions, d.logic.directions);
  diff_section(d.entries, "role_bindings", want_l.role_bindings, d.logic.role_bindings);
  std::sort(d.entries.begin(), d.entries.end());
  return d;
}

// ---------------------------------------------------------------------------
// Serialization

std::string to_tsv(const CompletenessReport& r) {
  std::vector<std::string> rows;
  add_rows(rows, "graph_member", r.graph_members);
  add_rows(rows, "structure_link", r.structure_links);
  add_rows(rows, "property_link", r.property_links);
  add_rows(rows, "property_value", r.property_values);
  return finish_rows(std::move(rows));
}

std::string to_tsv(const LogicReport& r) {
  std::vector<std::string> rows;
  add_rows(rows, "connection", r.connections);
  add_rows(rows, "direction", r.directions);
  add_rows(rows, "role_binding", r.role_bindings);
  return finish_rows(std::move(rows));
}

std::string to_tsv(const VerificationDiff& d) {
  std::vector<std::string> rows;
  for (const auto& e : d.entries) rows.push_back(std::string(to_string(e.kind)) + "\t" + e.section + "\t" + e.fact);
  return finish_rows(std::move(rows));
}

std::string to_json(const CompletenessReport& r) { return dump(json_of(r)); }
std::string to_json(const LogicReport& r) { return dump(json_of(r)); }

std::string to_json(const VerificationDiff& d) {
  Json entries = Json::array();
  for (const auto& e : d.entries) {
    entries.push_back({{"kind", to_string(e.kind)}, {"section", e.section}, {"fact", e.fact}});
  }
  return dump({{"completeness", json_of(d.completeness)},
               {"logic", json_of(d.logic)},
               {"diff", entries},
               {"ok", d.empty()}});
}

}  // namespace gopprre::query

#include "gopprre/kg.hpp"

namespace gopprre::kg {
namespace {

class Emitter {
 public:
  explicit Emitter(const Vocabulary& vocab) : vocab_(vocab) {}

  void add(const Term& s, const Term& p, const Term& o) { out_.emplace(s, p, o); }
  void add(const Term& s, Predicate p, const Term& o) { add(s, vocab_.predicate(p), o); }
  void type(const Term& s, const Term& cls) { add(s, Vocabulary::rdf_type(), cls); }

  TripleSet take() { return std::move(out_); }

 private:
  const Vocabulary& vocab_;
  TripleSet out_;
};

[[noreturn]] void invalid(const std::string& what, const ValidationReport& report) {
  const auto& v = report.violations.front();
  throw Error(ErrorCode::InvalidInput, v.code, what + ": " + v.message);
}

template <class Map>
void export_decls(Emitter& out, const Vocabulary& vocab, const Map& decls, MetaKind kind) {
  const Term parent = vocab.kind_class(kind);
  for (const auto& [name, def] : decls) {
    const Term cls = vocab.type_class(name);
    out.add(cls, Vocabulary::rdfs_subclass_of(), parent);
    if (def.icon_path) out.add(cls, Predicate::IconPath, Term::literal(*def.icon_path));
  }
}

}  // namespace

TripleSet export_metamodel(const MetaModel& mm, const Vocabulary& vocab) {
  if (auto report = validate_metamodel(mm); !report.ok()) invalid("invalid meta-model", report);

  Emitter out(vocab);
  for (MetaKind k : kAllMetaKinds) out.type(vocab.kind_class(k), Vocabulary::owl_class());
  for (Predicate p : kAllPredicates) {
    switch (property_kind(p)) {
      case PropertyKind::Object: out.type(vocab.predicate(p), Vocabulary::owl_object_property()); break;
      case PropertyKind::Data: out.type(vocab.predicate(p), Vocabulary::owl_datatype_property()); break;
      case PropertyKind::Annotation:
        out.type(vocab.predicate(p), Vocabulary::owl_annotation_property());
        break;
    }
  }

  export_decls(out, vocab, mm.graph_types, MetaKind::Graph);
  export_decls(out, vocab, mm.object_types, MetaKind::Object);
  export_decls(out, vocab, mm.point_types, MetaKind::Point);
  export_decls(out, vocab, mm.relationship_types, MetaKind::Relationship);
  export_decls(out, vocab, mm.role_types, MetaKind::Role);
  export_decls(out, vocab, mm.property_types, MetaKind::Property);

  for (const auto& [id, c] : mm.connectors) {
    const Term rule = vocab.connector_rule(id);
    out.type(rule, vocab.kind_class(MetaKind::Connector));
    out.add(rule, Predicate::LinkFromRelationship, vocab.type_class(c.relationship_type));
    out.add(rule, Predicate::LinkToObject, vocab.type_class(c.object_type));
    out.add(rule, Predicate::RoleBindingObject, vocab.type_class(c.role_type));
    if (c.point_type) out.add(rule, Predicate::RoleBindingPoint, vocab.type_class(*c.point_type));
  }
  return out.take();
}

TripleSet export_model(const MetaModel& mm, const Model& m, const Vocabulary& vocab) {
  if (auto report = validate_metamodel(mm); !report.ok()) invalid("invalid meta-model", report);
  if (auto report = validate_model(mm, m); !report.ok()) invalid("invalid model", report);

  Emitter out(vocab);
  auto ind = [&](const InstanceId& id) { return vocab.individual(*m.type_of(id), id); };

  const Term graph = vocab.individual(m.graph_type, m.graph_id);
  out.type(graph, vocab.type_class(m.graph_type));

  for (const auto& [id, o] : m.objects) {
    out.type(ind(id), vocab.type_class(o.type));
    out.add(graph, Predicate::GraphIncludingObject, ind(id));
  }
  for (const auto& [id, r] : m.relationships) {
    out.type(ind(id), vocab.type_class(r.type));
    out.add(graph, Predicate::GraphIncludingRelationship, ind(id));
  }
  for (const auto& [id, p] : m.points) {
    out.type(ind(id), vocab.type_class(p.type));
    out.add(ind(p.owner), Predicate::LinkObjectAndPoint, ind(id));
  }
  for (const auto& [id, r] : m.roles) {
    out.type(ind(id), vocab.type_class(r.type));
    out.add(ind(r.owner), Predicate::LinkRelationshipAndRole, ind(id));
  }
  for (const auto& [id, p] : m.properties) {
    out.type(ind(id), vocab.type_class(p.type));
    out.add(ind(p.owner), Predicate::HasProperty, ind(id));
    out.add(ind(id), Predicate::HasValue, Term::typed(p.value));
  }

  // Each binding becomes a connector individual inside the graph; `connect`
  // runs from the start connector to the end connector.
  for (const auto& [rel_id, c] : m.connections) {
    const Term rel = ind(rel_id);
    for (const ConnectorBinding* b : {&c.start, &c.end}) {
      const Term conn = vocab.binding(*b);
      out.type(conn, vocab.kind_class(MetaKind::Connector));
      out.add(graph, Predicate::GraphIncludingConnector, conn);
      out.add(conn, Predicate::LinkFromRelationship, rel);
      out.add(conn, Predicate::LinkToObject, ind(b->object));
      out.add(ind(b->role), Predicate::RoleBindingObject, ind(b->object));
      if (b->point) out.add(ind(b->role), Predicate::RoleBindingPoint, ind(*b->point));
    }
    out.add(vocab.binding(c.start), Predicate::Connect, vocab.binding(c.end));
  }

  for (const auto& [id, path] : m.icon_overrides) {
    out.add(ind(id), Predicate::ModelIconPath, Term::literal(path));
  }
  return out.take();
}

}  // namespace gopprre::kg

#include <gtest/gtest.h>

#include <algorithm>
#include <json.hpp>

#include "gopprre/fixtures.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gopprre;
using namespace gopprre::query;
using kg::Triple;

namespace {

const std::string kSe = oracle::kSe;
const std::string kT = "http://example.org/t#";

Term iri(const std::string& local) { return Term::iri(kT + local); }

TripleSet small_store() {
  TripleSet ts;
  ts.emplace(iri("a"), iri("knows"), iri("b"));
  ts.emplace(iri("b"), iri("knows"), iri("c"));
  ts.emplace(iri("c"), iri("knows"), iri("a"));
  ts.emplace(iri("a"), iri("age"), Term::typed({Datatype::Integer, "3"}));
  ts.emplace(iri("a"), iri("knows"), iri("a"));
  return ts;
}

Pattern p(const std::string& text) {
  return parse_pattern("select * where { " + text + " }", kg::Vocabulary(kT));
}

struct Exported {
  MetaModel mm;
  Model m;
  TripleSet ts;
};

Exported exported(const std::string& pack, const std::string& model) {
  const auto lp = fixtures::load_pack(pack);
  Exported e{lp.metamodel, lp.model(model).model, {}};
  e.ts = kg::export_metamodel(e.mm);
  e.ts.merge(kg::export_model(e.mm, e.m));
  return e;
}

std::vector<DiffEntry> entries_of(const VerificationDiff& d, const std::string& section) {
  std::vector<DiffEntry> out;
  for (const auto& e : d.entries) {
    if (e.section == section) out.push_back(e);
  }
  return out;
}

}  // namespace

// --- pattern parsing

TEST(PatternParse, Forms) {
  const kg::Vocabulary v;
  const auto a = parse_pattern("?g se:graphIncludingObject ?o . ?o a ?t", v);
  ASSERT_EQ(a.triples.size(), 2u);
  EXPECT_TRUE(a.select.empty());
  EXPECT_EQ(std::get<Term>(a.triples[0].predicate).value(), kSe + "graphIncludingObject");
  EXPECT_EQ(std::get<Term>(a.triples[1].predicate), kg::Vocabulary::rdf_type());

  const auto b = parse_pattern("SELECT ?o WHERE { ?o <urn:x:p> \"v\\\"1\"^^xsd:integer . }", v);
  EXPECT_EQ(b.select, std::vector<std::string>{"o"});
  EXPECT_EQ(std::get<Term>(b.triples[0].object).ntriples(), "\"v\\\"1\"^^<http://www.w3.org/2001/XMLSchema#integer>");
}

TEST(PatternParse, Malformed) {
  const kg::Vocabulary v;
  for (const char* bad : {"", "?a ?b", "?a ?b ?c ?d", "\"x\" ?p ?o", "?s \"x\" ?o", "?s foo:bar ?o",
                          "select ?z where { ?a ?b ?c }", "select ?a ?a where { ?a ?b ?c }", "{ ?a ?b ?c",
                          "?a ?b <unterminated", "?1a ?b ?c", "? ?b ?c", "?s ?p \"bad\\q\""}) {
    try {
      parse_pattern(bad, v);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedPattern) << bad;
    }
  }
}

TEST(PatternCheck, ProgrammaticPatterns) {
  EXPECT_THROW(check_pattern(Pattern{}), Error);
  Pattern bad{{{Variable{"x-y"}, iri("p"), Variable{"o"}}}, {}};
  EXPECT_THROW(check_pattern(bad), Error);
  Pattern good{{{Variable{"s"}, iri("p"), Variable{"o"}}}, {"o"}};
  EXPECT_NO_THROW(check_pattern(good));
}

// --- matching

TEST(Match, SingleTriple) {
  const auto r = match(small_store(), p("?x <" + kT + "knows> ?y"));
  EXPECT_EQ(r.variables, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(r.rows.size(), 4u);
}

TEST(Match, JoinAndRepeatedVariable) {
  const auto chain = match(small_store(), p("?x <" + kT + "knows> ?y . ?y <" + kT + "knows> ?z"));
  EXPECT_EQ(oracle::rows_of(chain), oracle::nested_loop_join(small_store(), p("?x <" + kT + "knows> ?y . ?y <" + kT +
                                                                              "knows> ?z")));
  const auto self = match(small_store(), p("?x <" + kT + "knows> ?x"));
  ASSERT_EQ(self.rows.size(), 1u);
  EXPECT_EQ(self.rows[0][0], iri("a"));
}

TEST(Match, AbsentConstantYieldsNothing) {
  const auto r = match(small_store(), p("?x <" + kT + "nothere> ?y"));
  EXPECT_EQ(r.variables.size(), 2u);
  EXPECT_TRUE(r.rows.empty());
}

TEST(Match, BooleanPattern) {
  const auto yes = match(small_store(), p("<" + kT + "a> <" + kT + "knows> <" + kT + "b>"));
  EXPECT_TRUE(yes.variables.empty());
  EXPECT_EQ(yes.rows.size(), 1u);
  const auto no = match(small_store(), p("<" + kT + "b> <" + kT + "knows> <" + kT + "a>"));
  EXPECT_TRUE(no.rows.empty());
}

TEST(Match, ProjectionDeduplicates) {
  const Pattern q = parse_pattern("select ?x where { ?x <" + kT + "knows> ?y }", kg::Vocabulary(kT));
  const auto r = match(small_store(), q);
  EXPECT_EQ(r.rows.size(), 3u);
  EXPECT_TRUE(std::is_sorted(r.rows.begin(), r.rows.end()));
}

TEST(Match, LiteralObject) {
  const auto r = match(small_store(), p("?x <" + kT + "age> \"3\"^^xsd:integer"));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0][0], iri("a"));
}

TEST(Match, EmptyStore) {
  const auto r = match(TripleSet{}, p("?a ?b ?c"));
  EXPECT_TRUE(r.rows.empty());
}

TEST(Match, StoreScanRanges) {
  const TripleStore store(small_store());
  EXPECT_EQ(store.size(), 5u);
  const auto a = store.lookup(iri("a"));
  const auto knows = store.lookup(iri("knows"));
  EXPECT_NE(a, TripleStore::kNoTerm);
  EXPECT_EQ(store.lookup(iri("zzz")), TripleStore::kNoTerm);
  EXPECT_EQ(store.scan(a, TripleStore::kNoTerm, TripleStore::kNoTerm).size(), 3u);
  EXPECT_EQ(store.scan(TripleStore::kNoTerm, knows, TripleStore::kNoTerm).size(), 4u);
  EXPECT_EQ(store.scan(TripleStore::kNoTerm, TripleStore::kNoTerm, a).size(), 2u);
  EXPECT_EQ(store.scan(a, TripleStore::kNoTerm, a).size(), 1u);
  EXPECT_EQ(store.scan(a, knows, a).size(), 1u);
  EXPECT_EQ(store.scan(TripleStore::kNoTerm, TripleStore::kNoTerm, TripleStore::kNoTerm).size(), 5u);
}

TEST(Match, RandomPatternsAgreeWithNestedLoop) {
  gen::Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto ts = gen::triples(rng, 5 + static_cast<int>(rng() % 120));
    const TripleStore store(ts);
    const auto q = gen::pattern(rng, ts, 4);
    const auto want = oracle::nested_loop_join(ts, q);
    const auto got = match(store, q);
    ASSERT_EQ(oracle::rows_of(got), want) << "seed 2024 case " << i;
    ASSERT_EQ(match_serial(store, q), got) << "seed 2024 case " << i;
  }
}

TEST(Match, ReportPatternsAgreeWithSerialOnFixtures) {
  const auto e = exported("mini_sysml", "ibd_small");
  const TripleStore store(e.ts);
  const kg::Vocabulary v;
  for (const auto& q : {completeness_pattern(MemberKind::Object, v), completeness_pattern(MemberKind::Relationship, v),
                        structure_pattern(PartKind::Point, v), structure_pattern(PartKind::Role, v),
                        property_pattern(v), connection_pattern(v)}) {
    const auto got = match(store, q);
    EXPECT_EQ(got, match_serial(store, q));
    EXPECT_EQ(oracle::rows_of(got), oracle::nested_loop_join(e.ts, q));
  }
}

// --- reports

TEST(Reports, CompletenessMatchesModelTraversal) {
  for (const auto& [pack, model] : std::vector<std::pair<std::string, std::string>>{
           {"mini_sysml", "ibd_small"}, {"mini_sysml", "bdd_plant"}, {"mini_bpmn", "order"}, {"mini_bpmn", "review"}}) {
    const auto e = exported(pack, model);
    const auto r = completeness_report(e.ts);
    EXPECT_EQ(oracle::completeness_facts(r), oracle::completeness_facts(e.m)) << model;
    EXPECT_EQ(r, expected_completeness(e.m)) << model;
  }
}

TEST(Reports, LogicMatchesEndpoints) {
  for (const auto& [pack, model] : std::vector<std::pair<std::string, std::string>>{
           {"mini_sysml", "ibd_small"}, {"mini_sysml", "bdd_plant"}, {"mini_bpmn", "order"}, {"mini_bpmn", "review"}}) {
    const auto e = exported(pack, model);
    const auto r = logic_report(e.ts);
    EXPECT_EQ(oracle::logic_connections(r), oracle::logic_connections(e.m)) << model;
    EXPECT_EQ(oracle::logic_directions(r), oracle::logic_directions(e.m)) << model;
    EXPECT_EQ(oracle::logic_role_bindings(r), oracle::logic_role_bindings(e.m)) << model;
    EXPECT_EQ(r, expected_logic(e.m)) << model;
  }
}

TEST(Reports, IbdFlowIsPumpToTank) {
  const auto e = exported("mini_sysml", "ibd_small");
  const auto r = logic_report(e.ts);
  const ConnectionFact flow{kSe + "ItemFlow_flow1", kSe + "Part_pump", kSe + "Part_tank"};
  bool found = false;
  for (const auto& c : r.connections) {
    if (c.relationship == flow.relationship) {
      found = true;
      EXPECT_EQ(c.input, flow.input);
      EXPECT_EQ(c.output, flow.output);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Reports, SelfLoop) {
  const auto mm = build::flow_metamodel();
  auto m = build::empty_model();
  m.objects.emplace("A", ObjectInstance{"Block"});
  build::connect(m, "loop", "A", "A");
  const auto r = logic_report(kg::export_model(mm, m));
  ASSERT_EQ(r.connections.size(), 1u);
  EXPECT_EQ(r.connections.begin()->input, r.connections.begin()->output);
  EXPECT_EQ(r, expected_logic(m));
}

TEST(Reports, RoleBindingsCarryPoints) {
  const auto e = exported("mini_sysml", "ibd_small");
  const auto r = logic_report(e.ts);
  std::size_t with_point = 0;
  for (const auto& b : r.role_bindings) with_point += b.point.has_value();
  EXPECT_EQ(r.role_bindings.size(), 4u);
  EXPECT_EQ(with_point, 2u);
}

// --- verify

TEST(Verify, FreshExportIsClean) {
  const auto e = exported("mini_bpmn", "order");
  const auto d = verify(e.m, e.mm, e.ts);
  EXPECT_TRUE(d.empty());
  EXPECT_EQ(to_tsv(d), "");
}

TEST(Verify, ReversedConnectIsDirectionReversed) {
  auto e = exported("mini_sysml", "ibd_small");
  const auto connect = Term::iri(kSe + "connect");
  std::vector<Triple> flipped;
  for (auto it = e.ts.begin(); it != e.ts.end();) {
    if (it->predicate == connect && it->subject.value().find("flow1") != std::string::npos) {
      flipped.emplace_back(it->object, it->predicate, it->subject);
      it = e.ts.erase(it);
    } else {
      ++it;
    }
  }
  ASSERT_EQ(flipped.size(), 1u);
  e.ts.insert(flipped.begin(), flipped.end());
  const auto d = verify(e.m, e.mm, e.ts);
  const auto conn = entries_of(d, "connections");
  ASSERT_EQ(conn.size(), 1u);
  EXPECT_EQ(conn[0].kind, DiffEntry::Kind::DirectionReversed);
  EXPECT_NE(conn[0].fact.find("Part_pump\t" + kSe + "Part_tank"), std::string::npos);
}

TEST(Verify, DroppedHasPropertyDetected) {
  auto e = exported("mini_sysml", "ibd_small");
  const auto hp = Term::iri(kSe + "hasProperty");
  const auto it = std::find_if(e.ts.begin(), e.ts.end(), [&](const Triple& t) { return t.predicate == hp; });
  ASSERT_NE(it, e.ts.end());
  const std::string owner = it->subject.value(), prop = it->object.value();
  e.ts.erase(it);
  const auto d = verify(e.m, e.mm, e.ts);
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries[0].section, "property_links");
  EXPECT_EQ(d.entries[0].kind, DiffEntry::Kind::Missing);
  EXPECT_EQ(d.entries[0].fact, owner + "\t" + prop);
}

TEST(Verify, ExtraMemberIsUnexpected) {
  auto e = exported("mini_bpmn", "review");
  e.ts.emplace(Term::iri(kSe + "Process_review"), Term::iri(kSe + "graphIncludingObject"),
               Term::iri(kSe + "Task_ghost"));
  const auto d = verify(e.m, e.mm, e.ts);
  bool seen = false;
  for (const auto& x : d.entries) {
    if (x.section == "graph_members" && x.kind == DiffEntry::Kind::Unexpected) seen = true;
  }
  EXPECT_TRUE(seen);
}

TEST(Verify, ModelOnlyTriplesStillVerify) {
  // The meta-model half is not needed by any query.
  const auto lp = fixtures::load_pack("mini_sysml");
  const auto& m = lp.model("bdd_plant").model;
  EXPECT_TRUE(verify(m, lp.metamodel, kg::export_model(lp.metamodel, m)).empty());
}

TEST(Verify, InvalidModelThrows) {
  auto m = build::two_blocks();
  m.objects.emplace("F", ObjectInstance{"Foo"});
  try {
    verify(m, build::flow_metamodel(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(Verify, RemovingConnectTriplesIsMonotone) {
  auto e = exported("mini_bpmn", "order");
  const auto connect = Term::iri(kSe + "connect");
  std::size_t removed = 0, last_missing = 0;
  while (true) {
    const auto it = std::find_if(e.ts.begin(), e.ts.end(), [&](const Triple& t) { return t.predicate == connect; });
    if (it == e.ts.end()) break;
    e.ts.erase(it);
    ++removed;
    const auto d = verify(e.m, e.mm, e.ts);
    std::size_t missing = 0;
    for (const auto& x : entries_of(d, "connections")) {
      EXPECT_EQ(x.kind, DiffEntry::Kind::Missing);
      ++missing;
    }
    EXPECT_EQ(missing, removed);
    EXPECT_GT(missing, last_missing);
    last_missing = missing;
  }
  EXPECT_EQ(removed, e.m.connections.size());
}

// --- text forms

TEST(TextForms, TsvRows) {
  const auto mm = build::flow_metamodel();
  const auto m = build::two_blocks();
  const auto ts = kg::export_model(mm, m);
  const auto c = to_tsv(completeness_report(ts));
  EXPECT_NE(c.find("graph_member\t" + kSe + "Diagram_d1\t" + kSe + "Block_A\tobject\n"), std::string::npos) << c;
  const auto l = to_tsv(logic_report(ts));
  EXPECT_NE(l.find("connection\t" + kSe + "Flow_r1\t" + kSe + "Block_A\t" + kSe + "Block_B\n"), std::string::npos)
      << l;
  EXPECT_NE(l.find("role_binding\t" + kSe + "Flow_r1\t" + kSe + "src_r1_s\t" + kSe + "Block_A\t-\n"),
            std::string::npos)
      << l;
}

TEST(TextForms, JsonShapes) {
  const auto e = exported("mini_bpmn", "order");
  auto ts = e.ts;
  std::erase_if(ts, [](const Triple& t) { return t.predicate.value() == oracle::kSe + "connect"; });
  const auto d = verify(e.m, e.mm, ts);
  const auto j = nlohmann::json::parse(to_json(d));
  EXPECT_FALSE(j.at("ok").get<bool>());
  EXPECT_EQ(j.at("diff").size(), d.entries.size());
  EXPECT_TRUE(j.at("completeness").contains("graph_members"));
  EXPECT_TRUE(j.at("logic").contains("connections"));
  const auto c = nlohmann::json::parse(to_json(completeness_report(e.ts)));
  EXPECT_EQ(c.at("graph_members").size(), e.m.objects.size() + e.m.relationships.size());
  const auto text = to_json(logic_report(e.ts));
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text, to_json(logic_report(e.ts)));
}

TEST(TextForms, TsvEscapesControlCharacters) {
  auto mm = build::flow_metamodel();
  mm.property_types.emplace("Note", PropertyTypeDef{});
  mm.property_slots.insert({MetaKind::Object, "Block", "Note", Datatype::String});
  auto m = build::two_blocks();
  m.properties.emplace("n", PropertyValue{"Note", "A", {Datatype::String, "a\tb\nc"}});
  const auto tsv = to_tsv(completeness_report(kg::export_model(mm, m)));
  for (const auto& line : oracle::split_lines(tsv)) {
    EXPECT_TRUE(line.starts_with("graph_member\t") || line.starts_with("structure_link\t") ||
                line.starts_with("property_link\t") || line.starts_with("property_value\t"))
        << line;
    const auto tabs = std::count(line.begin(), line.end(), '\t');
    EXPECT_LE(tabs, 3) << line;
  }
}

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "gopprre/dsl.hpp"
#include "gopprre/io.hpp"
#include "gopprre/kg.hpp"
#include "gopprre/query.hpp"

namespace gopprre::cli {
namespace {

using Json = nlohmann::json;

struct Options {
  bool json = false;
  std::string out_path;
  std::string format = "nt";
  std::string base_iri = std::string(kg::ns::kSe);
  std::string metamodel;
  std::string model;
  std::string triples;
};

Json to_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"code", x.code}, {"message", x.message}, {"ids", x.ids}});
  return {{"ok", r.ok()}, {"violations", v}};
}

void print_report(std::ostream& os, const std::string& label, const ValidationReport& r) {
  if (r.ok()) {
    os << label << ": valid\n";
    return;
  }
  os << label << ": " << r.violations.size() << " violation(s)\n";
  for (const auto& v : r.violations) {
    os << "  " << v.code << ": " << v.message;
    if (!v.ids.empty()) {
      os << " [";
      for (std::size_t i = 0; i < v.ids.size(); ++i) os << (i ? ", " : "") << v.ids[i];
      os << "]";
    }
    os << "\n";
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Decodes without semantic checks, so violations surface as findings.
MetaModel load_metamodel(const std::string& path) { return dsl::decode_metamodel(read_file(path)); }
Model load_model(const std::string& path) { return dsl::decode_model(read_file(path)); }

int cmd_validate(const Options& o, std::ostream& os) {
  const MetaModel mm = load_metamodel(o.metamodel);
  std::optional<Model> m;
  if (!o.model.empty()) m = load_model(o.model);

  const ValidationReport mm_report = validate_metamodel(mm);
  std::optional<ValidationReport> m_report;
  if (m && mm_report.ok()) m_report = validate_model(mm, *m);
  const bool ok = mm_report.ok() && (!m_report || m_report->ok());

  if (o.json) {
    Json j = {{"metamodel", to_json(mm_report)}, {"ok", ok}};
    j["model"] = m_report ? to_json(*m_report) : Json(nullptr);
    os << dump(j);
  } else {
    print_report(os, o.metamodel, mm_report);
    if (m && !m_report) os << o.model << ": skipped (meta-model invalid)\n";
    if (m_report) print_report(os, o.model, *m_report);
    os << (ok ? "OK" : "FAILED") << "\n";
  }
  return ok ? kOk : kFindings;
}

int report_invalid(const Options& o, std::ostream& os, const std::string& label, const ValidationReport& r) {
  if (o.json) {
    os << dump({{"ok", false}, {"invalid", label}, {"report", to_json(r)}});
  } else {
    print_report(os, label, r);
    os << "FAILED\n";
  }
  return kFindings;
}

int cmd_export(const Options& o, const kg::Vocabulary& vocab, std::ostream& os) {
  const MetaModel mm = load_metamodel(o.metamodel);
  if (auto r = validate_metamodel(mm); !r.ok()) return report_invalid(o, os, o.metamodel, r);
  kg::TripleSet ts = kg::export_metamodel(mm, vocab);
  if (!o.model.empty()) {
    const Model m = load_model(o.model);
    if (auto r = validate_model(mm, m); !r.ok()) return report_invalid(o, os, o.model, r);
    ts.merge(kg::export_model(mm, m, vocab));
  }
  os << (o.format == "ttl" ? kg::serialize_turtle(ts, vocab) : kg::serialize_ntriples(ts));
  return kOk;
}

int cmd_verify(const Options& o, const kg::Vocabulary& vocab, std::ostream& os) {
  const MetaModel mm = load_metamodel(o.metamodel);
  if (auto r = validate_metamodel(mm); !r.ok()) return report_invalid(o, os, o.metamodel, r);
  const Model m = load_model(o.model);
  if (auto r = validate_model(mm, m); !r.ok()) return report_invalid(o, os, o.model, r);
  const kg::TripleSet ts = kg::parse_ntriples(read_file(o.triples));

  const auto diff = query::verify(m, mm, ts, vocab);
  if (o.json) {
    os << query::to_json(diff);
  } else {
    os << "# completeness\n" << query::to_tsv(diff.completeness);
    os << "# logic\n" << query::to_tsv(diff.logic);
    os << "# diff\n" << query::to_tsv(diff);
    if (diff.empty()) os << "OK\n";
    else os << "FAILED: " << diff.entries.size() << " difference(s)\n";
  }
  return diff.empty() ? kOk : kFindings;
}

int cmd_stats(const Options& o, std::ostream& os) {
  const MetaModel mm = load_metamodel(o.metamodel);
  if (auto r = validate_metamodel(mm); !r.ok()) return report_invalid(o, os, o.metamodel, r);
  const CountSummary c = count_summary(mm);
  const ConnectorArithmetic a = connector_arithmetic(mm);
  if (o.json) {
    os << dump({{"language", mm.language_name},
                {"counts",
                 {{"graph", c.graph},
                  {"object", c.object},
                  {"point", c.point},
                  {"property", c.property},
                  {"relationship", c.relationship},
                  {"role", c.role}}},
                {"rules", a.rules},
                {"connectors", a.connectors},
                {"savings", a.shared_roles}});
  } else {
    os << "language\tgraph\tobject\tpoint\tproperty\trelationship\trole\trules\tconnectors\tsavings\n";
    os << (mm.language_name.empty() ? "-" : mm.language_name) << '\t' << c.graph << '\t' << c.object << '\t'
       << c.point << '\t' << c.property << '\t' << c.relationship << '\t' << c.role << '\t' << a.rules << '\t'
       << a.connectors << '\t' << a.shared_roles << '\n';
  }
  return kOk;
}

void print_error(std::ostream& err, const Error& e) {
  // what() already carries the code, detail and position.
  err << "error: " << e.what() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"GOPPRRE meta-model validation, knowledge-graph export and verification", "gopprre"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Machine-readable JSON output");
  app.add_option("--out", o.out_path, "Write primary output to this file instead of stdout");
  app.add_option("--format", o.format, "Triple serialization for export")->check(CLI::IsMember({"nt", "ttl"}));
  app.add_option("--base-iri", o.base_iri, "Namespace for minted IRIs");

  auto* validate = app.add_subcommand("validate", "Validate a meta-model and optionally a model")->fallthrough();
  validate->add_option("metamodel", o.metamodel, "Meta-model document (.gopprr.json)")->required();
  validate->add_option("model", o.model, "Model document (.model.json)");

  auto* exp = app.add_subcommand("export", "Export triples for a meta-model, or a meta-model plus model")
                  ->fallthrough();
  exp->add_option("metamodel", o.metamodel, "Meta-model document")->required();
  exp->add_option("model", o.model, "Model document");

  auto* ver = app.add_subcommand("verify", "Run the completeness and logic queries over a triple file")
                  ->fallthrough();
  ver->add_option("metamodel", o.metamodel, "Meta-model document")->required();
  ver->add_option("model", o.model, "Model document")->required();
  ver->add_option("triples", o.triples, "N-Triples file")->required();

  auto* stats = app.add_subcommand("stats", "Declaration counts and connector arithmetic")->fallthrough();
  stats->add_option("metamodel", o.metamodel, "Meta-model document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  std::ostringstream buf;
  int status = kUsage;
  try {
    const kg::Vocabulary vocab(o.base_iri);
    if (*validate) status = cmd_validate(o, buf);
    else if (*exp) status = cmd_export(o, vocab, buf);
    else if (*ver) status = cmd_verify(o, vocab, buf);
    else status = cmd_stats(o, buf);
    if (o.out_path.empty()) out << buf.str();
    else write_file(o.out_path, buf.str());
  } catch (const Error& e) {
    print_error(err, e);
    return kUsage;
  }
  return status;
}

}  // namespace gopprre::cli

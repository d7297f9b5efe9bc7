#include "gopprre/fixtures.hpp"

#include <algorithm>
#include <cstdlib>

#include <json.hpp>

#include "gopprre/dsl.hpp"
#include "gopprre/error.hpp"
#include "gopprre/io.hpp"

#ifndef GOPPRRE_FIXTURE_DIR
#define GOPPRRE_FIXTURE_DIR "fixtures"
#endif

namespace gopprre::fixtures {
namespace {

std::string stem_of(const std::filesystem::path& file) {
  std::string name = file.filename().string();
  for (std::string_view ext : {dsl::kModelExtension, dsl::kMetaModelExtension}) {
    if (name.size() > ext.size() && name.compare(name.size() - ext.size(), ext.size(), ext) == 0) {
      return name.substr(0, name.size() - ext.size());
    }
  }
  return file.stem().string();
}

// Re-throws with "pack <name>, <file>: " in front, keeping code and detail.
template <class Fn>
auto in_context(const std::string& pack, const std::filesystem::path& file, Fn fn) {
  try {
    return fn();
  } catch (const dsl::SemanticErrorWithReport& e) {
    throw Error(e.code(), e.detail(), "pack " + pack + ", " + file.filename().string() + ": " + e.what(),
                e.position());
  } catch (const Error& e) {
    throw Error(e.code(), e.detail(), "pack " + pack + ", " + file.filename().string() + ": " + e.what(),
                e.position());
  }
}

}  // namespace

const PackModel& LanguagePack::model(std::string_view wanted) const {
  for (const auto& m : models) {
    if (m.name == wanted) return m;
  }
  throw Error(ErrorCode::InvalidInput, "", "pack " + name + " has no model '" + std::string(wanted) + "'");
}

const std::vector<std::string>& pack_names() {
  static const std::vector<std::string> names = {"mini_bpmn", "mini_sysml"};
  return names;
}

std::filesystem::path default_root() {
  if (const char* env = std::getenv("GOPPRRE_FIXTURES"); env && *env) return env;
  return GOPPRRE_FIXTURE_DIR;
}

LanguagePack load_pack(const std::string& name, const std::optional<std::filesystem::path>& root) {
  const auto& names = pack_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw Error(ErrorCode::UnknownPack, "", "unknown language pack '" + name + "'");
  }
  LanguagePack pack;
  pack.name = name;
  pack.dir = root.value_or(default_root()) / name;

  const auto manifest_path = pack.dir / "pack.json";
  const auto manifest = in_context(name, manifest_path, [&] {
    try {
      return nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::SyntaxError, "", e.what());
    }
  });
  auto field = [&](const char* key) -> const nlohmann::json& {
    if (!manifest.is_object() || !manifest.contains(key)) {
      throw Error(ErrorCode::SchemaError, "MISSING_KEY", "pack " + name + ", pack.json: missing '" + key + "'");
    }
    return manifest.at(key);
  };
  try {
    pack.metamodel_path = pack.dir / field("metamodel").get<std::string>();
    pack.documented_savings = field("savings").get<std::size_t>();
    for (const auto& file : field("models")) pack.models.push_back({"", pack.dir / file.get<std::string>(), {}});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, "WRONG_TYPE", "pack " + name + ", pack.json: " + e.what());
  }

  pack.metamodel =
      in_context(name, pack.metamodel_path, [&] { return dsl::parse_metamodel(read_file(pack.metamodel_path)); });
  for (auto& m : pack.models) {
    m.name = stem_of(m.path);
    m.model = in_context(name, m.path, [&] { return dsl::parse_model(read_file(m.path), pack.metamodel); });
  }
  return pack;
}

}  // namespace gopprre::fixtures

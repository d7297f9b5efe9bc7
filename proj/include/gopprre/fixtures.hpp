#pragma once

// Desk-scale language packs shipped under fixtures/<name>/. Each pack has a
// pack.json manifest naming its meta-model, its models and the number of
// connectors it saves through role sharing.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gopprre/core.hpp"

namespace gopprre::fixtures {

struct PackModel {
  std::string name;  // file stem, e.g. "ibd_small"
  std::filesystem::path path;
  Model model;
};

struct LanguagePack {
  std::string name;
  std::filesystem::path dir;
  std::filesystem::path metamodel_path;
  MetaModel metamodel;
  std::vector<PackModel> models;
  std::size_t documented_savings = 0;

  const PackModel& model(std::string_view name) const;
  /// Path of a golden file next to the pack documents, e.g. "ibd_small.nt".
  std::filesystem::path golden(std::string_view file) const { return dir / "golden" / file; }
};

/// Names of the shipped packs.
const std::vector<std::string>& pack_names();

/// $GOPPRRE_FIXTURES if set, else the source tree's fixtures/ directory.
std::filesystem::path default_root();

/// Parses and validates every document of the pack. Throws
/// Error(UnknownPack) for an unknown name; dsl and IO errors are rethrown
/// with the pack and file prepended to the message.
LanguagePack load_pack(const std::string& name, const std::optional<std::filesystem::path>& root = std::nullopt);

}  // namespace gopprre::fixtures

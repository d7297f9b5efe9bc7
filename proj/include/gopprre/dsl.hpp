#pragma once

// Text documents for meta-models (`.gopprr.json`) and models (`.model.json`).
//
// Both are JSON objects carrying `format_version` (currently 1) and `kind`.
// Parsing is strict: unknown keys, duplicate keys, duplicate declarations and
// wrongly typed values are errors. Emission is canonical: sorted keys,
// declarations sorted by name, two-space indentation, LF line ends and a
// trailing newline, so emit(parse(emit(x))) == emit(x) byte for byte.

#include <string>
#include <string_view>

#include "gopprre/core.hpp"
#include "gopprre/error.hpp"

namespace gopprre::dsl {

inline constexpr int kFormatVersion = 1;

inline constexpr std::string_view kMetaModelExtension = ".gopprr.json";
inline constexpr std::string_view kModelExtension = ".model.json";

/// Syntax and schema only. Throws Error(SyntaxError) with a position or
/// Error(SchemaError) with a detail code (DUPLICATE_TYPE, UNKNOWN_KEY, ...).
MetaModel decode_metamodel(std::string_view text);
Model decode_model(std::string_view text);

/// decode_* followed by validation. A failed validation throws
/// SemanticErrorWithReport (detail = code of the first violation).
MetaModel parse_metamodel(std::string_view text);
Model parse_model(std::string_view text, const MetaModel& mm);

class SemanticErrorWithReport : public Error {
 public:
  explicit SemanticErrorWithReport(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

std::string emit_metamodel(const MetaModel& mm);
std::string emit_model(const Model& m);

}  // namespace gopprre::dsl

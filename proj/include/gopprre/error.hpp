#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gopprre {

enum class ErrorCode {
  SyntaxError,
  SchemaError,
  SemanticError,
  InvalidInput,
  UnknownRelationship,
  DanglingRelationship,
  MalformedPattern,
  UnknownPack,
  Io,
};

std::string_view to_string(ErrorCode code);

struct SourcePosition {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based, in bytes
};

/// Every failure surfaced by the library. `detail()` carries the finer
/// grained code (e.g. DUPLICATE_TYPE for a SchemaError, UNKNOWN_TYPE for a
/// SemanticError) so callers can branch without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, const std::string& message,
        std::optional<SourcePosition> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<SourcePosition>& position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<SourcePosition> position_;
};

}  // namespace gopprre

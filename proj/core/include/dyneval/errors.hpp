#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dyneval {

/// Position of a cell in the (element, mode, characteristic, criterion) grid.
/// Unset fields mean the error is not tied to that axis.
struct CellCoord {
  std::optional<std::size_t> element;
  std::optional<std::size_t> mode;
  std::optional<std::size_t> characteristic;
  std::optional<std::size_t> criterion;

  [[nodiscard]] bool empty() const noexcept {
    return !element && !mode && !characteristic && !criterion;
  }
  /// "(n=1, l=0, m=2, k=3)" listing only the set fields; empty string if none.
  [[nodiscard]] std::string to_string() const;
};

enum class ErrorKind {
  InvalidArgument,
  GridMismatch,
  NonFinite,
  DegenerateCorridor,
  CorridorViolation,
  ShapeMismatch,
  SingularSystem,
  Precondition,
  Inconsistency,
  Io,
  Parse,
  Schema,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, CellCoord where = {});

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const CellCoord& where() const noexcept { return where_; }
  /// Message without the coordinate suffix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

  /// Returns a copy carrying `outer` coordinates for any axis not already set.
  [[nodiscard]] Error located(const CellCoord& outer) const;

 private:
  ErrorKind kind_;
  CellCoord where_;
  std::string detail_;
};

}  // namespace dyneval

#include "dyneval/errors.hpp"

namespace dyneval {

std::string CellCoord::to_string() const {
  std::string out;
  auto add = [&out](const char* name, const std::optional<std::size_t>& v) {
    if (!v) return;
    out += out.empty() ? "(" : ", ";
    out += name;
    out += '=';
    out += std::to_string(*v);
  };
  add("n", element);
  add("l", mode);
  add("m", characteristic);
  add("k", criterion);
  if (!out.empty()) out += ')';
  return out;
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::GridMismatch: return "grid_mismatch";
    case ErrorKind::NonFinite: return "non_finite";
    case ErrorKind::DegenerateCorridor: return "degenerate_corridor";
    case ErrorKind::CorridorViolation: return "corridor_violation";
    case ErrorKind::ShapeMismatch: return "shape_mismatch";
    case ErrorKind::SingularSystem: return "singular_system";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Schema: return "schema";
  }
  return "unknown";
}

namespace {

std::string compose(const std::string& message, const CellCoord& where) {
  if (where.empty()) return message;
  return message + " at " + where.to_string();
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, CellCoord where)
    : std::runtime_error(compose(message, where)),
      kind_(kind),
      where_(where),
      detail_(message) {}

Error Error::located(const CellCoord& outer) const {
  CellCoord merged = where_;
  if (!merged.element) merged.element = outer.element;
  if (!merged.mode) merged.mode = outer.mode;
  if (!merged.characteristic) merged.characteristic = outer.characteristic;
  if (!merged.criterion) merged.criterion = outer.criterion;
  return Error(kind_, detail_, merged);
}

}  // namespace dyneval

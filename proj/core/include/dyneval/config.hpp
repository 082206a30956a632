#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "dyneval/aggregation.hpp"
#include "dyneval/scales.hpp"
#include "dyneval/selection.hpp"

namespace dyneval {

struct ForecastSettings {
  std::optional<std::size_t> basis_size;  ///< default min(J, kMaxMonomialBasis)
  double horizon = 10.0;
  double trend_tolerance = 1e-6;
};

/// Everything needed to turn a dataset into a report.
struct RunConfig {
  ScaleConfig scale;
  /// Empty vectors are filled with equal weights for the dataset shape.
  WeightProfile weights;
  /// Derivative order per criterion for the extra Sobolev-type parameters;
  /// empty means order 1 everywhere.
  std::vector<int> derivative_orders;
  ScoreKind score_kind = ScoreKind::PreciseRating;
  double tie_eps = kDefaultTieEps;
  ForecastSettings forecast;

  /// Fills defaulted weights/orders for `shape`, then checks consistency.
  [[nodiscard]] RunConfig resolved_for(const TensorShape& shape) const;
};

RunConfig read_config(const std::filesystem::path& path);
RunConfig parse_config(std::string_view text);

std::string_view to_string(ScoreKind kind) noexcept;
ScoreKind score_kind_from_string(std::string_view text);

}  // namespace dyneval

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dyneval/scales.hpp"

namespace dyneval {

using Series = std::vector<double>;
using Table2 = std::vector<Series>;
using Table3 = std::vector<Table2>;
using Table4 = std::vector<Table3>;

/// Extents of the local-evaluation tensor: N elements, L modes, M characteristics, K criteria.
struct TensorShape {
  std::size_t elements = 0;
  std::size_t modes = 0;
  std::size_t characteristics = 0;
  std::size_t criteria = 0;

  [[nodiscard]] std::size_t cell_count() const noexcept {
    return elements * modes * characteristics * criteria;
  }
  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

/// Priority weights at every level of both hierarchies.
struct WeightProfile {
  double uniform = 1.0;      ///< uniform-metric parameter
  double mean_squared = 1.0; ///< mean-squared-metric parameter
  Series criteria;
  Series characteristics;
  Series modes;
  Series elements;

  /// All-ones weights for the given shape.
  static WeightProfile equal(const TensorShape& shape);

  /// Every weight positive and finite; vector lengths match the shape.
  void validate(const TensorShape& shape) const;
};

/// What the tensor cells hold. Selection needs positive scores, which only
/// precise ratings guarantee.
enum class ScoreKind { PreciseRating, Continuous };

/// Dense [element][mode][characteristic][criterion] grid of local evaluations.
class LocalEvalTensor {
 public:
  explicit LocalEvalTensor(TensorShape shape, ScoreKind kind = ScoreKind::PreciseRating);

  [[nodiscard]] const TensorShape& shape() const noexcept { return shape_; }
  [[nodiscard]] ScoreKind kind() const noexcept { return kind_; }

  void set(std::size_t n, std::size_t l, std::size_t m, std::size_t k, LocalEvaluation ev);
  /// Throws Error(ShapeMismatch) if the cell was never set.
  [[nodiscard]] const LocalEvaluation& at(std::size_t n, std::size_t l, std::size_t m,
                                          std::size_t k) const;
  [[nodiscard]] bool is_set(std::size_t n, std::size_t l, std::size_t m, std::size_t k) const;

  /// Throws Error(ShapeMismatch) naming the first unset cell.
  void require_complete() const;

 private:
  [[nodiscard]] std::size_t offset(std::size_t n, std::size_t l, std::size_t m, std::size_t k) const;

  TensorShape shape_;
  ScoreKind kind_;
  std::vector<LocalEvaluation> cells_;
  std::vector<bool> assigned_;
};

/// sum(w_i x_i) / sum(w_i), accumulated left to right.
double weighted_mean(std::span<const double> values, std::span<const double> weights);

/// Element-first hierarchy: parameters, criteria, characteristics, modes.
struct ElementRollup {
  Table4 parameters;       ///< [n][l][m][k]
  Table3 criteria;         ///< [n][l][m]
  Table2 characteristics;  ///< [n][l]
  Series elements;         ///< [n]
};

/// Mode-first hierarchy: elements (per metric), parameters, criteria, characteristics.
struct ModeRollup {
  Table3 uniform;          ///< [l][m][k] over elements, uniform metric
  Table3 mean_squared;     ///< [l][m][k] over elements, mean-squared metric
  Table3 parameters;       ///< [l][m][k]
  Table2 criteria;         ///< [l][m]
  Series modes;            ///< [l]
};

ElementRollup element_rollup(const LocalEvalTensor& tensor, const WeightProfile& weights);
ModeRollup mode_rollup(const LocalEvalTensor& tensor, const WeightProfile& weights);

struct EvaluationCounts {
  std::size_t parameters_per_cell = 0;
  std::vector<std::size_t> per_element;
  std::size_t total = 0;
};

/// Number of numeric local-evaluation parameters with P parameters per cell.
EvaluationCounts count_local_evals(const TensorShape& shape, std::size_t parameters);

struct EvaluationReport {
  LocalEvalTensor tensor;
  WeightProfile weights;
  ElementRollup by_element;
  ModeRollup by_mode;
  double global = 0.0;
  EvaluationCounts counts;
};

/// Identity tolerance between element-first and mode-first global scores.
inline constexpr double kGlobalIdentityTolerance = 1e-9;

/// Element-first global score; throws Error(Inconsistency) when the
/// mode-first score differs by more than kGlobalIdentityTolerance.
double global_eval(const EvaluationReport& report);

/// Runs both hierarchies and the global check.
EvaluationReport aggregate(LocalEvalTensor tensor, WeightProfile weights,
                           std::size_t parameters_per_cell = 2);

}  // namespace dyneval

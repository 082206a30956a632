#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dyneval/timeseries.hpp"

namespace dyneval {

struct ScaleConfig {
  /// Normalizing coefficient of the continuous scale.
  double nu = 10.0;
  /// Bin edges 0 = d_0 < d_1 < ... < d_{I+1} = 1 of the discrete scale.
  std::vector<double> delta_grid = uniform_delta_grid(10);
  /// Fraction of the permissible amplitude separating "good" from "satisfactory".
  double delta = 0.5;
  /// Conceptual labels in ascending order; the first one belongs to grade kLowestGrade.
  std::vector<std::string> labels = {"unsatisfactory", "satisfactory", "good", "excellent"};

  /// `grades` equal-width bins on [0, 1].
  static std::vector<double> uniform_delta_grid(int grades);

  /// Throws Error(InvalidArgument) on any broken invariant.
  void validate() const;
};

inline constexpr int kLowestGrade = 2;
inline constexpr int kHighestGrade = 5;

/// Precise-rating pair for one (element, mode, characteristic, criterion) cell.
struct LocalEvaluation {
  double e_uniform = 5.0;
  double e_l2 = 5.0;
  int grade = kHighestGrade;
  std::string label;
};

double continuous_eval(double h, double h_min, double h_max, double nu);

int discrete_eval(double e_continuous, const ScaleConfig& config);

std::string conceptual_label(int grade, const ScaleConfig& config);

/// Grade of a deviation signal given the permissible amplitude A (> 0):
/// 5 when it vanishes, 4 up to delta*A, 3 up to A, 2 beyond.
int hybrid_grade(const DeviationSignal& dev, double amplitude, double delta);

double hybrid_eval_uniform(const DeviationSignal& dev, double amplitude, double delta);
double hybrid_eval_l2(const DeviationSignal& dev, double amplitude, double delta);

/// Both precise ratings plus grade and conceptual label.
LocalEvaluation hybrid_evaluate(const DeviationSignal& dev, double amplitude,
                                const ScaleConfig& config);

/// Integer grade of a precise rating in {2} U [3, 5].
int grade_of(double precise_rating) noexcept;

enum class Disturbance {
  None,             ///< grade 5, no deviation at all
  BeyondPermissible,///< grade 2
  NearCritical,
  FewShortDisturbances,
  NearNextGrade,
  Mixed,
};

std::string_view to_string(Disturbance d) noexcept;

/// Qualitative reading of the (uniform, mean-squared) pair. A rating is near
/// the lower edge of its grade when its fractional part is below `edge`, and
/// near the upper edge when it is at least 1 - edge.
Disturbance classify_pair(const LocalEvaluation& ev, double edge = 0.1);

}  // namespace dyneval

#include "dyneval/scales.hpp"

#include <algorithm>
#include <cmath>

#include "dyneval/errors.hpp"

namespace dyneval {

std::vector<double> ScaleConfig::uniform_delta_grid(int grades) {
  if (grades < 1) throw Error(ErrorKind::InvalidArgument, "discrete scale needs at least one grade");
  std::vector<double> grid(static_cast<std::size_t>(grades) + 1);
  for (int i = 0; i <= grades; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / grades;
  grid.back() = 1.0;
  return grid;
}

void ScaleConfig::validate() const {
  if (!std::isfinite(nu) || nu <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "scale nu must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "scale delta must lie in (0, 1)");
  }
  if (delta_grid.size() < 2 || delta_grid.front() != 0.0 || delta_grid.back() != 1.0) {
    throw Error(ErrorKind::InvalidArgument, "delta grid must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] > delta_grid[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "delta grid must be strictly increasing");
    }
  }
  if (labels.empty()) throw Error(ErrorKind::InvalidArgument, "conceptual scale needs labels");
}

double continuous_eval(double h, double h_min, double h_max, double nu) {
  if (!(h_max > h_min)) {
    throw Error(ErrorKind::DegenerateCorridor, "continuous scale needs h_max > h_min");
  }
  if (!(h >= 0.0)) throw Error(ErrorKind::InvalidArgument, "parameter value must be non-negative");
  return nu * (h_max - h) / (h_max - h_min);
}

int discrete_eval(double e_continuous, const ScaleConfig& config) {
  const auto& edges = config.delta_grid;
  const int top = static_cast<int>(edges.size()) - 2;
  const double x = e_continuous / config.nu;
  if (!(x > 0.0)) return 0;
  if (x >= 1.0) return top;
  // Half-open bins [d_i, d_{i+1}).
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  return static_cast<int>(std::distance(edges.begin(), it)) - 1;
}

std::string conceptual_label(int grade, const ScaleConfig& config) {
  const int index = grade - kLowestGrade;
  if (index < 0 || index >= static_cast<int>(config.labels.size())) {
    throw Error(ErrorKind::InvalidArgument,
                "grade " + std::to_string(grade) + " has no conceptual label");
  }
  return config.labels[static_cast<std::size_t>(index)];
}

namespace {

void check_hybrid_args(double amplitude, double delta) {
  if (!std::isfinite(amplitude) || amplitude <= 0.0) {
    throw Error(ErrorKind::DegenerateCorridor, "permissible amplitude must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "hybrid delta must lie in (0, 1)");
  }
}

// Rounding can push a rating onto the next grade's edge; keep it in [grade, grade + 1).
double within_band(int grade, double value) {
  return std::min(value, std::nextafter(static_cast<double>(grade + 1), 0.0));
}

int grade_from_sup(double sup, double amplitude, double gamma) {
  if (sup == 0.0) return 5;
  if (sup <= gamma) return 4;
  if (sup <= amplitude) return 3;
  return 2;
}

}  // namespace

int hybrid_grade(const DeviationSignal& dev, double amplitude, double delta) {
  check_hybrid_args(amplitude, delta);
  return grade_from_sup(norm_uniform(dev), amplitude, delta * amplitude);
}

double hybrid_eval_uniform(const DeviationSignal& dev, double amplitude, double delta) {
  check_hybrid_args(amplitude, delta);
  const double gamma = delta * amplitude;
  const double sup = norm_uniform(dev);
  switch (grade_from_sup(sup, amplitude, gamma)) {
    case 5: return 5.0;
    case 4: return within_band(4, 4.0 + (gamma - sup) / gamma);
    case 3: return within_band(3, 3.0 + (amplitude - sup) / (amplitude - gamma));
    default: return 2.0;
  }
}

double hybrid_eval_l2(const DeviationSignal& dev, double amplitude, double delta) {
  check_hybrid_args(amplitude, delta);
  const double gamma = delta * amplitude;
  const auto values = dev.values();
  const double dt = dev.grid().dt();
  const double root_t = std::sqrt(dev.grid().duration());
  const int grade = grade_from_sup(norm_uniform(values), amplitude, gamma);

  std::vector<double> integrand(values.size());
  if (grade == 4) {
    std::transform(values.begin(), values.end(), integrand.begin(),
                   [gamma](double v) { return gamma - v; });
    return within_band(4, 4.0 + norm_l2(integrand, dt) / (gamma * root_t));
  }
  if (grade == 3) {
    std::transform(values.begin(), values.end(), integrand.begin(),
                   [gamma](double v) { return std::max(0.0, v - gamma); });
    const double full = (amplitude - gamma) * root_t;
    return within_band(3, 3.0 + (full - norm_l2(integrand, dt)) / full);
  }
  return grade == 5 ? 5.0 : 2.0;
}

LocalEvaluation hybrid_evaluate(const DeviationSignal& dev, double amplitude,
                                const ScaleConfig& config) {
  LocalEvaluation ev;
  ev.grade = hybrid_grade(dev, amplitude, config.delta);
  ev.e_uniform = hybrid_eval_uniform(dev, amplitude, config.delta);
  ev.e_l2 = hybrid_eval_l2(dev, amplitude, config.delta);
  ev.label = conceptual_label(ev.grade, config);
  return ev;
}

int grade_of(double precise_rating) noexcept {
  if (precise_rating >= 5.0) return 5;
  if (precise_rating >= 4.0) return 4;
  if (precise_rating >= 3.0) return 3;
  return 2;
}

std::string_view to_string(Disturbance d) noexcept {
  switch (d) {
    case Disturbance::None: return "none";
    case Disturbance::BeyondPermissible: return "beyond permissible";
    case Disturbance::NearCritical: return "near-critical";
    case Disturbance::FewShortDisturbances: return "few short disturbances";
    case Disturbance::NearNextGrade: return "near next grade";
    case Disturbance::Mixed: return "mixed";
  }
  return "mixed";
}

Disturbance classify_pair(const LocalEvaluation& ev, double edge) {
  if (ev.grade >= kHighestGrade) return Disturbance::None;
  if (ev.grade <= kLowestGrade) return Disturbance::BeyondPermissible;
  const double base = static_cast<double>(ev.grade);
  const double fu = ev.e_uniform - base;
  const double fl = ev.e_l2 - base;
  const auto low = [edge](double f) { return f < edge; };
  const auto high = [edge](double f) { return f >= 1.0 - edge; };
  if (low(fu) && low(fl)) return Disturbance::NearCritical;
  if (low(fu) && high(fl)) return Disturbance::FewShortDisturbances;
  if (high(fu) && high(fl)) return Disturbance::NearNextGrade;
  return Disturbance::Mixed;
}

}  // namespace dyneval

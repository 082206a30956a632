#include "dyneval/trend.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dyneval/errors.hpp"
#include "dyneval/scales.hpp"

namespace dyneval {

History::History(std::vector<HistorySample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "history needs at least two examinations");
  }
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    const auto& s = samples_[j];
    if (!std::isfinite(s.time) || !std::isfinite(s.value)) {
      throw Error(ErrorKind::NonFinite, "history sample " + std::to_string(j) + " is not finite");
    }
    if (j > 0 && !(s.time > samples_[j - 1].time)) {
      throw Error(ErrorKind::InvalidArgument, "history times must be strictly increasing");
    }
  }
}

std::string_view to_string(Trend t) noexcept {
  switch (t) {
    case Trend::Improving: return "improving";
    case Trend::Degrading: return "degrading";
    case Trend::Stable: return "stable";
    case Trend::Mixed: return "mixed";
  }
  return "mixed";
}

Trend classify_trend(const History& history, double tol) {
  const auto& s = history.samples();
  bool rising = true;
  bool falling = true;
  double mean = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    mean += s[j].value;
    if (j == 0) continue;
    const double step = s[j].value - s[j - 1].value;
    rising = rising && step > tol;
    falling = falling && step < -tol;
  }
  if (rising) return Trend::Improving;
  if (falling) return Trend::Degrading;
  mean /= static_cast<double>(s.size());
  const bool stable = std::all_of(s.begin(), s.end(), [&](const HistorySample& x) {
    return std::abs(x.value - mean) <= tol;
  });
  return stable ? Trend::Stable : Trend::Mixed;
}

ForecastModel ForecastModel::monomial(std::vector<double> coefficients, double first,
                                      double last) {
  if (!(last > first)) throw Error(ErrorKind::InvalidArgument, "forecast window is empty");
  ForecastModel m;
  m.kind_ = BasisKind::Monomial;
  m.coefficients_ = std::move(coefficients);
  m.first_ = first;
  m.last_ = last;
  return m;
}

ForecastModel ForecastModel::custom(std::vector<BasisFunction> basis,
                                    std::vector<double> coefficients, double first, double last) {
  if (basis.size() != coefficients.size()) {
    throw Error(ErrorKind::ShapeMismatch, "one coefficient per basis function required");
  }
  ForecastModel m = monomial(std::move(coefficients), first, last);
  m.kind_ = BasisKind::Custom;
  m.functions_ = std::move(basis);
  return m;
}

double ForecastModel::basis(std::size_t j, double t) const {
  if (kind_ == BasisKind::Custom) return functions_[j](t);
  const double s = (t - first_) / (last_ - first_);
  double p = 1.0;
  for (std::size_t i = 0; i < j; ++i) p *= s;
  return p;
}

namespace {

// Relative pivot threshold below which the design matrix counts as rank-deficient.
constexpr double kRankThreshold = 1e-10;
constexpr double kInterpolationResidual = 1e-8;

std::vector<double> solve(const History& history, const ForecastModel& model) {
  const auto& s = history.samples();
  const auto rows = static_cast<Eigen::Index>(s.size());
  const auto cols = static_cast<Eigen::Index>(model.basis_size());
  if (cols == 0) throw Error(ErrorKind::InvalidArgument, "forecast basis is empty");
  if (cols > rows) {
    throw Error(ErrorKind::InvalidArgument, "basis larger than the history (" +
                                                std::to_string(cols) + " > " +
                                                std::to_string(rows) + ")");
  }
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    rhs(i) = s[static_cast<std::size_t>(i)].value;
    for (Eigen::Index j = 0; j < cols; ++j) {
      design(i, j) = model.basis(static_cast<std::size_t>(j), s[static_cast<std::size_t>(i)].time);
      if (!std::isfinite(design(i, j))) {
        throw Error(ErrorKind::NonFinite, "basis function is not finite at a sample time");
      }
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < cols) {
    throw Error(ErrorKind::SingularSystem,
                "forecast basis is linearly dependent on the sample times (rank " +
                    std::to_string(qr.rank()) + " of " + std::to_string(cols) + ")");
  }
  const Eigen::VectorXd a = qr.solve(rhs);
  if (cols == rows) {
    const double residual = (design * a - rhs).cwiseAbs().maxCoeff();
    if (!(residual <= kInterpolationResidual)) {
      throw Error(ErrorKind::SingularSystem, "interpolation system is numerically singular");
    }
  }
  return {a.data(), a.data() + a.size()};
}

}  // namespace

ForecastModel fit_forecast(const History& history, std::optional<std::size_t> basis_size) {
  const std::size_t size = basis_size.value_or(std::min(history.size(), kMaxMonomialBasis));
  if (size == 0 || size > kMaxMonomialBasis) {
    throw Error(ErrorKind::InvalidArgument,
                "monomial basis size must lie in 1.." + std::to_string(kMaxMonomialBasis));
  }
  const double first = history.first().time;
  const double last = history.last().time;
  auto coefficients =
      solve(history, ForecastModel::monomial(std::vector<double>(size, 0.0), first, last));
  return ForecastModel::monomial(std::move(coefficients), first, last);
}

ForecastModel fit_forecast(const History& history, std::vector<BasisFunction> basis) {
  const double first = history.first().time;
  const double last = history.last().time;
  const auto shape =
      ForecastModel::custom(basis, std::vector<double>(basis.size(), 0.0), first, last);
  auto coefficients = solve(history, shape);
  return ForecastModel::custom(std::move(basis), std::move(coefficients), first, last);
}

double forecast_at(const ForecastModel& model, double t) {
  if (t < model.window_start()) {
    throw Error(ErrorKind::Precondition, "forecast requested before the first examination");
  }
  double v = 0.0;
  for (std::size_t j = 0; j < model.basis_size(); ++j) v += model.coefficients()[j] * model.basis(j, t);
  return v;
}

bool is_extrapolation(const ForecastModel& model, double t) noexcept {
  return t > model.window_end();
}

std::optional<double> next_examination_time(const ForecastModel& model, double v_star,
                                            double horizon, std::size_t scan_steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorKind::InvalidArgument, "forecast horizon must be positive");
  }
  if (scan_steps == 0) throw Error(ErrorKind::InvalidArgument, "scan needs at least one step");
  const double start = model.window_end();
  if (forecast_at(model, start) < v_star) {
    throw Error(ErrorKind::Precondition,
                "forecast at the last examination is already below the threshold");
  }
  double lo = start;
  double hi = start;
  bool bracketed = false;
  for (std::size_t i = 1; i <= scan_steps; ++i) {
    const double t = start + horizon * static_cast<double>(i) / static_cast<double>(scan_steps);
    if (forecast_at(model, t) <= v_star) {
      hi = t;
      bracketed = true;
      break;
    }
    lo = t;
  }
  if (!bracketed) return std::nullopt;
  // Invariant: forecast(lo) > v_star (or lo is the start), forecast(hi) <= v_star.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (forecast_at(model, mid) <= v_star) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double grade_drop_threshold(double precise_rating) noexcept {
  return static_cast<double>(grade_of(precise_rating));
}

}  // namespace dyneval

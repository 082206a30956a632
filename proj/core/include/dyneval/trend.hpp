#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace dyneval {

struct HistorySample {
  double time = 0.0;
  double value = 0.0;
};

/// Global evaluations of one system at successive examination times.
class History {
 public:
  /// Requires at least two samples, strictly increasing finite times, finite values.
  explicit History(std::vector<HistorySample> samples);

  [[nodiscard]] const std::vector<HistorySample>& samples() const noexcept { return samples_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] const HistorySample& first() const noexcept { return samples_.front(); }
  [[nodiscard]] const HistorySample& last() const noexcept { return samples_.back(); }

 private:
  std::vector<HistorySample> samples_;
};

enum class Trend { Improving, Degrading, Stable, Mixed };

std::string_view to_string(Trend t) noexcept;

/// Improving/Degrading when every step rises/falls by more than tol; Stable
/// when no value strays more than tol from the mean; Mixed otherwise.
Trend classify_trend(const History& history, double tol);

using BasisFunction = std::function<double(double)>;

/// Largest monomial basis: degree 6 in rescaled time.
inline constexpr std::size_t kMaxMonomialBasis = 7;

class ForecastModel {
 public:
  enum class BasisKind { Monomial, Custom };

  /// Monomials s^j, j < size, with s = (t - first) / (last - first).
  static ForecastModel monomial(std::vector<double> coefficients, double first, double last);
  static ForecastModel custom(std::vector<BasisFunction> basis, std::vector<double> coefficients,
                              double first, double last);

  [[nodiscard]] BasisKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  [[nodiscard]] double window_start() const noexcept { return first_; }
  [[nodiscard]] double window_end() const noexcept { return last_; }
  [[nodiscard]] std::size_t basis_size() const noexcept { return coefficients_.size(); }

  /// Value of the j-th basis function at time t.
  [[nodiscard]] double basis(std::size_t j, double t) const;

 private:
  ForecastModel() = default;

  BasisKind kind_ = BasisKind::Monomial;
  std::vector<double> coefficients_;
  std::vector<BasisFunction> functions_;
  double first_ = 0.0;
  double last_ = 1.0;
};

/// Fits monomials in rescaled time. basis_size == J interpolates; smaller
/// sizes give the least-squares fit. Defaults to min(J, kMaxMonomialBasis).
/// Throws Error(SingularSystem) when the basis is rank-deficient on the sample times.
ForecastModel fit_forecast(const History& history, std::optional<std::size_t> basis_size = {});

/// Same as above with caller-supplied basis functions of raw time.
ForecastModel fit_forecast(const History& history, std::vector<BasisFunction> basis);

/// <A, Phi(t)>. Throws Error(Precondition) for t before the first sample.
double forecast_at(const ForecastModel& model, double t);

/// True when t lies past the last fitted sample.
bool is_extrapolation(const ForecastModel& model, double t) noexcept;

/// Smallest t in (T_J, T_J + horizon] with forecast_at(t) <= v_star, found by
/// scanning `scan_steps` equal steps and bisecting the first bracket; empty
/// when the forecast stays above v_star. Throws Error(Precondition) if the
/// forecast at T_J is already below v_star.
std::optional<double> next_examination_time(const ForecastModel& model, double v_star,
                                            double horizon, std::size_t scan_steps = 1000);

/// Threshold one conceptual grade below the given precise rating: the lower
/// edge of its current grade band.
double grade_drop_threshold(double precise_rating) noexcept;

}  // namespace dyneval

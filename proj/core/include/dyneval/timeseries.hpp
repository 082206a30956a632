#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dyneval {

/// Uniform time grid t_i = i * dt, i = 0 .. count-1, starting at zero.
class SamplingGrid {
 public:
  /// Throws Error(InvalidArgument) unless dt > 0 (finite) and count >= 2.
  SamplingGrid(double dt, std::size_t count);

  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] std::size_t count() const noexcept { return count_; }
  [[nodiscard]] double duration() const noexcept { return dt_ * static_cast<double>(count_ - 1); }
  [[nodiscard]] double time_at(std::size_t i) const noexcept { return dt_ * static_cast<double>(i); }

  /// Same sample count and time step equal to 1e-12 relative.
  [[nodiscard]] bool matches(const SamplingGrid& other) const noexcept;

 private:
  double dt_;
  std::size_t count_;
};

/// A sampled signal A_{n,l,m}(t) for one element under one operating mode.
struct Characteristic {
  std::size_t element = 0;
  std::size_t mode = 0;
  std::size_t characteristic = 0;
  SamplingGrid grid;
  std::vector<double> values;
  std::string label;

  /// Length equals grid.count() and every value is finite.
  void validate() const;
};

/// Corridor bound: a scalar broadcast over the grid, or one value per sample.
class Bound {
 public:
  Bound(double constant = 0.0) : repr_(constant) {}  // NOLINT(google-explicit-constructor)
  Bound(std::vector<double> samples) : repr_(std::move(samples)) {}  // NOLINT

  [[nodiscard]] bool is_constant() const noexcept { return std::holds_alternative<double>(repr_); }
  [[nodiscard]] double at(std::size_t i) const {
    return is_constant() ? std::get<double>(repr_) : std::get<std::vector<double>>(repr_)[i];
  }
  [[nodiscard]] double constant() const { return std::get<double>(repr_); }
  [[nodiscard]] const std::vector<double>& samples() const { return std::get<std::vector<double>>(repr_); }

  /// Sampled bounds must have exactly `count` finite entries.
  void check(std::size_t count, const char* name) const;

 private:
  std::variant<double, std::vector<double>> repr_;
};

/// Reference band [ref_lo, ref_hi] nested in the permissible band [perm_lo, perm_hi].
struct Corridor {
  std::size_t criterion = 0;
  Bound ref_lo;
  Bound ref_hi;
  Bound perm_lo;
  Bound perm_hi;

  /// Checks lengths against the grid and perm_lo <= ref_lo <= ref_hi <= perm_hi at every sample.
  void validate(const SamplingGrid& grid) const;
};

/// Pointwise distance from a characteristic to its reference band. Non-negative.
class DeviationSignal {
 public:
  DeviationSignal(SamplingGrid grid, std::vector<double> values);

  [[nodiscard]] const SamplingGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

 private:
  SamplingGrid grid_;
  std::vector<double> values_;
};

enum class Metric { Uniform, MeanSquared };

DeviationSignal distance_to_domain(const Characteristic& characteristic, const Corridor& corridor);

/// Trapezoid rule for samples on a uniform grid with step dt.
double trapezoid(std::span<const double> values, double dt);

double norm_uniform(std::span<const double> values);
double norm_uniform(const DeviationSignal& dev);

/// sqrt of the trapezoid integral of values^2 over the grid.
double norm_l2(std::span<const double> values, double dt);
double norm_l2(const DeviationSignal& dev);

/// First derivative: central differences inside, second-order one-sided
/// stencils at the ends (first-order when only two samples exist).
std::vector<double> finite_difference(std::span<const double> values, double dt);

inline constexpr int kMaxDerivativeOrder = 3;

/// Norm over derivative orders 0 .. order-1: the largest uniform norm for
/// Metric::Uniform, the root of summed squared L2 norms for Metric::MeanSquared.
double norm_with_derivatives(const DeviationSignal& dev, int order, Metric metric);

/// Largest deviation norm attainable while staying inside the permissible band.
/// Throws Error(DegenerateCorridor) when the bands coincide (result would be 0).
double h_max_for(const Corridor& corridor, Metric metric, const SamplingGrid& grid);

}  // namespace dyneval

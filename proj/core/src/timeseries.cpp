#include "dyneval/timeseries.hpp"

#include <algorithm>
#include <cmath>

#include "dyneval/errors.hpp"

namespace dyneval {

SamplingGrid::SamplingGrid(double dt, std::size_t count) : dt_(dt), count_(count) {
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "sampling step must be positive and finite");
  }
  if (count < 2) {
    throw Error(ErrorKind::InvalidArgument, "sampling grid needs at least two samples");
  }
}

bool SamplingGrid::matches(const SamplingGrid& other) const noexcept {
  return count_ == other.count_ &&
         std::abs(dt_ - other.dt_) <= 1e-12 * std::max(dt_, other.dt_);
}

void Characteristic::validate() const {
  const CellCoord where{element, mode, characteristic, std::nullopt};
  if (values.size() != grid.count()) {
    throw Error(ErrorKind::GridMismatch,
                "characteristic '" + label + "' has " + std::to_string(values.size()) +
                    " samples, grid expects " + std::to_string(grid.count()),
                where);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::NonFinite,
                  "characteristic '" + label + "' has a non-finite sample at index " +
                      std::to_string(i),
                  where);
    }
  }
}

void Bound::check(std::size_t count, const char* name) const {
  if (is_constant()) {
    if (!std::isfinite(constant())) {
      throw Error(ErrorKind::NonFinite, std::string("corridor bound ") + name + " is not finite");
    }
    return;
  }
  const auto& s = samples();
  if (s.size() != count) {
    throw Error(ErrorKind::GridMismatch, std::string("corridor bound ") + name + " has " +
                                             std::to_string(s.size()) + " samples, grid expects " +
                                             std::to_string(count));
  }
  if (!std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorKind::NonFinite, std::string("corridor bound ") + name + " is not finite");
  }
}

void Corridor::validate(const SamplingGrid& grid) const {
  const CellCoord where{std::nullopt, std::nullopt, std::nullopt, criterion};
  try {
    ref_lo.check(grid.count(), "ref_lo");
    ref_hi.check(grid.count(), "ref_hi");
    perm_lo.check(grid.count(), "perm_lo");
    perm_hi.check(grid.count(), "perm_hi");
  } catch (const Error& e) {
    throw e.located(where);
  }
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double rl = ref_lo.at(i), rh = ref_hi.at(i);
    const double pl = perm_lo.at(i), ph = perm_hi.at(i);
    if (rl > rh) {
      throw Error(ErrorKind::CorridorViolation,
                  "reference band inverted at sample " + std::to_string(i), where);
    }
    if (pl > rl || rh > ph) {
      throw Error(ErrorKind::CorridorViolation,
                  "reference band leaves the permissible band at sample " + std::to_string(i),
                  where);
    }
  }
}

DeviationSignal::DeviationSignal(SamplingGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count()) {
    throw Error(ErrorKind::GridMismatch, "deviation signal length differs from its grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "deviation samples must be finite and non-negative");
    }
  }
}

DeviationSignal distance_to_domain(const Characteristic& characteristic, const Corridor& corridor) {
  characteristic.validate();
  const CellCoord where{characteristic.element, characteristic.mode,
                        characteristic.characteristic, corridor.criterion};
  try {
    corridor.validate(characteristic.grid);
  } catch (const Error& e) {
    throw e.located(where);
  }

  std::vector<double> dev(characteristic.values.size());
  for (std::size_t i = 0; i < dev.size(); ++i) {
    const double v = characteristic.values[i];
    const double lo = corridor.ref_lo.at(i);
    const double hi = corridor.ref_hi.at(i);
    if (v > hi) {
      dev[i] = v - hi;
    } else if (v < lo) {
      dev[i] = lo - v;
    } else {
      dev[i] = 0.0;
    }
  }
  return DeviationSignal(characteristic.grid, std::move(dev));
}

double trapezoid(std::span<const double> values, double dt) {
  if (values.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "trapezoid rule needs at least two samples");
  }
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
  return dt * (0.5 * (values.front() + values.back()) + interior);
}

double norm_uniform(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorKind::InvalidArgument, "uniform norm of an empty signal");
  }
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double norm_uniform(const DeviationSignal& dev) { return norm_uniform(dev.values()); }

double norm_l2(std::span<const double> values, double dt) {
  if (values.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "mean-squared norm needs at least two samples");
  }
  std::vector<double> squares(values.size());
  std::transform(values.begin(), values.end(), squares.begin(), [](double v) { return v * v; });
  return std::sqrt(trapezoid(squares, dt));
}

double norm_l2(const DeviationSignal& dev) { return norm_l2(dev.values(), dev.grid().dt()); }

std::vector<double> finite_difference(std::span<const double> values, double dt) {
  const std::size_t n = values.size();
  if (n < 2) {
    throw Error(ErrorKind::InvalidArgument, "finite difference needs at least two samples");
  }
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (values[1] - values[0]) / dt;
    return d;
  }
  d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * dt);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (values[i + 1] - values[i - 1]) / (2.0 * dt);
  d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * dt);
  return d;
}

double norm_with_derivatives(const DeviationSignal& dev, int order, Metric metric) {
  if (order < 1 || order > kMaxDerivativeOrder) {
    throw Error(ErrorKind::InvalidArgument,
                "derivative order must lie in 1.." + std::to_string(kMaxDerivativeOrder));
  }
  const auto needed = static_cast<std::size_t>(order) + 1;
  if (dev.values().size() < needed) {
    throw Error(ErrorKind::InvalidArgument,
                "order " + std::to_string(order) + " needs at least " + std::to_string(needed) +
                    " samples");
  }
  const double dt = dev.grid().dt();
  std::vector<double> current(dev.values().begin(), dev.values().end());
  double uniform = 0.0;
  double squared = 0.0;
  for (int p = 0; p < order; ++p) {
    if (p > 0) current = finite_difference(current, dt);
    if (metric == Metric::Uniform) {
      uniform = std::max(uniform, norm_uniform(current));
    } else {
      const double l2 = norm_l2(current, dt);
      squared += l2 * l2;
    }
  }
  if (metric == Metric::Uniform) return uniform;
  // Keep order 1 bit-identical to norm_l2.
  return order == 1 ? norm_l2(dev) : std::sqrt(squared);
}

double h_max_for(const Corridor& corridor, Metric metric, const SamplingGrid& grid) {
  corridor.validate(grid);
  std::vector<double> envelope(grid.count());
  for (std::size_t i = 0; i < envelope.size(); ++i) {
    envelope[i] = std::max(corridor.ref_lo.at(i) - corridor.perm_lo.at(i),
                           corridor.perm_hi.at(i) - corridor.ref_hi.at(i));
  }
  const double h = metric == Metric::Uniform ? norm_uniform(envelope) : norm_l2(envelope, grid.dt());
  if (!(h > 0.0)) {
    throw Error(ErrorKind::DegenerateCorridor,
                "reference and permissible bands coincide; the scale would divide by zero",
                CellCoord{std::nullopt, std::nullopt, std::nullopt, corridor.criterion});
  }
  return h;
}

}  // namespace dyneval

#include "dyneval/aggregation.hpp"

#include <cmath>

#include "dyneval/errors.hpp"

namespace dyneval {

namespace {

void check_weights(const Series& w, std::size_t expected, const char* name) {
  if (w.size() != expected) {
    throw Error(ErrorKind::ShapeMismatch, std::string(name) + " weights have " +
                                              std::to_string(w.size()) + " entries, expected " +
                                              std::to_string(expected));
  }
  for (double v : w) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw Error(ErrorKind::InvalidArgument, std::string(name) + " weights must be positive");
    }
  }
}

}  // namespace

WeightProfile WeightProfile::equal(const TensorShape& shape) {
  WeightProfile w;
  w.criteria.assign(shape.criteria, 1.0);
  w.characteristics.assign(shape.characteristics, 1.0);
  w.modes.assign(shape.modes, 1.0);
  w.elements.assign(shape.elements, 1.0);
  return w;
}

void WeightProfile::validate(const TensorShape& shape) const {
  check_weights(Series{uniform, mean_squared}, 2, "parameter");
  check_weights(criteria, shape.criteria, "criterion");
  check_weights(characteristics, shape.characteristics, "characteristic");
  check_weights(modes, shape.modes, "mode");
  check_weights(elements, shape.elements, "element");
}

LocalEvalTensor::LocalEvalTensor(TensorShape shape, ScoreKind kind)
    : shape_(shape), kind_(kind), cells_(shape.cell_count()), assigned_(shape.cell_count(), false) {
  if (shape.cell_count() == 0) {
    throw Error(ErrorKind::ShapeMismatch, "tensor dimensions must be positive");
  }
}

std::size_t LocalEvalTensor::offset(std::size_t n, std::size_t l, std::size_t m,
                                    std::size_t k) const {
  if (n >= shape_.elements || l >= shape_.modes || m >= shape_.characteristics ||
      k >= shape_.criteria) {
    throw Error(ErrorKind::ShapeMismatch, "tensor index out of range", CellCoord{n, l, m, k});
  }
  return ((n * shape_.modes + l) * shape_.characteristics + m) * shape_.criteria + k;
}

void LocalEvalTensor::set(std::size_t n, std::size_t l, std::size_t m, std::size_t k,
                          LocalEvaluation ev) {
  const auto i = offset(n, l, m, k);
  cells_[i] = std::move(ev);
  assigned_[i] = true;
}

const LocalEvaluation& LocalEvalTensor::at(std::size_t n, std::size_t l, std::size_t m,
                                           std::size_t k) const {
  const auto i = offset(n, l, m, k);
  if (!assigned_[i]) {
    throw Error(ErrorKind::ShapeMismatch, "local evaluation missing", CellCoord{n, l, m, k});
  }
  return cells_[i];
}

bool LocalEvalTensor::is_set(std::size_t n, std::size_t l, std::size_t m, std::size_t k) const {
  return assigned_[offset(n, l, m, k)];
}

void LocalEvalTensor::require_complete() const {
  for (std::size_t n = 0; n < shape_.elements; ++n)
    for (std::size_t l = 0; l < shape_.modes; ++l)
      for (std::size_t m = 0; m < shape_.characteristics; ++m)
        for (std::size_t k = 0; k < shape_.criteria; ++k)
          if (!is_set(n, l, m, k)) {
            throw Error(ErrorKind::ShapeMismatch, "incomplete local evaluation tensor",
                        CellCoord{n, l, m, k});
          }
}

double weighted_mean(std::span<const double> values, std::span<const double> weights) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "weighted mean of no values");
  if (values.size() != weights.size()) {
    throw Error(ErrorKind::ShapeMismatch, "weighted mean: values and weights differ in length");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(weights[i] > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "weighted mean: weights must be positive");
    }
    num += weights[i] * values[i];
    den += weights[i];
  }
  return num / den;
}

ElementRollup element_rollup(const LocalEvalTensor& tensor, const WeightProfile& weights) {
  const auto& s = tensor.shape();
  tensor.require_complete();
  weights.validate(s);
  const Series params{weights.uniform, weights.mean_squared};

  ElementRollup r;
  r.parameters.assign(s.elements, Table3(s.modes, Table2(s.characteristics, Series(s.criteria))));
  r.criteria.assign(s.elements, Table2(s.modes, Series(s.characteristics)));
  r.characteristics.assign(s.elements, Series(s.modes));
  r.elements.assign(s.elements, 0.0);

  for (std::size_t n = 0; n < s.elements; ++n) {
    for (std::size_t l = 0; l < s.modes; ++l) {
      for (std::size_t m = 0; m < s.characteristics; ++m) {
        auto& row = r.parameters[n][l][m];
        for (std::size_t k = 0; k < s.criteria; ++k) {
          const auto& ev = tensor.at(n, l, m, k);
          const double pair[2] = {ev.e_uniform, ev.e_l2};
          row[k] = weighted_mean(pair, params);
        }
        r.criteria[n][l][m] = weighted_mean(row, weights.criteria);
      }
      r.characteristics[n][l] = weighted_mean(r.criteria[n][l], weights.characteristics);
    }
    r.elements[n] = weighted_mean(r.characteristics[n], weights.modes);
  }
  return r;
}

ModeRollup mode_rollup(const LocalEvalTensor& tensor, const WeightProfile& weights) {
  const auto& s = tensor.shape();
  tensor.require_complete();
  weights.validate(s);

  ModeRollup r;
  const Table3 blank(s.modes, Table2(s.characteristics, Series(s.criteria)));
  r.uniform = blank;
  r.mean_squared = blank;
  r.parameters = blank;
  r.criteria.assign(s.modes, Series(s.characteristics));
  r.modes.assign(s.modes, 0.0);

  Series across_uniform(s.elements);
  Series across_l2(s.elements);
  for (std::size_t l = 0; l < s.modes; ++l) {
    for (std::size_t m = 0; m < s.characteristics; ++m) {
      for (std::size_t k = 0; k < s.criteria; ++k) {
        for (std::size_t n = 0; n < s.elements; ++n) {
          const auto& ev = tensor.at(n, l, m, k);
          across_uniform[n] = ev.e_uniform;
          across_l2[n] = ev.e_l2;
        }
        const double vu = weighted_mean(across_uniform, weights.elements);
        const double vl = weighted_mean(across_l2, weights.elements);
        r.uniform[l][m][k] = vu;
        r.mean_squared[l][m][k] = vl;
        const double pair[2] = {vu, vl};
        const double pw[2] = {weights.uniform, weights.mean_squared};
        r.parameters[l][m][k] = weighted_mean(pair, pw);
      }
      r.criteria[l][m] = weighted_mean(r.parameters[l][m], weights.criteria);
    }
    r.modes[l] = weighted_mean(r.criteria[l], weights.characteristics);
  }
  return r;
}

EvaluationCounts count_local_evals(const TensorShape& shape, std::size_t parameters) {
  if (shape.cell_count() == 0 || parameters == 0) {
    throw Error(ErrorKind::InvalidArgument, "evaluation counts need positive dimensions");
  }
  EvaluationCounts c;
  c.parameters_per_cell = parameters;
  std::size_t per = 0;
  for (std::size_t l = 0; l < shape.modes; ++l)
    for (std::size_t m = 0; m < shape.characteristics; ++m)
      for (std::size_t k = 0; k < shape.criteria; ++k) per += parameters;
  c.per_element.assign(shape.elements, per);
  for (auto s : c.per_element) c.total += s;
  return c;
}

double global_eval(const EvaluationReport& report) {
  const double h = weighted_mean(report.by_element.elements, report.weights.elements);
  const double v = weighted_mean(report.by_mode.modes, report.weights.modes);
  if (!(std::abs(h - v) <= kGlobalIdentityTolerance)) {
    throw Error(ErrorKind::Inconsistency,
                "element-first and mode-first global scores disagree (" + std::to_string(h) +
                    " vs " + std::to_string(v) + ")");
  }
  return h;
}

EvaluationReport aggregate(LocalEvalTensor tensor, WeightProfile weights,
                           std::size_t parameters_per_cell) {
  EvaluationReport report{std::move(tensor), std::move(weights), {}, {}, 0.0, {}};
  report.by_element = element_rollup(report.tensor, report.weights);
  report.by_mode = mode_rollup(report.tensor, report.weights);
  report.global = global_eval(report);
  report.counts = count_local_evals(report.tensor.shape(), parameters_per_cell);
  return report;
}

}  // namespace dyneval

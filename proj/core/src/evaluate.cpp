#include "dyneval/evaluate.hpp"

#include "dyneval/errors.hpp"

namespace dyneval {

namespace {

constexpr std::size_t kParametersPerCell = 2;  // uniform and mean-squared metrics

}  // namespace

ReportDocument evaluate(const Dataset& dataset, const RunConfig& config, double examination_time) {
  const TensorShape shape = dataset.shape();
  const RunConfig cfg = config.resolved_for(shape);
  const ScaleConfig& scale = cfg.scale;

  LocalEvalTensor tensor(shape, cfg.score_kind);
  std::vector<CellDiagnostics> cells(shape.cell_count());

  for (std::size_t n = 0; n < shape.elements; ++n)
    for (std::size_t l = 0; l < shape.modes; ++l)
      for (std::size_t m = 0; m < shape.characteristics; ++m) {
        const Characteristic& signal = dataset.signal(n, l, m);
        for (std::size_t k = 0; k < shape.criteria; ++k) {
          const CellCoord where{n, l, m, k};
          try {
            const Corridor& corridor = dataset.corridor(n, l, m, k);
            const DeviationSignal dev = distance_to_domain(signal, corridor);
            CellDiagnostics d;
            d.h_uniform = norm_uniform(dev);
            d.h_l2 = norm_l2(dev);
            d.h_max_uniform = h_max_for(corridor, Metric::Uniform, dataset.grid());
            d.h_max_l2 = h_max_for(corridor, Metric::MeanSquared, dataset.grid());
            d.continuous_uniform = continuous_eval(d.h_uniform, 0.0, d.h_max_uniform, scale.nu);
            d.continuous_l2 = continuous_eval(d.h_l2, 0.0, d.h_max_l2, scale.nu);
            d.discrete = discrete_eval(d.continuous_uniform, scale);
            d.derivative_order = cfg.derivative_orders[k];
            d.h_order_uniform = norm_with_derivatives(dev, d.derivative_order, Metric::Uniform);
            d.h_order_l2 = norm_with_derivatives(dev, d.derivative_order, Metric::MeanSquared);

            LocalEvaluation ev = hybrid_evaluate(dev, d.h_max_uniform, scale);
            d.disturbance = classify_pair(ev);
            if (cfg.score_kind == ScoreKind::Continuous) {
              ev.e_uniform = d.continuous_uniform;
              ev.e_l2 = d.continuous_l2;
            }
            tensor.set(n, l, m, k, std::move(ev));
            cells[((n * shape.modes + l) * shape.characteristics + m) * shape.criteria + k] = d;
          } catch (const Error& e) {
            throw e.located(where);
          }
        }
      }

  return ReportDocument{
      .system_id = dataset.system_id(),
      .examination_time = examination_time,
      .elements = dataset.element_labels(),
      .modes = dataset.mode_labels(),
      .characteristics = dataset.characteristic_labels(),
      .criteria = dataset.criterion_labels(),
      .scale = scale,
      .cells = std::move(cells),
      .evaluation = aggregate(std::move(tensor), cfg.weights, kParametersPerCell),
  };
}

}  // namespace dyneval

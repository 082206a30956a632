#pragma once

#include <functional>
#include <string>
#include <utility>

#include "dyneval/report.hpp"

namespace fixtures {

using CellScore = std::function<std::pair<double, double>(std::size_t n, std::size_t l, std::size_t m, std::size_t k)>;

/// Report built straight from local ratings, bypassing datasets.
inline dyneval::ReportDocument make_report(const std::string& system_id, double time,
                                           dyneval::TensorShape shape, const CellScore& score) {
  using namespace dyneval;
  const ScaleConfig scale;
  LocalEvalTensor tensor(shape);
  for (std::size_t n = 0; n < shape.elements; ++n)
    for (std::size_t l = 0; l < shape.modes; ++l)
      for (std::size_t m = 0; m < shape.characteristics; ++m)
        for (std::size_t k = 0; k < shape.criteria; ++k) {
          const auto [u, q] = score(n, l, m, k);
          const int g = grade_of(u);
          tensor.set(n, l, m, k, {u, q, g, conceptual_label(g, scale)});
        }
  auto labels = [](const char* stem, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(i));
    return out;
  };
  return ReportDocument{
      .system_id = system_id,
      .examination_time = time,
      .elements = labels("element", shape.elements),
      .modes = labels("mode", shape.modes),
      .characteristics = labels("characteristic", shape.characteristics),
      .criteria = labels("criterion", shape.criteria),
      .scale = scale,
      .cells = std::vector<CellDiagnostics>(shape.cell_count()),
      .evaluation = aggregate(std::move(tensor), WeightProfile::equal(shape)),
  };
}

inline dyneval::ReportDocument constant_report(const std::string& system_id, double time, double value) {
  return make_report(system_id, time, {1, 1, 1, 1},
                     [value](std::size_t, std::size_t, std::size_t, std::size_t) { return std::pair{value, value}; });
}

}  // namespace fixtures

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dyneval/aggregation.hpp"
#include "dyneval/scales.hpp"

namespace dyneval {

/// Per-cell parameters behind a local evaluation.
struct CellDiagnostics {
  double h_uniform = 0.0;
  double h_l2 = 0.0;
  double h_max_uniform = 0.0;
  double h_max_l2 = 0.0;
  double continuous_uniform = 0.0;
  double continuous_l2 = 0.0;
  int discrete = 0;
  int derivative_order = 1;
  double h_order_uniform = 0.0;  ///< equals h_uniform at order 1
  double h_order_l2 = 0.0;       ///< equals h_l2 at order 1
  Disturbance disturbance = Disturbance::None;
};

/// Serializable outcome of one examination of one system.
struct ReportDocument {
  std::string system_id;
  double examination_time = 0.0;
  std::vector<std::string> elements;
  std::vector<std::string> modes;
  std::vector<std::string> characteristics;
  std::vector<std::string> criteria;
  ScaleConfig scale;
  std::vector<CellDiagnostics> cells;  ///< [n][l][m][k] row-major
  EvaluationReport evaluation;

  [[nodiscard]] const TensorShape& shape() const noexcept { return evaluation.tensor.shape(); }
  [[nodiscard]] const CellDiagnostics& cell(std::size_t n, std::size_t l, std::size_t m,
                                            std::size_t k) const;
};

/// Stable-order JSON text. Re-serializing a parsed report reproduces it byte for byte.
std::string serialize_report(const ReportDocument& report);
/// Rejects unknown major schema versions and reports whose two global scores disagree.
ReportDocument parse_report(std::string_view text);

ReportDocument read_report(const std::filesystem::path& path);
void write_report(const std::filesystem::path& path, const ReportDocument& report);

/// Every *.json report in `dir`, ordered by examination time. Times must be
/// distinct and all reports must share one system id.
std::vector<ReportDocument> read_archive(const std::filesystem::path& dir);

/// One CSV per hierarchy level for external plotting.
void write_plot_data(const ReportDocument& report, const std::filesystem::path& dir);

/// Conceptual label of an aggregated precise rating, or "" for continuous scores.
std::string level_label(double value, ScoreKind kind, const ScaleConfig& scale);

}  // namespace dyneval

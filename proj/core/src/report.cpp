#include "dyneval/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dyneval/config.hpp"
#include "dyneval/csv.hpp"
#include "dyneval/errors.hpp"
#include "json_util.hpp"

namespace dyneval {

using detail::json;
using detail::ordered_json;

const CellDiagnostics& ReportDocument::cell(std::size_t n, std::size_t l, std::size_t m,
                                            std::size_t k) const {
  const auto& s = shape();
  if (n >= s.elements || l >= s.modes || m >= s.characteristics || k >= s.criteria) {
    throw Error(ErrorKind::ShapeMismatch, "report cell out of range", CellCoord{n, l, m, k});
  }
  return cells[((n * s.modes + l) * s.characteristics + m) * s.criteria + k];
}

std::string level_label(double value, ScoreKind kind, const ScaleConfig& scale) {
  if (kind != ScoreKind::PreciseRating) return {};
  return conceptual_label(grade_of(value), scale);
}

namespace {

Disturbance disturbance_from_string(std::string_view s) {
  for (auto d : {Disturbance::None, Disturbance::BeyondPermissible, Disturbance::NearCritical,
                 Disturbance::FewShortDisturbances, Disturbance::NearNextGrade, Disturbance::Mixed}) {
    if (to_string(d) == s) return d;
  }
  throw Error(ErrorKind::Schema, "unknown disturbance '" + std::string(s) + "'");
}

// Applies `f` to every leaf of a nested vector, producing the same nesting.
template <typename F>
ordered_json map_leaves(const Series& v, F&& f) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(f(x));
  return out;
}
template <typename T, typename F>
ordered_json map_leaves(const std::vector<T>& v, F&& f) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(map_leaves(x, f));
  return out;
}

ordered_json level(const auto& values, ScoreKind kind, const ScaleConfig& scale) {
  ordered_json out = ordered_json::object();
  out["values"] = map_leaves(values, [](double x) { return ordered_json(x); });
  if (kind == ScoreKind::PreciseRating) {
    out["labels"] = map_leaves(values, [&](double x) { return ordered_json(level_label(x, kind, scale)); });
  }
  return out;
}

ordered_json weights_json(const WeightProfile& w) {
  ordered_json out = ordered_json::object();
  out["uniform"] = w.uniform;
  out["mean_squared"] = w.mean_squared;
  out["criteria"] = w.criteria;
  out["characteristics"] = w.characteristics;
  out["modes"] = w.modes;
  out["elements"] = w.elements;
  return out;
}

}  // namespace

std::string serialize_report(const ReportDocument& r) {
  const auto& ev = r.evaluation;
  const auto& s = r.shape();
  const ScoreKind kind = ev.tensor.kind();

  ordered_json doc = ordered_json::object();
  doc["schema_version"] = detail::schema_version_string();
  doc["system_id"] = r.system_id;
  doc["examination_time"] = r.examination_time;
  doc["score_kind"] = std::string(to_string(kind));
  doc["shape"] = ordered_json{{"elements", s.elements},
                              {"modes", s.modes},
                              {"characteristics", s.characteristics},
                              {"criteria", s.criteria}};
  doc["labels"] = ordered_json{{"elements", r.elements},
                               {"modes", r.modes},
                               {"characteristics", r.characteristics},
                               {"criteria", r.criteria}};
  doc["scale"] = ordered_json{{"nu", r.scale.nu},
                              {"delta", r.scale.delta},
                              {"delta_grid", r.scale.delta_grid},
                              {"labels", r.scale.labels}};
  doc["weights"] = weights_json(ev.weights);
  doc["counts"] = ordered_json{{"parameters_per_cell", ev.counts.parameters_per_cell},
                               {"per_element", ev.counts.per_element},
                               {"total", ev.counts.total}};
  doc["global"] = ordered_json{{"value", ev.global}};
  if (kind == ScoreKind::PreciseRating) doc["global"]["label"] = level_label(ev.global, kind, r.scale);

  ordered_json eh = ordered_json::object();
  eh["parameters"] = level(ev.by_element.parameters, kind, r.scale);
  eh["criteria"] = level(ev.by_element.criteria, kind, r.scale);
  eh["characteristics"] = level(ev.by_element.characteristics, kind, r.scale);
  eh["elements"] = level(ev.by_element.elements, kind, r.scale);
  doc["element_hierarchy"] = std::move(eh);

  ordered_json mh = ordered_json::object();
  mh["uniform"] = level(ev.by_mode.uniform, kind, r.scale);
  mh["mean_squared"] = level(ev.by_mode.mean_squared, kind, r.scale);
  mh["parameters"] = level(ev.by_mode.parameters, kind, r.scale);
  mh["criteria"] = level(ev.by_mode.criteria, kind, r.scale);
  mh["modes"] = level(ev.by_mode.modes, kind, r.scale);
  doc["mode_hierarchy"] = std::move(mh);

  ordered_json cells = ordered_json::array();
  for (std::size_t n = 0; n < s.elements; ++n)
    for (std::size_t l = 0; l < s.modes; ++l)
      for (std::size_t m = 0; m < s.characteristics; ++m)
        for (std::size_t k = 0; k < s.criteria; ++k) {
          const auto& e = ev.tensor.at(n, l, m, k);
          const auto& d = r.cell(n, l, m, k);
          ordered_json c = ordered_json::object();
          c["n"] = n;
          c["l"] = l;
          c["m"] = m;
          c["k"] = k;
          c["e_uniform"] = e.e_uniform;
          c["e_l2"] = e.e_l2;
          c["grade"] = e.grade;
          c["label"] = e.label;
          c["disturbance"] = std::string(to_string(d.disturbance));
          c["h_uniform"] = d.h_uniform;
          c["h_l2"] = d.h_l2;
          c["h_max_uniform"] = d.h_max_uniform;
          c["h_max_l2"] = d.h_max_l2;
          c["continuous_uniform"] = d.continuous_uniform;
          c["continuous_l2"] = d.continuous_l2;
          c["discrete"] = d.discrete;
          if (d.derivative_order != 1) {
            c["derivative_order"] = d.derivative_order;
            c["h_order_uniform"] = d.h_order_uniform;
            c["h_order_l2"] = d.h_order_l2;
          }
          cells.push_back(std::move(c));
        }
  doc["cells"] = std::move(cells);
  return doc.dump(1) + "\n";
}

namespace {

template <typename T>
T leaf_values(const json& level_doc, const std::string& what) {
  try {
    return level_doc.at("values").get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Schema, what + ": " + e.what());
  }
}

}  // namespace

ReportDocument parse_report(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("report: ") + e.what());
  }
  const std::string what = "report";
  detail::check_schema_version(doc, what);

  const auto& sh = detail::require(doc, "shape", what);
  const TensorShape shape{detail::get_as<std::size_t>(sh, "elements", what),
                          detail::get_as<std::size_t>(sh, "modes", what),
                          detail::get_as<std::size_t>(sh, "characteristics", what),
                          detail::get_as<std::size_t>(sh, "criteria", what)};
  const ScoreKind kind = score_kind_from_string(detail::get_as<std::string>(doc, "score_kind", what));

  const auto& labels = detail::require(doc, "labels", what);
  const auto& sc = detail::require(doc, "scale", what);
  ScaleConfig scale;
  scale.nu = detail::get_as<double>(sc, "nu", what);
  scale.delta = detail::get_as<double>(sc, "delta", what);
  scale.delta_grid = detail::get_as<std::vector<double>>(sc, "delta_grid", what);
  scale.labels = detail::get_as<std::vector<std::string>>(sc, "labels", what);
  scale.validate();

  const auto& wd = detail::require(doc, "weights", what);
  WeightProfile weights;
  weights.uniform = detail::get_as<double>(wd, "uniform", what);
  weights.mean_squared = detail::get_as<double>(wd, "mean_squared", what);
  weights.criteria = detail::get_as<Series>(wd, "criteria", what);
  weights.characteristics = detail::get_as<Series>(wd, "characteristics", what);
  weights.modes = detail::get_as<Series>(wd, "modes", what);
  weights.elements = detail::get_as<Series>(wd, "elements", what);
  weights.validate(shape);

  LocalEvalTensor tensor(shape, kind);
  std::vector<CellDiagnostics> diags(shape.cell_count());
  const auto& cells = detail::require(doc, "cells", what);
  if (!cells.is_array() || cells.size() != shape.cell_count()) {
    throw Error(ErrorKind::Schema, "report: cell count does not match the shape");
  }
  for (const auto& c : cells) {
    const auto n = detail::get_as<std::size_t>(c, "n", what);
    const auto l = detail::get_as<std::size_t>(c, "l", what);
    const auto m = detail::get_as<std::size_t>(c, "m", what);
    const auto k = detail::get_as<std::size_t>(c, "k", what);
    const CellCoord where{n, l, m, k};
    if (n >= shape.elements || l >= shape.modes || m >= shape.characteristics || k >= shape.criteria) {
      throw Error(ErrorKind::Schema, "report cell outside the shape", where);
    }
    LocalEvaluation ev;
    ev.e_uniform = detail::get_as<double>(c, "e_uniform", what);
    ev.e_l2 = detail::get_as<double>(c, "e_l2", what);
    ev.grade = detail::get_as<int>(c, "grade", what);
    ev.label = detail::get_as<std::string>(c, "label", what);
    if (tensor.is_set(n, l, m, k)) throw Error(ErrorKind::Schema, "report cell repeated", where);
    tensor.set(n, l, m, k, std::move(ev));

    CellDiagnostics d;
    d.disturbance = disturbance_from_string(detail::get_as<std::string>(c, "disturbance", what));
    d.h_uniform = detail::get_as<double>(c, "h_uniform", what);
    d.h_l2 = detail::get_as<double>(c, "h_l2", what);
    d.h_max_uniform = detail::get_as<double>(c, "h_max_uniform", what);
    d.h_max_l2 = detail::get_as<double>(c, "h_max_l2", what);
    d.continuous_uniform = detail::get_as<double>(c, "continuous_uniform", what);
    d.continuous_l2 = detail::get_as<double>(c, "continuous_l2", what);
    d.discrete = detail::get_as<int>(c, "discrete", what);
    d.derivative_order = detail::get_or<int>(c, "derivative_order", 1, what);
    d.h_order_uniform = detail::get_or<double>(c, "h_order_uniform", d.h_uniform, what);
    d.h_order_l2 = detail::get_or<double>(c, "h_order_l2", d.h_l2, what);
    diags[((n * shape.modes + l) * shape.characteristics + m) * shape.criteria + k] = d;
  }

  const auto& eh = detail::require(doc, "element_hierarchy", what);
  const auto& mh = detail::require(doc, "mode_hierarchy", what);
  const auto& counts = detail::require(doc, "counts", what);

  EvaluationReport evaluation{std::move(tensor), std::move(weights), {}, {}, 0.0, {}};
  evaluation.by_element.parameters = leaf_values<Table4>(detail::require(eh, "parameters", what), what);
  evaluation.by_element.criteria = leaf_values<Table3>(detail::require(eh, "criteria", what), what);
  evaluation.by_element.characteristics = leaf_values<Table2>(detail::require(eh, "characteristics", what), what);
  evaluation.by_element.elements = leaf_values<Series>(detail::require(eh, "elements", what), what);
  evaluation.by_mode.uniform = leaf_values<Table3>(detail::require(mh, "uniform", what), what);
  evaluation.by_mode.mean_squared = leaf_values<Table3>(detail::require(mh, "mean_squared", what), what);
  evaluation.by_mode.parameters = leaf_values<Table3>(detail::require(mh, "parameters", what), what);
  evaluation.by_mode.criteria = leaf_values<Table2>(detail::require(mh, "criteria", what), what);
  evaluation.by_mode.modes = leaf_values<Series>(detail::require(mh, "modes", what), what);
  evaluation.counts.parameters_per_cell = detail::get_as<std::size_t>(counts, "parameters_per_cell", what);
  evaluation.counts.per_element = detail::get_as<std::vector<std::size_t>>(counts, "per_element", what);
  evaluation.counts.total = detail::get_as<std::size_t>(counts, "total", what);
  evaluation.global = detail::get_as<double>(detail::require(doc, "global", what), "value", what);

  if (evaluation.by_element.elements.size() != shape.elements ||
      evaluation.by_mode.modes.size() != shape.modes) {
    throw Error(ErrorKind::Schema, "report: hierarchy sizes do not match the shape");
  }
  const double recomputed = global_eval(evaluation);
  if (std::abs(recomputed - evaluation.global) > kGlobalIdentityTolerance) {
    throw Error(ErrorKind::Inconsistency, "report: stored global score disagrees with its hierarchy");
  }

  return ReportDocument{
      .system_id = detail::get_as<std::string>(doc, "system_id", what),
      .examination_time = detail::get_as<double>(doc, "examination_time", what),
      .elements = detail::get_as<std::vector<std::string>>(labels, "elements", what),
      .modes = detail::get_as<std::vector<std::string>>(labels, "modes", what),
      .characteristics = detail::get_as<std::vector<std::string>>(labels, "characteristics", what),
      .criteria = detail::get_as<std::vector<std::string>>(labels, "criteria", what),
      .scale = std::move(scale),
      .cells = std::move(diags),
      .evaluation = std::move(evaluation),
  };
}

ReportDocument read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_report(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail(), e.where());
  }
}

void write_report(const std::filesystem::path& path, const ReportDocument& report) {
  detail::write_text_file(path, serialize_report(report));
}

std::vector<ReportDocument> read_archive(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::Io, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ReportDocument> reports;
  reports.reserve(files.size());
  for (const auto& f : files) reports.push_back(read_report(f));
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return a.examination_time < b.examination_time;
  });
  for (std::size_t i = 1; i < reports.size(); ++i) {
    if (!(reports[i].examination_time > reports[i - 1].examination_time)) {
      throw Error(ErrorKind::InvalidArgument, "archive holds two reports for examination time " +
                                                  format_double(reports[i].examination_time));
    }
    if (reports[i].system_id != reports[0].system_id) {
      throw Error(ErrorKind::InvalidArgument, "archive mixes systems '" + reports[0].system_id +
                                                  "' and '" + reports[i].system_id + "'");
    }
  }
  return reports;
}

namespace {

class CsvOut {
 public:
  CsvOut(const std::filesystem::path& path, std::initializer_list<const char*> header)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorKind::Io, "cannot write " + path.string());
    bool first = true;
    for (const char* h : header) {
      out_ << (first ? "" : ",") << h;
      first = false;
    }
    out_ << '\n';
  }
  ~CsvOut() = default;

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << text(fields), first = false), ...);
    out_ << '\n';
  }

  void finish() {
    out_.flush();
    if (!out_) throw Error(ErrorKind::Io, "failed writing " + path_.string());
  }

 private:
  static std::string text(double v) { return format_double(v); }
  static std::string text(std::size_t v) { return std::to_string(v); }
  static std::string text(int v) { return std::to_string(v); }
  static std::string text(const std::string& v) { return v; }
  static std::string text(std::string_view v) { return std::string(v); }

  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace

void write_plot_data(const ReportDocument& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& s = r.shape();
  const auto& ev = r.evaluation;
  const ScoreKind kind = ev.tensor.kind();
  auto label = [&](double v) { return level_label(v, kind, r.scale); };

  {
    CsvOut out(dir / "cells.csv", {"n", "l", "m", "k", "e_uniform", "e_l2", "grade", "label",
                                   "disturbance", "h_uniform", "h_l2", "continuous_uniform",
                                   "continuous_l2", "discrete"});
    for (std::size_t n = 0; n < s.elements; ++n)
      for (std::size_t l = 0; l < s.modes; ++l)
        for (std::size_t m = 0; m < s.characteristics; ++m)
          for (std::size_t k = 0; k < s.criteria; ++k) {
            const auto& e = ev.tensor.at(n, l, m, k);
            const auto& d = r.cell(n, l, m, k);
            out.row(n, l, m, k, e.e_uniform, e.e_l2, e.grade, e.label, to_string(d.disturbance),
                    d.h_uniform, d.h_l2, d.continuous_uniform, d.continuous_l2, d.discrete);
          }
    out.finish();
  }
  {
    CsvOut params(dir / "element_parameters.csv", {"n", "l", "m", "k", "value", "label"});
    CsvOut crit(dir / "element_criteria.csv", {"n", "l", "m", "value", "label"});
    CsvOut chars(dir / "element_characteristics.csv", {"n", "l", "value", "label"});
    CsvOut elems(dir / "elements.csv", {"n", "element", "value", "label"});
    for (std::size_t n = 0; n < s.elements; ++n) {
      for (std::size_t l = 0; l < s.modes; ++l) {
        for (std::size_t m = 0; m < s.characteristics; ++m) {
          for (std::size_t k = 0; k < s.criteria; ++k) {
            const double v = ev.by_element.parameters[n][l][m][k];
            params.row(n, l, m, k, v, label(v));
          }
          const double v = ev.by_element.criteria[n][l][m];
          crit.row(n, l, m, v, label(v));
        }
        const double v = ev.by_element.characteristics[n][l];
        chars.row(n, l, v, label(v));
      }
      const double v = ev.by_element.elements[n];
      elems.row(n, r.elements[n], v, label(v));
    }
    params.finish();
    crit.finish();
    chars.finish();
    elems.finish();
  }
  {
    CsvOut params(dir / "mode_parameters.csv",
                  {"l", "m", "k", "uniform", "mean_squared", "value", "label"});
    CsvOut crit(dir / "mode_criteria.csv", {"l", "m", "value", "label"});
    CsvOut modes(dir / "modes.csv", {"l", "mode", "value", "label"});
    for (std::size_t l = 0; l < s.modes; ++l) {
      for (std::size_t m = 0; m < s.characteristics; ++m) {
        for (std::size_t k = 0; k < s.criteria; ++k) {
          const double v = ev.by_mode.parameters[l][m][k];
          params.row(l, m, k, ev.by_mode.uniform[l][m][k], ev.by_mode.mean_squared[l][m][k], v,
                     label(v));
        }
        const double v = ev.by_mode.criteria[l][m];
        crit.row(l, m, v, label(v));
      }
      const double v = ev.by_mode.modes[l];
      modes.row(l, r.modes[l], v, label(v));
    }
    params.finish();
    crit.finish();
    modes.finish();
  }
  {
    CsvOut global(dir / "global.csv", {"system_id", "examination_time", "value", "label"});
    global.row(r.system_id, r.examination_time, ev.global, label(ev.global));
    global.finish();
  }
}

}  // namespace dyneval

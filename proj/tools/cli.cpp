#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "dyneval/config.hpp"
#include "dyneval/dataset.hpp"
#include "dyneval/errors.hpp"
#include "dyneval/evaluate.hpp"
#include "dyneval/report.hpp"
#include "dyneval/selection.hpp"
#include "dyneval/synthetic.hpp"
#include "dyneval/trend.hpp"

namespace dyneval::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

void print(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << '\n'; }

ordered_json error_json(std::string_view kind, const std::string& message, const CellCoord& where) {
  ordered_json e = ordered_json::object();
  e["kind"] = std::string(kind);
  e["message"] = message;
  if (!where.empty()) {
    ordered_json c = ordered_json::object();
    if (where.element) c["n"] = *where.element;
    if (where.mode) c["l"] = *where.mode;
    if (where.characteristic) c["m"] = *where.characteristic;
    if (where.criterion) c["k"] = *where.criterion;
    e["coordinates"] = std::move(c);
  }
  return ordered_json{{"error", std::move(e)}};
}

ordered_json choice_json(const TieSet& ties, const ProductChoice& choice, const Table2& rows,
                         std::span<const double> scores, const std::vector<std::string>& names,
                         const char* key) {
  ordered_json doc = ordered_json::object();
  ordered_json tie = ordered_json::object();
  tie["score"] = ties.score;
  tie["eps"] = ties.eps;
  tie["members"] = ordered_json::array();
  for (auto i : ties.members) tie["members"].push_back(names[i]);
  doc["tie_set"] = std::move(tie);
  ordered_json cands = ordered_json::array();
  for (std::size_t j = 0; j < ties.members.size(); ++j) {
    const auto i = ties.members[j];
    ordered_json c = ordered_json::object();
    c[key] = names[i];
    c["index"] = i;
    c["score"] = scores[i];
    c["components"] = rows[i];
    c["product"] = std::exp(choice.log_products[j]);
    c["log_product"] = choice.log_products[j];
    cands.push_back(std::move(c));
  }
  doc["candidates"] = std::move(cands);
  doc["optimal"] = ordered_json::array();
  for (auto i : choice.winners) doc["optimal"].push_back(names[i]);
  doc["optimal_indices"] = choice.winners;
  return doc;
}

int cmd_evaluate(const std::string& manifest, const std::string& config_path,
                 const std::string& output, const std::string& plot_dir, double time,
                 std::ostream& out) {
  const Dataset dataset = load_dataset(manifest);
  const RunConfig config = read_config(config_path);
  const ReportDocument report = evaluate(dataset, config, time);
  if (!plot_dir.empty()) write_plot_data(report, plot_dir);
  if (output.empty() || output == "-") {
    out << serialize_report(report);
    return 0;
  }
  write_report(output, report);
  const auto& ev = report.evaluation;
  ordered_json summary = ordered_json::object();
  summary["report"] = output;
  summary["system_id"] = report.system_id;
  summary["global"] = ev.global;
  summary["label"] = level_label(ev.global, ev.tensor.kind(), report.scale);
  summary["S"] = ev.counts.total;
  summary["S_n"] = ev.counts.per_element;
  print(out, summary);
  return 0;
}

int cmd_select_mode(const std::string& path, double eps, std::ostream& out) {
  const ReportDocument report = read_report(path);
  const auto& modes = report.evaluation.by_mode;
  const TieSet ties = tie_set(modes.modes, eps);
  const ProductChoice choice = optimal_mode(modes.criteria, ties);
  ordered_json doc = ordered_json::object();
  doc["system_id"] = report.system_id;
  doc["mode_scores"] = modes.modes;
  doc.update(choice_json(ties, choice, modes.criteria, modes.modes, report.modes, "mode"));
  print(out, doc);
  return 0;
}

int cmd_compare(const std::vector<std::string>& paths, double eps, std::ostream& out) {
  std::vector<ReportDocument> reports;
  for (const auto& p : paths) reports.push_back(read_report(p));
  const auto modes = reports.front().shape().modes;
  Series scores;
  Table2 rows;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].shape().modes != modes) {
      throw Error(ErrorKind::ShapeMismatch,
                  "report " + paths[i] + " has a different number of operating modes");
    }
    scores.push_back(reports[i].evaluation.global);
    rows.push_back(reports[i].evaluation.by_mode.modes);
    names.push_back(reports[i].system_id);
  }
  const TieSet ties = tie_set(scores, eps);
  const ProductChoice choice = optimal_system(rows, ties);
  ordered_json doc = ordered_json::object();
  ordered_json systems = ordered_json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    systems.push_back(ordered_json{{"system_id", names[i]}, {"report", paths[i]}, {"global", scores[i]}});
  }
  doc["systems"] = std::move(systems);
  doc.update(choice_json(ties, choice, rows, scores, names, "system"));
  print(out, doc);
  return 0;
}

int cmd_forecast(const std::string& archive, const std::string& v_star_text, double horizon,
                 std::optional<std::size_t> basis_size, double tol, std::ostream& out) {
  const auto reports = read_archive(archive);
  std::vector<HistorySample> samples;
  for (const auto& r : reports) samples.push_back({r.examination_time, r.evaluation.global});
  const History history(samples);
  const ForecastModel model = fit_forecast(history, basis_size);

  const double last_value = history.last().value;
  double v_star = 0.0;
  std::string source;
  if (v_star_text == "auto") {
    v_star = grade_drop_threshold(last_value);
    source = "lower edge of the current grade";
  } else {
    try {
      std::size_t used = 0;
      v_star = std::stod(v_star_text, &used);
      if (used != v_star_text.size()) throw std::invalid_argument(v_star_text);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "--v-star must be 'auto' or a number");
    }
    source = "explicit";
  }

  const auto& s = history.samples();
  const double step = (history.last().time - history.first().time) / static_cast<double>(s.size() - 1);
  const double next_time = history.last().time + step;

  ordered_json doc = ordered_json::object();
  doc["system_id"] = reports.front().system_id;
  ordered_json hist = ordered_json::array();
  for (const auto& x : s) hist.push_back(ordered_json{{"time", x.time}, {"value", x.value}});
  doc["history"] = std::move(hist);
  doc["trend"] = std::string(to_string(classify_trend(history, tol)));
  doc["model"] = ordered_json{{"basis", "monomial"},
                              {"basis_size", model.basis_size()},
                              {"window", {model.window_start(), model.window_end()}},
                              {"coefficients", model.coefficients()}};
  doc["next_forecast"] = ordered_json{{"time", next_time},
                                      {"value", forecast_at(model, next_time)},
                                      {"extrapolated", is_extrapolation(model, next_time)}};
  doc["v_star"] = ordered_json{{"value", v_star}, {"source", source}};
  doc["horizon"] = horizon;

  ordered_json crossing = ordered_json::object();
  if (forecast_at(model, history.last().time) < v_star) {
    crossing["status"] = "already below threshold";
  } else if (const auto t = next_examination_time(model, v_star, horizon)) {
    crossing["status"] = "crossing";
    crossing["time"] = *t;
    crossing["since_first"] = *t - history.first().time;
    crossing["since_last"] = *t - history.last().time;
    crossing["extrapolated"] = is_extrapolation(model, *t);
  } else {
    crossing["status"] = "no crossing";
  }
  doc["next_examination"] = std::move(crossing);
  print(out, doc);
  return 0;
}

int cmd_generate(const std::string& spec_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, std::ostream& out) {
  SyntheticSpec spec = read_synthetic_spec(spec_path);
  if (seed) spec.seed = *seed;
  const SyntheticResult result = generate_synthetic(spec, out_dir);
  ordered_json doc = ordered_json::object();
  doc["manifest"] = result.manifest.string();
  doc["config"] = result.config.string();
  doc["expected"] = result.expected.string();
  doc["cells"] = result.cells.size();
  doc["injected_cells"] = result.injected_cells;
  print(out, doc);
  return 0;
}

int cmd_validate(const std::string& manifest, std::ostream& out) {
  const Dataset dataset = load_dataset(manifest);
  const auto shape = dataset.shape();
  const auto counts = count_local_evals(shape, 2);
  ordered_json doc = ordered_json::object();
  doc["valid"] = true;
  doc["system_id"] = dataset.system_id();
  doc["shape"] = ordered_json{{"elements", shape.elements},
                              {"modes", shape.modes},
                              {"characteristics", shape.characteristics},
                              {"criteria", shape.criteria}};
  doc["grid"] = ordered_json{{"dt", dataset.grid().dt()}, {"count", dataset.grid().count()}};
  doc["S_n"] = counts.per_element;
  doc["S"] = counts.total;
  print(out, doc);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multilevel evaluation of complex dynamical systems", "dyneval"};
  app.require_subcommand(1);

  std::string manifest, config_path, output, plot_dir, report_path, archive, spec_path, out_dir;
  std::vector<std::string> reports;
  double time = 0.0;
  double eps = kDefaultTieEps;
  std::string v_star = "auto";
  double horizon = 10.0;
  std::size_t basis_size = 0;
  double tol = 1e-6;
  std::uint64_t seed = 0;

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a dataset and write the report");
  evaluate_cmd->add_option("manifest", manifest, "Dataset manifest (JSON)")->required();
  evaluate_cmd->add_option("config", config_path, "Run configuration (JSON)")->required();
  evaluate_cmd->add_option("-o,--output", output, "Report path; stdout when omitted");
  evaluate_cmd->add_option("--plot-data", plot_dir, "Directory for per-level CSV tables");
  evaluate_cmd->add_option("--time", time, "Examination time stored in the report");

  auto* select_cmd = app.add_subcommand("select-mode", "Choose the optimal operating mode");
  select_cmd->add_option("report", report_path, "Evaluation report")->required();
  select_cmd->add_option("--eps", eps, "Tie tolerance")->check(CLI::NonNegativeNumber);

  auto* compare_cmd = app.add_subcommand("compare", "Choose the optimal system of a class");
  compare_cmd->add_option("reports", reports, "Reports of equivalent systems")->required();
  compare_cmd->add_option("--eps", eps, "Tie tolerance")->check(CLI::NonNegativeNumber);

  auto* forecast_cmd = app.add_subcommand("forecast", "Trend, forecast and next examination time");
  forecast_cmd->add_option("archive", archive, "Directory of reports of one system")->required();
  forecast_cmd->add_option("--v-star", v_star, "Threshold: 'auto' or a number");
  forecast_cmd->add_option("--horizon", horizon, "Search horizon after the last report")
      ->check(CLI::PositiveNumber);
  auto* basis_opt = forecast_cmd->add_option("--basis-size", basis_size, "Monomial basis size");
  forecast_cmd->add_option("--tol", tol, "Trend tolerance")->check(CLI::NonNegativeNumber);

  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic dataset");
  generate_cmd->add_option("spec", spec_path, "Synthetic dataset spec (JSON)")->required();
  generate_cmd->add_option("-o,--output", out_dir, "Output directory")->required();
  auto* seed_opt = generate_cmd->add_option("--seed", seed, "Override the spec's seed");

  auto* validate_cmd = app.add_subcommand("validate", "Load and check a dataset");
  validate_cmd->add_option("manifest", manifest, "Dataset manifest (JSON)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    print(err, error_json("usage", e.what(), {}));
    return 2;
  }

  try {
    if (evaluate_cmd->parsed()) return cmd_evaluate(manifest, config_path, output, plot_dir, time, out);
    if (select_cmd->parsed()) return cmd_select_mode(report_path, eps, out);
    if (compare_cmd->parsed()) return cmd_compare(reports, eps, out);
    if (forecast_cmd->parsed()) {
      std::optional<std::size_t> basis;
      if (basis_opt->count() > 0) basis = basis_size;
      return cmd_forecast(archive, v_star, horizon, basis, tol, out);
    }
    if (generate_cmd->parsed()) {
      std::optional<std::uint64_t> s;
      if (seed_opt->count() > 0) s = seed;
      return cmd_generate(spec_path, out_dir, s, out);
    }
    if (validate_cmd->parsed()) return cmd_validate(manifest, out);
  } catch (const Error& e) {
    print(err, error_json(to_string(e.kind()), e.detail(), e.where()));
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    print(err, error_json("io", e.what(), {}));
    return 1;
  } catch (const std::exception& e) {
    print(err, error_json("internal", e.what(), {}));
    return 1;
  }
  return 2;
}

}  // namespace dyneval::cli

#include "dyneval/config.hpp"

#include "dyneval/errors.hpp"
#include "dyneval/timeseries.hpp"
#include "json_util.hpp"

namespace dyneval {

using detail::json;

std::string_view to_string(ScoreKind kind) noexcept {
  return kind == ScoreKind::PreciseRating ? "precise" : "continuous";
}

ScoreKind score_kind_from_string(std::string_view text) {
  if (text == "precise") return ScoreKind::PreciseRating;
  if (text == "continuous") return ScoreKind::Continuous;
  throw Error(ErrorKind::Schema, "unknown score_kind '" + std::string(text) + "'");
}

RunConfig RunConfig::resolved_for(const TensorShape& shape) const {
  RunConfig out = *this;
  auto fill = [](Series& w, std::size_t n) {
    if (w.empty()) w.assign(n, 1.0);
  };
  fill(out.weights.criteria, shape.criteria);
  fill(out.weights.characteristics, shape.characteristics);
  fill(out.weights.modes, shape.modes);
  fill(out.weights.elements, shape.elements);
  if (out.derivative_orders.empty()) out.derivative_orders.assign(shape.criteria, 1);

  out.scale.validate();
  out.weights.validate(shape);
  if (out.derivative_orders.size() != shape.criteria) {
    throw Error(ErrorKind::ShapeMismatch, "derivative_orders needs one entry per criterion");
  }
  for (std::size_t k = 0; k < out.derivative_orders.size(); ++k) {
    const int p = out.derivative_orders[k];
    if (p < 1 || p > kMaxDerivativeOrder) {
      throw Error(ErrorKind::InvalidArgument, "derivative order out of range",
                  CellCoord{std::nullopt, std::nullopt, std::nullopt, k});
    }
  }
  if (!(out.tie_eps >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tie eps must be >= 0");
  if (!(out.forecast.horizon > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "forecast horizon must be positive");
  }
  return out;
}

namespace {

RunConfig config_from_json(const json& doc, const std::string& what) {
  if (!doc.is_object()) throw Error(ErrorKind::Schema, what + ": config must be an object");
  detail::check_schema_version(doc, "config " + what);
  RunConfig cfg;

  if (doc.contains("scale")) {
    const auto& s = doc.at("scale");
    const std::string sw = what + " scale";
    cfg.scale.nu = detail::get_or<double>(s, "nu", cfg.scale.nu, sw);
    cfg.scale.delta = detail::get_or<double>(s, "delta", cfg.scale.delta, sw);
    if (s.contains("delta_grid")) {
      cfg.scale.delta_grid = detail::get_as<std::vector<double>>(s, "delta_grid", sw);
    } else if (s.contains("discrete_grades")) {
      cfg.scale.delta_grid =
          ScaleConfig::uniform_delta_grid(detail::get_as<int>(s, "discrete_grades", sw));
    }
    cfg.scale.labels = detail::get_or<std::vector<std::string>>(s, "labels", cfg.scale.labels, sw);
  }

  if (doc.contains("weights")) {
    const auto& w = doc.at("weights");
    const std::string ww = what + " weights";
    cfg.weights.uniform = detail::get_or<double>(w, "uniform", 1.0, ww);
    cfg.weights.mean_squared = detail::get_or<double>(w, "mean_squared", 1.0, ww);
    cfg.weights.criteria = detail::get_or<Series>(w, "criteria", {}, ww);
    cfg.weights.characteristics = detail::get_or<Series>(w, "characteristics", {}, ww);
    cfg.weights.modes = detail::get_or<Series>(w, "modes", {}, ww);
    cfg.weights.elements = detail::get_or<Series>(w, "elements", {}, ww);
  }

  cfg.derivative_orders = detail::get_or<std::vector<int>>(doc, "derivative_orders", {}, what);
  cfg.score_kind = score_kind_from_string(detail::get_or<std::string>(doc, "score_kind", "precise", what));

  if (doc.contains("selection")) {
    cfg.tie_eps = detail::get_or<double>(doc.at("selection"), "eps", cfg.tie_eps, what + " selection");
  }
  if (doc.contains("forecast")) {
    const auto& f = doc.at("forecast");
    const std::string fw = what + " forecast";
    if (f.contains("basis_size") && !f.at("basis_size").is_null()) {
      cfg.forecast.basis_size = detail::get_as<std::size_t>(f, "basis_size", fw);
    }
    cfg.forecast.horizon = detail::get_or<double>(f, "horizon", cfg.forecast.horizon, fw);
    cfg.forecast.trend_tolerance =
        detail::get_or<double>(f, "trend_tolerance", cfg.forecast.trend_tolerance, fw);
  }
  cfg.scale.validate();
  return cfg;
}

}  // namespace

RunConfig read_config(const std::filesystem::path& path) {
  return config_from_json(detail::read_json_file(path), path.string());
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
  }
  return config_from_json(doc, "<config>");
}

}  // namespace dyneval

#include "dyneval/dataset.hpp"

#include <cmath>
#include <map>
#include <set>

#include "dyneval/csv.hpp"
#include "dyneval/errors.hpp"
#include "json_util.hpp"

namespace dyneval {

namespace {

void require_labels(const std::vector<std::string>& labels, const char* axis) {
  if (labels.empty()) {
    throw Error(ErrorKind::ShapeMismatch, std::string("no ") + axis + " declared");
  }
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(ErrorKind::Schema, std::string("duplicate ") + axis + " label '" + l + "'");
    }
  }
}

int specificity(const CorridorRule& r) {
  return (r.element ? 2 : 0) + (r.mode ? 1 : 0);
}

}  // namespace

Dataset::Dataset(std::string system_id, std::vector<std::string> elements,
                 std::vector<std::string> modes, std::vector<std::string> characteristics,
                 std::vector<std::string> criteria, SamplingGrid grid,
                 std::vector<Characteristic> signals, std::vector<CorridorRule> rules)
    : system_id_(std::move(system_id)),
      elements_(std::move(elements)),
      modes_(std::move(modes)),
      characteristics_(std::move(characteristics)),
      criteria_(std::move(criteria)),
      grid_(grid),
      rules_(std::move(rules)) {
  require_labels(elements_, "elements");
  require_labels(modes_, "modes");
  require_labels(characteristics_, "characteristics");
  require_labels(criteria_, "criteria");
  const auto s = shape();

  std::vector<std::optional<Characteristic>> slots(s.elements * s.modes * s.characteristics);
  for (auto& c : signals) {
    const CellCoord where{c.element, c.mode, c.characteristic, std::nullopt};
    if (c.element >= s.elements || c.mode >= s.modes || c.characteristic >= s.characteristics) {
      throw Error(ErrorKind::ShapeMismatch, "signal outside the declared shape", where);
    }
    if (!c.grid.matches(grid_)) {
      throw Error(ErrorKind::GridMismatch, "signal grid differs from the dataset grid", where);
    }
    c.validate();
    auto& slot = slots[(c.element * s.modes + c.mode) * s.characteristics + c.characteristic];
    if (slot) throw Error(ErrorKind::ShapeMismatch, "signal given twice", where);
    slot = std::move(c);
  }
  signals_.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      const std::size_t m = i % s.characteristics;
      const std::size_t l = (i / s.characteristics) % s.modes;
      const std::size_t n = i / (s.characteristics * s.modes);
      throw Error(ErrorKind::ShapeMismatch,
                  "missing signal; expected " + std::to_string(slots.size()) + " signals",
                  CellCoord{n, l, m, std::nullopt});
    }
    signals_.push_back(std::move(*slots[i]));
  }

  for (const auto& r : rules_) {
    const CellCoord where{r.element, r.mode, r.characteristic, r.corridor.criterion};
    if ((r.element && *r.element >= s.elements) || (r.mode && *r.mode >= s.modes) ||
        r.characteristic >= s.characteristics || r.corridor.criterion >= s.criteria) {
      throw Error(ErrorKind::ShapeMismatch, "corridor outside the declared shape", where);
    }
    try {
      r.corridor.validate(grid_);
    } catch (const Error& e) {
      throw e.located(where);
    }
  }

  corridor_index_.resize(s.cell_count());
  for (std::size_t n = 0; n < s.elements; ++n)
    for (std::size_t l = 0; l < s.modes; ++l)
      for (std::size_t m = 0; m < s.characteristics; ++m)
        for (std::size_t k = 0; k < s.criteria; ++k) {
          int best = -1;
          bool ambiguous = false;
          std::size_t chosen = 0;
          for (std::size_t i = 0; i < rules_.size(); ++i) {
            const auto& r = rules_[i];
            if (r.characteristic != m || r.corridor.criterion != k) continue;
            if (r.element && *r.element != n) continue;
            if (r.mode && *r.mode != l) continue;
            const int sp = specificity(r);
            if (sp > best) {
              best = sp;
              chosen = i;
              ambiguous = false;
            } else if (sp == best) {
              ambiguous = true;
            }
          }
          const CellCoord where{n, l, m, k};
          if (best < 0) throw Error(ErrorKind::ShapeMismatch, "no corridor defined", where);
          if (ambiguous) throw Error(ErrorKind::Schema, "ambiguous corridor definitions", where);
          corridor_index_[((n * s.modes + l) * s.characteristics + m) * s.criteria + k] = chosen;
        }
}

TensorShape Dataset::shape() const noexcept {
  return {elements_.size(), modes_.size(), characteristics_.size(), criteria_.size()};
}

const Characteristic& Dataset::signal(std::size_t n, std::size_t l, std::size_t m) const {
  const auto s = shape();
  if (n >= s.elements || l >= s.modes || m >= s.characteristics) {
    throw Error(ErrorKind::ShapeMismatch, "signal index out of range", CellCoord{n, l, m, {}});
  }
  return signals_[(n * s.modes + l) * s.characteristics + m];
}

const Corridor& Dataset::corridor(std::size_t n, std::size_t l, std::size_t m,
                                  std::size_t k) const {
  const auto s = shape();
  if (n >= s.elements || l >= s.modes || m >= s.characteristics || k >= s.criteria) {
    throw Error(ErrorKind::ShapeMismatch, "corridor index out of range", CellCoord{n, l, m, k});
  }
  return rules_[corridor_index_[((n * s.modes + l) * s.characteristics + m) * s.criteria + k]]
      .corridor;
}

namespace {

using detail::json;

class CorridorFiles {
 public:
  explicit CorridorFiles(std::filesystem::path base) : base_(std::move(base)) {}

  const CsvTable& table(const std::string& file) {
    auto it = cache_.find(file);
    if (it == cache_.end()) it = cache_.emplace(file, read_csv(base_ / file)).first;
    return it->second;
  }

 private:
  std::filesystem::path base_;
  std::map<std::string, CsvTable> cache_;
};

Bound parse_bound(const json& doc, const char* key, CorridorFiles& files, const std::string& what) {
  if (!doc.contains(key)) throw Error(ErrorKind::Schema, what + ": missing '" + key + "'");
  const auto& v = doc.at(key);
  if (v.is_number()) return Bound(v.get<double>());
  if (v.is_array()) {
    std::vector<double> samples;
    samples.reserve(v.size());
    for (const auto& x : v) {
      if (!x.is_number()) throw Error(ErrorKind::Schema, what + ": '" + key + "' must be numeric");
      samples.push_back(x.get<double>());
    }
    return Bound(std::move(samples));
  }
  if (v.is_object()) {
    const auto file = detail::get_as<std::string>(v, "file", what);
    const auto column = detail::get_as<std::string>(v, "column", what);
    return Bound(files.table(file).column(column));
  }
  throw Error(ErrorKind::Schema, what + ": '" + key + "' must be a number, array or file column");
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& manifest_path) {
  const json doc = detail::read_json_file(manifest_path);
  const std::string what = manifest_path.string();
  detail::check_schema_version(doc, "manifest " + what);
  const auto base = manifest_path.parent_path();

  const auto system_id = detail::get_or<std::string>(doc, "system_id", "system", what);
  const auto elements = detail::get_as<std::vector<std::string>>(doc, "elements", what);
  const auto modes = detail::get_as<std::vector<std::string>>(doc, "modes", what);
  const auto characteristics = detail::get_as<std::vector<std::string>>(doc, "characteristics", what);
  const auto criteria = detail::get_as<std::vector<std::string>>(doc, "criteria", what);
  require_labels(elements, "elements");
  require_labels(modes, "modes");
  require_labels(characteristics, "characteristics");
  require_labels(criteria, "criteria");

  const auto& grid_doc = doc.contains("grid") ? doc.at("grid") : json::object();
  const SamplingGrid grid(detail::get_as<double>(grid_doc, "dt", what + " grid"),
                          detail::get_as<std::size_t>(grid_doc, "count", what + " grid"));

  std::vector<Characteristic> signals;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  if (!doc.contains("signals") || !doc.at("signals").is_array()) {
    throw Error(ErrorKind::Schema, what + ": 'signals' must be an array");
  }
  for (const auto& entry : doc.at("signals")) {
    const auto n = detail::resolve_index(detail::require(entry, "element", what + " signal"), elements, "element");
    const auto l = detail::resolve_index(detail::require(entry, "mode", what + " signal"), modes, "mode");
    const auto file = detail::get_as<std::string>(entry, "file", what + " signal");
    const CellCoord where{n, l, std::nullopt, std::nullopt};
    if (!seen.emplace(n, l).second) {
      throw Error(ErrorKind::ShapeMismatch, "signal file given twice", where);
    }
    CsvTable table;
    try {
      table = read_csv(base / file);
    } catch (const Error& e) {
      throw e.located(where);
    }
    if (table.rows() != grid.count()) {
      throw Error(ErrorKind::GridMismatch,
                  "signal file '" + file + "' has " + std::to_string(table.rows()) +
                      " samples, manifest declares " + std::to_string(grid.count()),
                  where);
    }
    if (table.has_column("t")) {
      const auto& t = table.column("t");
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (std::abs(t[i] - grid.time_at(i)) > 1e-6 * grid.dt()) {
          throw Error(ErrorKind::GridMismatch,
                      "signal file '" + file + "' time column departs from the grid at row " +
                          std::to_string(i),
                      where);
        }
      }
    }
    for (std::size_t m = 0; m < characteristics.size(); ++m) {
      if (!table.has_column(characteristics[m])) {
        throw Error(ErrorKind::ShapeMismatch,
                    "signal file '" + file + "' lacks column '" + characteristics[m] + "'",
                    CellCoord{n, l, m, std::nullopt});
      }
      signals.push_back(Characteristic{n, l, m, grid, table.column(characteristics[m]),
                                       elements[n] + "/" + modes[l] + "/" + characteristics[m]});
    }
  }

  std::vector<CorridorRule> rules;
  CorridorFiles files(base);
  if (!doc.contains("corridors") || !doc.at("corridors").is_array()) {
    throw Error(ErrorKind::Schema, what + ": 'corridors' must be an array");
  }
  for (const auto& entry : doc.at("corridors")) {
    CorridorRule rule;
    if (entry.contains("element")) rule.element = detail::resolve_index(entry.at("element"), elements, "element");
    if (entry.contains("mode")) rule.mode = detail::resolve_index(entry.at("mode"), modes, "mode");
    rule.characteristic = detail::resolve_index(detail::require(entry, "characteristic", what + " corridor"), characteristics, "characteristic");
    rule.corridor.criterion = detail::resolve_index(detail::require(entry, "criterion", what + " corridor"), criteria, "criterion");
    const CellCoord where{rule.element, rule.mode, rule.characteristic, rule.corridor.criterion};
    try {
      const std::string cw = what + " corridor";
      rule.corridor.ref_lo = parse_bound(entry, "ref_lo", files, cw);
      rule.corridor.ref_hi = parse_bound(entry, "ref_hi", files, cw);
      rule.corridor.perm_lo = parse_bound(entry, "perm_lo", files, cw);
      rule.corridor.perm_hi = parse_bound(entry, "perm_hi", files, cw);
    } catch (const Error& e) {
      throw e.located(where);
    }
    rules.push_back(std::move(rule));
  }

  return Dataset(system_id, elements, modes, characteristics, criteria, grid, std::move(signals),
                 std::move(rules));
}

}  // namespace dyneval

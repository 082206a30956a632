#include "dyneval/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <tuple>

#include "dyneval/csv.hpp"
#include "dyneval/errors.hpp"
#include "json_util.hpp"

namespace dyneval {

std::string_view to_string(DisturbanceShape s) noexcept {
  return s == DisturbanceShape::Spike ? "spike" : "drift";
}

namespace {

using detail::json;
using detail::ordered_json;

// Corridor geometry per criterion k: reference half-width and permissible margin.
constexpr double kRefHalfWidth = 0.1;
constexpr double kPermMargin = 0.25;
constexpr double kCriterionGrowth = 0.5;
constexpr double kNoiseFraction = 0.3;   // of the narrowest reference half-width
constexpr double kEdgeMargin = 0.02;     // of the permissible margin, away from grade edges

double ref_half_width(std::size_t k) { return kRefHalfWidth * (1.0 + kCriterionGrowth * static_cast<double>(k)); }
double perm_margin(std::size_t k) { return kPermMargin * (1.0 + kCriterionGrowth * static_cast<double>(k)); }

/// Deterministic across standard libraries: mt19937_64 output is fully specified,
/// the distributions in <random> are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(unit() * static_cast<double>(n)));
  }

 private:
  std::mt19937_64 engine_;
};

int grade_for_excess(double excess, double amplitude, double delta) {
  if (excess <= 0.0) return 5;
  if (excess <= delta * amplitude) return 4;
  if (excess <= amplitude) return 3;
  return 2;
}

bool clear_of_edges(double excess, double amplitude, double delta) {
  const double margin = kEdgeMargin * amplitude;
  for (double edge : {0.0, delta * amplitude, amplitude}) {
    if (std::abs(excess - edge) < margin) return false;
  }
  return true;
}

/// Peak displacement from the baseline that lands `criterion` in `grade` and
/// keeps every criterion clear of its grade edges.
double peak_displacement(std::size_t criterion, int grade, std::size_t criteria, double delta) {
  const double w = ref_half_width(criterion);
  const double a = perm_margin(criterion);
  double lo = 0.0, hi = 0.0;
  switch (grade) {
    case 4: lo = w; hi = w + delta * a; break;
    case 3: lo = w + delta * a; hi = w + a; break;
    case 2: lo = w + a; hi = w + 2.0 * a; break;
    default:
      throw Error(ErrorKind::InvalidArgument, "injected grade must be 2, 3 or 4");
  }
  for (double frac : {0.5, 0.35, 0.65, 0.2, 0.8, 0.1, 0.9}) {
    const double d = lo + frac * (hi - lo);
    bool ok = true;
    for (std::size_t k = 0; k < criteria && ok; ++k) {
      ok = clear_of_edges(d - ref_half_width(k), perm_margin(k), delta);
    }
    if (ok) return d;
  }
  throw Error(ErrorKind::InvalidArgument,
              "cannot place a grade-" + std::to_string(grade) + " disturbance clear of grade edges",
              CellCoord{std::nullopt, std::nullopt, std::nullopt, criterion});
}

std::vector<std::string> numbered(const char* stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(stem) + "_" + std::to_string(i));
  return out;
}

struct Baseline {
  double amplitude, cycles, phase, offset;
  double at(double t, double duration) const {
    return offset + amplitude * std::sin(2.0 * std::numbers::pi * cycles * t / duration + phase);
  }
};

}  // namespace

SyntheticSpec SyntheticSpec::resolved() const {
  SyntheticSpec s = *this;
  auto fix = [](std::vector<std::string>& labels, std::size_t& extent, const char* stem) {
    if (labels.empty()) labels = numbered(stem, extent);
    extent = labels.size();
    if (labels.empty()) {
      throw Error(ErrorKind::InvalidArgument, std::string("synthetic spec has no ") + stem + "s");
    }
  };
  fix(s.elements, s.shape.elements, "element");
  fix(s.modes, s.shape.modes, "mode");
  fix(s.characteristics, s.shape.characteristics, "characteristic");
  fix(s.criteria, s.shape.criteria, "criterion");
  (void)SamplingGrid(s.dt, s.count);
  if (!(s.delta > 0.0 && s.delta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "synthetic delta must lie in (0, 1)");
  }
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> used;
  for (const auto& inj : s.injections) {
    const CellCoord where{inj.element, inj.mode, inj.characteristic, inj.criterion};
    if (inj.element >= s.shape.elements || inj.mode >= s.shape.modes ||
        inj.characteristic >= s.shape.characteristics || inj.criterion >= s.shape.criteria) {
      throw Error(ErrorKind::ShapeMismatch, "injection outside the shape", where);
    }
    if (inj.grade < 2 || inj.grade > 4) {
      throw Error(ErrorKind::InvalidArgument, "injected grade must be 2, 3 or 4", where);
    }
    if (!used.emplace(inj.element, inj.mode, inj.characteristic).second) {
      throw Error(ErrorKind::InvalidArgument, "one injection per signal", where);
    }
  }
  const std::size_t signals = s.shape.elements * s.shape.modes * s.shape.characteristics;
  if (s.injections.size() + s.random_injections > signals) {
    throw Error(ErrorKind::InvalidArgument, "more injections than signals");
  }
  return s;
}

SyntheticSpec read_synthetic_spec(const std::filesystem::path& path) {
  const json doc = detail::read_json_file(path);
  const std::string what = path.string();
  detail::check_schema_version(doc, "synthetic spec " + what);
  SyntheticSpec s;
  s.system_id = detail::get_or<std::string>(doc, "system_id", s.system_id, what);
  s.seed = detail::get_or<std::uint64_t>(doc, "seed", s.seed, what);
  if (doc.contains("shape")) {
    const auto& sh = doc.at("shape");
    s.shape = {detail::get_or<std::size_t>(sh, "elements", 0, what),
               detail::get_or<std::size_t>(sh, "modes", 0, what),
               detail::get_or<std::size_t>(sh, "characteristics", 0, what),
               detail::get_or<std::size_t>(sh, "criteria", 0, what)};
  }
  if (doc.contains("labels")) {
    const auto& lb = doc.at("labels");
    s.elements = detail::get_or<std::vector<std::string>>(lb, "elements", {}, what);
    s.modes = detail::get_or<std::vector<std::string>>(lb, "modes", {}, what);
    s.characteristics = detail::get_or<std::vector<std::string>>(lb, "characteristics", {}, what);
    s.criteria = detail::get_or<std::vector<std::string>>(lb, "criteria", {}, what);
  }
  if (doc.contains("grid")) {
    s.dt = detail::get_or<double>(doc.at("grid"), "dt", s.dt, what);
    s.count = detail::get_or<std::size_t>(doc.at("grid"), "count", s.count, what);
  }
  s.delta = detail::get_or<double>(doc, "delta", s.delta, what);
  const auto profile = detail::get_or<std::string>(doc, "profile", "disturbed", what);
  if (profile != "clean" && profile != "disturbed") {
    throw Error(ErrorKind::Schema, what + ": profile must be 'clean' or 'disturbed'");
  }
  if (profile == "disturbed") {
    s.random_injections = detail::get_or<std::size_t>(doc, "random_injections", 0, what);
    if (doc.contains("injections")) {
      for (const auto& e : doc.at("injections")) {
        Injection inj;
        inj.element = detail::get_as<std::size_t>(e, "element", what);
        inj.mode = detail::get_as<std::size_t>(e, "mode", what);
        inj.characteristic = detail::get_as<std::size_t>(e, "characteristic", what);
        inj.criterion = detail::get_or<std::size_t>(e, "criterion", 0, what);
        inj.grade = detail::get_as<int>(e, "grade", what);
        const auto shape = detail::get_or<std::string>(e, "shape", "spike", what);
        if (shape == "spike") {
          inj.shape = DisturbanceShape::Spike;
        } else if (shape == "drift") {
          inj.shape = DisturbanceShape::Drift;
        } else {
          throw Error(ErrorKind::Schema, what + ": unknown disturbance shape '" + shape + "'");
        }
        s.injections.push_back(inj);
      }
    }
  }
  return s;
}

SyntheticResult generate_synthetic(const SyntheticSpec& raw, const std::filesystem::path& out_dir) {
  const SyntheticSpec spec = raw.resolved();
  const auto& sh = spec.shape;
  const SamplingGrid grid(spec.dt, spec.count);
  const double duration = grid.duration();
  Rng rng(spec.seed);

  std::vector<Baseline> baselines(sh.modes * sh.characteristics);
  for (auto& b : baselines) {
    b.amplitude = rng.uniform(0.5, 1.5);
    b.cycles = static_cast<double>(1 + rng.index(3));
    b.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    b.offset = rng.uniform(-1.0, 1.0);
  }

  // Explicit injections first, then random ones on untouched signals.
  const std::size_t signal_count = sh.elements * sh.modes * sh.characteristics;
  std::vector<std::optional<Injection>> injected(signal_count);
  auto slot = [&](std::size_t n, std::size_t l, std::size_t m) {
    return (n * sh.modes + l) * sh.characteristics + m;
  };
  for (const auto& inj : spec.injections) injected[slot(inj.element, inj.mode, inj.characteristic)] = inj;
  std::vector<std::size_t> free_slots;
  for (std::size_t i = 0; i < signal_count; ++i) {
    if (!injected[i]) free_slots.push_back(i);
  }
  for (std::size_t r = 0; r < spec.random_injections; ++r) {
    const std::size_t pick = r + rng.index(free_slots.size() - r);
    std::swap(free_slots[r], free_slots[pick]);
    const std::size_t i = free_slots[r];
    Injection inj;
    inj.characteristic = i % sh.characteristics;
    inj.mode = (i / sh.characteristics) % sh.modes;
    inj.element = i / (sh.characteristics * sh.modes);
    inj.criterion = rng.index(sh.criteria);
    inj.grade = 2 + static_cast<int>(rng.index(3));
    inj.shape = rng.unit() < 0.5 ? DisturbanceShape::Spike : DisturbanceShape::Drift;
    injected[i] = inj;
  }

  std::filesystem::create_directories(out_dir / "signals");
  std::filesystem::create_directories(out_dir / "corridors");

  SyntheticResult result;
  result.cells.reserve(sh.cell_count());
  const double noise = kNoiseFraction * ref_half_width(0);

  // Signals: one file per (element, mode).
  std::vector<double> peak(signal_count, 0.0);
  for (std::size_t n = 0; n < sh.elements; ++n) {
    for (std::size_t l = 0; l < sh.modes; ++l) {
      CsvTable table;
      table.header.push_back("t");
      table.columns.emplace_back(grid.count());
      for (std::size_t i = 0; i < grid.count(); ++i) table.columns[0][i] = grid.time_at(i);
      for (std::size_t m = 0; m < sh.characteristics; ++m) {
        const Baseline& base = baselines[l * sh.characteristics + m];
        std::vector<double> values(grid.count());
        for (std::size_t i = 0; i < grid.count(); ++i) {
          values[i] = base.at(grid.time_at(i), duration) + noise * rng.uniform(-1.0, 1.0);
        }
        if (const auto& inj = injected[slot(n, l, m)]) {
          const double d = peak_displacement(inj->criterion, inj->grade, sh.criteria, spec.delta);
          const double sign = rng.unit() < 0.5 ? -1.0 : 1.0;
          const std::size_t last = grid.count() - 1;
          if (inj->shape == DisturbanceShape::Spike) {
            const std::size_t half = std::max<std::size_t>(1, grid.count() / 40);
            const std::size_t lo = std::min(half, last);
            const std::size_t hi = last > half ? last - half : 0;
            const std::size_t center = lo >= hi ? last / 2 : lo + rng.index(hi - lo + 1);
            for (std::size_t i = 0; i < grid.count(); ++i) {
              const std::size_t dist = i > center ? i - center : center - i;
              if (dist > half) continue;
              const double shape = 1.0 - static_cast<double>(dist) / static_cast<double>(half + 1);
              values[i] = base.at(grid.time_at(i), duration) + sign * d * shape;
            }
          } else {
            const std::size_t start = rng.index(grid.count() / 2);
            for (std::size_t i = start; i <= last; ++i) {
              const double ramp = static_cast<double>(i - start) / static_cast<double>(last - start);
              values[i] = base.at(grid.time_at(i), duration) + sign * d * ramp;
            }
          }
          peak[slot(n, l, m)] = d;
        }
        table.header.push_back(spec.characteristics[m]);
        table.columns.push_back(std::move(values));
      }
      write_csv(out_dir / "signals" / ("n" + std::to_string(n) + "_l" + std::to_string(l) + ".csv"),
                table);
    }
  }

  // Corridors: one file per (mode, characteristic), columns per criterion.
  for (std::size_t l = 0; l < sh.modes; ++l) {
    for (std::size_t m = 0; m < sh.characteristics; ++m) {
      const Baseline& base = baselines[l * sh.characteristics + m];
      CsvTable table;
      table.header.push_back("t");
      table.columns.emplace_back(grid.count());
      std::vector<double> center(grid.count());
      for (std::size_t i = 0; i < grid.count(); ++i) {
        table.columns[0][i] = grid.time_at(i);
        center[i] = base.at(grid.time_at(i), duration);
      }
      for (std::size_t k = 0; k < sh.criteria; ++k) {
        const double w = ref_half_width(k);
        const double a = perm_margin(k);
        const std::string stem = "k" + std::to_string(k) + "_";
        for (const auto& [suffix, offset] : {std::pair{"perm_lo", -(w + a)}, std::pair{"ref_lo", -w},
                                             std::pair{"ref_hi", w}, std::pair{"perm_hi", w + a}}) {
          std::vector<double> col(grid.count());
          for (std::size_t i = 0; i < grid.count(); ++i) col[i] = center[i] + offset;
          table.header.push_back(stem + suffix);
          table.columns.push_back(std::move(col));
        }
      }
      write_csv(out_dir / "corridors" / ("l" + std::to_string(l) + "_m" + std::to_string(m) + ".csv"),
                table);
    }
  }

  ordered_json manifest = ordered_json::object();
  manifest["schema_version"] = detail::schema_version_string();
  manifest["system_id"] = spec.system_id;
  manifest["elements"] = spec.elements;
  manifest["modes"] = spec.modes;
  manifest["characteristics"] = spec.characteristics;
  manifest["criteria"] = spec.criteria;
  manifest["grid"] = ordered_json{{"dt", spec.dt}, {"count", spec.count}};
  ordered_json signals = ordered_json::array();
  for (std::size_t n = 0; n < sh.elements; ++n)
    for (std::size_t l = 0; l < sh.modes; ++l)
      signals.push_back(ordered_json{
          {"element", n},
          {"mode", l},
          {"file", "signals/n" + std::to_string(n) + "_l" + std::to_string(l) + ".csv"}});
  manifest["signals"] = std::move(signals);
  ordered_json corridors = ordered_json::array();
  for (std::size_t l = 0; l < sh.modes; ++l)
    for (std::size_t m = 0; m < sh.characteristics; ++m)
      for (std::size_t k = 0; k < sh.criteria; ++k) {
        const std::string file = "corridors/l" + std::to_string(l) + "_m" + std::to_string(m) + ".csv";
        const std::string stem = "k" + std::to_string(k) + "_";
        ordered_json c = ordered_json::object();
        c["mode"] = l;
        c["characteristic"] = m;
        c["criterion"] = k;
        for (const char* b : {"ref_lo", "ref_hi", "perm_lo", "perm_hi"}) {
          c[b] = ordered_json{{"file", file}, {"column", stem + b}};
        }
        corridors.push_back(std::move(c));
      }
  manifest["corridors"] = std::move(corridors);
  result.manifest = out_dir / "manifest.json";
  detail::write_text_file(result.manifest, manifest.dump(1) + "\n");

  ordered_json config = ordered_json::object();
  config["schema_version"] = detail::schema_version_string();
  config["scale"] = ordered_json{{"nu", 10.0}, {"delta", spec.delta}};
  result.config = out_dir / "config.json";
  detail::write_text_file(result.config, config.dump(1) + "\n");

  // Ground truth: the sup deviation for criterion k is (peak - half width k).
  CsvTable expected;
  expected.header = {"n", "l", "m", "k", "grade", "injected"};
  expected.columns.resize(expected.header.size());
  for (std::size_t n = 0; n < sh.elements; ++n)
    for (std::size_t l = 0; l < sh.modes; ++l)
      for (std::size_t m = 0; m < sh.characteristics; ++m)
        for (std::size_t k = 0; k < sh.criteria; ++k) {
          const bool hit = injected[slot(n, l, m)].has_value();
          const int grade = hit ? grade_for_excess(peak[slot(n, l, m)] - ref_half_width(k),
                                                   perm_margin(k), spec.delta)
                                : 5;
          result.cells.push_back({n, l, m, k, grade, hit});
          if (hit) ++result.injected_cells;
          const double row[] = {static_cast<double>(n), static_cast<double>(l),
                                static_cast<double>(m), static_cast<double>(k),
                                static_cast<double>(grade), hit ? 1.0 : 0.0};
          for (std::size_t c = 0; c < expected.columns.size(); ++c) expected.columns[c].push_back(row[c]);
        }
  result.expected = out_dir / "expected_grades.csv";
  write_csv(result.expected, expected);
  return result;
}

std::vector<ExpectedCell> read_expected_grades(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  std::vector<ExpectedCell> out;
  out.reserve(t.rows());
  auto idx = [](double v) { return static_cast<std::size_t>(v); };
  for (std::size_t r = 0; r < t.rows(); ++r) {
    out.push_back({idx(t.column("n")[r]), idx(t.column("l")[r]), idx(t.column("m")[r]),
                   idx(t.column("k")[r]), static_cast<int>(t.column("grade")[r]),
                   t.column("injected")[r] != 0.0});
  }
  return out;
}

}  // namespace dyneval

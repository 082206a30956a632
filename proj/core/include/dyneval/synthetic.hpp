#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dyneval/aggregation.hpp"

namespace dyneval {

enum class DisturbanceShape { Spike, Drift };

std::string_view to_string(DisturbanceShape s) noexcept;

/// A disturbance added to signal (element, mode, characteristic), sized so
/// that `criterion` receives `grade` (2, 3 or 4).
struct Injection {
  std::size_t element = 0;
  std::size_t mode = 0;
  std::size_t characteristic = 0;
  std::size_t criterion = 0;
  int grade = 3;
  DisturbanceShape shape = DisturbanceShape::Spike;
};

struct SyntheticSpec {
  std::string system_id = "synthetic";
  std::uint64_t seed = 1;
  /// Labels define the shape; generated as "element_0", ... when empty.
  std::vector<std::string> elements, modes, characteristics, criteria;
  TensorShape shape;
  double dt = 0.01;
  std::size_t count = 201;
  double delta = 0.5;
  std::vector<Injection> injections;
  /// Extra injections on distinct, randomly chosen signals.
  std::size_t random_injections = 0;

  /// Fills labels from the shape (or the shape from labels) and validates.
  [[nodiscard]] SyntheticSpec resolved() const;
};

SyntheticSpec read_synthetic_spec(const std::filesystem::path& path);

struct ExpectedCell {
  std::size_t element, mode, characteristic, criterion;
  int grade;
  bool injected;  ///< the cell's signal carries a disturbance
};

struct SyntheticResult {
  std::filesystem::path manifest;
  std::filesystem::path config;
  std::filesystem::path expected;
  std::vector<ExpectedCell> cells;  ///< [n][l][m][k] row-major
  std::size_t injected_cells = 0;
};

/// Writes manifest.json, config.json, signals/, corridors/ and
/// expected_grades.csv under `out_dir`. Same spec, same bytes.
SyntheticResult generate_synthetic(const SyntheticSpec& spec, const std::filesystem::path& out_dir);

std::vector<ExpectedCell> read_expected_grades(const std::filesystem::path& path);

}  // namespace dyneval

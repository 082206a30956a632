#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dyneval/aggregation.hpp"
#include "dyneval/timeseries.hpp"

namespace dyneval {

/// Corridor applying to one (characteristic, criterion) pair, optionally
/// restricted to one element and/or one mode. More specific rules win.
struct CorridorRule {
  std::optional<std::size_t> element;
  std::optional<std::size_t> mode;
  std::size_t characteristic = 0;
  Corridor corridor;
};

/// A fully validated system recording: N*L*M characteristics on a shared grid
/// and a corridor for every (n, l, m, k) cell.
class Dataset {
 public:
  Dataset(std::string system_id, std::vector<std::string> elements, std::vector<std::string> modes,
          std::vector<std::string> characteristics, std::vector<std::string> criteria,
          SamplingGrid grid, std::vector<Characteristic> signals, std::vector<CorridorRule> rules);

  [[nodiscard]] const std::string& system_id() const noexcept { return system_id_; }
  [[nodiscard]] const std::vector<std::string>& element_labels() const noexcept { return elements_; }
  [[nodiscard]] const std::vector<std::string>& mode_labels() const noexcept { return modes_; }
  [[nodiscard]] const std::vector<std::string>& characteristic_labels() const noexcept { return characteristics_; }
  [[nodiscard]] const std::vector<std::string>& criterion_labels() const noexcept { return criteria_; }
  [[nodiscard]] const SamplingGrid& grid() const noexcept { return grid_; }
  [[nodiscard]] TensorShape shape() const noexcept;

  [[nodiscard]] const Characteristic& signal(std::size_t n, std::size_t l, std::size_t m) const;
  [[nodiscard]] const Corridor& corridor(std::size_t n, std::size_t l, std::size_t m,
                                         std::size_t k) const;

 private:
  std::string system_id_;
  std::vector<std::string> elements_, modes_, characteristics_, criteria_;
  SamplingGrid grid_;
  std::vector<Characteristic> signals_;
  std::vector<CorridorRule> rules_;
  std::vector<std::size_t> corridor_index_;  // [(n, l, m, k)] -> rules_
};

/// Reads a JSON manifest, its signal CSVs and corridor data, and validates
/// everything. Errors carry the (n, l, m, k) coordinate where one applies.
Dataset load_dataset(const std::filesystem::path& manifest);

}  // namespace dyneval

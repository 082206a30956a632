#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dyneval {

/// Numeric CSV table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  [[nodiscard]] std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws Error(Parse) when the column is absent.
  [[nodiscard]] const std::vector<double>& column(std::string_view name) const;
  [[nodiscard]] bool has_column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text, std::string_view source = "<memory>");

void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Full-precision parse of a whole field; throws Error(Parse).
double parse_double(std::string_view text);

}  // namespace dyneval

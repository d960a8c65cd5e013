#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "levrot/constants.hpp"

namespace levrot::studio {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

/// Named columns plus provenance. Rendering is byte-stable for identical content.
struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<std::string> notes;

  void add_row(std::vector<Cell> row);
  /// Index of a column; throws InvalidArgument when missing.
  [[nodiscard]] std::size_t column(const std::string& name) const;
  [[nodiscard]] double number(std::size_t row, const std::string& column) const;
};

/// "%.15g", or "%.17g" when fifteen digits do not round-trip.
std::string format_double(double v);

/// version, command, config hash and every constant.
std::vector<std::pair<std::string, std::string>> provenance_fields(const std::string& command,
                                                                   std::uint64_t config_hash,
                                                                   const PhysicalConstants& c);

/// '#'-prefixed provenance lines, then a header row and data rows.
std::string render_csv(const ReportTable& t);
std::string render_json(const ReportTable& t);

enum class Format { Csv, Json };
/// Writes `<dir>/<name>.<ext>` and returns the path.
std::string write_table(const ReportTable& t, const std::string& dir, Format format);

}  // namespace levrot::studio

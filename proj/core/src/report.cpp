#include "levrot/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "levrot/error.hpp"

namespace levrot::studio {

void ReportTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw InvalidArgument("ReportTable " + name + ": row width does not match columns");
  rows.push_back(std::move(row));
}

std::size_t ReportTable::column(const std::string& col) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == col) return i;
  throw InvalidArgument("ReportTable " + name + ": no column '" + col + "'");
}

double ReportTable::number(std::size_t row, const std::string& col) const {
  const Cell& c = rows.at(row).at(column(col));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? 1.0 : 0.0;
  throw InvalidArgument("ReportTable " + name + ": column '" + col + "' is not numeric");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> provenance_fields(const std::string& command,
                                                                   std::uint64_t config_hash,
                                                                   const PhysicalConstants& c) {
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash));
  return {{"generator", std::string("levrot ") + LEVROT_VERSION},
          {"command", command},
          {"config_fnv1a64", hash},
          {"hbar_Js", format_double(c.hbar_Js)},
          {"k_B_JpK", format_double(c.k_B_JpK)},
          {"elementary_charge_C", format_double(c.elementary_charge_C)},
          {"gamma_nv_HzpT", format_double(c.gamma_nv_hz_per_t)},
          {"zero_field_splitting_Hz", format_double(c.zero_field_splitting_hz)},
          {"density_diamond_kgpm3", format_double(c.density_diamond_kgm3)},
          {"density_silica_kgpm3", format_double(c.density_silica_kgm3)}};
}

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "1" : "0";
        } else {
          return v;
        }
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string render_csv(const ReportTable& t) {
  std::string out;
  for (const auto& [k, v] : t.provenance) out += "# " + k + ": " + v + "\n";
  for (const auto& n : t.notes) out += "# note: " + n + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_escape(t.columns[i]);
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(cell_text(row[i]));
    out += "\n";
  }
  return out;
}

std::string render_json(const ReportTable& t) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["name"] = t.name;
  ordered_json prov = ordered_json::object();
  for (const auto& [k, v] : t.provenance) prov[k] = v;
  j["provenance"] = prov;
  j["notes"] = t.notes;
  j["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v))
                r.push_back(v);
              else
                r.push_back(nullptr);
            } else {
              r.push_back(v);
            }
          },
          c);
    }
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(1) + "\n";
}

std::string write_table(const ReportTable& t, const std::string& dir, Format format) {
  std::filesystem::create_directories(dir);
  const std::string path =
      (std::filesystem::path(dir) / (t.name + (format == Format::Csv ? ".csv" : ".json"))).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << (format == Format::Csv ? render_csv(t) : render_json(t));
  if (!out) throw Error("write failed for '" + path + "'");
  return path;
}

}  // namespace levrot::studio

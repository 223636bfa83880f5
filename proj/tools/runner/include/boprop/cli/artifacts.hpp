#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "boprop/diagnostics.hpp"
#include "boprop/grid.hpp"

namespace boprop::cli {

/// Field dump layout (all little-endian):
///   8 bytes  magic "BOFLD001"
///   u64      n
///   f64      length
///   f64      x_left
///   f64      t
///   u64      count (= n)
///   f64[n]   samples
void write_field(const std::filesystem::path& path, const RealField& u, double t);

struct FieldDump {
  std::size_t n = 0;
  double length = 0.0;
  double x_left = 0.0;
  double t = 0.0;
  std::vector<double> samples;
};
FieldDump read_field(const std::filesystem::path& path);

/// diagnostics.csv: a "# " line holding the window specs as JSON, a header
/// row, then one row per snapshot per window.
void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<WindowSpec>& windows,
                           const std::vector<DiagnosticSeries>& series);

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};
/// Minimal SVG line chart.
void write_line_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                     const std::vector<PlotSeries>& series);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// %.17g, with "nan" for non-finite values.
std::string fmt(double v);
/// CSV field quoting.
std::string csv_escape(const std::string& s);

}  // namespace boprop::cli

#include "boprop/cli/artifacts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace boprop::cli {

namespace fs = std::filesystem;

namespace {

template <class T>
void put(std::ofstream& out, T v) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  out.write(reinterpret_cast<const char*>(&bits), 8);
}

template <class T>
T take(std::ifstream& in) {
  std::uint64_t bits = 0;
  in.read(reinterpret_cast<char*>(&bits), 8);
  if (!in) throw std::runtime_error("field dump is truncated");
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  T v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

}  // namespace

void write_field(const fs::path& path, const RealField& u, double t) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write("BOFLD001", 8);
  const Grid& g = u.grid();
  put<std::uint64_t>(out, g.size());
  put<double>(out, g.length());
  put<double>(out, g.x_left());
  put<double>(out, t);
  put<std::uint64_t>(out, u.size());
  for (double v : u.samples()) put<double>(out, v);
}

FieldDump read_field(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "BOFLD001", 8) != 0) throw std::runtime_error("not a field dump: " + path.string());
  FieldDump d;
  d.n = take<std::uint64_t>(in);
  d.length = take<double>(in);
  d.x_left = take<double>(in);
  d.t = take<double>(in);
  const auto count = take<std::uint64_t>(in);
  d.samples.resize(count);
  for (auto& v : d.samples) v = take<double>(in);
  return d;
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

void write_diagnostics_csv(const fs::path& path, const std::vector<WindowSpec>& windows,
                           const std::vector<DiagnosticSeries>& series) {
  nlohmann::json header = nlohmann::json::array();
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& w = windows[i];
    header.push_back({{"window", i}, {"m", w.m}, {"eps", w.eps}, {"b", w.b}, {"v", w.v}, {"x0", w.x0}});
  }
  std::ostringstream out;
  out << "# " << header.dump() << "\n";
  out << "t,window,E_m,F_half,F_eta,E_half,G_flux,tail,cum_F_half,cum_F_eta,cum_G_flux\n";
  std::size_t rows = 0;
  for (const auto& s : series) rows = std::max(rows, s.records().size());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t w = 0; w < series.size(); ++w) {
      if (r >= series[w].records().size()) continue;
      const auto& d = series[w].records()[r];
      out << fmt(d.t) << ',' << w << ',' << fmt(d.E_m) << ',' << fmt(d.F_half) << ',' << fmt(d.F_eta) << ','
          << fmt(d.E_half) << ',' << fmt(d.G_flux) << ',' << fmt(d.tail) << ',' << fmt(d.cum_F_half) << ','
          << fmt(d.cum_F_eta) << ',' << fmt(d.cum_G_flux) << '\n';
    }
  write_text(path, out.str());
}

void write_line_plot(const fs::path& path, const std::string& title, const std::string& x_label,
                     const std::vector<PlotSeries>& series) {
  constexpr double W = 640, H = 400, ml = 70, mr = 160, mt = 40, mb = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::ostringstream o;
  char buf[256];
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
    << title << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n", ml, mt,
                W - ml - mr, H - mt - mb);
  o << buf;
  for (int k = 0; k <= 4; ++k) {
    const double yv = y0 + (y1 - y0) * k / 4.0, xv = x0 + (x1 - x0) * k / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">%.4g</text>\n",
                  ml - 4, py(yv) + 3, yv);
    o << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">%.4g</text>\n",
                  px(xv), H - mb + 14, xv);
    o << buf;
  }
  o << "<text x=\"" << ml + (W - ml - mr) / 2 << "\" y=\"" << H - 12
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* c = colors[s % 6];
    o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (!std::isfinite(series[s].y[i])) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(series[s].x[i]), py(series[s].y[i]));
      o << buf;
    }
    o << "\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" fill=\"%s\">%s</text>\n",
                  W - mr + 8, mt + 14 + 16.0 * s, c, series[s].label.c_str());
    o << buf;
  }
  o << "</svg>\n";
  write_text(path, o.str());
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

void write_text(const fs::path& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace boprop::cli

#include "awi/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "awi/errors.hpp"

namespace awi {

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

void CsvFile::header(const std::string& key, const std::string& value) {
  body_ += "# " + key + " = " + value + "\n";
}

void CsvFile::header(const std::string& key, double value) {
  header(key, format_sci(value));
}

void CsvFile::columns(const std::vector<std::string>& names) {
  for (size_t i = 0; i < names.size(); ++i) {
    body_ += names[i];
    body_ += (i + 1 < names.size()) ? "," : "\n";
  }
}

void CsvFile::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    body_ += cells[i];
    body_ += (i + 1 < cells.size()) ? "," : "\n";
  }
}

void CsvFile::row_values(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (const double v : values) cells.push_back(format_sci(v));
  row(cells);
}

void CsvFile::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << body_;
}

namespace {

double nice_coord(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series, bool log_y) {
  constexpr double width = 720, height = 480;
  constexpr double ml = 70, mr = 20, mt = 40, mb = 50;

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      const double yy = log_y ? (y > 0 ? std::log10(y) : std::nan("")) : y;
      if (!std::isfinite(x) || !std::isfinite(yy)) continue;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, yy);
      y_max = std::max(y_max, yy);
    }
  }
  if (!(x_max > x_min)) { x_min = 0; x_max = 1; }
  if (!(y_max > y_min)) { y_min = 0; y_max = 1; }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const auto px = [&](double x) {
    return ml + (x - x_min) / (x_max - x_min) * (width - ml - mr);
  };
  const auto py = [&](double y) {
    const double yy = log_y ? std::log10(y) : y;
    return height - mb - (yy - y_min) / (y_max - y_min) * (height - mt - mb);
  };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
     << "\" height=\"" << height - mt - mb
     << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << x_label << "</text>\n";
  os << "<text x=\"16\" y=\"" << height / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 16 " << height / 2 << ")\">" << y_label << "</text>\n";

  // Axis extremes.
  const auto tick_text = [&](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", log_y ? std::pow(10.0, v) : v);
    return std::string(buf);
  };
  os << "<text x=\"" << ml << "\" y=\"" << height - mb + 16
     << "\" font-family=\"sans-serif\" font-size=\"11\">" << tick_text(x_min)
     << "</text>\n";
  os << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 16
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << tick_text(x_max) << "</text>\n";
  os << "<text x=\"" << ml - 6 << "\" y=\"" << height - mb
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << tick_text(y_min) << "</text>\n";
  os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 10
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
     << tick_text(y_max) << "</text>\n";

  // Zero line when it is inside the frame (and not a log axis).
  if (!log_y && y_min < 0 && y_max > 0) {
    os << "<line x1=\"" << ml << "\" y1=\"" << nice_coord(py(0.0)) << "\" x2=\""
       << width - mr << "\" y2=\"" << nice_coord(py(0.0))
       << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  }

  int ci = 0;
  double legend_y = mt + 16;
  for (const auto& s : series) {
    const char* color = colors[ci % 4];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points) {
      if (log_y && !(y > 0)) continue;
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      os << nice_coord(px(x)) << "," << nice_coord(py(y)) << " ";
    }
    os << "\"/>\n";
    if (!s.label.empty()) {
      os << "<text x=\"" << width - mr - 8 << "\" y=\"" << legend_y
         << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
            "fill=\"" << color << "\">" << s.label << "</text>\n";
      legend_y += 16;
    }
    ++ci;
  }
  os << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << os.str();
}

}  // namespace awi

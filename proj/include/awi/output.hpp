#pragma once

#include <string>
#include <utility>
#include <vector>

namespace awi {

// Scientific notation, 9 significant digits; locale-independent.
std::string format_sci(double v);

// CSV with '#'-prefixed header lines; byte-deterministic for equal inputs.
class CsvFile {
 public:
  void header(const std::string& key, const std::string& value);
  void header(const std::string& key, double value);
  void columns(const std::vector<std::string>& names);
  void row(const std::vector<std::string>& cells);
  void row_values(const std::vector<double>& values);

  const std::string& text() const { return body_; }
  void write(const std::string& path) const;

 private:
  std::string body_;
};

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Minimal self-contained line chart.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series, bool log_y = false);

}  // namespace awi

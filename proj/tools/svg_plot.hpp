#pragma once

#include <string>
#include <vector>

namespace wavecorr::plot {

/// Minimal SVG line chart: fixed canvas, linear axes with ticks, one polyline
/// per series, legend in the top-right corner. Presentation output only;
/// nothing reads these files back.
class LinePlot {
 public:
  LinePlot(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)),
        x_label_(std::move(x_label)),
        y_label_(std::move(y_label)) {}

  void add_series(std::string name, std::vector<double> x,
                  std::vector<double> y);

  /// Writes the SVG file; deterministic for identical inputs.
  void write(const std::string& path) const;

 private:
  struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
  };
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<Series> series_;
};

}  // namespace wavecorr::plot

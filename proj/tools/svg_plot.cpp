#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "wavecorr/errors.hpp"

namespace wavecorr::plot {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Round tick step to a 1/2/5 decade.
double tick_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  if (frac < 1.5) return mag;
  if (frac < 3.5) return 2.0 * mag;
  if (frac < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

void LinePlot::add_series(std::string name, std::vector<double> x,
                          std::vector<double> y) {
  if (x.size() != y.size()) {
    throw ConfigError("plot series '" + name + "' has mismatched lengths");
  }
  series_.push_back(Series{std::move(name), std::move(x), std::move(y)});
}

void LinePlot::write(const std::string& path) const {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series_) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (!(x_max >= x_min)) {  // no finite data: render an empty frame
    x_min = 0.0;
    x_max = 1.0;
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto map_x = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * plot_w;
  };
  auto map_y = [&](double v) {
    return kTop + (1.0 - (v - y_min) / (y_max - y_min)) * plot_h;
  };

  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open '" + path + "' for writing");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << title_
      << "</text>\n";

  // axes
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

  const double xs = tick_step(x_max - x_min);
  for (double v = std::ceil(x_min / xs) * xs; v <= x_max + 1e-12 * xs; v += xs) {
    const double px = map_x(v);
    out << "<line x1=\"" << px << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << px << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << fmt(v) << "</text>\n";
  }
  const double ys = tick_step(y_max - y_min);
  for (double v = std::ceil(y_min / ys) * ys; v <= y_max + 1e-12 * ys; v += ys) {
    const double py = map_y(v);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft
        << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << kLeft - 9 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" << fmt(v) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" << x_label_ << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " << kTop + plot_h / 2
      << ")\">" << y_label_ << "</text>\n";

  for (std::size_t s = 0; s < series_.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < series_[s].x.size(); ++i) {
      if (!std::isfinite(series_[s].x[i]) || !std::isfinite(series_[s].y[i])) {
        continue;
      }
      if (!first) out << ' ';
      out << fmt(map_x(series_[s].x[i])) << ',' << fmt(map_y(series_[s].y[i]));
      first = false;
    }
    out << "\"/>\n";
    // legend entry
    const double ly = kTop + 14 + 16 * static_cast<double>(s);
    out << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << ly
        << "\" x2=\"" << kLeft + plot_w - 126 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + plot_w - 120 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << series_[s].name
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace wavecorr::plot

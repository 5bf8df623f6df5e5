#include "wavecorr/modwt.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace wavecorr {

namespace {

// Least-asymmetric width-8 scaling coefficients (Daubechies symlet family),
// spectral-factorisation values rounded to double.
constexpr double kLa8Scaling[8] = {
    -0.0757657147895022132277462,
    -0.0296355276460024917643692,
     0.4976186676327749899796055,
     0.8037387518051320808788056,
     0.2978577956053060514029012,
    -0.0992195435766335325852080,
    -0.0126039672620313037539161,
     0.0322231006040514678716159,
};

std::vector<double> quadrature_mirror(const std::vector<double>& scaling) {
  const std::size_t width = scaling.size();
  std::vector<double> wavelet(width);
  for (std::size_t l = 0; l < width; ++l) {
    double g = scaling[width - 1 - l];
    wavelet[l] = (l % 2 == 0) ? g : -g;
  }
  return wavelet;
}

}  // namespace

WaveletFilter make_filter(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  WaveletFilter filter;
  filter.name = lower;
  if (lower == "haar") {
    const double h = 1.0 / std::sqrt(2.0);
    filter.scaling = {h, h};
  } else if (lower == "la8") {
    filter.scaling.assign(kLa8Scaling, kLa8Scaling + 8);
  } else {
    throw ConfigError("unknown wavelet filter '" + lower +
                      "' (available: haar, la8)");
  }
  filter.wavelet = quadrature_mirror(filter.scaling);
  return filter;
}

Eigen::Index level_filter_width(int level, int filter_width) {
  return ((Eigen::Index{1} << level) - 1) * (filter_width - 1) + 1;
}

int max_level(Eigen::Index t_len, const WaveletFilter& filter,
              Eigen::Index min_unbiased) {
  if (min_unbiased < 1) {
    throw ConfigError("min_unbiased must be >= 1, got " +
                      std::to_string(min_unbiased));
  }
  if (t_len < filter.width()) {
    throw ConfigError("series length " + std::to_string(t_len) +
                      " is shorter than the '" + filter.name + "' filter width " +
                      std::to_string(filter.width()));
  }
  int level = 0;
  for (int j = 1; j < 63; ++j) {
    Eigen::Index width_j = level_filter_width(j, filter.width());
    if (width_j > t_len) break;
    if (t_len - width_j + 1 >= min_unbiased) level = j;
  }
  return level;
}

WaveletDecomposition decompose(const Eigen::VectorXd& series,
                               const WaveletFilter& filter, int levels) {
  const Eigen::Index t_len = series.size();
  if (levels < 1) {
    throw ConfigError("decomposition needs levels >= 1, got " +
                      std::to_string(levels));
  }
  const int admissible = max_level(t_len, filter, 1);
  if (levels > admissible) {
    throw ConfigError("levels " + std::to_string(levels) +
                      " exceeds max_level " + std::to_string(admissible) +
                      " for T = " + std::to_string(t_len) + " with filter '" +
                      filter.name + "'");
  }

  // MODWT filters: DWT filters rescaled by 1/sqrt(2).
  const int width = filter.width();
  std::vector<double> g(filter.scaling), h(filter.wavelet);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int l = 0; l < width; ++l) {
    g[static_cast<std::size_t>(l)] *= inv_sqrt2;
    h[static_cast<std::size_t>(l)] *= inv_sqrt2;
  }

  WaveletDecomposition dec;
  dec.filter_name = filter.name;
  dec.levels = levels;
  dec.details.reserve(static_cast<std::size_t>(levels));
  dec.boundary_width.reserve(static_cast<std::size_t>(levels));

  Eigen::VectorXd approx = series;
  Eigen::VectorXd next(t_len);
  Eigen::VectorXd detail(t_len);
  for (int j = 1; j <= levels; ++j) {
    const Eigen::Index stride = Eigen::Index{1} << (j - 1);
    for (Eigen::Index t = 0; t < t_len; ++t) {
      double w = 0.0;
      double v = 0.0;
      Eigen::Index idx = t;
      for (int l = 0; l < width; ++l) {
        double x = approx[idx];
        w += h[static_cast<std::size_t>(l)] * x;
        v += g[static_cast<std::size_t>(l)] * x;
        idx -= stride;
        if (idx < 0) idx += t_len;
      }
      detail[t] = w;
      next[t] = v;
    }
    dec.details.push_back(detail);
    dec.boundary_width.push_back(level_filter_width(j, width));
    approx.swap(next);
  }
  dec.smooth = approx;
  return dec;
}

}  // namespace wavecorr

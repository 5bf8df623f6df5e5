#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "wavecorr/errors.hpp"

namespace wavecorr {

/// Orthonormal wavelet filter pair in DWT normalisation: sum(scaling) =
/// sqrt(2), sum(scaling^2) = 1, wavelet the quadrature mirror of scaling
/// (wavelet[l] = (-1)^l scaling[L-1-l]). The MODWT applies these rescaled by
/// 1/sqrt(2).
struct WaveletFilter {
  std::string name;
  std::vector<double> scaling;
  std::vector<double> wavelet;

  int width() const { return static_cast<int>(scaling.size()); }
};

/// Builds a named filter: "haar" (width 2) or "la8" (least-asymmetric width 8,
/// the filter used for all multiscale runs). Throws ConfigError for unknown
/// names.
WaveletFilter make_filter(std::string_view name);

/// Width of the level-j equivalent filter, L_j = (2^j - 1)(L - 1) + 1. The
/// leading L_j - 1 coefficients of level j are affected by the circular
/// boundary and are excluded from unbiased estimators.
Eigen::Index level_filter_width(int level, int filter_width);

inline constexpr Eigen::Index kDefaultMinUnbiased = 32;

/// Largest level J such that M_J = T - L_J + 1 >= min_unbiased; 0 if no level
/// qualifies. Throws ConfigError when T < filter width.
int max_level(Eigen::Index t_len, const WaveletFilter& filter,
              Eigen::Index min_unbiased = kDefaultMinUnbiased);

/// MODWT of one series: J detail crystals and the level-J smooth crystal, all
/// of length T (the transform is non-decimated).
struct WaveletDecomposition {
  std::string filter_name;
  int levels = 0;
  std::vector<Eigen::VectorXd> details;    // d~_1 .. d~_J
  Eigen::VectorXd smooth;                  // s~_J
  std::vector<Eigen::Index> boundary_width;  // L_j per level

  Eigen::Index length() const { return smooth.size(); }
};

/// Pyramid MODWT with circular (periodic) boundary treatment. Requires
/// 1 <= levels and L_levels <= T, i.e. at least one coefficient per level is
/// unaffected by the boundary. Throws ConfigError otherwise; the message
/// names the admissible max level.
WaveletDecomposition decompose(const Eigen::VectorXd& series,
                               const WaveletFilter& filter, int levels);

}  // namespace wavecorr

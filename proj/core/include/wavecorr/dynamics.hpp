#pragma once

#include <map>
#include <vector>

#include "wavecorr/panel.hpp"
#include "wavecorr/spectrum.hpp"
#include "wavecorr/wavestats.hpp"

namespace wavecorr {

/// Sliding-window layout and per-window estimation settings.
struct WindowPlan {
  Eigen::Index window_length = 100;
  Eigen::Index stride = 10;  // observations between window starts
  int levels = 1;
  Eigen::Index min_unbiased = kDefaultMinUnbiased;
  /// Scales to analyse: kRawScale and/or wavelet levels 1..levels. Empty
  /// selects raw plus every level.
  std::vector<int> scales;
  /// When true, a failed window (zero variance, degenerate estimate) is
  /// recorded and skipped instead of aborting the run.
  bool skip_failed_windows = false;
  /// Worker threads for the window loop; results are merged deterministically
  /// (output is identical for any thread count).
  int n_threads = 1;

  std::vector<int> effective_scales() const;
  /// Q = window length / asset count, the estimation-noise ratio.
  double q_ratio(Eigen::Index n_assets) const;
  /// Validates the plan against a panel and filter (window fits, stride >= 1,
  /// levels within max_level at min_unbiased). Throws ConfigError.
  void validate(const ReturnsPanel& panel, const WaveletFilter& filter) const;
};

struct WindowFailure {
  Eigen::Index window_index = 0;
  int scale = kRawScale;
  std::string message;
};

/// Eigen-spectra and average correlations for every (window, scale) pair.
/// Window w covers columns [starts[w], starts[w] + window_length).
struct DynamicsResult {
  Eigen::Index n_assets = 0;
  Eigen::Index window_length = 0;
  std::vector<Eigen::Index> window_starts;
  std::vector<int> scales;
  /// records.at(scale)[w]: spectrum of window w at that scale. A skipped
  /// window leaves an empty eigenvalue vector.
  std::map<int, std::vector<EigenRecord>> records;
  /// avg_correlation.at(scale)[w]: mean off-diagonal correlation, NaN when
  /// skipped.
  std::map<int, Eigen::VectorXd> avg_correlation;
  std::vector<WindowFailure> failures;

  Eigen::Index n_windows() const {
    return static_cast<Eigen::Index>(window_starts.size());
  }
};

/// Runs the sliding-window pipeline: each window is normalised and decomposed
/// independently, correlation matrices are built per requested scale, and
/// spectra extracted. Windows are independent work items; any error aborts
/// with window/asset/scale context unless the plan opts into skip-and-flag.
DynamicsResult run_dynamics(const ReturnsPanel& panel, const WindowPlan& plan,
                            const WaveletFilter& filter);

/// Time-series of the k-th largest eigenvalue (1 = largest) across windows at
/// one scale. Skipped windows yield NaN.
Eigen::VectorXd eigenvalue_series(const DynamicsResult& result, int scale,
                                  int index_from_top);

/// One row of the full-sample correlation/eigenspectrum summary.
struct EppsRow {
  int scale = kRawScale;
  double tau = 1.0;  // 2^(j-1); 1 for the raw series
  double avg_correlation = 0.0;
  double lambda1 = 0.0;  // largest
  double lambda2 = 0.0;
  double lambda3 = 0.0;
};

/// Full-sample analogue of run_dynamics (one window spanning the panel): per
/// scale, the average off-diagonal correlation and three largest eigenvalues.
/// Scales: raw plus 1..levels.
std::vector<EppsRow> epps_summary(const ReturnsPanel& panel,
                                  const WaveletFilter& filter, int levels);

}  // namespace wavecorr

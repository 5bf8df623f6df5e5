#include "wavecorr/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace wavecorr {

std::vector<int> WindowPlan::effective_scales() const {
  if (!scales.empty()) {
    std::vector<int> out = scales;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::vector<int> out;
  out.push_back(kRawScale);
  for (int j = 1; j <= levels; ++j) out.push_back(j);
  return out;
}

double WindowPlan::q_ratio(Eigen::Index n_assets) const {
  return static_cast<double>(window_length) / static_cast<double>(n_assets);
}

void WindowPlan::validate(const ReturnsPanel& panel,
                          const WaveletFilter& filter) const {
  if (window_length < 2) {
    throw ConfigError("window length must be >= 2, got " +
                      std::to_string(window_length));
  }
  if (stride < 1) {
    throw ConfigError("stride must be >= 1, got " + std::to_string(stride));
  }
  if (panel.n_obs() < window_length) {
    throw ConfigError("panel has " + std::to_string(panel.n_obs()) +
                      " observations, shorter than the window length " +
                      std::to_string(window_length));
  }
  for (int s : effective_scales()) {
    if (s != kRawScale && (s < 1 || s > levels)) {
      throw ConfigError("requested scale " + std::to_string(s) +
                        " outside raw+1.." + std::to_string(levels));
    }
  }
  const bool needs_wavelets =
      std::any_of(effective_scales().begin(), effective_scales().end(),
                  [](int s) { return s != kRawScale; });
  if (needs_wavelets) {
    const int admissible = max_level(window_length, filter, min_unbiased);
    if (levels > admissible) {
      throw ConfigError(
          "levels " + std::to_string(levels) + " exceeds max_level " +
          std::to_string(admissible) + " for window length " +
          std::to_string(window_length) + " at min_unbiased " +
          std::to_string(min_unbiased));
    }
  }
}

namespace {

struct WindowOutput {
  std::map<int, EigenRecord> records;
  std::map<int, double> avg_correlation;
  std::vector<WindowFailure> failures;
};

WindowOutput analyse_window(const ReturnsPanel& panel, const WindowPlan& plan,
                            const WaveletFilter& filter,
                            const std::vector<int>& scales,
                            Eigen::Index window_index, Eigen::Index start) {
  WindowOutput out;
  const auto ids = std::span<const std::string>(panel.asset_ids);
  const Eigen::MatrixXd window =
      panel.returns.middleCols(start, plan.window_length);

  const bool needs_wavelets =
      std::any_of(scales.begin(), scales.end(),
                  [](int s) { return s != kRawScale; });

  std::vector<WaveletDecomposition> decs;
  auto run_scale = [&](int scale) {
    Eigen::MatrixXd corr;
    if (scale == kRawScale) {
      corr = raw_correlation(window, ids).correlation;
    } else {
      corr = wavelet_correlation_matrix(decs, scale, ids).correlation;
    }
    EigenRecord record = spectrum(corr);
    record.window_index = window_index;
    record.scale = scale;
    out.avg_correlation[scale] = mean_offdiagonal(corr);
    out.records[scale] = std::move(record);
  };

  auto flag_failure = [&](int scale, const std::string& what) {
    out.failures.push_back(WindowFailure{window_index, scale, what});
    out.records[scale] = EigenRecord{window_index, scale, {}, {}};
    out.avg_correlation[scale] = std::numeric_limits<double>::quiet_NaN();
  };

  auto context = [&](const std::string& what) {
    return "window " + std::to_string(window_index) + " (start " +
           std::to_string(start) + "): " + what;
  };

  if (needs_wavelets) {
    try {
      decs.reserve(static_cast<std::size_t>(panel.n_assets()));
      for (Eigen::Index i = 0; i < panel.n_assets(); ++i) {
        decs.push_back(decompose(window.row(i).transpose(), filter, plan.levels));
      }
    } catch (const Error& e) {
      if (!plan.skip_failed_windows) {
        throw ConfigError(context(e.what()));
      }
      for (int scale : scales) {
        if (scale != kRawScale) {
          flag_failure(scale, context(e.what()));
        }
      }
      decs.clear();
    }
  }

  for (int scale : scales) {
    if (scale != kRawScale && decs.empty() && needs_wavelets) {
      continue;  // decomposition already failed and was flagged
    }
    try {
      run_scale(scale);
    } catch (const DataError& e) {
      if (!plan.skip_failed_windows) throw DataError(context(e.what()));
      flag_failure(scale, context(e.what()));
    } catch (const NumericalError& e) {
      if (!plan.skip_failed_windows) throw NumericalError(context(e.what()));
      flag_failure(scale, context(e.what()));
    } catch (const ConfigError& e) {
      // plan-level mistakes are not per-window conditions; always abort
      throw ConfigError(context(e.what()));
    }
  }
  return out;
}

}  // namespace

DynamicsResult run_dynamics(const ReturnsPanel& panel, const WindowPlan& plan,
                            const WaveletFilter& filter) {
  panel.validate();
  plan.validate(panel, filter);
  const std::vector<int> scales = plan.effective_scales();

  DynamicsResult result;
  result.n_assets = panel.n_assets();
  result.window_length = plan.window_length;
  result.scales = scales;
  for (Eigen::Index start = 0; start + plan.window_length <= panel.n_obs();
       start += plan.stride) {
    result.window_starts.push_back(start);
  }
  const Eigen::Index n_windows = result.n_windows();
  for (int scale : scales) {
    result.records[scale].resize(static_cast<std::size_t>(n_windows));
    result.avg_correlation[scale] =
        Eigen::VectorXd::Constant(n_windows,
                                  std::numeric_limits<double>::quiet_NaN());
  }

  std::vector<std::vector<WindowFailure>> failures(
      static_cast<std::size_t>(n_windows));

  // Windows are independent; workers claim indices from a shared counter and
  // write into disjoint slots, so the merged result matches sequential order.
  const int n_threads =
      std::max(1, std::min<int>(plan.n_threads, static_cast<int>(n_windows)));
  std::atomic<Eigen::Index> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  Eigen::Index first_error_window = std::numeric_limits<Eigen::Index>::max();

  auto worker = [&]() {
    while (true) {
      const Eigen::Index w = next.fetch_add(1);
      if (w >= n_windows) break;
      try {
        WindowOutput out = analyse_window(panel, plan, filter, scales, w,
                                          result.window_starts[
                                              static_cast<std::size_t>(w)]);
        for (auto& [scale, record] : out.records) {
          result.records[scale][static_cast<std::size_t>(w)] =
              std::move(record);
        }
        for (auto& [scale, avg] : out.avg_correlation) {
          result.avg_correlation[scale][w] = avg;
        }
        failures[static_cast<std::size_t>(w)] = std::move(out.failures);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (w < first_error_window) {
          first_error_window = w;
          first_error = std::current_exception();
        }
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
  for (auto& per_window : failures) {
    result.failures.insert(result.failures.end(), per_window.begin(),
                           per_window.end());
  }
  return result;
}

Eigen::VectorXd eigenvalue_series(const DynamicsResult& result, int scale,
                                  int index_from_top) {
  auto it = result.records.find(scale);
  if (it == result.records.end()) {
    throw ConfigError("scale " + scale_label(scale) + " not present in result");
  }
  if (index_from_top < 1 || index_from_top > result.n_assets) {
    throw ConfigError("eigen index " + std::to_string(index_from_top) +
                      " outside 1.." + std::to_string(result.n_assets));
  }
  Eigen::VectorXd series(result.n_windows());
  for (Eigen::Index w = 0; w < result.n_windows(); ++w) {
    const EigenRecord& record = it->second[static_cast<std::size_t>(w)];
    series[w] = record.eigenvalues.size() == 0
                    ? std::numeric_limits<double>::quiet_NaN()
                    : record.lambda_from_top(index_from_top);
  }
  return series;
}

std::vector<EppsRow> epps_summary(const ReturnsPanel& panel,
                                  const WaveletFilter& filter, int levels) {
  panel.validate();
  if (levels < 1) {
    throw ConfigError("epps summary needs levels >= 1, got " +
                      std::to_string(levels));
  }
  const auto ids = std::span<const std::string>(panel.asset_ids);
  const int admissible = max_level(panel.n_obs(), filter, kDefaultMinUnbiased);
  if (levels > admissible) {
    throw ConfigError("levels " + std::to_string(levels) +
                      " exceeds max_level " + std::to_string(admissible) +
                      " for T = " + std::to_string(panel.n_obs()));
  }

  std::vector<WaveletDecomposition> decs;
  decs.reserve(static_cast<std::size_t>(panel.n_assets()));
  for (Eigen::Index i = 0; i < panel.n_assets(); ++i) {
    decs.push_back(
        decompose(panel.returns.row(i).transpose(), filter, levels));
  }

  auto top3 = [&](const Eigen::MatrixXd& corr, int scale, double tau) {
    EigenRecord record = spectrum(corr);
    EppsRow row;
    row.scale = scale;
    row.tau = tau;
    row.avg_correlation = mean_offdiagonal(corr);
    const Eigen::Index n = record.eigenvalues.size();
    row.lambda1 = record.lambda_from_top(1);
    row.lambda2 = n >= 2 ? record.lambda_from_top(2)
                         : std::numeric_limits<double>::quiet_NaN();
    row.lambda3 = n >= 3 ? record.lambda_from_top(3)
                         : std::numeric_limits<double>::quiet_NaN();
    return row;
  };

  std::vector<EppsRow> rows;
  rows.push_back(top3(raw_correlation(panel.returns, ids).correlation,
                      kRawScale, 1.0));
  for (int j = 1; j <= levels; ++j) {
    ScaleCorrelationSet set = wavelet_correlation_matrix(decs, j, ids);
    rows.push_back(top3(set.correlation, j, set.tau));
  }
  return rows;
}

}  // namespace wavecorr

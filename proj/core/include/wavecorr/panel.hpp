#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "wavecorr/errors.hpp"

namespace wavecorr {

/// How returns are computed from prices (and aggregated over windows).
enum class ReturnKind { Log, Simple };

ReturnKind parse_return_kind(const std::string& name);
std::string return_kind_name(ReturnKind kind);

/// Aligned price panel: one row per asset, one column per observation.
/// Timestamps are carried through verbatim (ISO-8601 strings or integer
/// indices); estimation treats observations as evenly spaced.
struct PricePanel {
  std::vector<std::string> asset_ids;
  std::vector<std::string> timestamps;
  Eigen::MatrixXd prices;  // N x T, strictly positive

  Eigen::Index n_assets() const { return prices.rows(); }
  Eigen::Index n_obs() const { return prices.cols(); }

  /// Throws DataError on any violated invariant (N >= 2, positive prices,
  /// strictly increasing timestamps, consistent lengths).
  void validate() const;
};

/// Aligned return panel, same layout as PricePanel. Timestamps label the end
/// of each return interval.
struct ReturnsPanel {
  std::vector<std::string> asset_ids;
  std::vector<std::string> timestamps;
  Eigen::MatrixXd returns;  // N x T, all finite

  Eigen::Index n_assets() const { return returns.rows(); }
  Eigen::Index n_obs() const { return returns.cols(); }

  void validate() const;
};

struct CsvOptions {
  char delimiter = ',';
  /// When true, empty cells are filled with the previous observation of the
  /// same asset; the fill count is reported. When false (default), any empty
  /// cell is an error.
  bool forward_fill = false;
};

struct LoadReport {
  std::size_t cells_filled = 0;
};

/// Loads a price panel from CSV. Layout: header row names the columns, first
/// column is an ISO-8601 timestamp or integer index, each remaining column is
/// one asset. Assets keep header order. Errors carry (row, col) locations.
PricePanel load_prices(const std::string& path, const CsvOptions& options = {},
                       LoadReport* report = nullptr);

/// Loads a panel of already-computed returns, same CSV layout as load_prices
/// but without the positivity requirement.
ReturnsPanel load_returns(const std::string& path, const CsvOptions& options = {},
                          LoadReport* report = nullptr);

/// Computes returns column-by-column: log r_t = ln(p_t / p_{t-1}), simple
/// r_t = p_t / p_{t-1} - 1. Output has T-1 observations; the first timestamp
/// is dropped.
ReturnsPanel to_returns(const PricePanel& panel, ReturnKind kind);

}  // namespace wavecorr

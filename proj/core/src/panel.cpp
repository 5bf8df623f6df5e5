#include "wavecorr/panel.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>

#include "wavecorr/csv.hpp"

namespace wavecorr {

ReturnKind parse_return_kind(const std::string& name) {
  if (name == "log") return ReturnKind::Log;
  if (name == "simple") return ReturnKind::Simple;
  throw ConfigError("unknown return kind '" + name + "' (expected log|simple)");
}

std::string return_kind_name(ReturnKind kind) {
  return kind == ReturnKind::Log ? "log" : "simple";
}

namespace {

// Timestamps compare numerically when both parse as numbers, lexicographically
// otherwise (correct for fixed-format ISO-8601).
bool timestamp_less(const std::string& a, const std::string& b) {
  char* enda = nullptr;
  char* endb = nullptr;
  double va = std::strtod(a.c_str(), &enda);
  double vb = std::strtod(b.c_str(), &endb);
  bool numa = enda != a.c_str() && *enda == '\0';
  bool numb = endb != b.c_str() && *endb == '\0';
  if (numa && numb) return va < vb;
  return a < b;
}

void check_timestamps(const std::vector<std::string>& ts) {
  for (std::size_t t = 1; t < ts.size(); ++t) {
    if (!timestamp_less(ts[t - 1], ts[t])) {
      throw DataError("non-monotone timestamps: '" + ts[t - 1] + "' followed by '" +
                      ts[t] + "' (row " + std::to_string(t + 2) + ")");
    }
  }
}

struct ParsedPanel {
  std::vector<std::string> asset_ids;
  std::vector<std::string> timestamps;
  Eigen::MatrixXd values;
};

ParsedPanel parse_panel_csv(const std::string& path, const CsvOptions& options,
                            LoadReport* report) {
  CsvTable table = read_csv(path, options.delimiter);
  if (table.header.size() < 3) {
    throw DataError("panel csv needs a timestamp column and at least 2 assets, got " +
                    std::to_string(table.header.size()) + " columns");
  }
  if (table.rows.empty()) {
    throw DataError("panel csv '" + path + "' has no data rows");
  }

  ParsedPanel panel;
  panel.asset_ids.assign(table.header.begin() + 1, table.header.end());
  const Eigen::Index n = static_cast<Eigen::Index>(panel.asset_ids.size());
  const Eigen::Index t_len = static_cast<Eigen::Index>(table.rows.size());
  panel.values.resize(n, t_len);
  panel.timestamps.reserve(table.rows.size());

  std::size_t filled = 0;
  for (Eigen::Index t = 0; t < t_len; ++t) {
    const auto& row = table.rows[static_cast<std::size_t>(t)];
    panel.timestamps.push_back(row[0]);
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::string& cell = row[static_cast<std::size_t>(i) + 1];
      const std::size_t file_row = static_cast<std::size_t>(t) + 2;
      const std::size_t file_col = static_cast<std::size_t>(i) + 2;
      if (cell.empty()) {
        if (!options.forward_fill) {
          throw DataError("missing value at (row " + std::to_string(file_row) +
                          ", col " + std::to_string(file_col) +
                          "); rerun with forward-fill to repair gaps");
        }
        if (t == 0) {
          throw DataError("missing value at (row " + std::to_string(file_row) +
                          ", col " + std::to_string(file_col) +
                          "): first observation cannot be forward-filled");
        }
        panel.values(i, t) = panel.values(i, t - 1);
        ++filled;
        continue;
      }
      double v = parse_cell(cell, file_row, file_col);
      if (!std::isfinite(v)) {
        throw DataError("non-finite value at (row " + std::to_string(file_row) +
                        ", col " + std::to_string(file_col) + ")");
      }
      panel.values(i, t) = v;
    }
  }
  check_timestamps(panel.timestamps);
  if (report) {
    report->cells_filled = filled;
  }
  return panel;
}

}  // namespace

void PricePanel::validate() const {
  if (n_assets() < 2) {
    throw DataError("price panel needs at least 2 assets, got " +
                    std::to_string(n_assets()));
  }
  if (static_cast<Eigen::Index>(timestamps.size()) != n_obs()) {
    throw DataError("price panel timestamp count does not match observations");
  }
  if (static_cast<Eigen::Index>(asset_ids.size()) != n_assets()) {
    throw DataError("price panel asset id count does not match rows");
  }
  for (Eigen::Index i = 0; i < n_assets(); ++i) {
    for (Eigen::Index t = 0; t < n_obs(); ++t) {
      double p = prices(i, t);
      if (!(p > 0.0) || !std::isfinite(p)) {
        throw DataError("non-positive price at (row " + std::to_string(t + 2) +
                        ", col " + std::to_string(i + 2) + "), asset '" +
                        asset_ids[static_cast<std::size_t>(i)] + "'");
      }
    }
  }
  check_timestamps(timestamps);
}

void ReturnsPanel::validate() const {
  if (n_assets() < 2) {
    throw DataError("returns panel needs at least 2 assets, got " +
                    std::to_string(n_assets()));
  }
  if (n_obs() < 1) {
    throw DataError("returns panel has no observations");
  }
  if (static_cast<Eigen::Index>(timestamps.size()) != n_obs()) {
    throw DataError("returns panel timestamp count does not match observations");
  }
  if (!returns.allFinite()) {
    throw DataError("returns panel contains non-finite entries");
  }
}

PricePanel load_prices(const std::string& path, const CsvOptions& options,
                       LoadReport* report) {
  ParsedPanel parsed = parse_panel_csv(path, options, report);
  PricePanel panel{std::move(parsed.asset_ids), std::move(parsed.timestamps),
                   std::move(parsed.values)};
  panel.validate();
  return panel;
}

ReturnsPanel load_returns(const std::string& path, const CsvOptions& options,
                          LoadReport* report) {
  ParsedPanel parsed = parse_panel_csv(path, options, report);
  ReturnsPanel panel{std::move(parsed.asset_ids), std::move(parsed.timestamps),
                     std::move(parsed.values)};
  panel.validate();
  return panel;
}

ReturnsPanel to_returns(const PricePanel& panel, ReturnKind kind) {
  panel.validate();
  if (panel.n_obs() < 2) {
    throw DataError("need at least 2 price observations to compute returns");
  }
  const Eigen::Index n = panel.n_assets();
  const Eigen::Index t_len = panel.n_obs() - 1;

  ReturnsPanel out;
  out.asset_ids = panel.asset_ids;
  out.timestamps.assign(panel.timestamps.begin() + 1, panel.timestamps.end());
  out.returns.resize(n, t_len);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index t = 0; t < t_len; ++t) {
      double ratio = panel.prices(i, t + 1) / panel.prices(i, t);
      out.returns(i, t) = kind == ReturnKind::Log ? std::log(ratio) : ratio - 1.0;
    }
  }
  out.validate();
  return out;
}

}  // namespace wavecorr

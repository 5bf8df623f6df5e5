#include "wavecorr/exports.hpp"

#include <cmath>
#include <fstream>

#include "wavecorr/csv.hpp"

namespace wavecorr {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open '" + path + "' for writing");
  }
  return out;
}

}  // namespace

void write_crystals_csv(const std::string& path,
                        const WaveletDecomposition& dec) {
  auto out = open_out(path);
  out << "t";
  for (int j = 1; j <= dec.levels; ++j) out << ",d" << j;
  out << ",s" << dec.levels << "\n";
  for (Eigen::Index t = 0; t < dec.length(); ++t) {
    out << t;
    for (const auto& detail : dec.details) {
      out << ',' << format_double(detail[t]);
    }
    out << ',' << format_double(dec.smooth[t]) << "\n";
  }
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                      std::span<const std::string> asset_ids) {
  if (static_cast<Eigen::Index>(asset_ids.size()) != matrix.rows()) {
    throw ConfigError("matrix dump: asset id count does not match order");
  }
  auto out = open_out(path);
  out << "asset";
  for (const auto& id : asset_ids) out << ',' << id;
  out << "\n";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    out << asset_ids[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < matrix.cols(); ++k) {
      out << ',' << format_double(matrix(i, k));
    }
    out << "\n";
  }
}

namespace {

// Eigenvalue column indices (ascending storage) for the requested top_k.
std::vector<Eigen::Index> eigen_indices(Eigen::Index n, int top_k) {
  std::vector<Eigen::Index> idx;
  const Eigen::Index from = (top_k > 0 && top_k < n) ? n - top_k : 0;
  for (Eigen::Index i = from; i < n; ++i) idx.push_back(i);
  return idx;
}

}  // namespace

void write_dynamics_long_csv(const std::string& path,
                             const DynamicsResult& result, int top_k) {
  auto out = open_out(path);
  out << "window_start,scale,metric,value\n";
  const auto idx = eigen_indices(result.n_assets, top_k);
  for (int scale : result.scales) {
    const auto& records = result.records.at(scale);
    const auto& avg = result.avg_correlation.at(scale);
    for (Eigen::Index w = 0; w < result.n_windows(); ++w) {
      const auto start = result.window_starts[static_cast<std::size_t>(w)];
      out << start << ',' << scale_label(scale) << ",avg_corr,"
          << format_double(avg[w]) << "\n";
      const auto& rec = records[static_cast<std::size_t>(w)];
      for (Eigen::Index i : idx) {
        const double v = rec.eigenvalues.size() == 0
                             ? std::nan("")
                             : rec.eigenvalues[i];
        out << start << ',' << scale_label(scale) << ",lambda_" << (i + 1)
            << ',' << format_double(v) << "\n";
      }
    }
  }
}

void write_eigenvalue_series_csv(const std::string& path,
                                 const DynamicsResult& result, int scale,
                                 int top_k) {
  auto records_it = result.records.find(scale);
  if (records_it == result.records.end()) {
    throw ConfigError("scale " + scale_label(scale) + " not present in result");
  }
  auto out = open_out(path);
  const auto idx = eigen_indices(result.n_assets, top_k);
  out << "window_start";
  for (Eigen::Index i : idx) out << ",lambda_" << (i + 1);
  out << ",avg_corr\n";
  const auto& avg = result.avg_correlation.at(scale);
  for (Eigen::Index w = 0; w < result.n_windows(); ++w) {
    out << result.window_starts[static_cast<std::size_t>(w)];
    const auto& rec = records_it->second[static_cast<std::size_t>(w)];
    for (Eigen::Index i : idx) {
      const double v =
          rec.eigenvalues.size() == 0 ? std::nan("") : rec.eigenvalues[i];
      out << ',' << format_double(v);
    }
    out << ',' << format_double(avg[w]) << "\n";
  }
}

void write_epps_csv(const std::string& path, std::span<const EppsRow> rows) {
  auto out = open_out(path);
  out << "scale,tau,avg_correlation,lambda1,lambda2,lambda3\n";
  for (const auto& row : rows) {
    out << scale_label(row.scale) << ',' << format_double(row.tau) << ','
        << format_double(row.avg_correlation) << ','
        << format_double(row.lambda1) << ',' << format_double(row.lambda2)
        << ',' << format_double(row.lambda3) << "\n";
  }
}

void write_partition_csv(const std::string& path,
                         std::span<const PartitionReport> reports) {
  auto out = open_out(path);
  out << "scale,eigen_index,count_above,mean_return_above_pct,"
         "total_return_above_pct,count_below,mean_return_below_pct,"
         "total_return_below_pct\n";
  for (const auto& rep : reports) {
    out << scale_label(rep.scale) << ',' << rep.eigen_index;
    auto side = [&](const PartitionSide& s) {
      out << ',' << s.count() << ',';
      if (s.mean_return) {
        out << format_double(*s.mean_return * 100.0) << ','
            << format_double(s.total_return * 100.0);
      } else {
        out << ',';  // empty partition: blank return cells
      }
    };
    side(rep.above);
    side(rep.below);
    out << "\n";
  }
}

void write_frontier_csv(const std::string& path,
                        const std::map<int, Frontier>& frontiers,
                        std::span<const std::string> asset_ids) {
  auto out = open_out(path);
  out << "scale,point,target_return,stdev";
  for (std::size_t i = 1; i <= asset_ids.size(); ++i) out << ",w_" << i;
  out << "\n";
  auto emit = [&](int scale, const std::string& tag, const FrontierPoint& p) {
    out << scale_label(scale) << ',' << tag << ','
        << format_double(p.target_return) << ',' << format_double(p.stdev);
    for (Eigen::Index i = 0; i < p.weights.size(); ++i) {
      out << ',' << format_double(p.weights[i]);
    }
    out << "\n";
  };
  for (const auto& [scale, frontier] : frontiers) {
    emit(scale, "gmv", frontier.gmv);
    for (std::size_t k = 0; k < frontier.points.size(); ++k) {
      emit(scale, std::to_string(k), frontier.points[k]);
    }
  }
}

void write_returns_csv(const std::string& path, const ReturnsPanel& panel) {
  auto out = open_out(path);
  out << "timestamp";
  for (const auto& id : panel.asset_ids) out << ',' << id;
  out << "\n";
  for (Eigen::Index t = 0; t < panel.n_obs(); ++t) {
    out << panel.timestamps[static_cast<std::size_t>(t)];
    for (Eigen::Index i = 0; i < panel.n_assets(); ++i) {
      out << ',' << format_double(panel.returns(i, t));
    }
    out << "\n";
  }
}

}  // namespace wavecorr

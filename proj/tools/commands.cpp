#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "run_config.hpp"
#include "svg_plot.hpp"
#include "wavecorr/analysis.hpp"
#include "wavecorr/exports.hpp"
#include "wavecorr/portfolio.hpp"

namespace wavecorr::cli {

namespace fs = std::filesystem;

namespace {

std::string sanitize(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out;
}

fs::path prepare_out_dir(const RunConfig& config) {
  if (config.out.empty()) {
    throw ConfigError("--out <directory> is required");
  }
  fs::path dir(config.out);
  fs::create_directories(dir);
  return dir;
}

double parse_number(const std::string& token, const std::string& flag_name) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw ConfigError("cannot parse '" + token + "' in " + flag_name);
  }
  return v;
}

Eigen::VectorXd parse_vector(const std::string& text,
                             const std::string& flag_name) {
  const std::vector<double> values = parse_double_list(text, flag_name);
  Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = values[i];
  }
  return out;
}

int auto_levels(const RunConfig& config, Eigen::Index t_len,
                const WaveletFilter& filter) {
  if (config.levels > 0) return config.levels;
  const int admissible = max_level(t_len, filter, config.min_unbiased);
  if (admissible < 1) {
    throw ConfigError("no admissible decomposition level: max_level is 0 for "
                      "T = " + std::to_string(t_len) + " at min_unbiased " +
                      std::to_string(config.min_unbiased));
  }
  return admissible;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag_name) {
  std::vector<double> out;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) {
        out.push_back(parse_number(token, flag_name));
        token.clear();
      }
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token.push_back(c);
    }
  }
  return out;
}

std::vector<int> parse_scales(const std::string& text, int levels) {
  std::vector<int> scales;
  if (text.empty()) return scales;  // raw + all levels
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (token.empty()) continue;
      if (token == "raw") {
        scales.push_back(kRawScale);
      } else {
        const double v = parse_number(token, "--scales");
        const int j = static_cast<int>(v);
        if (v != j || j < 1 || j > levels) {
          throw ConfigError("scale '" + token + "' outside raw,1.." +
                            std::to_string(levels));
        }
        scales.push_back(j);
      }
      token.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token.push_back(c);
    }
  }
  return scales;
}

ReturnsPanel load_panel(const RunConfig& config) {
  if (config.input.empty() == config.synthetic.empty()) {
    throw ConfigError("exactly one of --input and --synthetic is required");
  }
  if (!config.synthetic.empty()) {
    SyntheticSpec spec;
    spec.model = parse_synthetic_model(config.synthetic);
    spec.n_assets = config.n_assets;
    spec.n_obs = config.n_obs;
    spec.rho = config.rho;
    spec.tick_prob = config.tick_prob;
    spec.seed = config.seed;
    return generate_synthetic(spec);
  }
  CsvOptions options;
  options.forward_fill = config.forward_fill;
  LoadReport report;
  if (config.input_kind == "returns") {
    ReturnsPanel panel = load_returns(config.input, options, &report);
    if (report.cells_filled > 0) {
      std::cerr << "note: forward-filled " << report.cells_filled
                << " missing cells\n";
    }
    return panel;
  }
  if (config.input_kind != "prices") {
    throw ConfigError("--input-kind must be prices or returns, got '" +
                      config.input_kind + "'");
  }
  const PricePanel prices = load_prices(config.input, options, &report);
  if (report.cells_filled > 0) {
    std::cerr << "note: forward-filled " << report.cells_filled
              << " missing cells\n";
  }
  return to_returns(prices, parse_return_kind(config.returns));
}

WindowPlan build_plan(const RunConfig& config, const ReturnsPanel& panel,
                      const WaveletFilter& filter) {
  WindowPlan plan;
  plan.window_length = config.window > 0 ? config.window : panel.n_obs();
  plan.stride = config.stride > 0
                    ? config.stride
                    : std::max<Eigen::Index>(1, plan.window_length / 10);
  plan.min_unbiased = config.min_unbiased;
  plan.levels = auto_levels(config, plan.window_length, filter);
  plan.scales = parse_scales(config.scales, plan.levels);
  plan.skip_failed_windows = config.skip_failed;
  plan.n_threads = config.threads;
  plan.validate(panel, filter);
  return plan;
}

int cmd_synth(const RunConfig& config) {
  if (config.synthetic.empty()) {
    throw ConfigError("synth requires --synthetic <model>");
  }
  const ReturnsPanel panel = load_panel(config);
  const fs::path dir = prepare_out_dir(config);
  write_returns_csv((dir / "panel.csv").string(), panel);
  std::cout << "wrote " << (dir / "panel.csv").string() << " ("
            << panel.n_assets() << " assets x " << panel.n_obs()
            << " observations)\n";
  return 0;
}

int cmd_decompose(const RunConfig& config) {
  const ReturnsPanel panel = load_panel(config);
  const WaveletFilter filter = make_filter(config.filter);
  const int levels = auto_levels(config, panel.n_obs(), filter);
  // validate before creating the output directory
  if (levels > max_level(panel.n_obs(), filter, 1)) {
    throw ConfigError("levels " + std::to_string(levels) +
                      " exceeds max_level " +
                      std::to_string(max_level(panel.n_obs(), filter, 1)));
  }
  std::vector<WaveletDecomposition> decs;
  for (Eigen::Index i = 0; i < panel.n_assets(); ++i) {
    decs.push_back(
        decompose(panel.returns.row(i).transpose(), filter, levels));
  }
  const fs::path dir = prepare_out_dir(config);
  for (Eigen::Index i = 0; i < panel.n_assets(); ++i) {
    const std::string name =
        "crystals_" + sanitize(panel.asset_ids[static_cast<std::size_t>(i)]) +
        ".csv";
    write_crystals_csv((dir / name).string(),
                       decs[static_cast<std::size_t>(i)]);
  }
  std::cout << "wrote " << panel.n_assets() << " crystal files to "
            << dir.string() << "\n";
  return 0;
}

int cmd_dynamics(const RunConfig& config) {
  const ReturnsPanel panel = load_panel(config);
  const WaveletFilter filter = make_filter(config.filter);
  const WindowPlan plan = build_plan(config, panel, filter);
  const DynamicsResult result = run_dynamics(panel, plan, filter);
  const fs::path dir = prepare_out_dir(config);

  write_dynamics_long_csv((dir / "dynamics_long.csv").string(), result,
                          config.top_k);
  for (int scale : result.scales) {
    const std::string label = scale_label(scale);
    write_eigenvalue_series_csv(
        (dir / ("eigenvalues_scale_" + label + ".csv")).string(), result,
        scale, config.top_k);

    plot::LinePlot chart("Eigenvalue dynamics, scale " + label,
                         "window start", "eigenvalue");
    std::vector<double> xs;
    for (Eigen::Index start : result.window_starts) {
      xs.push_back(static_cast<double>(start));
    }
    const int max_rank =
        static_cast<int>(std::min<Eigen::Index>(3, result.n_assets));
    for (int rank = 1; rank <= max_rank; ++rank) {
      const Eigen::VectorXd series = eigenvalue_series(result, scale, rank);
      std::vector<double> ys(series.data(), series.data() + series.size());
      const char* names[] = {"largest", "2nd", "3rd"};
      chart.add_series(names[rank - 1], xs, ys);
    }
    chart.write((dir / ("dynamics_scale_" + label + ".svg")).string());
  }
  if (!result.failures.empty()) {
    std::cerr << result.failures.size() << " window(s) skipped:\n";
    for (const auto& f : result.failures) {
      std::cerr << "  " << f.message << "\n";
    }
  }
  std::cout << "wrote dynamics for " << result.n_windows() << " windows x "
            << result.scales.size() << " scales to " << dir.string() << "\n";
  return 0;
}

int cmd_epps(const RunConfig& config) {
  const ReturnsPanel panel = load_panel(config);
  const WaveletFilter filter = make_filter(config.filter);
  const int levels = auto_levels(config, panel.n_obs(), filter);
  const std::vector<EppsRow> rows = epps_summary(panel, filter, levels);
  const fs::path dir = prepare_out_dir(config);
  write_epps_csv((dir / "epps.csv").string(), rows);
  if (config.dump_matrices) {
    const auto ids = std::span<const std::string>(panel.asset_ids);
    write_matrix_csv((dir / "correlation_scale_raw.csv").string(),
                     raw_correlation(panel.returns, ids).correlation,
                     panel.asset_ids);
    std::vector<WaveletDecomposition> decs;
    for (Eigen::Index i = 0; i < panel.n_assets(); ++i) {
      decs.push_back(
          decompose(panel.returns.row(i).transpose(), filter, levels));
    }
    for (int j = 1; j <= levels; ++j) {
      write_matrix_csv(
          (dir / ("correlation_scale_" + std::to_string(j) + ".csv")).string(),
          wavelet_correlation_matrix(decs, j, ids).correlation,
          panel.asset_ids);
    }
  }
  std::cout << "wrote epps summary (" << rows.size() << " scales) to "
            << dir.string() << "\n";
  return 0;
}

int cmd_partition(const RunConfig& config) {
  const ReturnsPanel panel = load_panel(config);
  const WaveletFilter filter = make_filter(config.filter);
  const WindowPlan plan = build_plan(config, panel, filter);
  const DynamicsResult result = run_dynamics(panel, plan, filter);

  Eigen::VectorXd index_weights;
  if (!config.weights.empty()) {
    index_weights = parse_vector(config.weights, "--weights");
  }
  const Eigen::VectorXd index = index_returns(panel, index_weights);
  const Eigen::VectorXd window_returns =
      window_aggregate(index, result.window_starts, plan.window_length,
                       parse_return_kind(config.returns));

  const Eigen::Index ref_len =
      config.sdu_reference > 0 ? config.sdu_reference : -1;
  std::vector<PartitionReport> reports;
  for (int scale : result.scales) {
    const Eigen::VectorXd series =
        eigenvalue_series(result, scale, config.eigen_index);
    const SduSeries sdu =
        to_sdu(series, 0, ref_len, config.eigen_index, scale);
    reports.push_back(partition_by_sdu(sdu, window_returns,
                                       config.threshold_high,
                                       config.threshold_low));
  }
  const fs::path dir = prepare_out_dir(config);
  write_partition_csv((dir / "partition.csv").string(), reports);
  std::cout << "wrote partition table (" << reports.size() << " scales) to "
            << dir.string() << "\n";
  return 0;
}

int cmd_optimize(const RunConfig& config) {
  const ReturnsPanel panel = load_panel(config);
  const WaveletFilter filter = make_filter(config.filter);
  const Eigen::Index window_length =
      config.window > 0 ? config.window : panel.n_obs();
  const int levels = auto_levels(config, window_length, filter);

  Eigen::VectorXd mu;
  if (!config.mu.empty()) {
    mu = parse_vector(config.mu, "--mu");
  }
  std::vector<double> targets;
  if (!config.targets.empty()) {
    targets = parse_double_list(config.targets, "--targets");
  } else if (config.target_count != 21) {
    // grid is built inside frontier_by_scale from [min mu, max mu]
    Eigen::VectorXd expected =
        mu.size() > 0 ? mu : Eigen::VectorXd(panel.returns.rowwise().mean());
    targets =
        target_grid(expected.minCoeff(), expected.maxCoeff(),
                    config.target_count);
  }
  const std::map<int, Frontier> frontiers =
      frontier_by_scale(panel, config.window_start, window_length, filter,
                        levels, mu, targets);

  const fs::path dir = prepare_out_dir(config);
  write_frontier_csv((dir / "frontier.csv").string(), frontiers,
                     panel.asset_ids);
  plot::LinePlot chart("Efficient frontiers by scale", "stdev",
                       "target return");
  for (const auto& [scale, frontier] : frontiers) {
    std::vector<double> xs, ys;
    for (const FrontierPoint& p : frontier.points) {
      xs.push_back(p.stdev);
      ys.push_back(p.target_return);
    }
    chart.add_series("scale " + scale_label(scale), xs, ys);
  }
  chart.write((dir / "frontiers.svg").string());
  std::cout << "wrote frontiers for " << frontiers.size() << " scales to "
            << dir.string() << "\n";
  return 0;
}

}  // namespace wavecorr::cli

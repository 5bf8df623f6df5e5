#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <vector>

#include "run_config.hpp"
#include "wavecorr/errors.hpp"

namespace {

using wavecorr::cli::RunConfig;

// Flat key=value configuration file ('#' comments). Keys mirror the long
// option names without the leading dashes. Values from the file are injected
// before the command-line flags, so explicit flags win.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw wavecorr::ConfigError("cannot open config file '" + path + "'");
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq <= first) {
      throw wavecorr::ConfigError("config file '" + path + "' line " +
                                  std::to_string(line_no) +
                                  ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return entries;
}

void add_source_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--input", config.input,
                  "Input CSV (timestamp column + one column per asset)");
  sub->add_option("--input-kind", config.input_kind,
                  "Interpret --input as prices or returns [prices]");
  sub->add_flag("--forward-fill", config.forward_fill,
                "Fill missing cells from the previous observation");
  sub->add_option("--synthetic", config.synthetic,
                  "Synthetic model: iid-gaussian|equicorrelated|one-factor|"
                  "asynchronous-ticks");
  sub->add_option("--n-assets", config.n_assets, "Synthetic asset count [10]");
  sub->add_option("--n-obs", config.n_obs, "Synthetic observation count [1000]");
  sub->add_option("--rho", config.rho, "Synthetic pairwise correlation [0]");
  sub->add_option("--tick-prob", config.tick_prob,
                  "Asynchronous-ticks update probability per tick [1]");
  sub->add_option("--seed", config.seed, "Random seed [0]");
  sub->add_option("--returns", config.returns,
                  "Return kind for prices and aggregation: log|simple [log]");
  sub->add_option("--out", config.out, "Output directory (required)");
  sub->add_option("--config", config.config_path,
                  "key=value run configuration file (flags override)");
}

void add_estimation_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--filter", config.filter, "Wavelet filter: la8|haar [la8]");
  sub->add_option("--levels", config.levels,
                  "Decomposition levels J [largest admissible]");
  sub->add_option("--window", config.window,
                  "Window length in observations [full sample]");
  sub->add_option("--stride", config.stride,
                  "Observations between window starts [window/10]");
  sub->add_option("--min-unbiased", config.min_unbiased,
                  "Minimum boundary-free coefficients per level [32]");
  sub->add_option("--scales", config.scales,
                  "Scales to analyse, e.g. raw,1,2 [raw + all levels]");
  sub->add_option("--threads", config.threads, "Worker threads [1]");
  sub->add_flag("--skip-failed", config.skip_failed,
                "Record failed windows and continue instead of aborting");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavecorr: multiscale correlation dynamics of return panels"};
  app.require_subcommand(1);
  RunConfig config;
  std::function<int()> action;

  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic returns panel and write it to CSV");
  add_source_options(synth, config);
  synth->callback([&] { action = [&] { return wavecorr::cli::cmd_synth(config); }; });

  auto* decompose = app.add_subcommand(
      "decompose", "Write per-asset MODWT crystal files");
  add_source_options(decompose, config);
  add_estimation_options(decompose, config);
  decompose->callback(
      [&] { action = [&] { return wavecorr::cli::cmd_decompose(config); }; });

  auto* dynamics = app.add_subcommand(
      "dynamics", "Sliding-window eigenvalue dynamics per scale");
  add_source_options(dynamics, config);
  add_estimation_options(dynamics, config);
  dynamics->add_option("--top-k", config.top_k,
                       "Keep only the k largest eigenvalues in CSV output");
  dynamics->callback(
      [&] { action = [&] { return wavecorr::cli::cmd_dynamics(config); }; });

  auto* epps = app.add_subcommand(
      "epps", "Full-sample average correlation and top eigenvalues per scale");
  add_source_options(epps, config);
  add_estimation_options(epps, config);
  epps->add_flag("--dump-matrices", config.dump_matrices,
                 "Also write the per-scale correlation matrices");
  epps->callback([&] { action = [&] { return wavecorr::cli::cmd_epps(config); }; });

  auto* partition = app.add_subcommand(
      "partition", "SDU partition of eigenvalue series vs index returns");
  add_source_options(partition, config);
  add_estimation_options(partition, config);
  partition->add_option("--eigen-index", config.eigen_index,
                        "Eigenvalue to partition, 1 = largest [1]");
  partition->add_option("--sdu-reference", config.sdu_reference,
                        "SDU reference: first K windows [entire series]");
  partition->add_option("--threshold-high", config.threshold_high,
                        "Upper SDU threshold [+1]");
  partition->add_option("--threshold-low", config.threshold_low,
                        "Lower SDU threshold [-1]");
  partition->add_option("--weights", config.weights,
                        "Index weights, comma separated [equal]");
  partition->callback(
      [&] { action = [&] { return wavecorr::cli::cmd_partition(config); }; });

  auto* optimize = app.add_subcommand(
      "optimize", "Per-scale mean-variance efficient frontiers on one window");
  add_source_options(optimize, config);
  add_estimation_options(optimize, config);
  optimize->add_option("--window-start", config.window_start,
                       "First observation of the estimation window [0]");
  optimize->add_option("--mu", config.mu,
                       "Expected returns, comma separated [full-sample means]");
  optimize->add_option("--targets", config.targets,
                       "Frontier target returns, comma separated");
  optimize->add_option("--target-count", config.target_count,
                       "Number of grid targets when --targets is absent [21]");
  optimize->callback(
      [&] { action = [&] { return wavecorr::cli::cmd_optimize(config); }; });

  try {
    app.parse(argc, argv);
    return action ? action() : 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const wavecorr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wavecorr::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const wavecorr::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

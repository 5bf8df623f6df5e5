#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wavecorr/dynamics.hpp"
#include "wavecorr/panel.hpp"
#include "wavecorr/synthetic.hpp"

namespace wavecorr::cli {

/// Flat run configuration shared by every subcommand; populated from CLI
/// flags, with a key=value config file (--config) supplying defaults.
struct RunConfig {
  // data source (exactly one of input / synthetic)
  std::string input;
  std::string input_kind = "prices";  // prices | returns
  bool forward_fill = false;
  std::string synthetic;  // model name; empty = none
  int n_assets = 10;
  int n_obs = 1000;
  double rho = 0.0;
  double tick_prob = 1.0;
  std::uint64_t seed = 0;
  std::string returns = "log";

  // estimation
  std::string filter = "la8";
  int levels = 0;  // 0 = largest admissible level
  std::int64_t window = 0;  // 0 = full sample
  std::int64_t window_start = 0;
  std::int64_t stride = 0;  // 0 = window / 10
  std::int64_t min_unbiased = 32;
  std::string scales;  // e.g. "raw,1,3"; empty = raw + all levels
  int threads = 1;
  bool skip_failed = false;

  // outputs
  std::string out;
  int top_k = 0;  // 0 = all eigenvalues

  // partition
  int eigen_index = 1;
  std::int64_t sdu_reference = 0;  // first K windows; 0 = full series
  double threshold_high = 1.0;
  double threshold_low = -1.0;
  std::string weights;  // comma list for the index; empty = equal weight

  // optimisation
  std::string mu;       // comma list; empty = full-sample means
  std::string targets;  // comma list; empty = grid over [min mu, max mu]
  int target_count = 21;

  bool dump_matrices = false;
};

/// Loads the panel named by the config (synthetic spec or CSV input).
ReturnsPanel load_panel(const RunConfig& config);

/// Builds and validates the window plan for the panel.
WindowPlan build_plan(const RunConfig& config, const ReturnsPanel& panel,
                      const WaveletFilter& filter);

std::vector<int> parse_scales(const std::string& text, int levels);
std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag_name);

int cmd_synth(const RunConfig& config);
int cmd_decompose(const RunConfig& config);
int cmd_dynamics(const RunConfig& config);
int cmd_epps(const RunConfig& config);
int cmd_partition(const RunConfig& config);
int cmd_optimize(const RunConfig& config);

}  // namespace wavecorr::cli

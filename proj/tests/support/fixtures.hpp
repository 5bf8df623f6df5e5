#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "wavecorr/panel.hpp"
#include "wavecorr/rng.hpp"

namespace wavecorr::testing {

/// One contiguous block of a regime fixture: n_obs observations with pairwise
/// correlation rho and a constant per-observation drift added to every asset.
struct RegimeBlock {
  Eigen::Index n_obs;
  double rho;
  double drift = 0.0;
  double vol = 1.0;
};

/// Panel of one-factor Gaussian blocks concatenated in time. Correlation
/// within each block is rho (one-factor construction); the drift shifts every
/// asset equally, so it moves the index without touching correlations.
inline ReturnsPanel regime_panel(Eigen::Index n_assets,
                                 const std::vector<RegimeBlock>& blocks,
                                 std::uint64_t seed) {
  Eigen::Index total = 0;
  for (const auto& b : blocks) total += b.n_obs;
  ReturnsPanel panel;
  panel.returns.resize(n_assets, total);
  for (Eigen::Index i = 1; i <= n_assets; ++i) {
    panel.asset_ids.push_back("A" + std::to_string(i));
  }
  for (Eigen::Index t = 1; t <= total; ++t) {
    panel.timestamps.push_back(std::to_string(t));
  }
  RandomSource rng(seed);
  Eigen::Index t0 = 0;
  for (const auto& block : blocks) {
    const double a = std::sqrt(block.rho);
    const double b = std::sqrt(1.0 - block.rho);
    for (Eigen::Index t = 0; t < block.n_obs; ++t) {
      const double m = rng.normal();
      for (Eigen::Index i = 0; i < n_assets; ++i) {
        panel.returns(i, t0 + t) =
            block.vol * (a * m + b * rng.normal()) + block.drift;
      }
    }
    t0 += block.n_obs;
  }
  return panel;
}

/// Panel mixing a slow common factor (8-tick moving sum of a shared normal)
/// with fast idiosyncratic noise: pairwise correlation is low at scale 1 and
/// high at scales 3+.
inline ReturnsPanel slow_factor_panel(Eigen::Index n_assets, Eigen::Index n_obs,
                                      std::uint64_t seed) {
  ReturnsPanel panel;
  panel.returns.resize(n_assets, n_obs);
  for (Eigen::Index i = 1; i <= n_assets; ++i) {
    panel.asset_ids.push_back("A" + std::to_string(i));
  }
  for (Eigen::Index t = 1; t <= n_obs; ++t) {
    panel.timestamps.push_back(std::to_string(t));
  }
  RandomSource rng(seed);
  constexpr int kWindow = 8;
  std::vector<double> factor;
  factor.reserve(static_cast<std::size_t>(n_obs) + kWindow);
  for (Eigen::Index t = 0; t < n_obs + kWindow; ++t) factor.push_back(rng.normal());
  for (Eigen::Index t = 0; t < n_obs; ++t) {
    double slow = 0.0;
    for (int k = 0; k < kWindow; ++k) {
      slow += factor[static_cast<std::size_t>(t) + static_cast<std::size_t>(k)];
    }
    slow /= std::sqrt(static_cast<double>(kWindow));
    for (Eigen::Index i = 0; i < n_assets; ++i) {
      panel.returns(i, t) = slow + 1.5 * rng.normal();
    }
  }
  return panel;
}

/// Scratch directory under the working directory (the build tree when run via
/// ctest). Recreated empty on each call.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir =
      std::filesystem::path("wavecorr_scratch") / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path);
  out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace wavecorr::testing

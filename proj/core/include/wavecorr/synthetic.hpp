#pragma once

#include <cstdint>
#include <string>

#include "wavecorr/panel.hpp"

namespace wavecorr {

enum class SyntheticModel {
  IidGaussian,       // independent standard normals
  Equicorrelated,    // joint Gaussian, correlation rho between every pair
  OneFactor,         // r_i = sqrt(rho) * m + sqrt(1 - rho) * eps_i
  AsynchronousTicks  // equicorrelated latent prices observed with staleness
};

SyntheticModel parse_synthetic_model(const std::string& name);
std::string synthetic_model_name(SyntheticModel model);

/// Parameters for generate_synthetic. The seed fully determines the panel.
struct SyntheticSpec {
  SyntheticModel model = SyntheticModel::IidGaussian;
  int n_assets = 2;
  int n_obs = 2;
  /// Pairwise population correlation. [0, 1) for equicorrelated and
  /// asynchronous-ticks (their Cholesky factor requires rho < 1); [0, 1] for
  /// one-factor, where rho = 1 degenerates to identical series.
  double rho = 0.0;
  /// Asynchronous-ticks only: probability that an asset's price updates at a
  /// given tick. Stale (unchanged) price otherwise.
  double tick_prob = 1.0;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

/// Generates a returns panel with known correlation structure. Pure function
/// of the spec: identical specs give bitwise-identical panels.
///
/// Asynchronous-ticks model: latent equicorrelated Gaussian increments build a
/// latent log-price per asset; the observed price updates to the latent value
/// with probability tick_prob per tick and is stale otherwise; returns are the
/// differences of the observed log-price series.
ReturnsPanel generate_synthetic(const SyntheticSpec& spec);

}  // namespace wavecorr

#include "wavecorr/synthetic.hpp"

#include <cmath>
#include <cstdio>

#include "wavecorr/rng.hpp"

namespace wavecorr {

SyntheticModel parse_synthetic_model(const std::string& name) {
  if (name == "iid-gaussian") return SyntheticModel::IidGaussian;
  if (name == "equicorrelated") return SyntheticModel::Equicorrelated;
  if (name == "one-factor") return SyntheticModel::OneFactor;
  if (name == "asynchronous-ticks") return SyntheticModel::AsynchronousTicks;
  throw ConfigError("unknown synthetic model '" + name +
                    "' (expected iid-gaussian|equicorrelated|one-factor|"
                    "asynchronous-ticks)");
}

std::string synthetic_model_name(SyntheticModel model) {
  switch (model) {
    case SyntheticModel::IidGaussian: return "iid-gaussian";
    case SyntheticModel::Equicorrelated: return "equicorrelated";
    case SyntheticModel::OneFactor: return "one-factor";
    case SyntheticModel::AsynchronousTicks: return "asynchronous-ticks";
  }
  throw ConfigError("invalid synthetic model enum");
}

void SyntheticSpec::validate() const {
  if (n_assets < 2) {
    throw ConfigError("synthetic spec: n_assets must be >= 2, got " +
                      std::to_string(n_assets));
  }
  if (n_obs < 2) {
    throw ConfigError("synthetic spec: n_obs must be >= 2, got " +
                      std::to_string(n_obs));
  }
  const double rho_max = model == SyntheticModel::OneFactor ? 1.0 : 1.0 - 1e-12;
  if (!(rho >= 0.0 && rho <= rho_max)) {
    throw ConfigError("synthetic spec: rho must be in [0, 1) (one-factor admits "
                      "rho = 1), got " + std::to_string(rho));
  }
  if (model == SyntheticModel::AsynchronousTicks &&
      !(tick_prob > 0.0 && tick_prob <= 1.0)) {
    throw ConfigError("synthetic spec: tick_prob must be in (0, 1], got " +
                      std::to_string(tick_prob));
  }
}

namespace {

std::vector<std::string> default_asset_ids(int n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "A%03d", i);
    ids.emplace_back(buf);
  }
  return ids;
}

std::vector<std::string> index_timestamps(int t_len) {
  std::vector<std::string> ts;
  ts.reserve(static_cast<std::size_t>(t_len));
  for (int t = 1; t <= t_len; ++t) {
    ts.push_back(std::to_string(t));
  }
  return ts;
}

// Each model consumes the random stream in a fixed documented order; the draw
// order is part of the seed contract.
void fill_equicorrelated(Eigen::MatrixXd& r, double rho, RandomSource& rng) {
  const Eigen::Index n = r.rows();
  const Eigen::Index t_len = r.cols();
  // Explicit lower-triangular Cholesky of the equicorrelation matrix.
  Eigen::MatrixXd corr = Eigen::MatrixXd::Constant(n, n, rho);
  corr.diagonal().setOnes();
  Eigen::LLT<Eigen::MatrixXd> llt(corr);
  if (llt.info() != Eigen::Success) {
    throw ConfigError("equicorrelated spec: correlation matrix not positive "
                      "definite for rho = " + std::to_string(rho));
  }
  Eigen::MatrixXd chol = llt.matrixL();
  Eigen::VectorXd z(n);
  for (Eigen::Index t = 0; t < t_len; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      z[i] = rng.normal();
    }
    r.col(t) = chol * z;
  }
}

void fill_one_factor(Eigen::MatrixXd& r, double rho, RandomSource& rng) {
  const Eigen::Index n = r.rows();
  const Eigen::Index t_len = r.cols();
  const double a = std::sqrt(rho);
  const double b = std::sqrt(1.0 - rho);
  for (Eigen::Index t = 0; t < t_len; ++t) {
    const double m = rng.normal();
    for (Eigen::Index i = 0; i < n; ++i) {
      r(i, t) = a * m + b * rng.normal();
    }
  }
}

void fill_asynchronous(Eigen::MatrixXd& r, double rho, double tick_prob,
                       RandomSource& rng) {
  const Eigen::Index n = r.rows();
  const Eigen::Index t_len = r.cols();
  const double a = std::sqrt(rho);
  const double b = std::sqrt(1.0 - rho);
  // Latent log prices start at 0; the observed price is the latent value at
  // the most recent update. n_obs returns need n_obs + 1 price observations.
  Eigen::VectorXd latent = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd observed = Eigen::VectorXd::Zero(n);
  for (Eigen::Index t = 0; t < t_len; ++t) {
    const double m = rng.normal();
    for (Eigen::Index i = 0; i < n; ++i) {
      latent[i] += a * m + b * rng.normal();
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      double prev = observed[i];
      if (rng.bernoulli(tick_prob)) {
        observed[i] = latent[i];
      }
      r(i, t) = observed[i] - prev;
    }
  }
}

}  // namespace

ReturnsPanel generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  ReturnsPanel panel;
  panel.asset_ids = default_asset_ids(spec.n_assets);
  panel.timestamps = index_timestamps(spec.n_obs);
  panel.returns.resize(spec.n_assets, spec.n_obs);

  RandomSource rng(spec.seed);
  switch (spec.model) {
    case SyntheticModel::IidGaussian:
      for (Eigen::Index t = 0; t < panel.returns.cols(); ++t) {
        for (Eigen::Index i = 0; i < panel.returns.rows(); ++i) {
          panel.returns(i, t) = rng.normal();
        }
      }
      break;
    case SyntheticModel::Equicorrelated:
      fill_equicorrelated(panel.returns, spec.rho, rng);
      break;
    case SyntheticModel::OneFactor:
      fill_one_factor(panel.returns, spec.rho, rng);
      break;
    case SyntheticModel::AsynchronousTicks:
      fill_asynchronous(panel.returns, spec.rho, spec.tick_prob, rng);
      break;
  }
  panel.validate();
  return panel;
}

}  // namespace wavecorr

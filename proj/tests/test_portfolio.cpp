#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracle/oracle.hpp"
#include "support/fixtures.hpp"
#include "wavecorr/portfolio.hpp"
#include "wavecorr/rng.hpp"
#include "wavecorr/synthetic.hpp"

using namespace wavecorr;

namespace {

// Well-conditioned random SPD matrix with eigenvalues in [0.5, 2.5].
Eigen::MatrixXd random_spd(Eigen::Index n, std::uint64_t seed) {
  RandomSource rng(seed);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = rng.normal();
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd eigs(n);
  for (Eigen::Index i = 0; i < n; ++i) eigs[i] = 0.5 + 2.0 * rng.uniform();
  return q * eigs.asDiagonal() * q.transpose();
}

Eigen::VectorXd random_mu(Eigen::Index n, std::uint64_t seed) {
  RandomSource rng(seed);
  Eigen::VectorXd mu(n);
  for (Eigen::Index i = 0; i < n; ++i) mu[i] = 0.05 * rng.normal();
  return mu;
}

}  // namespace

TEST_SUITE("portfolio") {

TEST_CASE("covariance assembly from correlation and vols") {
  Eigen::MatrixXd corr(3, 3);
  corr << 1.0, 0.5, -0.2,
          0.5, 1.0, 0.1,
         -0.2, 0.1, 1.0;
  Eigen::VectorXd vols(3);
  vols << 0.1, 0.2, 0.4;
  const ScaleCovariance cov = build_covariance(corr, vols, 2);
  CHECK(cov.scale == 2);
  CHECK(std::abs(cov.covariance(0, 0) - 0.01) < 1e-15);
  CHECK(std::abs(cov.covariance(0, 1) - 0.1 * 0.2 * 0.5) < 1e-15);
  CHECK(std::abs(cov.covariance(0, 2) - 0.1 * 0.4 * -0.2) < 1e-15);
  CHECK(std::abs(cov.covariance(1, 2) - 0.2 * 0.4 * 0.1) < 1e-15);
}

TEST_CASE("identity correlation gives a diagonal covariance") {
  Eigen::VectorXd vols = Eigen::VectorXd::Constant(4, 0.3);
  const ScaleCovariance cov =
      build_covariance(Eigen::MatrixXd::Identity(4, 4), vols);
  CHECK((cov.covariance - 0.09 * Eigen::MatrixXd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("perfect correlation multiplies the vols") {
  Eigen::MatrixXd corr(2, 2);
  corr << 1.0, 1.0,
          1.0, 1.0;
  Eigen::VectorXd vols(2);
  vols << 2.0, 3.0;
  const ScaleCovariance cov = build_covariance(corr, vols);
  CHECK(std::abs(cov.covariance(0, 1) - 6.0) < 1e-15);
}

TEST_CASE("non-positive vols are rejected") {
  Eigen::VectorXd vols(2);
  vols << 0.1, 0.0;
  CHECK_THROWS_AS(build_covariance(Eigen::MatrixXd::Identity(2, 2), vols),
                  ConfigError);
}

TEST_CASE("isotropic covariance: GMV is exactly equal weight") {
  const Eigen::Index n = 6;
  ScaleCovariance cov;
  cov.covariance = 0.04 * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd mu(n);
  mu << 0.01, 0.02, 0.03, 0.04, 0.05, 0.06;
  const Frontier frontier =
      min_variance_frontier(cov, mu, std::vector<double>{0.035});
  for (Eigen::Index i = 0; i < n; ++i) {
    CHECK(std::abs(frontier.gmv.weights[i] - 1.0 / 6.0) < 1e-12);
  }
  CHECK(std::abs(frontier.gmv.stdev * frontier.gmv.stdev - 0.04 / 6.0) < 1e-14);
  // frontier variance is bounded below by the GMV variance
  CHECK(frontier.points[0].stdev >= frontier.gmv.stdev - 1e-14);
}

TEST_CASE("N=2 pinned system: both constraints force w = (1, 0)") {
  ScaleCovariance cov;
  cov.covariance.resize(2, 2);
  cov.covariance << 1.0, 0.0,
                    0.0, 4.0;
  Eigen::VectorXd mu(2);
  mu << 0.1, 0.2;
  const Frontier frontier =
      min_variance_frontier(cov, mu, std::vector<double>{0.1});
  const Eigen::VectorXd& w = frontier.points[0].weights;
  CHECK(std::abs(w[0] - 1.0) < 1e-12);
  CHECK(std::abs(w[1]) < 1e-12);
  // fine grid over w1 (w2 = 1 - w1): only w1 = 1 satisfies mu'w = 0.1
  double best_var = std::numeric_limits<double>::infinity();
  double best_w1 = std::nan("");
  for (int k = 0; k <= 50000; ++k) {
    const double w1 = -2.0 + static_cast<double>(k) * 1e-4;
    const double w2 = 1.0 - w1;
    if (std::abs(0.1 * w1 + 0.2 * w2 - 0.1) > 1e-9) continue;
    const double var = w1 * w1 + 4.0 * w2 * w2;
    if (var < best_var) {
      best_var = var;
      best_w1 = w1;
    }
  }
  CHECK(std::abs(best_w1 - 1.0) < 1e-9);
  CHECK(std::abs(frontier.points[0].stdev * frontier.points[0].stdev -
                 best_var) < 1e-9);
}

TEST_CASE("closed form satisfies both constraints to 1e-10") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(seed % 8);
    const Eigen::MatrixXd sigma = random_spd(n, 900 + seed);
    const Eigen::VectorXd mu = random_mu(n, 950 + seed);
    ScaleCovariance cov;
    cov.covariance = sigma;
    const double m = mu.mean();
    const Frontier frontier =
        min_variance_frontier(cov, mu, std::vector<double>{m});
    const Eigen::VectorXd& w = frontier.points[0].weights;
    CHECK(std::abs(w.sum() - 1.0) < 1e-10);
    CHECK(std::abs(w.dot(mu) - m) < 1e-10);
    CHECK(std::abs(frontier.gmv.weights.sum() - 1.0) < 1e-10);
    // stdev^2 equals w' Sigma w by construction; cross-check the quadratic
    const double var = w.dot(sigma * w);
    CHECK(std::abs(frontier.points[0].stdev * frontier.points[0].stdev - var) <
          1e-10);
  }
}

TEST_CASE("frontier variance is a convex quadratic recovering A, B, C") {
  const Eigen::Index n = 8;
  const Eigen::MatrixXd sigma = random_spd(n, 1234);
  const Eigen::VectorXd mu = random_mu(n, 1235);
  ScaleCovariance cov;
  cov.covariance = sigma;

  // reference coefficients from explicit solves
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double a = ones.dot(ldlt.solve(ones));
  const double b = ones.dot(ldlt.solve(mu));
  const double c = mu.dot(ldlt.solve(mu));
  const double d = a * c - b * b;

  const std::vector<double> targets{-0.02, 0.01, 0.05};
  const Frontier frontier = min_variance_frontier(cov, mu, targets);
  // fit var(m) = (A m^2 - 2 B m + C) / D through the three points
  auto var_at = [&](std::size_t i) {
    return frontier.points[i].stdev * frontier.points[i].stdev;
  };
  for (std::size_t i = 0; i < 3; ++i) {
    const double m = targets[i];
    const double expected = (a * m * m - 2.0 * b * m + c) / d;
    CHECK(std::abs(var_at(i) - expected) < 1e-10);
  }
  CHECK(var_at(1) <= std::max(var_at(0), var_at(2)) + 1e-12);
  // recover the quadratic coefficients from the three points
  const double m0 = targets[0], m1 = targets[1], m2 = targets[2];
  const double v0 = var_at(0), v1 = var_at(1), v2 = var_at(2);
  const double denom = (m0 - m1) * (m0 - m2) * (m1 - m2);
  const double qa = (m2 * (v1 - v0) + m1 * (v0 - v2) + m0 * (v2 - v1)) / denom;
  const double qb = (m2 * m2 * (v0 - v1) + m1 * m1 * (v2 - v0) +
                     m0 * m0 * (v1 - v2)) / denom;
  const double qc = (m1 * m2 * (m1 - m2) * v0 + m2 * m0 * (m2 - m0) * v1 +
                     m0 * m1 * (m0 - m1) * v2) / denom;
  CHECK(std::abs(qa - a / d) < 1e-8);
  CHECK(std::abs(qb - (-2.0 * b / d)) < 1e-8);
  CHECK(std::abs(qc - c / d) < 1e-8);
}

TEST_CASE("GMV variance bounds every target and random feasible portfolio") {
  const Eigen::Index n = 10;
  const Eigen::MatrixXd sigma = random_spd(n, 777);
  const Eigen::VectorXd mu = random_mu(n, 778);
  ScaleCovariance cov;
  cov.covariance = sigma;
  const Frontier frontier = min_variance_frontier(
      cov, mu, target_grid(mu.minCoeff(), mu.maxCoeff(), 9));
  const double gmv_var = frontier.gmv.stdev * frontier.gmv.stdev;
  for (const FrontierPoint& p : frontier.points) {
    CHECK(p.stdev * p.stdev >= gmv_var - 1e-12);
  }
  RandomSource rng(779);
  for (int k = 0; k < 2000; ++k) {
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w[i] = rng.normal();
    const double total = w.sum();
    if (std::abs(total) < 1e-6) continue;
    w /= total;
    CHECK(w.dot(sigma * w) >= gmv_var - 1e-12);
  }
}

TEST_CASE("closed form matches the projected-gradient oracle") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(seed);
    const Eigen::MatrixXd sigma = random_spd(n, 2000 + seed);
    const Eigen::VectorXd mu = random_mu(n, 2100 + seed);
    ScaleCovariance cov;
    cov.covariance = sigma;
    const double m = 0.5 * (mu.minCoeff() + mu.maxCoeff());
    const Frontier frontier =
        min_variance_frontier(cov, mu, std::vector<double>{m});
    const Eigen::VectorXd oracle_w = oracle::frontier_weights(sigma, mu, m);
    const double var_closed = frontier.points[0].stdev * frontier.points[0].stdev;
    const double var_oracle = oracle_w.dot(sigma * oracle_w);
    CHECK(std::abs(var_closed - var_oracle) < 1e-6);
  }
}

TEST_CASE("closed form matches the oracle at N = 49") {
  const Eigen::Index n = 49;
  const Eigen::MatrixXd sigma = random_spd(n, 3000);
  const Eigen::VectorXd mu = random_mu(n, 3001);
  ScaleCovariance cov;
  cov.covariance = sigma;
  const double m = 0.5 * (mu.minCoeff() + mu.maxCoeff());
  const Frontier frontier =
      min_variance_frontier(cov, mu, std::vector<double>{m});
  const Eigen::VectorXd oracle_w = oracle::frontier_weights(sigma, mu, m);
  CHECK(std::abs(frontier.points[0].stdev * frontier.points[0].stdev -
                 oracle_w.dot(sigma * oracle_w)) < 1e-6);
  const Eigen::VectorXd gmv_oracle = oracle::gmv_weights(sigma);
  CHECK(std::abs(frontier.gmv.stdev * frontier.gmv.stdev -
                 gmv_oracle.dot(sigma * gmv_oracle)) < 1e-6);
}

TEST_CASE("singular covariance is refused") {
  ScaleCovariance cov;
  cov.covariance = Eigen::MatrixXd::Ones(4, 4);  // rank 1
  Eigen::VectorXd mu(4);
  mu << 0.01, 0.02, 0.03, 0.04;
  CHECK_THROWS_AS(min_variance_frontier(cov, mu, std::vector<double>{0.02}),
                  NumericalError);
}

TEST_CASE("degenerate expected returns are refused") {
  ScaleCovariance cov;
  cov.covariance = Eigen::MatrixXd::Identity(4, 4);
  const Eigen::VectorXd mu = Eigen::VectorXd::Constant(4, 0.05);
  CHECK_THROWS_AS(min_variance_frontier(cov, mu, std::vector<double>{0.05}),
                  NumericalError);
}

TEST_CASE("scale-independent panels give statistically coincident frontiers") {
  SyntheticSpec spec;
  spec.model = SyntheticModel::Equicorrelated;
  spec.n_assets = 8;
  spec.n_obs = 4000;
  spec.rho = 0.4;
  spec.seed = 55;
  const ReturnsPanel panel = generate_synthetic(spec);
  const auto frontiers = frontier_by_scale(panel, 0, 4000, make_filter("la8"),
                                           3, {}, std::vector<double>{});
  REQUIRE(frontiers.size() == 4);  // raw + 3 scales
  const double gmv_raw = frontiers.at(kRawScale).gmv.stdev;
  for (const auto& [scale, frontier] : frontiers) {
    CHECK(std::abs(frontier.gmv.stdev - gmv_raw) / gmv_raw < 0.15);
  }
}

TEST_CASE("slow-factor panel: scale-1 frontier dominates the coarse scales") {
  const ReturnsPanel panel = wavecorr::testing::slow_factor_panel(8, 4000, 91);
  const auto frontiers = frontier_by_scale(panel, 0, 4000, make_filter("la8"),
                                           3, {}, std::vector<double>{});
  // scale 1 carries mostly idiosyncratic noise (low correlation), scale 3 the
  // common factor (high correlation): less diversification at coarse scales
  CHECK(frontiers.at(1).gmv.stdev < frontiers.at(3).gmv.stdev);
  std::size_t dominated = 0;
  const auto& fine = frontiers.at(1).points;
  const auto& coarse = frontiers.at(3).points;
  REQUIRE(fine.size() == coarse.size());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    if (fine[i].stdev <= coarse[i].stdev) ++dominated;
  }
  CHECK(dominated == fine.size());
}

TEST_CASE("identical series panel is refused as rank deficient") {
  ReturnsPanel panel;
  panel.returns.resize(3, 2000);
  RandomSource rng(99);
  for (Eigen::Index t = 0; t < 2000; ++t) {
    const double v = rng.normal();
    for (Eigen::Index i = 0; i < 3; ++i) panel.returns(i, t) = v;
  }
  panel.asset_ids = {"A", "B", "C"};
  for (Eigen::Index t = 1; t <= 2000; ++t) {
    panel.timestamps.push_back(std::to_string(t));
  }
  Eigen::VectorXd mu(3);
  mu << 0.01, 0.02, 0.03;
  CHECK_THROWS_WITH_AS(frontier_by_scale(panel, 0, 2000, make_filter("la8"), 2,
                                         mu, std::vector<double>{0.02}),
                       doctest::Contains("ill-conditioned"), NumericalError);
}

}  // TEST_SUITE

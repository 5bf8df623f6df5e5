#include <doctest.h>

#include <sstream>

#include "support/fixtures.hpp"
#include "wavecorr/csv.hpp"
#include "wavecorr/exports.hpp"
#include "wavecorr/synthetic.hpp"

using namespace wavecorr;
using wavecorr::testing::read_text;
using wavecorr::testing::scratch_dir;

TEST_SUITE("exports") {

TEST_CASE("crystal dump columns are t, d1..dJ, sJ") {
  const auto dir = scratch_dir("exports_crystals");
  RandomSource rng(1);
  Eigen::VectorXd x(64);
  for (Eigen::Index t = 0; t < 64; ++t) x[t] = rng.normal();
  const WaveletDecomposition dec = decompose(x, make_filter("haar"), 3);
  const std::string path = (dir / "crystals.csv").string();
  write_crystals_csv(path, dec);
  const CsvTable table = read_csv(path);
  CHECK(table.header ==
        std::vector<std::string>{"t", "d1", "d2", "d3", "s3"});
  REQUIRE(table.rows.size() == 64);
  CHECK(table.rows[0][0] == "0");
  // round-trip one coefficient through the formatter
  CHECK(table.rows[5][1] == format_double(dec.details[0][5]));
}

TEST_CASE("matrix dump carries asset ids on both axes") {
  const auto dir = scratch_dir("exports_matrix");
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 0.25,
       0.25, 1.0;
  const std::vector<std::string> ids{"AAA", "BBB"};
  const std::string path = (dir / "matrix.csv").string();
  write_matrix_csv(path, m, ids);
  const CsvTable table = read_csv(path);
  CHECK(table.header == std::vector<std::string>{"asset", "AAA", "BBB"});
  CHECK(table.rows[0][0] == "AAA");
  CHECK(table.rows[1][2] == "1");
  CHECK(table.rows[0][2] == "0.25");
}

TEST_CASE("returns panel csv round-trips through load_returns") {
  const auto dir = scratch_dir("exports_panel");
  SyntheticSpec spec;
  spec.model = SyntheticModel::OneFactor;
  spec.n_assets = 4;
  spec.n_obs = 50;
  spec.rho = 0.3;
  spec.seed = 8;
  const ReturnsPanel panel = generate_synthetic(spec);
  const std::string path = (dir / "panel.csv").string();
  write_returns_csv(path, panel);
  const ReturnsPanel loaded = load_returns(path);
  CHECK(loaded.asset_ids == panel.asset_ids);
  CHECK(loaded.n_obs() == panel.n_obs());
  // 12 significant digits survive the round trip at this magnitude
  CHECK((loaded.returns - panel.returns).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("dynamics exports agree between long and wide layouts") {
  const auto dir = scratch_dir("exports_dynamics");
  SyntheticSpec spec;
  spec.model = SyntheticModel::Equicorrelated;
  spec.n_assets = 5;
  spec.n_obs = 400;
  spec.rho = 0.5;
  spec.seed = 12;
  const ReturnsPanel panel = generate_synthetic(spec);
  WindowPlan plan;
  plan.window_length = 100;
  plan.stride = 100;
  plan.levels = 2;
  const DynamicsResult result = run_dynamics(panel, plan, make_filter("la8"));

  const std::string long_path = (dir / "long.csv").string();
  write_dynamics_long_csv(long_path, result);
  const CsvTable long_table = read_csv(long_path);
  CHECK(long_table.header ==
        std::vector<std::string>{"window_start", "scale", "metric", "value"});
  // rows: scales (raw,1,2) x windows (4) x (avg_corr + 5 lambdas)
  CHECK(long_table.rows.size() == 3 * 4 * 6);

  const std::string wide_path = (dir / "wide.csv").string();
  write_eigenvalue_series_csv(wide_path, result, 1, 3);
  const CsvTable wide_table = read_csv(wide_path);
  CHECK(wide_table.header ==
        std::vector<std::string>{"window_start", "lambda_3", "lambda_4",
                                 "lambda_5", "avg_corr"});
  REQUIRE(wide_table.rows.size() == 4);
  // cross-check one value against the long layout
  const auto& rec = result.records.at(1)[2];
  CHECK(wide_table.rows[2][3] == format_double(rec.eigenvalues[4]));
}

TEST_CASE("epps and partition tables match their schemas") {
  const auto dir = scratch_dir("exports_tables");
  std::vector<EppsRow> rows(2);
  rows[0] = EppsRow{kRawScale, 1.0, 0.4, 3.0, 0.4, 0.2};
  rows[1] = EppsRow{1, 1.0, 0.35, 2.8, 0.5, 0.3};
  const std::string epps_path = (dir / "epps.csv").string();
  write_epps_csv(epps_path, rows);
  const CsvTable epps_table = read_csv(epps_path);
  CHECK(epps_table.header ==
        std::vector<std::string>{"scale", "tau", "avg_correlation", "lambda1",
                                 "lambda2", "lambda3"});
  CHECK(epps_table.rows[0][0] == "raw");
  CHECK(epps_table.rows[1][0] == "1");

  PartitionReport report;
  report.scale = kRawScale;
  report.eigen_index = 1;
  report.above.windows = {0, 3};
  report.above.mean_return = -0.015;
  report.above.total_return = -0.03;
  PartitionReport empty_report;
  empty_report.scale = 2;
  const std::string part_path = (dir / "partition.csv").string();
  write_partition_csv(part_path, std::vector<PartitionReport>{report,
                                                              empty_report});
  const CsvTable part_table = read_csv(part_path);
  REQUIRE(part_table.rows.size() == 2);
  CHECK(part_table.rows[0][2] == "2");      // count above
  CHECK(part_table.rows[0][3] == "-1.5");   // mean in percent
  CHECK(part_table.rows[1][3] == "");       // empty side left blank
}

TEST_CASE("frontier export lists gmv and target points per scale") {
  const auto dir = scratch_dir("exports_frontier");
  std::map<int, Frontier> frontiers;
  Frontier f;
  f.scale = kRawScale;
  f.gmv.target_return = 0.01;
  f.gmv.stdev = 0.1;
  f.gmv.weights = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
  FrontierPoint p;
  p.target_return = 0.02;
  p.stdev = 0.12;
  p.weights = Eigen::VectorXd::Zero(3);
  p.weights[0] = 1.0;
  f.points.push_back(p);
  frontiers[kRawScale] = f;
  const std::vector<std::string> ids{"A", "B", "C"};
  const std::string path = (dir / "frontier.csv").string();
  write_frontier_csv(path, frontiers, ids);
  const CsvTable table = read_csv(path);
  CHECK(table.header ==
        std::vector<std::string>{"scale", "point", "target_return", "stdev",
                                 "w_1", "w_2", "w_3"});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][1] == "gmv");
  CHECK(table.rows[1][1] == "0");
  CHECK(table.rows[1][4] == "1");
}

}  // TEST_SUITE

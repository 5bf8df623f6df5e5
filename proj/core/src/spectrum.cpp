#include "wavecorr/spectrum.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace wavecorr {

std::string scale_label(int scale) {
  return scale == kRawScale ? "raw" : std::to_string(scale);
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;
constexpr double kSymmetryTolerance = 1e-10;

double offdiagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

EigenRecord spectrum(const Eigen::MatrixXd& matrix, bool want_vectors) {
  const Eigen::Index n = matrix.rows();
  if (n != matrix.cols() || n < 1) {
    throw NumericalError("spectrum: matrix must be square, got " +
                         std::to_string(n) + "x" + std::to_string(matrix.cols()));
  }
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance) {
    throw NumericalError("spectrum: matrix not symmetric (max |A - A^t| = " +
                         std::to_string(asym) + ")");
  }

  Eigen::MatrixXd a = (matrix + matrix.transpose()) * 0.5;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double norm = a.norm();
  const double threshold = kOffDiagonalTolerance * std::max(norm, 1e-300);

  bool converged = offdiagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Stable rotation angle (Golub & Van Loan sym. Schur 2x2).
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0)
                             ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                             : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = offdiagonal_norm(a) <= threshold;
  }
  if (!converged) {
    throw NumericalError("spectrum: Jacobi iteration did not converge within " +
                         std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&a](Eigen::Index x, Eigen::Index y) {
    return a(x, x) < a(y, y);
  });

  EigenRecord record;
  record.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    record.eigenvalues[i] = a(order[static_cast<std::size_t>(i)],
                              order[static_cast<std::size_t>(i)]);
  }
  if (want_vectors) {
    record.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::VectorXd col = v.col(order[static_cast<std::size_t>(i)]);
      Eigen::Index arg_max = 0;
      col.cwiseAbs().maxCoeff(&arg_max);
      if (col[arg_max] < 0.0) col = -col;
      record.eigenvectors.col(i) = col;
    }
  }
  return record;
}

SduSeries to_sdu(const Eigen::VectorXd& series, Eigen::Index ref_begin,
                 Eigen::Index ref_length, int eigen_index, int scale) {
  const Eigen::Index t_len = series.size();
  if (ref_length < 0) {
    ref_begin = 0;
    ref_length = t_len;
  }
  if (ref_begin < 0 || ref_length < 2 || ref_begin + ref_length > t_len) {
    throw ConfigError("SDU reference range [" + std::to_string(ref_begin) + ", " +
                      std::to_string(ref_begin + ref_length) +
                      ") invalid for series of length " + std::to_string(t_len));
  }
  const auto ref = series.segment(ref_begin, ref_length);
  const double mean = ref.mean();
  const double var =
      (ref.array() - mean).square().sum() / static_cast<double>(ref_length);
  if (!(var > 0.0)) {
    throw DataError("SDU reference period has zero variance");
  }
  SduSeries sdu;
  sdu.reference_mean = mean;
  sdu.reference_sd = std::sqrt(var);
  sdu.values = (series.array() - mean) / sdu.reference_sd;
  sdu.eigen_index = eigen_index;
  sdu.scale = scale;
  return sdu;
}

}  // namespace wavecorr

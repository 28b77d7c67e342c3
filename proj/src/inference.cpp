#include "inar/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "inar/error.hpp"
#include "internal/checked_ldlt.hpp"
#include "internal/regressors.hpp"

namespace inar {

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorCode::DomainError, "normal quantile requires 0 < u < 1");
  }
  const double q = u - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852854561 + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = std::sqrt(-std::log(q < 0.0 ? u : 1.0 - u));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

namespace {

constexpr std::int64_t kMinBlock = 512;
constexpr std::int64_t kMaxBlocks = 64;

void check_sandwich_inputs(const CountPath& path, const ThetaVector& theta_hat, std::size_t p) {
  if (theta_hat.p() != p) {
    throw Error(ErrorCode::DimensionMismatch, "theta_hat has " + std::to_string(theta_hat.p()) +
                                                  " lags, expected " + std::to_string(p));
  }
  if (path.size() == 0 || p + 1 > path.size()) {
    throw Error(ErrorCode::LagTooLarge, "lag order exceeds T - 1");
  }
}

// Accumulates the upper triangle of sum Z_n Z_n^T e_n^2 over n in [first, last].
void accumulate_score_outer(const CountPath& path, const std::vector<double>& phi,
                            std::int64_t first, std::int64_t last, Eigen::MatrixXd& acc) {
  const auto d = static_cast<std::size_t>(acc.rows());
  std::vector<double> z(d);
  for (std::int64_t n = first; n <= last; ++n) {
    internal::fill_regressors(path, n, z);
    const double e = static_cast<double>(path.x(n)) - phi[static_cast<std::size_t>(n - 1)];
    const double e2 = e * e;
    for (std::size_t i = 0; i < d; ++i) {
      const double zi = z[i] * e2;
      for (std::size_t j = i; j < d; ++j) {
        acc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += zi * z[j];
      }
    }
  }
}

SandwichCovariance assemble(const DesignSystem& sys, Eigen::MatrixXd score_outer) {
  const double t = static_cast<double>(sys.T);
  SandwichCovariance cov;
  cov.J_hat = 2.0 * sys.Y;
  score_outer.triangularView<Eigen::StrictlyLower>() = score_outer.transpose();
  cov.K_hat = (4.0 / t) * score_outer;

  const auto [ldlt, rcond] = internal::checked_ldlt(cov.J_hat);
  const Eigen::MatrixXd left = ldlt.solve(cov.K_hat);                  // J^{-1} K
  const Eigen::MatrixXd sigma = ldlt.solve(left.transpose().eval());   // J^{-1} K J^{-1}
  cov.Sigma_hat = 0.5 * (sigma + sigma.transpose());
  return cov;
}

}  // namespace

SandwichCovariance sandwich_covariance(const CountPath& path, const ThetaVector& theta_hat,
                                       std::size_t p) {
  check_sandwich_inputs(path, theta_hat, p);
  const DesignSystem sys = build_design(path, p);
  const auto phi = intensity_series(path, theta_hat);
  const auto T = static_cast<std::int64_t>(path.size());
  const auto d = static_cast<Eigen::Index>(p + 1);

  // Block layout depends on T only, never on the thread count.
  const std::int64_t block = std::max(kMinBlock, (T + kMaxBlocks - 1) / kMaxBlocks);
  const std::int64_t n_blocks = (T + block - 1) / block;
  std::vector<Eigen::MatrixXd> partial(static_cast<std::size_t>(n_blocks),
                                       Eigen::MatrixXd::Zero(d, d));

#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < n_blocks; ++blk) {
    const std::int64_t first = blk * block + 1;
    const std::int64_t last = std::min(T, first + block - 1);
    accumulate_score_outer(path, phi, first, last, partial[static_cast<std::size_t>(blk)]);
  }

  // Pairwise tree reduction with a fixed combining order.
  for (std::size_t stride = 1; stride < partial.size(); stride *= 2) {
    for (std::size_t i = 0; i + stride < partial.size(); i += 2 * stride) {
      partial[i] += partial[i + stride];
    }
  }
  return assemble(sys, std::move(partial.front()));
}

SandwichCovariance sandwich_covariance_serial(const CountPath& path, const ThetaVector& theta_hat,
                                              std::size_t p) {
  check_sandwich_inputs(path, theta_hat, p);
  const DesignSystem sys = build_design(path, p);
  const auto phi = intensity_series(path, theta_hat);
  const auto d = static_cast<Eigen::Index>(p + 1);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
  accumulate_score_outer(path, phi, 1, static_cast<std::int64_t>(path.size()), acc);
  return assemble(sys, std::move(acc));
}

std::vector<ConfidenceInterval> confidence_intervals(const ThetaVector& theta_hat,
                                                     const SandwichCovariance& cov,
                                                     std::int64_t T, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::InvalidLevel, "confidence level must lie in (0, 1)");
  }
  if (T < 1) throw Error(ErrorCode::InvalidParameter, "T must be positive");
  const Eigen::VectorXd theta = theta_hat.to_vector();
  if (cov.Sigma_hat.rows() != theta.size()) {
    throw Error(ErrorCode::DimensionMismatch, "covariance and estimate dimensions differ");
  }
  const double z = normal_quantile(0.5 * (1.0 + level));
  std::vector<ConfidenceInterval> out(static_cast<std::size_t>(theta.size()));
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    auto& ci = out[static_cast<std::size_t>(j)];
    ci.estimate = theta[j];
    ci.std_error = std::sqrt(std::max(0.0, cov.Sigma_hat(j, j)) / static_cast<double>(T));
    ci.lower = ci.estimate - z * ci.std_error;
    ci.upper = ci.estimate + z * ci.std_error;
  }
  return out;
}

}  // namespace inar

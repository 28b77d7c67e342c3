#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "inar/estimate.hpp"

namespace inar {

// ---------------------------------------------------------------------------
// Standard normal distribution

/// Inverse standard normal CDF (Wichura's AS 241, PPND16). Throws
/// DomainError unless 0 < u < 1.
double normal_quantile(double u);
double normal_cdf(double z);
/// Upper tail 1 - Phi(z), computed without cancellation.
double normal_sf(double z);

// ---------------------------------------------------------------------------
// Sandwich covariance

/// J = 2Y, K = (4/T) sum Z_n Z_n^T (X_n - Phi(n))^2 evaluated at theta_hat,
/// Sigma = J^{-1} K J^{-1}. Sigma approximates the covariance of
/// sqrt(T) (theta_hat - s).
struct SandwichCovariance {
  Eigen::MatrixXd J_hat;
  Eigen::MatrixXd K_hat;
  Eigen::MatrixXd Sigma_hat;
};

/// Score-variance accumulation is split into fixed-size blocks of time
/// steps that are reduced in block order, so the result does not depend on
/// the number of OpenMP threads.
SandwichCovariance sandwich_covariance(const CountPath& path, const ThetaVector& theta_hat,
                                       std::size_t p);

/// Single-pass reference used to check the blocked kernel.
SandwichCovariance sandwich_covariance_serial(const CountPath& path, const ThetaVector& theta_hat,
                                              std::size_t p);

struct ConfidenceInterval {
  double estimate = 0.0;
  double std_error = 0.0;  // sqrt(Sigma_jj / T)
  double lower = 0.0;
  double upper = 0.0;
};

/// theta_j +/- z_{(1+level)/2} sqrt(Sigma_jj / T). Throws InvalidLevel
/// unless 0 < level < 1.
std::vector<ConfidenceInterval> confidence_intervals(const ThetaVector& theta_hat,
                                                     const SandwichCovariance& cov,
                                                     std::int64_t T, double level);

// ---------------------------------------------------------------------------
// Normality diagnostics

struct TestResult {
  double stat = 0.0;
  double p_value = 0.0;
};

struct NormalityReport {
  double jb_stat = 0.0;
  double jb_p = 0.0;
  double sw_stat = 0.0;
  double sw_p = 0.0;
  std::size_t sample_size = 0;
};

/// n/6 (S^2 + (K-3)^2/4) with moment skewness S and kurtosis K; p-value from
/// the chi-square(2) survival function exp(-stat/2). Requires n >= 8.
TestResult jarque_bera(std::span<const double> sample);

/// Royston's AS R94 approximation, valid for 3 <= n <= 5000.
TestResult shapiro_wilk(std::span<const double> sample);

NormalityReport normality_report(std::span<const double> sample);

struct QqPoint {
  double theoretical_z = 0.0;
  double value = 0.0;
};

/// (Phi^{-1}((i - 0.5)/n), standardized x_(i)) for i = 1..n. A single
/// observation maps to (0, 0).
std::vector<QqPoint> qq_data(std::span<const double> sample);

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  std::size_t count = 0;
};

/// Equal-width bins over [min, max]; the maximum lands in the last bin.
std::vector<HistogramBin> histogram(std::span<const double> sample, std::size_t bins = 30);

}  // namespace inar

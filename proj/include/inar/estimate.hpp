#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "inar/simulate.hpp"

namespace inar {

inline constexpr std::size_t kDefaultLagOrder = 10;
inline constexpr double kRcondThreshold = 1e-12;

/// Candidate parameter f = (mu, beta_1..beta_p).
struct ThetaVector {
  double mu = 0.0;
  std::vector<double> betas;

  [[nodiscard]] std::size_t p() const noexcept { return betas.size(); }
  [[nodiscard]] Eigen::VectorXd to_vector() const;
  static ThetaVector from_vector(const Eigen::VectorXd& v);
  /// (nu, alpha_1..alpha_p), zero-padded past the kernel.
  static ThetaVector truth(const ModelParams& params, std::size_t p);
};

/// Normal equations Y theta = b of the least-squares contrast.
///
/// With regressors Z_n = (1, X_{n-1}, ..., X_{n-p}) (X_m = 0 for m < 1),
/// Y = (1/T) sum_n Z_n Z_n^T and b = (1/T) sum_n Z_n X_n. Entrywise this is
/// Y_11 = 1, Y_1j = (1/T) sum_{n=j}^T X_{n-j+1}, and
/// Y_ij = (1/T) sum_{n=max(i,j)}^T X_{n-i+1} X_{n-j+1}.
struct DesignSystem {
  Eigen::MatrixXd Y;
  Eigen::VectorXd b;
  std::int64_t T = 0;
  std::size_t p = 0;
};

/// Throws LagTooLarge if p > T - 1. Entries are accumulated with
/// compensated summation.
DesignSystem build_design(const CountPath& path, std::size_t p);

struct ClsFit {
  ThetaVector theta;
  double rcond = 0.0;
  double residual_norm = 0.0;  // ||Y theta - b||_2
};

/// Solves Y theta = b by pivoted LDL^T. Throws SingularDesign when the
/// reciprocal condition estimate falls below 1e-12.
ClsFit fit_cls(const DesignSystem& sys);
ThetaVector solve_cls(const DesignSystem& sys);

/// Phi_f(1..T) with Phi_f(n) = mu + sum_{k=1}^{min(p, n-1)} beta_k X_{n-k}.
std::vector<double> intensity_series(const CountPath& path, const ThetaVector& theta);

/// gamma_T(f) = -(2/T) sum Phi_f(n) X_n + (1/T) sum Phi_f(n)^2, by direct
/// summation over the path (not through Y and b).
double contrast(const CountPath& path, const ThetaVector& theta);

/// 2 (Y theta - b).
Eigen::VectorXd contrast_gradient(const DesignSystem& sys, const ThetaVector& theta);

}  // namespace inar

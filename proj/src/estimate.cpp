#include "inar/estimate.hpp"

#include <cmath>
#include <string>

#include "inar/error.hpp"
#include "internal/checked_ldlt.hpp"
#include "internal/neumaier.hpp"
#include "internal/regressors.hpp"

namespace inar {

Eigen::VectorXd ThetaVector::to_vector() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(betas.size() + 1));
  v[0] = mu;
  for (std::size_t k = 0; k < betas.size(); ++k) v[static_cast<Eigen::Index>(k + 1)] = betas[k];
  return v;
}

ThetaVector ThetaVector::from_vector(const Eigen::VectorXd& v) {
  ThetaVector t;
  if (v.size() == 0) return t;
  t.mu = v[0];
  t.betas.assign(v.data() + 1, v.data() + v.size());
  return t;
}

ThetaVector ThetaVector::truth(const ModelParams& params, std::size_t p) {
  ThetaVector t;
  t.mu = params.nu;
  t.betas.resize(p);
  for (std::size_t k = 1; k <= p; ++k) t.betas[k - 1] = params.alpha(k);
  return t;
}

DesignSystem build_design(const CountPath& path, std::size_t p) {
  const auto T = static_cast<std::int64_t>(path.size());
  if (T < 1) throw Error(ErrorCode::InvalidParameter, "empty path");
  if (static_cast<std::int64_t>(p) > T - 1) {
    throw Error(ErrorCode::LagTooLarge,
                "lag order " + std::to_string(p) + " exceeds T - 1 = " + std::to_string(T - 1));
  }
  const std::size_t d = p + 1;
  std::vector<internal::Neumaier> y_acc(d * d);
  std::vector<internal::Neumaier> b_acc(d);
  std::vector<double> z(d);

  for (std::int64_t n = 1; n <= T; ++n) {
    internal::fill_regressors(path, n, z);
    const auto xn = static_cast<double>(path.x(n));
    for (std::size_t i = 0; i < d; ++i) {
      if (z[i] == 0.0) continue;
      b_acc[i].add(z[i] * xn);
      for (std::size_t j = i; j < d; ++j) y_acc[i * d + j].add(z[i] * z[j]);
    }
  }

  const double inv_t = 1.0 / static_cast<double>(T);
  DesignSystem sys;
  sys.T = T;
  sys.p = p;
  sys.Y.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  sys.b.resize(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    sys.b[ii] = b_acc[i].value() * inv_t;
    for (std::size_t j = i; j < d; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      sys.Y(ii, jj) = sys.Y(jj, ii) = y_acc[i * d + j].value() * inv_t;
    }
  }
  sys.Y(0, 0) = 1.0;
  return sys;
}

ClsFit fit_cls(const DesignSystem& sys) {
  if (sys.Y.rows() != sys.Y.cols() || sys.Y.rows() != sys.b.size() || sys.b.size() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "design matrix and moment vector disagree");
  }
  if (!sys.Y.allFinite() || !sys.b.allFinite()) {
    throw Error(ErrorCode::InvalidParameter, "design system has non-finite entries");
  }

  const auto [ldlt, rcond] = internal::checked_ldlt(sys.Y);

  Eigen::VectorXd theta = ldlt.solve(sys.b);
  theta += ldlt.solve(sys.b - sys.Y * theta);  // one refinement step

  ClsFit fit;
  fit.theta = ThetaVector::from_vector(theta);
  fit.rcond = rcond;
  fit.residual_norm = (sys.Y * theta - sys.b).norm();
  return fit;
}

ThetaVector solve_cls(const DesignSystem& sys) { return fit_cls(sys).theta; }

std::vector<double> intensity_series(const CountPath& path, const ThetaVector& theta) {
  const std::size_t T = path.size();
  std::vector<double> phi(T);
  for (std::size_t n = 1; n <= T; ++n) {
    double acc = theta.mu;
    const std::size_t k_max = std::min(theta.p(), n - 1);
    for (std::size_t k = 1; k <= k_max; ++k) {
      acc += theta.betas[k - 1] * static_cast<double>(path.counts[n - k - 1]);
    }
    phi[n - 1] = acc;
  }
  return phi;
}

double contrast(const CountPath& path, const ThetaVector& theta) {
  if (path.size() == 0) throw Error(ErrorCode::InvalidParameter, "empty path");
  if (theta.p() + 1 > path.size()) {
    throw Error(ErrorCode::LagTooLarge, "lag order exceeds T - 1");
  }
  const auto phi = intensity_series(path, theta);
  internal::Neumaier cross;
  internal::Neumaier square;
  for (std::size_t n = 0; n < phi.size(); ++n) {
    cross.add(phi[n] * static_cast<double>(path.counts[n]));
    square.add(phi[n] * phi[n]);
  }
  const double t = static_cast<double>(path.size());
  return -2.0 / t * cross.value() + square.value() / t;
}

Eigen::VectorXd contrast_gradient(const DesignSystem& sys, const ThetaVector& theta) {
  const Eigen::VectorXd v = theta.to_vector();
  if (v.size() != sys.b.size() || sys.Y.cols() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "theta has dimension " + std::to_string(v.size()) + ", system has " +
                    std::to_string(sys.b.size()));
  }
  return 2.0 * (sys.Y * v - sys.b);
}

}  // namespace inar

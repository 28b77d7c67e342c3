#include "inar/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "inar/error.hpp"

namespace inar {

namespace {

void require_stationary_kernel(std::span<const double> kernel) {
  double l1 = 0.0;
  for (double a : kernel) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw Error(ErrorCode::InvalidParameter, "kernel entries must be finite and nonnegative");
    }
    l1 += a;
  }
  if (l1 >= 1.0) {
    throw Error(ErrorCode::NonStationaryKernel,
                "kernel l1 norm " + std::to_string(l1) + " is not below 1");
  }
}

}  // namespace

ModelParams ModelParams::geometric(double nu, double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "geometric ratio must lie in [0, 1)");
  }
  ModelParams params;
  params.nu = nu;
  params.kernel_tail = GeometricTail{ratio};
  double a = ratio;
  while (a >= kKernelTruncation) {
    params.kernel.push_back(a);
    a *= ratio;
  }
  return params;
}

ModelParams ModelParams::finite(double nu, std::vector<double> lags) {
  ModelParams params;
  params.nu = nu;
  params.kernel = std::move(lags);
  return params;
}

double ModelParams::l1_norm() const noexcept {
  return std::accumulate(kernel.begin(), kernel.end(), 0.0);
}

double ModelParams::l2_norm_sq() const noexcept {
  return std::inner_product(kernel.begin(), kernel.end(), kernel.begin(), 0.0);
}

double ModelParams::alpha(std::size_t k) const noexcept {
  return (k >= 1 && k <= kernel.size()) ? kernel[k - 1] : 0.0;
}

ValidationReport validate_params(const ModelParams& params) {
  ValidationReport report;
  report.nonnegative = params.nu >= 0.0 && std::isfinite(params.nu) &&
                       std::all_of(params.kernel.begin(), params.kernel.end(),
                                   [](double a) { return a >= 0.0 && std::isfinite(a); });
  report.l1 = params.l1_norm();
  report.l2_sq = params.l2_norm_sq();
  report.stationary = report.l1 < 1.0;
  report.l2_condition = report.l2_sq < 0.5;
  return report;
}

void require_valid(const ModelParams& params) {
  if (!(params.nu >= 0.0) || !std::isfinite(params.nu)) {
    throw Error(ErrorCode::InvalidParameter, "nu must be finite and nonnegative");
  }
  require_stationary_kernel(params.kernel);
}

RenewalSequence renewal_sequence(std::span<const double> kernel, std::size_t n_max) {
  require_stationary_kernel(kernel);
  RenewalSequence out;
  auto& A = out.values;
  A.assign(n_max, 0.0);
  // A_n = alpha_n + sum_{s=1}^{n-1} alpha_s A_{n-s}
  for (std::size_t n = 1; n <= n_max; ++n) {
    double acc = n <= kernel.size() ? kernel[n - 1] : 0.0;
    const std::size_t s_max = std::min(n - 1, kernel.size());
    for (std::size_t s = 1; s <= s_max; ++s) {
      acc += kernel[s - 1] * A[n - s - 1];
    }
    A[n - 1] = acc;
  }
  return out;
}

std::vector<double> solve_renewal(std::span<const double> y, std::span<const double> kernel) {
  const auto A = renewal_sequence(kernel, y.size()).values;
  std::vector<double> x(y.size());
  for (std::size_t n = 1; n <= y.size(); ++n) {
    double acc = y[n - 1];
    for (std::size_t i = 1; i < n; ++i) acc += A[i - 1] * y[n - i - 1];
    x[n - 1] = acc;
  }
  return x;
}

BoundsReport moment_bounds(const ModelParams& params, std::int64_t T) {
  require_valid(params);
  if (T < 1) throw Error(ErrorCode::InvalidParameter, "horizon T must be positive");

  const double nu = params.nu;
  const double l1 = params.l1_norm();
  const double l2 = params.l2_norm_sq();
  const double t = static_cast<double>(T);
  const double one_plus_sq = (1.0 + l1) * (1.0 + l1);

  BoundsReport r;
  r.horizon_T = T;
  r.mean_bound = nu / (1.0 - l1);
  r.norm_L2 = std::min(1.0 / (1.0 + nu * t * (t - 1.0) * one_plus_sq),
                       nu / (2.0 * t * (1.0 - l1) * one_plus_sq));
  if (l2 < 0.5) {
    const double second = (2.0 * nu * nu * (1.0 - l1) + nu) / ((1.0 - 2.0 * l2) * (1.0 - l1));
    r.second_moment_bound = second;
    const double mean_part = 2.0 * nu * nu / ((1.0 - l1) * (1.0 - l1));
    r.norm_K2 = std::max(2.0, (t - 1.0) / 2.0 * (mean_part + second));
  }
  return r;
}

}  // namespace inar

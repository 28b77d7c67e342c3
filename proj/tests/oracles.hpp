#pragma once

// Independent reference computations for the tests. Each one follows the
// defining formula as literally as possible and shares no code path with
// the library routine it checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "inar/estimate.hpp"
#include "inar/simulate.hpp"

namespace inar::oracle {

/// Y and b straight from the entrywise display, 1-based indices throughout.
inline DesignSystem naive_design(const CountPath& path, std::size_t p) {
  const auto T = static_cast<std::int64_t>(path.size());
  const auto X = [&](std::int64_t n) { return static_cast<double>(path.counts[static_cast<std::size_t>(n - 1)]); };
  const auto d = static_cast<std::int64_t>(p + 1);
  DesignSystem sys;
  sys.T = T;
  sys.p = p;
  sys.Y = Eigen::MatrixXd::Zero(d, d);
  sys.b = Eigen::VectorXd::Zero(d);
  double total = 0.0;
  for (std::int64_t n = 1; n <= T; ++n) total += X(n);
  sys.b[0] = total / static_cast<double>(T);
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(p); ++k) {
    double s = 0.0;
    for (std::int64_t n = k + 1; n <= T; ++n) s += X(n - k) * X(n);
    sys.b[k] = s / static_cast<double>(T);
  }
  for (std::int64_t i = 1; i <= d; ++i) {
    for (std::int64_t j = 1; j <= d; ++j) {
      double v = 0.0;
      const std::int64_t m = std::max(i, j);
      if (i == 1 && j == 1) {
        v = 1.0;
      } else if (i == 1 || j == 1) {
        for (std::int64_t n = m; n <= T; ++n) v += X(n - m + 1);
        v /= static_cast<double>(T);
      } else {
        for (std::int64_t n = m; n <= T; ++n) v += X(n - i + 1) * X(n - j + 1);
        v /= static_cast<double>(T);
      }
      sys.Y(i - 1, j - 1) = v;
    }
  }
  return sys;
}

/// sum_{k>=1} alpha^{*k}, built from explicit convolution powers until the
/// added mass drops below 1e-14 or k reaches max_power.
inline std::vector<double> convolution_power_sum(const std::vector<double>& alpha, std::size_t n_max,
                                                 std::size_t max_power = 40) {
  // Sequences indexed 1..n_max, stored at [n-1].
  auto conv = [n_max](const std::vector<double>& q, const std::vector<double>& m) {
    std::vector<double> out(n_max, 0.0);
    for (std::size_t n = 1; n <= n_max; ++n) {
      for (std::size_t s = 1; s < n; ++s) out[n - 1] += q[s - 1] * m[n - s - 1];
    }
    return out;
  };
  std::vector<double> a(n_max, 0.0);
  for (std::size_t i = 0; i < std::min(n_max, alpha.size()); ++i) a[i] = alpha[i];
  std::vector<double> power = a;
  std::vector<double> total = a;
  for (std::size_t k = 2; k <= max_power; ++k) {
    power = conv(a, power);
    double mass = 0.0;
    for (std::size_t n = 0; n < n_max; ++n) {
      total[n] += power[n];
      mass += power[n];
    }
    if (mass < 1e-14) break;
  }
  return total;
}

/// lambda_n = nu + sum_{s=1}^{n-1} alpha_{n-s} X_s by full convolution.
inline std::vector<double> direct_intensity(const CountPath& path, const ModelParams& params) {
  std::vector<double> lambda(path.size());
  for (std::size_t n = 1; n <= path.size(); ++n) {
    double v = params.nu;
    for (std::size_t s = 1; s < n; ++s) v += params.alpha(n - s) * static_cast<double>(path.counts[s - 1]);
    lambda[n - 1] = v;
  }
  return lambda;
}

/// Central finite differences of f at theta.
template <typename F>
Eigen::VectorXd central_gradient(F&& f, const ThetaVector& theta, double h) {
  const Eigen::VectorXd base = theta.to_vector();
  Eigen::VectorXd g(base.size());
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    Eigen::VectorXd up = base;
    Eigen::VectorXd dn = base;
    up[i] += h;
    dn[i] -= h;
    g[i] = (f(ThetaVector::from_vector(up)) - f(ThetaVector::from_vector(dn))) / (2.0 * h);
  }
  return g;
}

/// Random nonnegative integer path, T in [t_min, t_max], counts in [0, x_max].
inline CountPath random_path(std::mt19937_64& gen, std::size_t t_min, std::size_t t_max, int x_max) {
  std::uniform_int_distribution<std::size_t> len(t_min, t_max);
  std::uniform_int_distribution<int> val(0, x_max);
  CountPath path;
  path.counts.resize(len(gen));
  for (auto& c : path.counts) c = val(gen);
  return path;
}

inline CountPath make_path(std::initializer_list<Count> xs) {
  CountPath path;
  path.counts.assign(xs);
  return path;
}

}  // namespace inar::oracle

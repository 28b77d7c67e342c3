#include "inar/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "inar/digest.hpp"
#include "inar/error.hpp"
#include "inar/io.hpp"

namespace inar {

namespace {

double log_factorial(Count k) {
  const double x = static_cast<double>(k) + 1.0;
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes signgam
#else
  return std::lgamma(x);
#endif
}

Count poisson_inversion(double lambda, RngStream& rng) {
  const double u = rng.uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  Count k = 0;
  // For lambda < 10 the mass beyond k = 200 is far below double resolution.
  while (u > cdf && k < 200) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables", algorithm PTRS.
Count poisson_ptrs(double lambda, RngStream& rng) {
  const double log_lambda = std::log(lambda);
  const double b = 0.931 + 2.53 * std::sqrt(lambda);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);

  while (true) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<Count>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<Count>(kf);
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = -lambda + kf * log_lambda - log_factorial(k);
    if (lhs <= rhs) return k;
  }
}

}  // namespace

Count poisson_sample(double lambda, RngStream& rng) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidRate, "Poisson rate must be finite and nonnegative");
  }
  if (lambda < 10.0) return poisson_inversion(lambda, rng);
  return poisson_ptrs(lambda, rng);
}

SimulationTrace simulate_trace(const ModelParams& params, std::int64_t T, RngStream& rng,
                               const SimulationOptions& options) {
  require_valid(params);
  if (T < 1) throw Error(ErrorCode::InvalidParameter, "path length T must be at least 1");

  const auto len = static_cast<std::size_t>(T);
  const auto& alpha = params.kernel;
  SimulationTrace trace;
  auto& x = trace.path.counts;
  x.resize(len);
  trace.intensity.resize(len);
  trace.path.seed = rng.seed();
  trace.path.params_digest = params_digest(params);

  for (std::size_t n = 0; n < len; ++n) {
    // lambda_{n+1} = nu + sum_{k=1}^{min(K, n)} alpha_k X_{n+1-k}
    double lambda = params.nu;
    const std::size_t k_max = std::min(alpha.size(), n);
    for (std::size_t k = 1; k <= k_max; ++k) {
      lambda += alpha[k - 1] * static_cast<double>(x[n - k]);
    }
    if (lambda > options.intensity_cap) {
      throw Error(ErrorCode::Overflow, "intensity exceeded cap at step " + std::to_string(n + 1));
    }
    trace.intensity[n] = lambda;
    x[n] = poisson_sample(lambda, rng);
  }
  return trace;
}

CountPath simulate_path(const ModelParams& params, std::int64_t T, RngStream& rng,
                        const SimulationOptions& options) {
  return std::move(simulate_trace(params, T, rng, options).path);
}

std::string params_digest(const ModelParams& params) {
  std::string canon = "nu=" + format_double(params.nu) + ";kernel=";
  for (double a : params.kernel) canon += format_double(a) + ",";
  return fnv1a64_hex(canon);
}

}  // namespace inar

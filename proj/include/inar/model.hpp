#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace inar {

/// Kernel entries below this are dropped when a closed-form kernel is
/// expanded into a finite sequence.
inline constexpr double kKernelTruncation = 1e-12;

/// Closed-form description of an infinite kernel that was truncated.
/// alpha_k = ratio^k for k >= 1.
struct GeometricTail {
  double ratio = 0.0;
};

/// Immigration rate nu and excitation kernel (alpha_1, ..., alpha_K).
/// kernel[0] holds alpha_1.
struct ModelParams {
  double nu = 0.0;
  std::vector<double> kernel;
  std::optional<GeometricTail> kernel_tail;

  /// alpha_k = ratio^k, truncated at the first k with alpha_k < 1e-12.
  static ModelParams geometric(double nu, double ratio);
  static ModelParams finite(double nu, std::vector<double> lags);

  [[nodiscard]] double l1_norm() const noexcept;
  [[nodiscard]] double l2_norm_sq() const noexcept;
  /// alpha_k for k >= 1, zero beyond the stored kernel.
  [[nodiscard]] double alpha(std::size_t k) const noexcept;
};

struct ValidationReport {
  bool nonnegative = false;
  bool stationary = false;   // ||alpha||_1 < 1
  bool l2_condition = false; // ||alpha||_2^2 < 1/2, advisory only
  double l1 = 0.0;
  double l2_sq = 0.0;

  [[nodiscard]] bool ok() const noexcept { return nonnegative && stationary; }
};

ValidationReport validate_params(const ModelParams& params);

/// Throws InvalidParameter for negative/non-finite entries and
/// NonStationaryKernel when ||alpha||_1 >= 1.
void require_valid(const ModelParams& params);

/// A_1..A_n with A = alpha + alpha * A (sum of all convolution powers).
struct RenewalSequence {
  std::vector<double> values;  // values[n-1] = A_n
};

RenewalSequence renewal_sequence(std::span<const double> kernel, std::size_t n_max);

/// Unique solution of x_n = y_n + sum_{s<n} alpha_s x_{n-s}, evaluated as
/// x_n = y_n + sum_{i<n} A_i y_{n-i}.
std::vector<double> solve_renewal(std::span<const double> y, std::span<const double> kernel);

struct BoundsReport {
  double mean_bound = 0.0;
  std::optional<double> second_moment_bound;
  double norm_L2 = 0.0;
  /// Needs the second-moment bound, so it shares its domain.
  std::optional<double> norm_K2;
  std::int64_t horizon_T = 1;
};

BoundsReport moment_bounds(const ModelParams& params, std::int64_t T);

}  // namespace inar

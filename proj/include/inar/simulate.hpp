#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inar/model.hpp"
#include "inar/rng.hpp"

namespace inar {

using Count = std::int64_t;

/// One realization X_1..X_T. counts[0] holds X_1.
struct CountPath {
  std::vector<Count> counts;
  std::uint64_t seed = 0;
  std::string params_digest;

  [[nodiscard]] std::size_t size() const noexcept { return counts.size(); }
  /// X_n for n >= 1; zero for nonpositive n.
  [[nodiscard]] Count x(std::int64_t n) const noexcept {
    return n >= 1 ? counts[static_cast<std::size_t>(n - 1)] : 0;
  }
};

inline constexpr double kDefaultIntensityCap = 1e9;

/// Exact Poisson(lambda) draw. Sequential-search inversion below 10,
/// Hormann's transformed rejection (PTRS) from 10 upward.
Count poisson_sample(double lambda, RngStream& rng);

struct SimulationOptions {
  double intensity_cap = kDefaultIntensityCap;
};

/// Path together with the conditional intensities lambda_1..lambda_T it was
/// drawn from.
struct SimulationTrace {
  CountPath path;
  std::vector<double> intensity;
};

SimulationTrace simulate_trace(const ModelParams& params, std::int64_t T, RngStream& rng,
                               const SimulationOptions& options = {});

CountPath simulate_path(const ModelParams& params, std::int64_t T, RngStream& rng,
                        const SimulationOptions& options = {});

/// Short hex identifier of (nu, kernel) used to tag generated paths.
std::string params_digest(const ModelParams& params);

}  // namespace inar

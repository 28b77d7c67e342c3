#pragma once

#include <cstdint>
#include <span>

#include "inar/simulate.hpp"

namespace inar::internal {

/// z = (1, X_{n-1}, ..., X_{n-p}) with X_m = 0 for m < 1; z.size() == p + 1.
inline void fill_regressors(const CountPath& path, std::int64_t n, std::span<double> z) {
  z[0] = 1.0;
  for (std::size_t k = 1; k < z.size(); ++k) {
    z[k] = static_cast<double>(path.x(n - static_cast<std::int64_t>(k)));
  }
}

}  // namespace inar::internal

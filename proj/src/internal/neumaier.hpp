#pragma once

#include <cmath>

namespace inar::internal {

/// Neumaier's variant of Kahan summation.
class Neumaier {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  void merge(const Neumaier& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace inar::internal

#pragma once

#include <algorithm>
#include <string>

#include <Eigen/Dense>

#include "inar/error.hpp"
#include "inar/estimate.hpp"

namespace inar::internal {

struct CheckedLdlt {
  Eigen::LDLT<Eigen::MatrixXd> ldlt;
  double rcond = 0.0;
};

/// Pivoted LDL^T plus a reciprocal-condition gate. Eigen's solve silently
/// skips zero pivots, so its condition estimate alone can miss exact rank
/// deficiency; the pivots of a PSD matrix lie in [lambda_min, lambda_max],
/// which makes their spread a second, conservative check.
inline CheckedLdlt checked_ldlt(const Eigen::MatrixXd& m) {
  CheckedLdlt out{Eigen::LDLT<Eigen::MatrixXd>(m), 0.0};
  const auto pivots = out.ldlt.vectorD().cwiseAbs();
  const double pivot_ratio = pivots.maxCoeff() > 0.0 ? pivots.minCoeff() / pivots.maxCoeff() : 0.0;
  out.rcond = out.ldlt.info() == Eigen::Success ? std::min(out.ldlt.rcond(), pivot_ratio) : 0.0;
  if (!(out.rcond >= kRcondThreshold)) {
    throw Error(ErrorCode::SingularDesign, "design matrix is singular to working precision (rcond " +
                                               std::to_string(out.rcond) + ")");
  }
  return out;
}

}  // namespace inar::internal

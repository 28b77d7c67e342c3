#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "inar/error.hpp"
#include "inar/estimate.hpp"
#include "inar/inference.hpp"
#include "inar/model.hpp"

namespace inar {

struct McConfig {
  ModelParams params;
  std::int64_t T = 1000;
  std::size_t p = kDefaultLagOrder;
  std::size_t n_experiments = 1000;
  std::uint64_t base_seed = 42;
  bool cap_negatives = true;
  /// Also compute diag(Sigma_hat) per replication.
  bool with_sandwich = false;
  /// 0 keeps the OpenMP default. Results never depend on this.
  int threads = 0;
};

void validate_config(const McConfig& config);

struct McSummary {
  ThetaVector truth;
  Eigen::VectorXd mean_theta;  // raw (uncapped) mean
  double mse = 0.0;
  double rel_err_theta = 0.0;
  double rel_err_alpha = 0.0;
  /// One row per successful replication, raw estimates.
  Eigen::MatrixXd per_component_samples;
  /// Replication index (1-based stream id) of each row.
  std::vector<std::size_t> replication_ids;
  /// diag(Sigma_hat) per row when requested; otherwise empty.
  Eigen::MatrixXd sigma_diag;
  std::size_t failures = 0;
  bool capped = true;
};

/// Replication i (1..N) simulates with RngStream(base_seed, i), builds the
/// design, solves, and stores theta_hat in row i-1. Replications run on an
/// OpenMP pool; aggregation happens afterwards in index order, so the
/// summary is bit-identical for any thread count.
McSummary run_experiment(const McConfig& config);

/// Same computation on one thread, kept as the reference for the parallel
/// kernel.
McSummary run_experiment_serial(const McConfig& config);

/// Path of a single replication, identical to the one used inside
/// run_experiment.
CountPath replication_path(const McConfig& config, std::size_t replication);

/// Metrics over raw estimates (rows). When cap_negatives is set, negative
/// beta entries are replaced by 0 for mse and relative errors only;
/// mean_theta and per_component_samples stay raw.
McSummary summarize(const Eigen::MatrixXd& estimates, const ThetaVector& truth, bool cap_negatives);

/// 0 -> "nu", k -> "alpha<k>".
std::string component_name(std::size_t component);

struct ComponentNormality {
  std::size_t component = 0;
  std::string name;
  std::optional<NormalityReport> report;
  std::vector<QqPoint> qq;
  std::vector<HistogramBin> hist;
  /// Set when the inference routines rejected this component's sample.
  std::optional<ErrorCode> error;
  std::string error_message;
};

/// JB, SW, Q-Q pairs and a 30-bin histogram for each requested column of
/// the raw samples. Defaults to nu, alpha1, alpha2 (as far as p allows).
std::vector<ComponentNormality> normality_suite(const McSummary& summary,
                                                std::vector<std::size_t> components = {});

}  // namespace inar

#include "inar/montecarlo.hpp"

#include <algorithm>
#include <string>

#include <omp.h>

#include "inar/error.hpp"
#include "inar/simulate.hpp"

namespace inar {

namespace {

struct Replication {
  Eigen::VectorXd theta;
  Eigen::VectorXd sigma_diag;
  bool ok = false;
};

Replication run_replication(const McConfig& config, std::size_t i) {
  Replication rep;
  const CountPath path = replication_path(config, i);
  try {
    const DesignSystem sys = build_design(path, config.p);
    const ThetaVector theta = solve_cls(sys);
    rep.theta = theta.to_vector();
    if (config.with_sandwich) {
      rep.sigma_diag = sandwich_covariance_serial(path, theta, config.p).Sigma_hat.diagonal();
    }
    rep.ok = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularDesign) throw;
  }
  return rep;
}

McSummary collect(const McConfig& config, const std::vector<Replication>& reps) {
  const auto d = static_cast<Eigen::Index>(config.p + 1);
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i].ok) ids.push_back(i + 1);
  }
  if (ids.empty()) {
    throw Error(ErrorCode::AllReplicationsFailed,
                "all " + std::to_string(reps.size()) + " replications had singular designs");
  }
  Eigen::MatrixXd estimates(static_cast<Eigen::Index>(ids.size()), d);
  Eigen::MatrixXd sigma;
  if (config.with_sandwich) sigma.resize(estimates.rows(), d);
  for (std::size_t r = 0; r < ids.size(); ++r) {
    const auto& rep = reps[ids[r] - 1];
    estimates.row(static_cast<Eigen::Index>(r)) = rep.theta.transpose();
    if (config.with_sandwich) sigma.row(static_cast<Eigen::Index>(r)) = rep.sigma_diag.transpose();
  }
  McSummary summary =
      summarize(estimates, ThetaVector::truth(config.params, config.p), config.cap_negatives);
  summary.replication_ids = std::move(ids);
  summary.sigma_diag = std::move(sigma);
  summary.failures = reps.size() - summary.replication_ids.size();
  return summary;
}

}  // namespace

void validate_config(const McConfig& config) {
  require_valid(config.params);
  if (config.T < 1) throw Error(ErrorCode::InvalidParameter, "T must be at least 1");
  if (static_cast<std::int64_t>(config.p) > config.T - 1) {
    throw Error(ErrorCode::LagTooLarge, "lag order exceeds T - 1");
  }
  if (config.n_experiments < 1) {
    throw Error(ErrorCode::InvalidParameter, "n_experiments must be at least 1");
  }
}

CountPath replication_path(const McConfig& config, std::size_t replication) {
  RngStream rng(config.base_seed, replication);
  return simulate_path(config.params, config.T, rng);
}

McSummary run_experiment(const McConfig& config) {
  validate_config(config);
  const auto n = static_cast<std::int64_t>(config.n_experiments);
  std::vector<Replication> reps(config.n_experiments);
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();

  // Exceptions must not escape an OpenMP region; park the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      reps[static_cast<std::size_t>(i)] = run_replication(config, static_cast<std::size_t>(i) + 1);
    } catch (...) {
#pragma omp critical(inar_mc_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return collect(config, reps);
}

McSummary run_experiment_serial(const McConfig& config) {
  validate_config(config);
  std::vector<Replication> reps(config.n_experiments);
  for (std::size_t i = 0; i < reps.size(); ++i) reps[i] = run_replication(config, i + 1);
  return collect(config, reps);
}

McSummary summarize(const Eigen::MatrixXd& estimates, const ThetaVector& truth, bool cap_negatives) {
  const Eigen::VectorXd s = truth.to_vector();
  if (estimates.cols() != s.size()) {
    throw Error(ErrorCode::DimensionMismatch, "estimates have " + std::to_string(estimates.cols()) +
                                                  " columns, truth has " + std::to_string(s.size()));
  }
  if (estimates.rows() == 0) {
    throw Error(ErrorCode::AllReplicationsFailed, "no estimates to summarize");
  }

  McSummary out;
  out.truth = truth;
  out.capped = cap_negatives;
  out.per_component_samples = estimates;
  out.mean_theta = estimates.colwise().mean().transpose();

  Eigen::MatrixXd metric = estimates;
  if (cap_negatives && metric.cols() > 1) {
    auto betas = metric.rightCols(metric.cols() - 1);
    betas = betas.cwiseMax(0.0);
  }
  const auto n = static_cast<double>(metric.rows());
  out.mse = (metric.rowwise() - s.transpose()).rowwise().squaredNorm().sum() / n;

  const Eigen::VectorXd metric_mean = metric.colwise().mean().transpose();
  const Eigen::VectorXd diff = metric_mean - s;
  // A zero truth block leaves the absolute error as the only sensible scale.
  auto relative = [](double num, double den) { return den > 0.0 ? num / den : num; };
  out.rel_err_theta = relative(diff.norm(), s.norm());
  const Eigen::Index p = s.size() - 1;
  out.rel_err_alpha = p > 0 ? relative(diff.tail(p).norm(), s.tail(p).norm()) : 0.0;
  return out;
}

std::string component_name(std::size_t component) {
  return component == 0 ? "nu" : "alpha" + std::to_string(component);
}

std::vector<ComponentNormality> normality_suite(const McSummary& summary,
                                                std::vector<std::size_t> components) {
  const auto& samples = summary.per_component_samples;
  if (samples.rows() < 8) {
    throw Error(ErrorCode::SampleSizeOutOfRange,
                "normality suite needs at least 8 successful replications");
  }
  const auto d = static_cast<std::size_t>(samples.cols());
  if (components.empty()) {
    for (std::size_t c = 0; c < std::min<std::size_t>(3, d); ++c) components.push_back(c);
  }

  std::vector<ComponentNormality> out;
  for (std::size_t c : components) {
    if (c >= d) {
      throw Error(ErrorCode::DimensionMismatch,
                  "component " + std::to_string(c) + " out of range for p = " + std::to_string(d - 1));
    }
    ComponentNormality res;
    res.component = c;
    res.name = component_name(c);
    const Eigen::VectorXd col = samples.col(static_cast<Eigen::Index>(c));
    const std::span<const double> x(col.data(), static_cast<std::size_t>(col.size()));
    try {
      res.report = normality_report(x);
      res.qq = qq_data(x);
      res.hist = histogram(x, 30);
    } catch (const Error& e) {
      res.error = e.code();
      res.error_message = e.what();
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace inar

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "inar/error.hpp"
#include "inar/model.hpp"
#include "oracles.hpp"

using namespace inar;

namespace {

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    FAIL() << "expected " << error_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(ValidateParams, GeometricCaseOnePassesAllConditions) {
  const auto params = ModelParams::geometric(100.0, 0.25);
  // Truncated at the first alpha_k below 1e-12: 4^-20 < 1e-12 <= 4^-19.
  EXPECT_EQ(params.kernel.size(), 19u);
  const auto r = validate_params(params);
  EXPECT_TRUE(r.nonnegative);
  EXPECT_TRUE(r.stationary);
  EXPECT_TRUE(r.l2_condition);
  EXPECT_NEAR(r.l1, 1.0 / 3.0, 1e-11);
  EXPECT_NEAR(r.l2_sq, 1.0 / 15.0, 1e-11);
}

TEST(ValidateParams, SingleLagPointEightIsStationaryButFailsL2Advisory) {
  const auto r = validate_params(ModelParams::finite(100.0, {0.8}));
  EXPECT_TRUE(r.stationary);
  EXPECT_FALSE(r.l2_condition);
  EXPECT_DOUBLE_EQ(r.l2_sq, 0.64);
  EXPECT_TRUE(r.ok());
}

TEST(ValidateParams, UnitKernelIsNotStationary) {
  const auto params = ModelParams::finite(1.0, {1.0});
  EXPECT_FALSE(validate_params(params).stationary);
  expect_code(ErrorCode::NonStationaryKernel, [&] { require_valid(params); });
}

TEST(ValidateParams, NegativeEntriesAreReported) {
  const auto params = ModelParams::finite(1.0, {0.2, -0.1});
  EXPECT_FALSE(validate_params(params).nonnegative);
  expect_code(ErrorCode::InvalidParameter, [&] { require_valid(params); });
  expect_code(ErrorCode::InvalidParameter, [] { require_valid(ModelParams::finite(-1.0, {})); });
}

TEST(RenewalSequence, SingleLagGivesPowers) {
  const std::vector<double> kernel{0.5};
  const auto A = renewal_sequence(kernel, 12).values;
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_DOUBLE_EQ(A[n - 1], std::pow(0.5, n));
}

TEST(RenewalSequence, GeometricKernelMatchesClosedForm) {
  const auto params = ModelParams::geometric(100.0, 0.25);
  const auto A = renewal_sequence(params.kernel, 20).values;
  EXPECT_DOUBLE_EQ(A[0], 0.25);
  EXPECT_DOUBLE_EQ(A[1], 0.125);
  EXPECT_DOUBLE_EQ(A[2], 0.0625);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_NEAR(A[n - 1], std::pow(2.0, -double(n + 1)), 1e-12);
}

TEST(RenewalSequence, EmptyKernelIsZero) {
  const auto A = renewal_sequence({}, 5).values;
  for (double a : A) EXPECT_EQ(a, 0.0);
}

TEST(RenewalSequence, RejectsNonStationaryKernel) {
  const std::vector<double> kernel{0.6, 0.5};
  expect_code(ErrorCode::NonStationaryKernel, [&] { renewal_sequence(kernel, 3); });
}

TEST(RenewalSequence, MatchesConvolutionPowerOracleOnRandomKernels) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> len(1, 8);
    std::vector<double> kernel(len(gen));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& a : kernel) a = u(gen);
    const double scale = std::uniform_real_distribution<double>(0.05, 0.9)(gen) /
                         std::accumulate(kernel.begin(), kernel.end(), 0.0);
    for (auto& a : kernel) a *= scale;
    const std::size_t n_max = 24;
    const auto A = renewal_sequence(kernel, n_max).values;
    // A_n only involves alpha^{*k} with k <= n, so 40 powers cover n <= 24 exactly.
    const auto ref = oracle::convolution_power_sum(kernel, n_max);
    for (std::size_t n = 0; n < n_max; ++n) ASSERT_NEAR(A[n], ref[n], 1e-10) << "trial " << trial;
  }
}

TEST(RenewalSequence, PartialSumsAreMonotoneAndBounded) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> kernel(std::uniform_int_distribution<std::size_t>(1, 10)(gen));
    for (auto& a : kernel) a = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    const double l1 = std::uniform_real_distribution<double>(0.01, 0.95)(gen);
    const double sum = std::accumulate(kernel.begin(), kernel.end(), 0.0);
    for (auto& a : kernel) a *= l1 / sum;
    const auto A = renewal_sequence(kernel, 200).values;
    double partial = 0.0;
    const double bound = l1 / (1.0 - l1);
    for (double a : A) {
      ASSERT_GE(a, 0.0);
      partial += a;
      ASSERT_LE(partial, bound * (1.0 + 1e-12));
    }
  }
}

TEST(SolveRenewal, EmptyKernelIsIdentity) {
  const std::vector<double> y{3.0, 1.0, 4.0, 1.0, 5.0};
  EXPECT_EQ(solve_renewal(y, {}), y);
}

TEST(SolveRenewal, ConstantInputGeometricKernelClosedForm) {
  const auto params = ModelParams::geometric(100.0, 0.25);
  const std::vector<double> y(30, 100.0);
  const auto x = solve_renewal(y, params.kernel);
  for (std::size_t n = 1; n <= 19; ++n) {
    EXPECT_NEAR(x[n - 1], 100.0 * (1.5 - std::pow(2.0, -double(n))), 1e-9);
  }
  EXPECT_NEAR(x.back(), 150.0, 1e-6);
}

TEST(SolveRenewal, SatisfiesDefiningEquationOnRandomInputs) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> kernel(std::uniform_int_distribution<std::size_t>(0, 12)(gen));
    for (auto& a : kernel) a = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    const double sum = std::accumulate(kernel.begin(), kernel.end(), 0.0);
    const double l1 = std::uniform_real_distribution<double>(0.0, 0.9)(gen);
    if (sum > 0.0) for (auto& a : kernel) a *= l1 / sum;
    std::vector<double> y(std::uniform_int_distribution<std::size_t>(1, 60)(gen));
    for (auto& v : y) v = std::uniform_real_distribution<double>(0.0, 1.0)(gen);

    const auto x = solve_renewal(y, kernel);
    for (std::size_t n = 1; n <= y.size(); ++n) {
      double rhs = y[n - 1];
      for (std::size_t s = 1; s < n && s <= kernel.size(); ++s) rhs += kernel[s - 1] * x[n - s - 1];
      ASSERT_NEAR(x[n - 1], rhs, 1e-12) << "trial " << trial << " n " << n;
    }
  }
}

TEST(MomentBounds, CaseOneValues) {
  const auto r = moment_bounds(ModelParams::geometric(100.0, 0.25), 1000);
  EXPECT_NEAR(r.mean_bound, 150.0, 150.0 * 1e-9);
  ASSERT_TRUE(r.second_moment_bound.has_value());
  EXPECT_NEAR(*r.second_moment_bound, 23250.0, 23250.0 * 1e-9);
  EXPECT_GT(r.norm_L2, 0.0);
  ASSERT_TRUE(r.norm_K2.has_value());
  EXPECT_GE(*r.norm_K2, 2.0);
}

TEST(MomentBounds, NormConstantsForTrivialKernel) {
  const auto r = moment_bounds(ModelParams::finite(1.0, {}), 2);
  EXPECT_DOUBLE_EQ(r.mean_bound, 1.0);
  EXPECT_DOUBLE_EQ(r.norm_L2, 0.25);
  ASSERT_TRUE(r.norm_K2.has_value());
  EXPECT_DOUBLE_EQ(*r.norm_K2, 2.5);
}

TEST(MomentBounds, SecondMomentAbsentWhenL2ConditionFails) {
  const auto r = moment_bounds(ModelParams::finite(100.0, {0.8}), 1000);
  EXPECT_DOUBLE_EQ(r.mean_bound, 500.0);
  EXPECT_FALSE(r.second_moment_bound.has_value());
  EXPECT_FALSE(r.norm_K2.has_value());
}

TEST(MomentBounds, MeanBoundAtLeastNu) {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    const double nu = std::uniform_real_distribution<double>(0.0, 200.0)(gen);
    std::vector<double> kernel(std::uniform_int_distribution<std::size_t>(0, 5)(gen));
    for (auto& a : kernel) a = std::uniform_real_distribution<double>(0.0, 0.19)(gen);
    const auto r = moment_bounds(ModelParams::finite(nu, kernel), 50);
    EXPECT_GE(r.mean_bound, nu);
    if (kernel.empty()) EXPECT_EQ(r.mean_bound, nu);
  }
}

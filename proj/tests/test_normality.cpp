#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "inar/error.hpp"
#include "inar/inference.hpp"

using namespace inar;

namespace {

// numpy default_rng(20240611): standard_normal(50), then standard_exponential(50).
const std::vector<double> kNormal50 = {
    -0.21118912055729136, -0.5177334709845255,  0.1495958369624623,   -1.7898968436779759,
    0.2844522535691842,   -0.3216956064836901,  -0.726050324449302,   0.09853727513129668,
    -1.9514738484064804,  -0.15841288562715672, -0.7312848653804448,  0.40969535789355127,
    0.44244173776631784,  -0.9278626907702291,  -0.9331679527718499,  -1.4700371639889616,
    -0.7876892940867893,  0.3194143920162998,   0.8572703661247674,   0.22879972296310866,
    0.03479925265515608,  -0.8674471104434567,  0.19577021284431775,  -0.8156895315256701,
    0.23962888489868106,  -0.20259332624012352, 0.8560181034854327,   0.2024703525539789,
    1.3688252896097017,   -0.4082144474715901,  0.7559450824466323,   0.22516072407457527,
    1.6965558201068938,   -1.9620539547190585,  0.8742582951813314,   -1.0236516100709405,
    -0.8686467389750054,  -0.018363115062379937, -1.5105593611064696, -1.1945810265785586,
    -0.5055418749192547,  -0.32248383162699573, -1.9036789280897755,  -0.8736312382373598,
    -0.14591356690623353, -0.13192758477062216, -0.6623081572224156,  -0.004088789106296888,
    -0.5133744270857837,  1.173498778229933};

const std::vector<double> kExp50 = {
    0.2359873785386673,  0.18310428166141948, 0.05733318502922656, 0.06358674412715395,
    2.642560562986674,   2.3400378679815463,  0.778722792122605,   0.49033582852389446,
    5.046708249548671,   1.5384033953671044,  0.24929084036565247, 0.8806107668705574,
    0.14483312803179674, 1.2268652266558089,  0.2983677360105487,  0.8217327769535274,
    1.2778823575888807,  0.64692486140331,    0.13171263744772754, 2.5041998299687123,
    0.37071336452805387, 1.689032577553782,   0.27772220902238176, 0.814358418546747,
    0.4432723616152119,  0.45941009929318266, 2.019792333430653,   0.4733304831672779,
    0.7311976133651017,  0.06860712787303526, 0.5186783374392355,  0.27239400422160476,
    0.02267607993909607, 2.32545409398385,    0.055335934062459166, 1.747762577792818,
    0.2545372339153169,  0.0805073105942725,  0.05835956869147085, 0.8765336822389087,
    0.08042462534725975, 0.25377710580261814, 4.59897848833604,    1.867700899163724,
    1.3234319765068523,  1.656140376775869,   1.8868879041316575,  0.1109144701746208,
    2.7721619390447194,  0.3006937650072699};

template <class F>
void expect_code(F&& f, ErrorCode code) {
  try {
    f();
    FAIL() << "expected " << error_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

std::vector<double> affine(const std::vector<double>& x, double a, double b) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i] + b;
  return y;
}

}  // namespace

TEST(JarqueBera, SymmetricThreePointSample) {
  std::vector<double> x;
  for (int r = 0; r < 4; ++r) x.insert(x.end(), {-1.0, 0.0, 1.0});
  const auto jb = jarque_bera(x);
  EXPECT_NEAR(jb.stat, 1.125, 1e-12);
  EXPECT_NEAR(jb.p_value, std::exp(-0.5625), 1e-12);
}

TEST(JarqueBera, Errors) {
  expect_code([] { jarque_bera(std::vector<double>(10, 3.0)); }, ErrorCode::ZeroVariance);
  expect_code([] { jarque_bera(std::vector<double>{1, 2, 3, 4, 5, 6, 7}); },
              ErrorCode::SampleSizeOutOfRange);
}

TEST(JarqueBera, AffineInvariant) {
  const auto a = jarque_bera(kExp50);
  for (auto [s, t] : {std::pair{3.0, -7.0}, {-0.01, 1e3}, {1e4, 0.0}}) {
    const auto b = jarque_bera(affine(kExp50, s, t));
    EXPECT_NEAR(a.stat, b.stat, 1e-10 * a.stat);
    EXPECT_NEAR(a.p_value, b.p_value, 1e-10);
  }
}

TEST(ShapiroWilk, MatchesReferenceNormalSample) {
  const auto sw = shapiro_wilk(kNormal50);
  EXPECT_NEAR(sw.stat, 0.983511044512662, 1e-4);
  EXPECT_NEAR(sw.p_value, 0.7061978303958276, 1e-3);
}

TEST(ShapiroWilk, RejectsExponentialSample) {
  const auto sw = shapiro_wilk(kExp50);
  EXPECT_NEAR(sw.stat, 0.7895223259842121, 1e-4);
  EXPECT_LT(sw.p_value, 0.01);
  EXPECT_NEAR(sw.p_value, 5.071678456656274e-07, 1e-7);
}

TEST(ShapiroWilk, SmallSamples) {
  const auto three = shapiro_wilk(std::vector<double>{1, 2, 4});
  EXPECT_NEAR(three.stat, 0.9642857142857142, 1e-6);
  EXPECT_NEAR(three.p_value, 0.6368868450289689, 1e-3);

  const std::vector<double> u = {2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 2.8, 4.1, 3.9, 2.2, 6.0};
  const auto eleven = shapiro_wilk(u);
  EXPECT_NEAR(eleven.stat, 0.9396858071813434, 1e-4);
  EXPECT_NEAR(eleven.p_value, 0.5168114873791403, 1e-3);
}

TEST(ShapiroWilk, Errors) {
  expect_code([] { shapiro_wilk(std::vector<double>{1, 2}); }, ErrorCode::SampleSizeOutOfRange);
  expect_code([] { shapiro_wilk(std::vector<double>(5001, 0.0)); },
              ErrorCode::SampleSizeOutOfRange);
  expect_code([] { shapiro_wilk(std::vector<double>(20, 1.5)); }, ErrorCode::ZeroVariance);
}

TEST(ShapiroWilk, PositiveAffineInvariant) {
  const auto a = shapiro_wilk(kNormal50);
  const auto b = shapiro_wilk(affine(kNormal50, 250.0, 100.0));
  EXPECT_NEAR(a.stat, b.stat, 1e-8);
  EXPECT_NEAR(a.p_value, b.p_value, 1e-8);
}

TEST(ShapiroWilk, TiesStayInRange) {
  const auto sw = shapiro_wilk(std::vector<double>{1, 1, 2, 2, 2, 3, 3, 4, 4, 5});
  EXPECT_GT(sw.stat, 0.0);
  EXPECT_LE(sw.stat, 1.0);
  EXPECT_GE(sw.p_value, 0.0);
  EXPECT_LE(sw.p_value, 1.0);
}

TEST(NormalityReport, CombinesBothTests) {
  const auto r = normality_report(kNormal50);
  EXPECT_EQ(r.sample_size, 50u);
  EXPECT_DOUBLE_EQ(r.jb_stat, jarque_bera(kNormal50).stat);
  EXPECT_DOUBLE_EQ(r.sw_stat, shapiro_wilk(kNormal50).stat);
}

TEST(QqData, SingletonMapsToOrigin) {
  const auto qq = qq_data(std::vector<double>{42.0});
  ASSERT_EQ(qq.size(), 1u);
  EXPECT_EQ(qq[0].theoretical_z, 0.0);
  EXPECT_EQ(qq[0].value, 0.0);
}

TEST(QqData, OrderIndependent) {
  std::vector<double> rev(kExp50.rbegin(), kExp50.rend());
  const auto a = qq_data(kExp50);
  const auto b = qq_data(rev);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].theoretical_z, b[i].theoretical_z);
    EXPECT_EQ(a[i].value, b[i].value);
    if (i > 0) EXPECT_LE(a[i - 1].value, a[i].value);
  }
  EXPECT_DOUBLE_EQ(a.front().theoretical_z, normal_quantile(0.5 / 50));
}

TEST(QqData, NormalSampleHasUnitSlope) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> dist(5.0, 3.0);
  std::vector<double> x(1000);
  for (auto& v : x) v = dist(gen);
  const auto qq = qq_data(x);
  double sxy = 0.0, sxx = 0.0;
  for (const auto& pt : qq) {
    sxy += pt.theoretical_z * pt.value;
    sxx += pt.theoretical_z * pt.theoretical_z;
  }
  EXPECT_NEAR(sxy / sxx, 1.0, 0.05);
}

TEST(Histogram, CountsAndEdges) {
  std::vector<double> x(300);
  std::iota(x.begin(), x.end(), 0.0);
  const auto h = histogram(x);
  ASSERT_EQ(h.size(), 30u);
  std::size_t total = 0;
  for (const auto& bin : h) {
    total += bin.count;
    EXPECT_LT(bin.left, bin.right);
  }
  EXPECT_EQ(total, 300u);
  EXPECT_EQ(h.front().left, 0.0);
  EXPECT_EQ(h.back().right, 299.0);
  EXPECT_EQ(h.back().count, 10u);

  const auto flat = histogram(std::vector<double>(5, 2.0), 4);
  EXPECT_EQ(flat[0].count, 5u);
}

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "inar/error.hpp"
#include "inar/inference.hpp"

namespace inar {

namespace {

struct Moments {
  double mean = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
};

Moments central_moments(std::span<const double> x) {
  Moments m;
  const double n = static_cast<double>(x.size());
  m.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  for (double v : x) {
    const double d = v - m.mean;
    const double d2 = d * d;
    m.m2 += d2;
    m.m3 += d2 * d;
    m.m4 += d2 * d2;
  }
  m.m2 /= n;
  m.m3 /= n;
  m.m4 /= n;
  return m;
}

void require_variation(std::span<const double> x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (!(*hi > *lo)) throw Error(ErrorCode::ZeroVariance, "sample has zero variance");
}

// Evaluates c[0] + c[1] x + ... + c[n-1] x^{n-1}.
template <std::size_t N>
double poly(const double (&c)[N], double x) {
  double r = 0.0;
  for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
  return r;
}

}  // namespace

TestResult jarque_bera(std::span<const double> sample) {
  if (sample.size() < 8) {
    throw Error(ErrorCode::SampleSizeOutOfRange, "Jarque-Bera needs at least 8 observations");
  }
  require_variation(sample);
  const Moments m = central_moments(sample);
  const double skew = m.m3 / std::pow(m.m2, 1.5);
  const double kurt = m.m4 / (m.m2 * m.m2);
  const double n = static_cast<double>(sample.size());
  TestResult r;
  r.stat = n / 6.0 * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
  r.p_value = std::exp(-0.5 * r.stat);
  return r;
}

// Royston (1995), Applied Statistics algorithm AS R94.
TestResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000) {
    throw Error(ErrorCode::SampleSizeOutOfRange, "Shapiro-Wilk requires 3 <= n <= 5000");
  }
  require_variation(sample);

  std::vector<double> x(sample.begin(), sample.end());
  std::stable_sort(x.begin(), x.end());

  static constexpr double g[] = {-2.273, 0.459};
  static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};

  // Upper-half coefficients a[0..half-1]; the lower half is antisymmetric.
  const std::size_t half = n / 2;
  const double an = static_cast<double>(n);
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
      m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
      summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, rsn) - m[0] / ssumm2;

    std::size_t first_scaled;
    double fac;
    if (n > 5) {
      first_scaled = 2;
      const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[1] = a2;
    } else {
      first_scaled = 1;
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = first_scaled; i < half; ++i) a[i] = -m[i] / fac;
  }

  // W as the squared correlation between the ordered sample and the
  // coefficients, carried as 1 - W to keep precision near W = 1.
  const double range = x.back() - x.front();
  double sa = 0.0;
  double sx = 0.0;
  std::vector<double> coef(n, 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    coef[i] = -a[i];
    coef[n - 1 - i] = a[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    x[i] /= range;
    sa += coef[i];
    sx += x[i];
  }
  sa /= an;
  sx /= an;
  double ssa = 0.0;
  double ssx = 0.0;
  double sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double asa = coef[i] - sa;
    const double xsx = x[i] - sx;
    ssa += asa * asa;
    ssx += xsx * xsx;
    sax += asa * xsx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);

  TestResult r;
  r.stat = 1.0 - w1;

  if (n == 3) {
    constexpr double six_over_pi = 1.90985931710274;
    constexpr double pi_over_three = 1.04719755119660;
    r.p_value = std::max(0.0, six_over_pi * (std::asin(std::sqrt(r.stat)) - pi_over_three));
    return r;
  }

  double y = std::log(w1);
  double mean;
  double sd;
  if (n <= 11) {
    const double gamma = poly(g, an);
    if (y >= gamma) {
      r.p_value = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    mean = poly(c3, an);
    sd = std::exp(poly(c4, an));
  } else {
    const double ln = std::log(an);
    mean = poly(c5, ln);
    sd = std::exp(poly(c6, ln));
  }
  r.p_value = normal_sf((y - mean) / sd);
  return r;
}

NormalityReport normality_report(std::span<const double> sample) {
  const TestResult jb = jarque_bera(sample);
  const TestResult sw = shapiro_wilk(sample);
  return NormalityReport{jb.stat, jb.p_value, sw.stat, sw.p_value, sample.size()};
}

std::vector<QqPoint> qq_data(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n == 0) throw Error(ErrorCode::SampleSizeOutOfRange, "Q-Q data needs at least one value");
  if (n == 1) return {QqPoint{0.0, 0.0}};
  require_variation(sample);

  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const Moments m = central_moments(sorted);
  const double sd = std::sqrt(m.m2);

  std::vector<QqPoint> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    out[i] = QqPoint{normal_quantile(u), (sorted[i] - m.mean) / sd};
  }
  return out;
}

std::vector<HistogramBin> histogram(std::span<const double> sample, std::size_t bins) {
  if (sample.empty()) throw Error(ErrorCode::SampleSizeOutOfRange, "histogram of empty sample");
  if (bins == 0) throw Error(ErrorCode::InvalidParameter, "histogram needs at least one bin");
  const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = (hi - lo) / static_cast<double>(bins);

  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].left = lo + width * static_cast<double>(b);
    out[b].right = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (double v : sample) {
    std::size_t b = width > 0.0 ? static_cast<std::size_t>((v - lo) / width) : 0;
    out[std::min(b, bins - 1)].count += 1;
  }
  return out;
}

}  // namespace inar

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "expnormal/analytic.hpp"

namespace {

using namespace expnormal;
using boost::math::quadrature::gauss_kronrod;
constexpr double kPi = std::numbers::pi;

// Test-only oracle: E e^{itU} by quadrature of e^{itu} p(u), U = ln|Z|.
ComplexValue cf_by_quadrature(double t) {
  const double re = gauss_kronrod<double, 61>::integrate(
      [t](double u) { return std::cos(t * u) * density_expnormal(u); }, -40.0, 5.0, 30, 1e-14);
  const double im = gauss_kronrod<double, 61>::integrate(
      [t](double u) { return std::sin(t * u) * density_expnormal(u); }, -40.0, 5.0, 30, 1e-14);
  return {re, im};
}

double cosh_modulus(double t) { return 1.0 / std::sqrt(std::cosh(0.5 * kPi * t)); }

TEST(Constants, Values) {
  EXPECT_DOUBLE_EQ(Constants::mean_expnormal, -0.63518142273073908501);
  EXPECT_DOUBLE_EQ(Constants::var_expnormal, 1.23370055013616982735);
  EXPECT_DOUBLE_EQ(Constants::half_log2, 0.34657359027997265471);
  EXPECT_DOUBLE_EQ(Constants::mean_expnormal,
                   -(Constants::euler_gamma + 2.0 * Constants::half_log2) / 2.0);
  EXPECT_NEAR(Constants::series_limit, -0.01824498698928826028, 1e-16);
}

TEST(Constants, EulerGammaByHarmonicExtrapolation) {
  // H_n - ln n - 1/(2n) + 1/(12 n^2) = gamma + O(n^-4).
  const int n = 100000;
  double h = 0.0;
  for (int j = n; j >= 1; --j) h += 1.0 / j;
  const double nn = n;
  EXPECT_NEAR(h - std::log(nn) - 1.0 / (2 * nn) + 1.0 / (12 * nn * nn), Constants::euler_gamma, 1e-13);
}

TEST(CfExact, ZeroAndSymmetry) {
  const ComplexValue f0 = cf_exact(0.0);
  EXPECT_EQ(f0.real(), 1.0);
  EXPECT_EQ(f0.imag(), 0.0);
  const ComplexValue a = cf_exact(2.5);
  const ComplexValue b = cf_exact(-2.5);
  EXPECT_NEAR(a.real(), b.real(), 1e-15);
  EXPECT_NEAR(a.imag(), -b.imag(), 1e-15);
}

TEST(CfExact, ReferenceValues) {
  // mpmath at 40 digits.
  EXPECT_LT(std::abs(cf_exact(1.0) - ComplexValue(0.58043707962728449462, -0.24825312068962210634)), 1e-14);
  EXPECT_LT(std::abs(cf_exact(2.5) - ComplexValue(0.19798863010131795910, -0.01381871279125941231)), 1e-14);
  EXPECT_LT(std::abs(cf_exact(5.0) - ComplexValue(0.00084610471676294549, 0.02785121896176242207)), 1e-14);
  EXPECT_NEAR(std::abs(cf_exact(1.0)), 0.631297723216539630, 1e-14);
}

TEST(CfExact, ModulusIdentityOnGrid) {
  for (double t : make_grid(-10.0, 10.0, 0.1)) {
    EXPECT_NEAR(std::abs(cf_exact(t)), cosh_modulus(t), 1e-10) << "t = " << t;
  }
}

TEST(CfExact, AgreesWithDensityQuadrature) {
  for (double t : {0.3, 1.0, 2.0, 4.0}) {
    EXPECT_LT(std::abs(cf_exact(t) - cf_by_quadrature(t)), 1e-10) << "t = " << t;
  }
}

TEST(CfEulerProduct, ZeroIsOne) {
  for (std::size_t n : {1UL, 7UL, 1000UL}) {
    EXPECT_EQ(cf_euler_product(0.0, n), ComplexValue(1.0, 0.0));
    EXPECT_EQ(cf_euler_product(0.0, n, true), ComplexValue(1.0, 0.0));
  }
  EXPECT_THROW(cf_euler_product(1.0, 0), ConfigError);
}

TEST(CfEulerProduct, ConvergesAtRateOneOverN) {
  const ComplexValue f = cf_exact(1.0);
  EXPECT_LT(std::abs(cf_euler_product(1.0, 100000) - f), 2e-5);
  // Leading error is |f| t^2 / (8N).
  const double err = std::abs(cf_euler_product(1.0, 10000) - f);
  EXPECT_NEAR(err, std::abs(f) / 80000.0, 0.02 * std::abs(f) / 80000.0);
}

TEST(CfEulerProduct, MonotoneInN) {
  for (double t : make_grid(-6.0, 6.0, 0.5)) {
    const ComplexValue f = cf_exact(t);
    const double e3 = std::abs(cf_euler_product(t, 1000) - f);
    const double e4 = std::abs(cf_euler_product(t, 10000) - f);
    const double e5 = std::abs(cf_euler_product(t, 100000) - f);
    EXPECT_LE(e4, e3 + 1e-12) << "t = " << t;
    EXPECT_LE(e5, e4 + 1e-12) << "t = " << t;
  }
}

TEST(CfEulerProduct, TailCorrectionImproves) {
  for (double t : {0.5, 1.0, 2.0, 5.0}) {
    const ComplexValue f = cf_exact(t);
    const double plain = std::abs(cf_euler_product(t, 1000, false) - f);
    const double corrected = std::abs(cf_euler_product(t, 1000, true) - f);
    EXPECT_LT(corrected, 0.05 * plain) << "t = " << t;
  }
}

TEST(CfFactor, Basics) {
  EXPECT_EQ(cf_factor(0.0, 7), ComplexValue(1.0, 0.0));
  EXPECT_LT(std::abs(cf_factor(3.0, 1) - cf_exact(3.0)), 1e-15);
  EXPECT_LT(std::abs(std::pow(cf_factor(2.0, 4), 4.0) - cf_exact(2.0)), 1e-12);
  EXPECT_THROW(cf_factor(1.0, 0), DomainError);
}

TEST(CfFactor, RootConsistencyOnGrid) {
  for (std::size_t k : {2UL, 3UL, 5UL, 10UL}) {
    for (double t : make_grid(-10.0, 10.0, 0.1)) {
      EXPECT_LT(std::abs(std::pow(cf_factor(t, k), static_cast<double>(k)) - cf_exact(t)), 1e-10);
    }
  }
}

TEST(CfComponents, Exponential) {
  EXPECT_EQ(cf_exponential(0.0, 1.0), ComplexValue(1.0, 0.0));
  EXPECT_LT(std::abs(cf_exponential(1.0, 1.0) - ComplexValue(0.5, 0.5)), 1e-16);
  EXPECT_NEAR(std::abs(cf_exponential(2.0, 0.5)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(cf_exponential(1.0, 0.0), DomainError);
  EXPECT_THROW(cf_exponential(1.0, -1.0), DomainError);
}

TEST(CfComponents, Gamma) {
  EXPECT_EQ(cf_gamma(0.0, 0.25), ComplexValue(1.0, 0.0));
  EXPECT_LT(std::abs(cf_gamma(1.0, 1.0) - ComplexValue(0.5, 0.5)), 1e-15);
  EXPECT_LT(std::abs(std::pow(cf_gamma(1.7, 1.0 / 3.0), 3.0) - cf_gamma(1.7, 1.0)), 1e-14);
  for (double t : {-3.0, 0.4, 9.0}) EXPECT_LT(std::abs(cf_gamma(t, 1.0) - cf_exponential(t, 1.0)), 1e-15);
  EXPECT_THROW(cf_gamma(1.0, 0.0), DomainError);
}

TEST(CfTruncated, ZeroIsOneAndLimits) {
  const TruncationConfig cfg{100, TailMode::gaussian, SeriesForm::centered};
  EXPECT_EQ(cf_truncated_series(0.0, cfg, 1), ComplexValue(1.0, 0.0));
  const TruncationConfig big{100000, TailMode::drop, SeriesForm::centered};
  EXPECT_LT(std::abs(cf_truncated_series(1.0, big, 1) - cf_exact(1.0)), 1e-5);
  EXPECT_THROW(cf_truncated_series(1.0, cfg, 0), DomainError);
  EXPECT_THROW(cf_truncated_series(1.0, TruncationConfig{0}, 1), ConfigError);
}

TEST(CfTruncated, GaussianCompensationCloser) {
  for (std::size_t J : {10UL, 100UL, 1000UL}) {
    const TruncationConfig drop{J, TailMode::drop, SeriesForm::centered};
    const TruncationConfig gauss{J, TailMode::gaussian, SeriesForm::centered};
    const ComplexValue f = cf_exact(1.0);
    EXPECT_LT(std::abs(cf_truncated_series(1.0, gauss, 1) - f), std::abs(cf_truncated_series(1.0, drop, 1) - f));
  }
}

TEST(CfTruncated, FormDoesNotChangeLaw) {
  const TruncationConfig raw{50, TailMode::gaussian, SeriesForm::raw};
  const TruncationConfig centered{50, TailMode::gaussian, SeriesForm::centered};
  EXPECT_EQ(cf_truncated_series(1.3, raw, 3), cf_truncated_series(1.3, centered, 3));
}

TEST(CfTruncated, RootOfTruncatedIsTruncatedOfRoot) {
  // The k-factor truncated law is the 1/k convolution power of the k = 1 law.
  const TruncationConfig cfg{200, TailMode::gaussian, SeriesForm::centered};
  for (double t : {0.5, 2.0, -3.0}) {
    const ComplexValue whole = cf_truncated_series(t, cfg, 1);
    EXPECT_LT(std::abs(std::pow(cf_truncated_series(t, cfg, 4), 4.0) - whole), 1e-13);
  }
}

TEST(CfTruncated, ConvergesMonotonicallyInJ) {
  const auto grid = make_grid(-5.0, 5.0, 0.25);
  double previous = 1e9;
  for (std::size_t J : {100UL, 1000UL, 10000UL}) {
    const TruncationConfig cfg{J, TailMode::drop, SeriesForm::centered};
    double sup = 0.0;
    for (double t : grid) sup = std::max(sup, std::abs(cf_truncated_series(t, cfg, 1) - cf_exact(t)));
    EXPECT_LT(sup, previous);
    previous = sup;
  }
}

TEST(Density, Values) {
  EXPECT_NEAR(density_expnormal(0.0), 0.48394144903828669960, 1e-16);
  EXPECT_NEAR(density_expnormal(-20.0) / density_expnormal(-21.0), std::numbers::e, 1e-12);
  EXPECT_EQ(density_expnormal(400.0), 0.0);
  for (double u : {-30.0, -1.0, 0.0, 1.5, 3.0}) EXPECT_GT(density_expnormal(u), 0.0);
}

TEST(Density, QuadratureMoments) {
  auto integrate = [](auto f) { return gauss_kronrod<double, 61>::integrate(f, -40.0, 5.0, 30, 1e-15); };
  const double mass = integrate([](double u) { return density_expnormal(u); });
  const double mean = integrate([](double u) { return u * density_expnormal(u); });
  const double var = integrate([mean](double u) { return (u - mean) * (u - mean) * density_expnormal(u); });
  EXPECT_NEAR(mass, 1.0, 1e-10);
  EXPECT_NEAR(mean, Constants::mean_expnormal, 1e-8);
  EXPECT_NEAR(var, Constants::var_expnormal, 1e-8);
}

TEST(Density, CdfMatchesIntegratedDensity) {
  for (double u : {-3.0, -0.5, 0.0, 0.8}) {
    const double q = gauss_kronrod<double, 61>::integrate(density_expnormal, -40.0, u, 30, 1e-15);
    EXPECT_NEAR(cdf_expnormal(u), q, 1e-13) << "u = " << u;
  }
}

TEST(SeriesConstant, Values) {
  EXPECT_EQ(series_constant_partial(0), 0.0);
  // Direct summation in mpmath at 30 digits.
  EXPECT_NEAR(series_constant_partial(10), -0.01807305862058272563, 1e-16);
  EXPECT_NEAR(series_constant_partial(1000), -0.01824496619756280813, 1e-16);
  EXPECT_NEAR(series_constant_partial(100000), -0.01824498698720496861, 1e-16);
  EXPECT_NEAR(Constants::half_log2 - 1.0 - series_constant_partial(100000), Constants::mean_expnormal, 1e-8);
  // The limit is -0.0182450; the commonly quoted -0.018246 is off in the last digit.
  EXPECT_NEAR(series_constant_partial(100000), -0.018245, 1e-6);
}

TEST(SeriesConstant, ExpansionMatchesDirectTermsNearSwitch) {
  // The switch at j = 64 must not introduce a visible step.
  const double direct = 1.0 / 129.0 - 0.5 * std::log1p(1.0 / 64.0);
  const double via_sums = series_constant_partial(64) - series_constant_partial(63);
  EXPECT_NEAR(via_sums, direct, 1e-17);
}

TEST(TailVariance, Values) {
  // psi'(J + 3/2) / 4 from mpmath.
  EXPECT_NEAR(tail_variance(0), 0.23370055013616982735, 1e-16);
  EXPECT_NEAR(tail_variance(1), 0.12258943902505871624, 1e-16);
  EXPECT_NEAR(tail_variance(10), 0.02271166531863655858, 1e-16);
  EXPECT_NEAR(tail_variance(100), 0.00247522730481811671, 1e-17);
  EXPECT_NEAR(tail_variance(10000), 0.00002499750022914792, 1e-18);
  EXPECT_NEAR(tail_variance(0), Constants::var_expnormal - 1.0, 1e-15);
}

TEST(TailVariance, DirectSummationOracle) {
  for (std::size_t J : {0UL, 5UL, 300UL}) {
    double s = 0.0;
    for (std::size_t j = 20000000; j > J; --j) {
      const double m = 2.0 * static_cast<double>(j) + 1.0;
      s += 1.0 / (m * m);
    }
    s += 1.0 / (4.0 * 20000001.0);  // integral tail beyond the loop
    EXPECT_NEAR(tail_variance(J), s, 1e-15) << "J = " << J;
  }
}

TEST(TailVariance, DecreasingAndBounded) {
  double previous = tail_variance(0);
  for (std::size_t J = 1; J <= 200; ++J) {
    const double v = tail_variance(J);
    EXPECT_LT(v, previous);
    EXPECT_LT(v, 1.0 / (2.0 * (2.0 * static_cast<double>(J) + 1.0)));
    previous = v;
  }
  for (std::size_t J : {1000UL, 100000UL}) {
    EXPECT_LT(tail_variance(J), 1.0 / (2.0 * (2.0 * static_cast<double>(J) + 1.0)));
  }
}

TEST(StdNormalCdf, Values) {
  EXPECT_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(1.959964), 0.9750000009035577, 1e-12);
  EXPECT_NEAR(std_normal_cdf(0.7) + std_normal_cdf(-0.7), 1.0, 1e-16);
  EXPECT_NEAR(std_normal_cdf(-8.0), 6.2209605742717841e-16, 1e-28);
}

TEST(Grid, Construction) {
  const auto g = make_grid(-5.0, 5.0, 0.25);
  ASSERT_EQ(g.size(), 41U);
  EXPECT_EQ(g[20], 0.0);
  EXPECT_EQ(g.back(), 5.0);
  EXPECT_EQ(make_grid(-10.0, 10.0, 0.1).size(), 201U);
  EXPECT_THROW(make_grid(1.0, 1.0, 0.1), ConfigError);
  EXPECT_THROW(make_grid(0.0, 1.0, 0.0), ConfigError);
  const CFGrid cf = evaluate_cf(g, cf_exact);
  EXPECT_EQ(cf.values.size(), cf.points.size());
}

}  // namespace

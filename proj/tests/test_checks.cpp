#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/special_functions/erf.hpp>
#include <gtest/gtest.h>

#include "expnormal/batch.hpp"
#include "expnormal/checks.hpp"

namespace {

using namespace expnormal;

TEST(MomentCheck, DirectBatchMean) {
  const auto b = make_batch(Distribution::expnormal_direct, {}, 1000000, 51, 1);
  const MomentCheck m = moment_check(b.values, -0.6351814, Constants::var_expnormal);
  EXPECT_TRUE(m.passed());
  EXPECT_NEAR(m.moments.mean, -0.6351814, 3.0 * std::sqrt(Constants::var_expnormal) / 1e3);
  // Band widths follow the sample moments: sd ~ 1.11, fourth central ~ 10.65.
  EXPECT_NEAR(m.mean_band, 3.0 * std::sqrt(Constants::var_expnormal / 1e6), 1e-4);
  EXPECT_NEAR(m.variance_band, 3.0 * std::sqrt((10.654 - 1.522) / 1e6), 3e-4);
}

TEST(MomentCheck, ConstantBatchFails) {
  const std::vector<double> constant(1000, -0.6351814);
  const MomentCheck m = moment_check(constant, Constants::mean_expnormal, Constants::var_expnormal);
  EXPECT_EQ(m.moments.variance, 0.0);
  EXPECT_FALSE(m.variance_passed);
  EXPECT_FALSE(m.passed());
  EXPECT_THROW(moment_check(std::vector<double>(50, 1.0), 0.0, 1.0), ConfigError);
}

TEST(ExpnormalQuantile, MatchesClosedForm) {
  // ln|Z| <= u  <=>  |Z| <= e^u, so the quantile is ln(sqrt2 erf^{-1}(q)).
  for (double q : {1e-6, 0.01, 0.3, 0.5, 0.9, 0.999999}) {
    const double closed = std::log(std::sqrt(2.0) * boost::math::erf_inv(q));
    // Near q = 1 the CDF is flat, so an ulp in q moves u by about eps / p(u).
    const double tol = 1e-12 + 4e-16 / density_expnormal(closed);
    EXPECT_NEAR(quantile_expnormal(q), closed, tol) << "q = " << q;
  }
}

TEST(DensityCheck, BinsAreEqualProbability) {
  const auto b = make_batch(Distribution::expnormal_direct, {}, 100000, 52, 1);
  const DensityCheck d = density_check(b.values, 50);
  const double total = std::accumulate(d.probabilities.begin(), d.probabilities.end(), 0.0);
  EXPECT_NEAR(total, 1.0, 1e-9);
  for (double p : d.probabilities) EXPECT_NEAR(p, 0.02, 1e-12);
  EXPECT_EQ(std::accumulate(d.counts.begin(), d.counts.end(), std::size_t{0}), 100000U);
  EXPECT_EQ(d.degrees_of_freedom, 49.0);
  EXPECT_TRUE(d.passed) << d.chi_square;
}

TEST(DensityCheck, WrongLawFails) {
  auto b = make_batch(Distribution::exponential, {}, 100000, 53, 1);
  for (double& x : b.values) x = -x;
  EXPECT_FALSE(density_check(b.values, 50).passed);
}

TEST(DensityCheck, ChiSquarePValue) {
  // scipy.stats.chi2.sf(80, 49) = 3.40121141e-03; reproduce through a
  // synthetic count vector with a known statistic.
  EXPECT_NEAR(boost::math::gamma_q(24.5, 40.0), 3.40121141e-03, 1e-10);
  EXPECT_NEAR(boost::math::gamma_q(24.5, 24.5), 4.73128296e-01, 1e-8);
}

TEST(DensityCheck, Preconditions) {
  const std::vector<double> small(100, 0.0);
  EXPECT_THROW(density_check(small, 50), ConfigError);
  const std::vector<double> enough(10000, 0.0);
  EXPECT_THROW(density_check(enough, 5), ConfigError);
}

TEST(DensityMoments, Quadrature) {
  const DensityMoments m = density_moments();
  EXPECT_NEAR(m.mass, 1.0, 1e-10);
  EXPECT_NEAR(m.mean, Constants::mean_expnormal, 1e-8);
  EXPECT_NEAR(m.variance, Constants::var_expnormal, 1e-8);
}

}  // namespace

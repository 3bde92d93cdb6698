#ifndef EXPNORMAL_CHECKS_HPP
#define EXPNORMAL_CHECKS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "expnormal/analytic.hpp"
#include "expnormal/batch.hpp"
#include "expnormal/constants.hpp"

namespace expnormal {

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double m4 = 0.0;        // fourth central moment
  std::size_t n = 0;
};

inline SampleMoments sample_moments(std::span<const double> values) {
  SampleMoments m;
  m.n = values.size();
  if (m.n < 2) throw ConfigError("sample_moments: need at least 2 values");
  detail::NeumaierSum sum;
  for (double v : values) sum.add(v);
  m.mean = sum.value() / static_cast<double>(m.n);
  detail::NeumaierSum s2;
  detail::NeumaierSum s4;
  for (double v : values) {
    const double d = v - m.mean;
    s2.add(d * d);
    s4.add(d * d * d * d);
  }
  m.variance = s2.value() / static_cast<double>(m.n - 1);
  m.m4 = s4.value() / static_cast<double>(m.n);
  return m;
}

struct MomentCheck {
  SampleMoments moments;
  double target_mean = 0.0;
  double target_variance = 0.0;
  double mean_band = 0.0;      // z * s / sqrt(n)
  double variance_band = 0.0;  // z * sqrt((m4 - s^4) / n)
  bool mean_passed = false;
  bool variance_passed = false;
  bool passed() const { return mean_passed && variance_passed; }
};

/// Sample mean and variance against targets with z-sigma CLT bands. The
/// variance band uses the sample fourth central moment.
inline MomentCheck moment_check(std::span<const double> values, double target_mean,
                                double target_variance, double z = 3.0) {
  if (values.size() < 100) throw ConfigError("moment_check: need at least 100 values");
  MomentCheck c;
  c.moments = sample_moments(values);
  c.target_mean = target_mean;
  c.target_variance = target_variance;
  const double n = static_cast<double>(c.moments.n);
  const double s2 = c.moments.variance;
  c.mean_band = z * std::sqrt(s2 / n);
  c.variance_band = z * std::sqrt(std::max(c.moments.m4 - s2 * s2, 0.0) / n);
  c.mean_passed = std::abs(c.moments.mean - target_mean) <= c.mean_band;
  c.variance_passed = s2 > 0.0 && std::abs(s2 - target_variance) <= c.variance_band;
  return c;
}

/// Solves cdf_expnormal(u) = q by bisection on [-40, 5].
inline double quantile_expnormal(double q) {
  if (q <= 0.0) return -40.0;
  if (q >= 1.0) return 5.0;
  double lo = -40.0;
  double hi = 5.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf_expnormal(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct DensityCheck {
  std::vector<double> edges;          // bins + 1 values, outer edges infinite
  std::vector<double> probabilities;  // per bin
  std::vector<std::size_t> counts;
  double chi_square = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  double alpha = 0.001;
  bool passed = false;
};

/// Pearson chi-square of the sample against the exp-normal law on
/// equal-probability bins.
inline DensityCheck density_check(std::span<const double> values, std::size_t bins,
                                  double alpha = 0.001) {
  if (values.size() < 10000) throw ConfigError("density_check: need at least 10^4 values");
  if (bins < 10) throw ConfigError("density_check: need at least 10 bins");
  DensityCheck c;
  c.alpha = alpha;
  c.edges.resize(bins + 1);
  c.edges.front() = -std::numeric_limits<double>::infinity();
  c.edges.back() = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < bins; ++i) {
    c.edges[i] = quantile_expnormal(static_cast<double>(i) / static_cast<double>(bins));
  }
  c.probabilities.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    const double lo = i == 0 ? 0.0 : cdf_expnormal(c.edges[i]);
    const double hi = i + 1 == bins ? 1.0 : cdf_expnormal(c.edges[i + 1]);
    c.probabilities[i] = hi - lo;
  }
  c.counts.assign(bins, 0);
  for (double v : values) {
    const auto it = std::upper_bound(c.edges.begin() + 1, c.edges.end() - 1, v);
    ++c.counts[static_cast<std::size_t>(it - (c.edges.begin() + 1))];
  }
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < bins; ++i) {
    const double expected = n * c.probabilities[i];
    const double diff = static_cast<double>(c.counts[i]) - expected;
    c.chi_square += diff * diff / expected;
  }
  c.degrees_of_freedom = static_cast<double>(bins - 1);
  c.p_value = boost::math::gamma_q(0.5 * c.degrees_of_freedom, 0.5 * c.chi_square);
  c.passed = c.p_value > alpha;
  return c;
}

/// Moments of the exp-normal density by adaptive Gauss-Kronrod quadrature
/// over [-40, 5]; p < 1e-17 outside that window.
struct DensityMoments {
  double mass = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

inline DensityMoments density_moments() {
  using boost::math::quadrature::gauss_kronrod;
  constexpr double lo = -40.0;
  constexpr double hi = 5.0;
  constexpr unsigned depth = 30;
  constexpr double tol = 1e-15;
  DensityMoments m;
  m.mass = gauss_kronrod<double, 61>::integrate(density_expnormal, lo, hi, depth, tol);
  m.mean = gauss_kronrod<double, 61>::integrate(
      [](double u) { return u * density_expnormal(u); }, lo, hi, depth, tol);
  const double mu = m.mean;
  m.variance = gauss_kronrod<double, 61>::integrate(
      [mu](double u) { return (u - mu) * (u - mu) * density_expnormal(u); }, lo, hi, depth, tol);
  return m;
}

}  // namespace expnormal

#endif  // EXPNORMAL_CHECKS_HPP

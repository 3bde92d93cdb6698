#ifndef EXPNORMAL_ANALYTIC_HPP
#define EXPNORMAL_ANALYTIC_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "expnormal/constants.hpp"
#include "expnormal/log_gamma.hpp"
#include "expnormal/truncation.hpp"

namespace expnormal {

namespace detail {

inline const double& log_gamma_half() {
  // Computed through the same routine as the numerator so that cf_exact(0)
  // is exactly 1.
  static const double value = log_gamma(ComplexValue(0.5, 0.0)).real();
  return value;
}

// Log(1 + i x) without the cancellation of log|1 + i x| for small x.
inline ComplexValue log_one_plus_i(double x) {
  return {0.5 * std::log1p(x * x), std::atan(x)};
}

struct NeumaierSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + compensation; }
};

}  // namespace detail

/// Continuous logarithm of the exp-normal characteristic function,
/// i t ln2/2 + ln G((1+it)/2) - ln G(1/2).
inline ComplexValue log_cf_exact(double t) {
  const ComplexValue z(0.5, 0.5 * t);
  return ComplexValue(0.0, t * Constants::half_log2) + log_gamma(z) - detail::log_gamma_half();
}

/// E exp(i t ln|Z|) = 2^{it/2} G((1+it)/2) / G(1/2).
inline ComplexValue cf_exact(double t) { return std::exp(log_cf_exact(t)); }

/// Euler-product form of cf_exact truncated after n_terms factors:
///   e^{it ln2/2} / (1+it) * prod_{j<=n} exp{(it/2) ln(1+1/j)} / (1 + it/(2j+1)).
/// The log of the j-th factor is -t^2/(8 j^2) + O(j^-3); with `correction`
/// the product is multiplied by exp{-t^2/(8 n)}, the sum of that leading term
/// over j > n. Uncorrected error is O(1/n), corrected O(1/n^2).
inline ComplexValue cf_euler_product(double t, std::size_t n_terms, bool correction = false) {
  if (n_terms < 1) throw ConfigError("cf_euler_product: n_terms must be at least 1");
  double re = -0.5 * std::log1p(t * t);
  double im = t * Constants::half_log2 - std::atan(t);
  for (std::size_t j = 1; j <= n_terms; ++j) {
    const double jd = static_cast<double>(j);
    const ComplexValue denom = detail::log_one_plus_i(t / (2.0 * jd + 1.0));
    re -= denom.real();
    im += 0.5 * t * std::log1p(1.0 / jd) - denom.imag();
  }
  if (correction) re -= t * t / (8.0 * static_cast<double>(n_terms));
  return std::exp(ComplexValue(re, im));
}

/// Characteristic function of ln|W_1| where Z = W_1 ... W_k: the continuous
/// k-th root of cf_exact.
inline ComplexValue cf_factor(double t, std::size_t k) {
  if (k == 0) throw DomainError("cf_factor: k must be at least 1");
  return std::exp(log_cf_exact(t) / static_cast<double>(k));
}

/// Exponential law with mean a: 1 / (1 - i t a).
inline ComplexValue cf_exponential(double t, double mean) {
  if (!(mean > 0.0)) throw DomainError("cf_exponential: mean must be positive");
  return 1.0 / ComplexValue(1.0, -t * mean);
}

/// Gamma(shape, 1): (1 - i t)^{-shape} on the principal branch.
inline ComplexValue cf_gamma(double t, double shape) {
  if (!(shape > 0.0)) throw DomainError("cf_gamma: shape must be positive");
  return std::exp(-shape * detail::log_one_plus_i(-t));
}

/// sum_{j=1}^J [1/(2j+1) - ln(1+1/j)/2]. Each term is -1/(24 j^3) + O(j^-4);
/// large j switches to the expansion in 1/j to avoid cancellation.
inline double series_constant_partial(std::size_t J) {
  // Coefficients of j^-m, m = 3..16: (-1)^{m-1} (2^-m - 1/(2m)).
  static const std::vector<double> expansion = [] {
    std::vector<double> c;
    for (int m = 3; m <= 16; ++m) {
      const double sign = (m % 2 == 1) ? 1.0 : -1.0;
      c.push_back(sign * (std::ldexp(1.0, -m) - 1.0 / (2.0 * m)));
    }
    return c;
  }();
  constexpr std::size_t kExpansionFrom = 64;

  detail::NeumaierSum acc;
  for (std::size_t j = 1; j <= J; ++j) {
    const double jd = static_cast<double>(j);
    if (j < kExpansionFrom) {
      acc.add(1.0 / (2.0 * jd + 1.0) - 0.5 * std::log1p(1.0 / jd));
    } else {
      const double x = 1.0 / jd;
      double poly = 0.0;
      for (auto it = expansion.rbegin(); it != expansion.rend(); ++it) poly = poly * x + *it;
      acc.add(poly * x * x * x);
    }
  }
  return acc.value();
}

/// Variance of the discarded centered tail, sum_{j>J} (2j+1)^{-2}.
/// The first 64 tail terms are summed directly and the remainder is closed
/// with an Euler-Maclaurin expansion (next omitted term below 1e-18).
inline double tail_variance(std::size_t J) {
  constexpr std::size_t kDirectTerms = 64;
  detail::NeumaierSum acc;
  const std::size_t first = J + 1;
  const std::size_t last = J + kDirectTerms;
  for (std::size_t j = first; j <= last; ++j) {
    const double s = 2.0 * static_cast<double>(j) + 1.0;
    acc.add(1.0 / (s * s));
  }
  const double s = 2.0 * static_cast<double>(last + 1) + 1.0;
  const double r = 1.0 / s;
  const double r2 = r * r;
  const double remainder =
      r * (0.5 + r * (0.5 + r * (1.0 / 3.0 + r2 * (-4.0 / 15.0 + r2 * (16.0 / 21.0)))));
  acc.add(remainder);
  return acc.value();
}

/// Exact characteristic function of the truncated series actually sampled
/// for ln|W_1| (k > 1) or ln|Z| (k = 1):
///   mean/k - sum_{j=0}^J (G_j - 1/k)/(2j+1) [+ N(0, tail_variance(J)/k)],
/// with G_j ~ Gamma(1/k, 1). Raw and centered forms share this law.
inline ComplexValue cf_truncated_series(double t, const TruncationConfig& cfg, std::size_t k) {
  cfg.validate();
  if (k == 0) throw DomainError("cf_truncated_series: k must be at least 1");
  const double shape = 1.0 / static_cast<double>(k);
  double re = 0.0;
  double im = t * Constants::mean_expnormal * shape;
  for (std::size_t j = 0; j <= cfg.J; ++j) {
    const double x = t / (2.0 * static_cast<double>(j) + 1.0);
    const ComplexValue l = detail::log_one_plus_i(x);
    re -= shape * l.real();
    im += shape * (x - l.imag());
  }
  if (cfg.tail_mode == TailMode::gaussian) re -= 0.5 * t * t * tail_variance(cfg.J) * shape;
  return std::exp(ComplexValue(re, im));
}

/// p(u) = sqrt(2/pi) exp{u - e^{2u}/2}; underflows to 0 for large u.
inline double density_expnormal(double u) {
  constexpr double sqrt_two_over_pi = 0.79788456080286535587989211986876373695;
  return sqrt_two_over_pi * std::exp(u - 0.5 * std::exp(2.0 * u));
}

/// P(ln|Z| <= u) = P(|Z| <= e^u) = erf(e^u / sqrt 2).
inline double cdf_expnormal(double u) {
  return std::erf(std::exp(u) * (1.0 / std::numbers::sqrt2));
}

inline double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x * (1.0 / std::numbers::sqrt2));
}

/// Evaluation grid for a characteristic function.
struct CFGrid {
  std::vector<double> points;
  std::vector<ComplexValue> values;
};

/// Points t_min + i*step for i = 0, 1, ... while not beyond t_max (with a
/// relative slack of 1e-9 steps so that t_max itself is included).
inline std::vector<double> make_grid(double t_min, double t_max, double step) {
  if (!(t_min < t_max) || !(step > 0.0) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
    throw ConfigError("grid requires t_min < t_max and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
  std::vector<double> points(count);
  for (std::size_t i = 0; i < count; ++i) points[i] = t_min + static_cast<double>(i) * step;
  return points;
}

inline CFGrid evaluate_cf(const std::vector<double>& points,
                          const std::function<ComplexValue(double)>& cf) {
  CFGrid grid{points, {}};
  grid.values.reserve(points.size());
  for (double t : points) grid.values.push_back(cf(t));
  return grid;
}

}  // namespace expnormal

#endif  // EXPNORMAL_ANALYTIC_HPP

#ifndef EXPNORMAL_KS_HPP
#define EXPNORMAL_KS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "expnormal/batch.hpp"
#include "expnormal/constants.hpp"

namespace expnormal {

/// Empirical CDF over a sorted copy of the sample.
class ECDF {
 public:
  explicit ECDF(std::span<const double> values) : sorted_(values.begin(), values.end()) {
    if (sorted_.empty()) throw ConfigError("ECDF: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
  }

  /// #{values <= x} / n.
  double operator()(double x) const {
    const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
  }

  std::size_t n() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct KSResult {
  double statistic = 0.0;
  double n_effective = 0.0;
  double p_value = 1.0;
  double alpha = 0.001;
  bool passed = true;
};

/// Survival function of the Kolmogorov distribution, P(K > lambda).
inline double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  constexpr double pi = std::numbers::pi;
  if (lambda < 1.18) {
    // P(K <= l) = sqrt(2 pi)/l sum_k exp(-(2k-1)^2 pi^2 / (8 l^2)).
    const double q = std::exp(-pi * pi / (8.0 * lambda * lambda));
    double sum = 0.0;
    for (int k = 1; k <= 8; ++k) sum += std::pow(q, (2 * k - 1) * (2 * k - 1));
    return std::clamp(1.0 - std::sqrt(2.0 * pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace detail {

inline KSResult finish_ks(double statistic, double n_effective, double alpha) {
  KSResult r;
  r.statistic = statistic;
  r.n_effective = n_effective;
  r.p_value = kolmogorov_sf(std::sqrt(n_effective) * statistic);
  r.alpha = alpha;
  r.passed = r.p_value > alpha;
  return r;
}

}  // namespace detail

/// One-sample KS: sup_x |F_n(x) - F(x)|, evaluated exactly at the order
/// statistics as max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
/// The p-value uses the asymptotic Kolmogorov law at sqrt(n) D.
inline KSResult ks_one_sample(std::span<const double> values, const std::function<double(double)>& cdf,
                              double alpha = 0.001) {
  if (values.size() < 10) throw ConfigError("ks_one_sample: need at least 10 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double i1 = static_cast<double>(i);
    d = std::max({d, (i1 + 1.0) / n - f, f - i1 / n});
  }
  return detail::finish_ks(d, n, alpha);
}

inline KSResult ks_one_sample(const SampleBatch& batch, const std::function<double(double)>& cdf,
                              double alpha = 0.001) {
  return ks_one_sample(std::span<const double>(batch.values), cdf, alpha);
}

/// Two-sample KS: sup distance between the two ECDFs, ties handled by
/// advancing both samples past equal values. n_eff = n_a n_b / (n_a + n_b).
inline KSResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                              double alpha = 0.001) {
  if (a.empty() || b.empty()) throw ConfigError("ks_two_sample: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return detail::finish_ks(d, na * nb / (na + nb), alpha);
}

inline KSResult ks_two_sample(const SampleBatch& a, const SampleBatch& b, double alpha = 0.001) {
  return ks_two_sample(std::span<const double>(a.values), std::span<const double>(b.values), alpha);
}

}  // namespace expnormal

#endif  // EXPNORMAL_KS_HPP

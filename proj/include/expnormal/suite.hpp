#ifndef EXPNORMAL_SUITE_HPP
#define EXPNORMAL_SUITE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "expnormal/analytic.hpp"
#include "expnormal/batch.hpp"
#include "expnormal/cf_compare.hpp"
#include "expnormal/checks.hpp"
#include "expnormal/constants.hpp"
#include "expnormal/ks.hpp"
#include "expnormal/report.hpp"

namespace expnormal {

struct SuiteConfig {
  std::optional<std::uint64_t> seed;
  std::size_t n = 100000;
  std::size_t moment_n = 1000000;
  TruncationConfig cfg{};
  /// Cutoff of the finite-J oracle comparison in the series suite.
  std::size_t small_J = 100;
  std::vector<std::size_t> factor_counts{1, 2, 4, 8};
  double alpha = 0.001;
  unsigned workers = 1;
};

/// Stream ids used by the sampling suites. Each batch owns one id.
namespace suite_streams {
inline constexpr std::uint64_t series = 101;
inline constexpr std::uint64_t direct = 102;
inline constexpr std::uint64_t series_small_J = 103;
inline constexpr std::uint64_t direct_moments = 104;
/// root-product batch for k uses factorization_base + k.
inline constexpr std::uint64_t factorization_base = 200;
}  // namespace suite_streams

namespace detail {

inline std::string describe(const TruncationConfig& cfg) {
  std::ostringstream os;
  os << "J=" << cfg.J << " tail=" << to_string(cfg.tail_mode) << " form=" << to_string(cfg.form);
  return os.str();
}

inline void add_upper_bound(VerificationReport& r, const std::string& name, const std::string& inputs,
                            double observed, double threshold) {
  r.add(name, inputs, observed, threshold, observed <= threshold);
}

inline VerificationReport analytic_suite() {
  VerificationReport r;
  r.suite = "analytic";

  const auto wide = make_grid(-10.0, 10.0, 0.1);

  double modulus = 0.0;
  double hermitian = 0.0;
  for (double t : wide) {
    const ComplexValue f = cf_exact(t);
    modulus = std::max(modulus, std::abs(std::abs(f) - 1.0 / std::sqrt(std::cosh(0.5 * std::numbers::pi * t))));
    hermitian = std::max(hermitian, std::abs(cf_exact(-t) - std::conj(f)));
  }
  add_upper_bound(r, "cf_modulus_identity", "t in [-10,10] step 0.1", modulus, 1e-10);
  add_upper_bound(r, "cf_hermitian_symmetry", "t in [-10,10] step 0.1", hermitian, 1e-14);

  double product_error = 0.0;
  double monotonicity = -1.0;
  for (double t : {0.5, 1.0, 2.0, 5.0}) {
    const ComplexValue f = cf_exact(t);
    double previous = 0.0;
    for (std::size_t n : {1000UL, 10000UL, 100000UL}) {
      const double err = std::abs(cf_euler_product(t, n) - f);
      if (n > 1000) monotonicity = std::max(monotonicity, err - previous);
      previous = err;
    }
    product_error = std::max(product_error, previous);
  }
  add_upper_bound(r, "euler_product_error", "t in {0.5,1,2,5}, N=1e5", product_error, 1e-4);
  add_upper_bound(r, "euler_product_monotone", "max error increase over N in {1e3,1e4,1e5}",
                  monotonicity, 1e-12);

  {
    const double plain = std::abs(cf_euler_product(1.0, 1000, false) - cf_exact(1.0));
    const double corrected = std::abs(cf_euler_product(1.0, 1000, true) - cf_exact(1.0));
    r.add("euler_product_tail_correction", "t=1, N=1e3, corrected/plain error ratio",
          corrected / plain, 1.0, corrected < plain);
  }

  double root = 0.0;
  for (std::size_t k : {2UL, 3UL, 5UL, 10UL}) {
    for (double t : wide) {
      root = std::max(root, std::abs(std::pow(cf_factor(t, k), static_cast<double>(k)) - cf_exact(t)));
    }
  }
  add_upper_bound(r, "root_consistency", "k in {2,3,5,10}, t in [-10,10] step 0.1", root, 1e-10);

  const double constant = std::abs((Constants::half_log2 - 1.0 - series_constant_partial(100000)) -
                                   Constants::mean_expnormal);
  add_upper_bound(r, "series_constant_consistency", "J=1e5", constant, 1e-7);

  const DensityMoments dm = density_moments();
  add_upper_bound(r, "density_mass", "quadrature over [-40,5]", std::abs(dm.mass - 1.0), 1e-10);
  add_upper_bound(r, "density_mean", "quadrature over [-40,5]",
                  std::abs(dm.mean - Constants::mean_expnormal), 1e-8);
  add_upper_bound(r, "density_variance", "quadrature over [-40,5]",
                  std::abs(dm.variance - Constants::var_expnormal), 1e-8);

  {
    // gamma = lim H_n - ln n, with the Euler-Maclaurin correction terms.
    const double n = 1e6;
    detail::NeumaierSum h;
    for (std::size_t j = 1000000; j >= 1; --j) h.add(1.0 / static_cast<double>(j));
    const double gamma = h.value() - std::log(n) - 1.0 / (2.0 * n) + 1.0 / (12.0 * n * n);
    add_upper_bound(r, "euler_gamma_cross_check", "harmonic sum n=1e6",
                    std::abs(gamma - Constants::euler_gamma), 1e-13);
    const double direct = 1.0 + tail_variance(0);
    add_upper_bound(r, "pi2_over_8_cross_check", "sum (2j+1)^-2",
                    std::abs(direct - Constants::var_expnormal), 1e-14);
  }

  {
    const auto grid = make_grid(-5.0, 5.0, 0.25);
    double previous = std::numeric_limits<double>::infinity();
    double worst_increase = -1.0;
    double last = 0.0;
    for (std::size_t J : {100UL, 1000UL, 10000UL}) {
      TruncationConfig cfg{J, TailMode::drop, SeriesForm::centered};
      double sup = 0.0;
      for (double t : grid) sup = std::max(sup, std::abs(cf_truncated_series(t, cfg, 1) - cf_exact(t)));
      worst_increase = std::max(worst_increase, sup - previous);
      previous = sup;
      last = sup;
    }
    add_upper_bound(r, "truncated_cf_convergence", "sup error increase over J in {1e2,1e3,1e4}, tail=drop",
                    worst_increase, 0.0);
    add_upper_bound(r, "truncated_cf_error_J1e4", "t in [-5,5] step 0.25, tail=drop", last, 1e-3);
  }
  return r;
}

inline void add_ks(VerificationReport& r, const std::string& name, const std::string& inputs,
                   const KSResult& ks) {
  r.add(name + ".statistic", inputs, ks.statistic, 1.0, true);
  r.add(name + ".p_value", inputs, ks.p_value, ks.alpha, ks.passed);
}

inline void add_cf(VerificationReport& r, const std::string& name, const std::string& inputs,
                   const CFComparison& cmp) {
  r.add(name, inputs, cmp.sup_abs_error, cmp.threshold, cmp.passed);
}

inline void add_moments(VerificationReport& r, const std::string& name, const std::string& inputs,
                        const MomentCheck& m) {
  r.add(name + ".mean_error", inputs, std::abs(m.moments.mean - m.target_mean), m.mean_band,
        m.mean_passed);
  r.add(name + ".variance_error", inputs, std::abs(m.moments.variance - m.target_variance),
        m.variance_band, m.variance_passed);
  r.add(name + ".mean", inputs, m.moments.mean, m.target_mean, true);
  r.add(name + ".variance", inputs, m.moments.variance, m.target_variance, true);
}

inline VerificationReport series_suite(const SuiteConfig& c) {
  VerificationReport r;
  r.suite = "series";
  r.seed = c.seed;
  const std::uint64_t seed = *c.seed;
  const std::string n_text = " n=" + std::to_string(c.n);

  SampleParams series_params;
  series_params.cfg = c.cfg;
  const SampleBatch series =
      make_batch(Distribution::expnormal_series, series_params, c.n, seed, suite_streams::series, c.workers);
  const SampleBatch direct =
      make_batch(Distribution::expnormal_direct, {}, c.n, seed, suite_streams::direct, c.workers);

  add_ks(r, "ks_series_vs_direct", describe(c.cfg) + n_text, ks_two_sample(series, direct, c.alpha));

  const auto grid = make_grid(-5.0, 5.0, 0.25);
  add_cf(r, "cf_series_vs_exact", describe(c.cfg) + n_text + " t in [-5,5] step 0.25",
         compare_cf(series, grid, cf_exact));

  TruncationConfig small = c.cfg;
  small.J = c.small_J;
  SampleParams small_params;
  small_params.cfg = small;
  const SampleBatch series_small = make_batch(Distribution::expnormal_series, small_params, c.n, seed,
                                              suite_streams::series_small_J, c.workers);
  add_cf(r, "cf_series_vs_truncated", describe(small) + n_text + " t in [-5,5] step 0.25",
         compare_cf(series_small, grid, [&](double t) { return cf_truncated_series(t, small, 1); }));

  const double series_target_variance =
      c.cfg.tail_mode == TailMode::gaussian ? Constants::var_expnormal
                                            : Constants::var_expnormal - tail_variance(c.cfg.J);
  add_moments(r, "moments_series", describe(c.cfg) + n_text,
              moment_check(series.values, Constants::mean_expnormal, series_target_variance));

  const SampleBatch moments = make_batch(Distribution::expnormal_direct, {}, c.moment_n, seed,
                                         suite_streams::direct_moments, c.workers);
  add_moments(r, "moments_direct", "n=" + std::to_string(c.moment_n),
              moment_check(moments.values, Constants::mean_expnormal, Constants::var_expnormal));

  const DensityCheck dc = density_check(direct.values, 50, c.alpha);
  r.add("density_chi_square.p_value", "direct" + n_text + " bins=50", dc.p_value, c.alpha, dc.passed);
  return r;
}

inline VerificationReport factorization_suite(const SuiteConfig& c) {
  VerificationReport r;
  r.suite = "factorization";
  r.seed = c.seed;
  const std::uint64_t seed = *c.seed;
  const double n = static_cast<double>(c.n);
  for (std::size_t k : c.factor_counts) {
    SampleParams p;
    p.k = k;
    p.cfg = c.cfg;
    const SampleBatch batch = make_batch(Distribution::root_product, p, c.n, seed,
                                         suite_streams::factorization_base + k, c.workers);
    const std::string prefix = "k" + std::to_string(k);
    const std::string inputs = "k=" + std::to_string(k) + " " + describe(c.cfg) + " n=" + std::to_string(c.n);
    add_ks(r, prefix + ".ks_vs_normal", inputs, ks_one_sample(batch, std_normal_cdf, c.alpha));
    const SampleMoments m = sample_moments(batch.values);
    const double mean_band = 3.0 / std::sqrt(n);
    r.add(prefix + ".mean_abs", inputs, std::abs(m.mean), mean_band, std::abs(m.mean) <= mean_band);
    r.add(prefix + ".variance_error", inputs, std::abs(m.variance - 1.0), 0.02,
          std::abs(m.variance - 1.0) <= 0.02);
    const auto negatives = std::count_if(batch.values.begin(), batch.values.end(), [](double v) { return v < 0.0; });
    const double sign_dev = std::abs(static_cast<double>(negatives) / n - 0.5);
    const double sign_band = 3.0 / (2.0 * std::sqrt(n));
    r.add(prefix + ".negative_fraction_error", inputs, sign_dev, sign_band, sign_dev <= sign_band);
  }
  return r;
}

}  // namespace detail

inline constexpr std::string_view kSuiteNames[] = {"analytic", "series", "factorization", "all"};

inline bool is_suite_name(std::string_view name) {
  return std::find(std::begin(kSuiteNames), std::end(kSuiteNames), name) != std::end(kSuiteNames);
}

inline bool suite_needs_seed(std::string_view name) { return name != "analytic"; }

/// Runs the named fixed checklist. Report ordering is the checklist order;
/// identical config and seed give an identical report.
inline VerificationReport run_suite(std::string_view name, const SuiteConfig& config = {}) {
  if (!is_suite_name(name)) throw ConfigError("unknown suite: " + std::string(name));
  if (suite_needs_seed(name) && !config.seed) {
    throw ConfigError("suite '" + std::string(name) + "' draws samples and requires a seed");
  }
  config.cfg.validate();
  if (name == "analytic") return detail::analytic_suite();
  if (name == "series") return detail::series_suite(config);
  if (name == "factorization") return detail::factorization_suite(config);

  VerificationReport all;
  all.suite = "all";
  all.seed = config.seed;
  all.append(detail::analytic_suite());
  all.append(detail::series_suite(config));
  all.append(detail::factorization_suite(config));
  return all;
}

}  // namespace expnormal

#endif  // EXPNORMAL_SUITE_HPP

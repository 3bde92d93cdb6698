#ifndef EXPNORMAL_CF_COMPARE_HPP
#define EXPNORMAL_CF_COMPARE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "expnormal/batch.hpp"
#include "expnormal/constants.hpp"

namespace expnormal {

/// (1/n) sum_i exp(i t x_i) at every grid point. Exactly 1 at t = 0.
inline std::vector<ComplexValue> empirical_cf(std::span<const double> values,
                                              std::span<const double> grid) {
  if (values.empty()) throw ConfigError("empirical_cf: empty sample");
  const double n = static_cast<double>(values.size());
  std::vector<ComplexValue> out;
  out.reserve(grid.size());
  for (double t : grid) {
    double re = 0.0;
    double im = 0.0;
    for (double x : values) {
      re += std::cos(t * x);
      im += std::sin(t * x);
    }
    out.emplace_back(re / n, im / n);
  }
  return out;
}

inline std::vector<ComplexValue> empirical_cf(const SampleBatch& batch, std::span<const double> grid) {
  return empirical_cf(std::span<const double>(batch.values), grid);
}

struct CFComparison {
  std::vector<double> grid;
  std::vector<ComplexValue> empirical;
  std::vector<ComplexValue> exact;
  double sup_abs_error = 0.0;
  /// c / sqrt(n).
  double clt_band = 0.0;
  /// clt_band * band_multiplier(grid size).
  double threshold = 0.0;
  bool passed = false;
};

/// Bonferroni-style inflation for simultaneous comparison on m grid points:
/// max(1, ln m).
inline double band_multiplier(std::size_t grid_size) {
  return std::max(1.0, std::log(static_cast<double>(grid_size)));
}

/// Each |e^{itX}| = 1, so the error at one point is bounded in probability
/// by c/sqrt(n); c = 4 by default.
inline CFComparison compare_cf(std::span<const double> values, std::span<const double> grid,
                               const std::function<ComplexValue(double)>& exact, double c = 4.0) {
  CFComparison cmp;
  cmp.grid.assign(grid.begin(), grid.end());
  cmp.empirical = empirical_cf(values, grid);
  cmp.exact.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cmp.exact.push_back(exact(grid[i]));
    cmp.sup_abs_error = std::max(cmp.sup_abs_error, std::abs(cmp.empirical[i] - cmp.exact[i]));
  }
  cmp.clt_band = c / std::sqrt(static_cast<double>(values.size()));
  cmp.threshold = cmp.clt_band * band_multiplier(grid.size());
  cmp.passed = cmp.sup_abs_error <= cmp.threshold;
  return cmp;
}

inline CFComparison compare_cf(const SampleBatch& batch, std::span<const double> grid,
                               const std::function<ComplexValue(double)>& exact, double c = 4.0) {
  return compare_cf(std::span<const double>(batch.values), grid, exact, c);
}

}  // namespace expnormal

#endif  // EXPNORMAL_CF_COMPARE_HPP

#ifndef EXPNORMAL_CONSTANTS_HPP
#define EXPNORMAL_CONSTANTS_HPP

#include <complex>
#include <numbers>
#include <stdexcept>

namespace expnormal {

using ComplexValue = std::complex<double>;

/// Raised on arguments outside an operation's mathematical domain
/// (gamma poles, non-positive scale or shape, k = 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for an invalid TruncationConfig or sampler parameter set.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Constants of the exp-normal law, the distribution of ln|Z| for Z ~ N(0,1).
struct Constants {
  static constexpr double euler_gamma = std::numbers::egamma;
  static constexpr double half_log2 = std::numbers::ln2 / 2.0;
  /// E ln|Z| = -(gamma + ln 2) / 2.
  static constexpr double mean_expnormal = -(euler_gamma + 2.0 * half_log2) / 2.0;
  /// Var ln|Z| = pi^2 / 8 = sum_{j>=0} (2j+1)^{-2}.
  static constexpr double var_expnormal = std::numbers::pi * std::numbers::pi / 8.0;
  /// Limit of sum_{j=1}^J [1/(2j+1) - ln(1+1/j)/2]; ties the raw and centered
  /// series constants together: half_log2 - 1 - series_limit = mean_expnormal.
  static constexpr double series_limit = half_log2 - 1.0 - mean_expnormal;
};

}  // namespace expnormal

#endif  // EXPNORMAL_CONSTANTS_HPP

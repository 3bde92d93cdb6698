#ifndef EXPNORMAL_LOG_GAMMA_HPP
#define EXPNORMAL_LOG_GAMMA_HPP

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "expnormal/constants.hpp"

namespace expnormal {

namespace detail {

// B_{2n} / (2n (2n-1)), n = 1..8.
inline constexpr std::array<double, 8> kStirlingCoefficients = {
    1.0 / 12.0,        -1.0 / 360.0,     1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0};

// Real part at which the asymptotic series is used directly. With |w| >= 12
// the first omitted term is below 1e-18.
inline constexpr double kStirlingShift = 12.0;

inline ComplexValue log_gamma_stirling(ComplexValue w) {
  const ComplexValue inv = 1.0 / w;
  const ComplexValue inv2 = inv * inv;
  ComplexValue series = kStirlingCoefficients.back();
  for (auto it = kStirlingCoefficients.rbegin() + 1; it != kStirlingCoefficients.rend(); ++it) {
    series = series * inv2 + *it;
  }
  series *= inv;
  constexpr double half_log_two_pi = 0.91893853320467274178032973640561764;
  return (w - 0.5) * std::log(w) - w + half_log_two_pi + series;
}

// Re(z) >= 0. Shifting by the recurrence ln G(z) = ln G(z+m) - sum log(z+k)
// keeps the analytic branch because every z+k lies in the right half-plane.
inline ComplexValue log_gamma_right(ComplexValue z) {
  ComplexValue shift_sum = 0.0;
  ComplexValue w = z;
  while (w.real() < kStirlingShift) {
    shift_sum += std::log(w);
    w += 1.0;
  }
  return log_gamma_stirling(w) - shift_sum;
}

}  // namespace detail

/// Analytic log-gamma with the branch cut on the negative real axis, the
/// continuation of the real ln G from the positive axis (not the principal
/// log of G). Continuous along Re(z) = 1/2 for every imaginary part.
///
/// Relative accuracy of exp(result) is about 1e-15 for |Im z| <= 50 on the
/// right half-plane. For Re(z) < 0 the reflection formula is used, which
/// requires |Im z| below roughly 200 so that sin(pi z) stays finite.
///
/// Throws DomainError at the poles z = 0, -1, -2, ...
inline ComplexValue log_gamma(ComplexValue z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw DomainError("log_gamma: pole at non-positive integer");
  }
  if (z.real() >= 0.0) return detail::log_gamma_right(z);

  // ln G(z) = ln pi - log sin(pi z) - ln G(1-z) + 2 pi i n, with n fixed by
  // matching the continuation from the right half-plane.
  constexpr double pi = std::numbers::pi;
  const double winding = std::copysign(2.0 * pi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
  return ComplexValue(std::log(pi), winding) - std::log(std::sin(pi * z)) -
         detail::log_gamma_right(1.0 - z);
}

inline double log_gamma(double x) { return log_gamma(ComplexValue(x, 0.0)).real(); }

}  // namespace expnormal

#endif  // EXPNORMAL_LOG_GAMMA_HPP

#ifndef EXPNORMAL_VARIATES_HPP
#define EXPNORMAL_VARIATES_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "expnormal/constants.hpp"
#include "expnormal/random_stream.hpp"

// Primitive variates. Stream consumption, in 64-bit words per call:
//   sample_uniform      1
//   sample_rademacher   1
//   sample_exponential  1
//   sample_normal       2 per polar attempt (acceptance pi/4)
//   sample_gamma        1 or 2 per rejection attempt
// Each primitive also accepts the test-only MeanPathStream.

namespace expnormal {

/// Uniform on (0,1) from the top 52 bits of one word: (m + 1/2) 2^-52.
/// Never returns 0 or 1.
template <class Stream>
double sample_uniform(Stream& stream) {
  if constexpr (is_mean_path_v<Stream>) {
    return 0.5;
  } else {
    constexpr double scale = 0x1.0p-52;
    return (static_cast<double>(stream.next_u64() >> 12) + 0.5) * scale;
  }
}

/// Standard exponential by inversion, -ln(u).
template <class Stream>
double sample_exponential(Stream& stream) {
  if constexpr (is_mean_path_v<Stream>) {
    return 1.0;
  } else {
    return -std::log(sample_uniform(stream));
  }
}

/// +1 or -1 with probability 1/2 each, from the top bit of one word.
template <class Stream>
int sample_rademacher(Stream& stream) {
  if constexpr (is_mean_path_v<Stream>) {
    return 1;
  } else {
    return (stream.next_u64() >> 63) != 0 ? 1 : -1;
  }
}

/// Standard normal by the Marsaglia polar method. The second variate of each
/// accepted pair is discarded so that a draw depends on the stream alone.
template <class Stream>
double sample_normal(Stream& stream) {
  if constexpr (is_mean_path_v<Stream>) {
    return 0.0;
  } else {
    for (;;) {
      const double v1 = 2.0 * sample_uniform(stream) - 1.0;
      const double v2 = 2.0 * sample_uniform(stream) - 1.0;
      const double s = v1 * v1 + v2 * v2;
      if (s < 1.0 && s > 0.0) return v1 * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

/// Gamma(shape, 1) sampler for 0 < shape <= 1, Ahrens-Dieter GS rejection
/// with an x^{a-1} / e^{-x} two-piece envelope. Exact: every accepted draw
/// follows the target law with no approximation beyond the uniform grid.
class GammaSmallShape {
 public:
  explicit GammaSmallShape(double shape) : shape_(shape) {
    if (!(shape > 0.0 && shape <= 1.0)) {
      throw DomainError("sample_gamma: shape must lie in (0, 1]");
    }
    inv_shape_ = 1.0 / shape;
    b_ = 1.0 + shape / std::numbers::e;
    const double rounded = std::round(inv_shape_);
    if (rounded <= 64.0 && std::abs(rounded * shape - 1.0) < 1e-14) {
      integer_power_ = static_cast<unsigned>(rounded);
    }
  }

  double shape() const { return shape_; }

  template <class Stream>
  double operator()(Stream& stream) const {
    if constexpr (is_mean_path_v<Stream>) {
      return shape_;
    } else {
      for (;;) {
        // One word supplies p (top 52 bits) and the top 12 bits of the
        // acceptance uniform u = (cell + v) / 4096; v is drawn from a second
        // word only when the cell alone cannot decide the squeeze.
        const std::uint64_t word = stream.next_u64();
        const double p = b_ * ((static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52);
        const double cell = static_cast<double>(word & 0xFFFU);
        if (p <= 1.0) {
          const double x = power(p);
          // e^{-x} >= 1 - x, so u <= 1 - x is an exact squeeze.
          if ((cell + 1.0) * 0x1.0p-12 <= 1.0 - x) return x;
          const double u = (cell + sample_uniform(stream)) * 0x1.0p-12;
          if (u <= 1.0 - x || u <= std::exp(-x)) return x;
        } else {
          const double x = -std::log((b_ - p) * inv_shape_);
          const double u = (cell + sample_uniform(stream)) * 0x1.0p-12;
          if (u <= std::pow(x, shape_ - 1.0)) return x;
        }
      }
    }
  }

 private:
  // p^{1/shape}; repeated squaring when 1/shape is a small integer.
  double power(double p) const {
    if (integer_power_ == 0) return std::pow(p, inv_shape_);
    double result = 1.0;
    double base = p;
    for (unsigned e = integer_power_; e != 0; e >>= 1) {
      if (e & 1U) result *= base;
      base *= base;
    }
    return result;
  }

  double shape_;
  double inv_shape_ = 1.0;
  double b_ = 1.0;
  unsigned integer_power_ = 0;
};

template <class Stream>
double sample_gamma(Stream& stream, double shape) {
  return GammaSmallShape(shape)(stream);
}

}  // namespace expnormal

#endif  // EXPNORMAL_VARIATES_HPP

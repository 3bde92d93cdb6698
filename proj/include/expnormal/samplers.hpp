#ifndef EXPNORMAL_SAMPLERS_HPP
#define EXPNORMAL_SAMPLERS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "expnormal/analytic.hpp"
#include "expnormal/constants.hpp"
#include "expnormal/truncation.hpp"
#include "expnormal/variates.hpp"

namespace expnormal {

/// Truncated series for ln|W_1|, where Z = W_1 ... W_k in law.
///
/// Centered form, G_j ~ Gamma(1/k, 1) and a = 1/k:
///   -(gamma + ln2)/(2k) - (G_0 - a) - sum_{j=1}^J (G_j - a)/(2j+1) + T
/// Raw form:
///   ln2/(2k) - G_0 - sum_{j=1}^J [G_j/(2j+1) - ln(1+1/j)/(2k)] - m_J + T
/// where m_J = (S_inf - S_J)/k is the mean of the raw tail beyond J and T is
/// either 0 (drop) or N(0, tail_variance(J)/k) (gaussian). The two forms are
/// rearrangements of each other and agree draw for draw up to rounding.
///
/// With exponential terms (k must be 1) this is the series for ln|Z| itself.
///
/// Stream schedule per draw: G_0, G_1, ..., G_J in order, then the tail
/// normal when tail_mode is gaussian.
class SeriesSampler {
 public:
  enum class Terms { exponential, gamma };

  SeriesSampler(std::size_t k, const TruncationConfig& cfg, Terms terms)
      : cfg_(cfg), terms_(terms), gamma_(checked_shape(k, cfg)) {
    if (terms == Terms::exponential && k != 1) {
      throw ConfigError("exponential series terms require k = 1");
    }
    const double kd = static_cast<double>(k);
    shape_ = 1.0 / kd;
    weights_.resize(cfg.J + 1);
    for (std::size_t j = 0; j <= cfg.J; ++j) weights_[j] = 1.0 / (2.0 * static_cast<double>(j) + 1.0);
    if (cfg.form == SeriesForm::raw) {
      log_terms_.resize(cfg.J + 1, 0.0);
      for (std::size_t j = 1; j <= cfg.J; ++j) {
        log_terms_[j] = std::log1p(1.0 / static_cast<double>(j)) / (2.0 * kd);
      }
      constant_ = Constants::half_log2 / kd -
                  (Constants::series_limit - series_constant_partial(cfg.J)) / kd;
    } else {
      constant_ = Constants::mean_expnormal / kd;
    }
    tail_sd_ = cfg.tail_mode == TailMode::gaussian ? std::sqrt(tail_variance(cfg.J) / kd) : 0.0;
  }

  const TruncationConfig& config() const { return cfg_; }
  double shape() const { return shape_; }

  template <class Stream>
  double operator()(Stream& stream) const {
    double sum = 0.0;
    if (cfg_.form == SeriesForm::centered) {
      for (std::size_t j = 0; j <= cfg_.J; ++j) sum += (term(stream) - shape_) * weights_[j];
    } else {
      sum = term(stream);
      for (std::size_t j = 1; j <= cfg_.J; ++j) sum += term(stream) * weights_[j] - log_terms_[j];
    }
    double value = constant_ - sum;
    if (cfg_.tail_mode == TailMode::gaussian) value += tail_sd_ * sample_normal(stream);
    return value;
  }

 private:
  static double checked_shape(std::size_t k, const TruncationConfig& cfg) {
    cfg.validate();
    if (k == 0) throw ConfigError("k must be at least 1");
    return 1.0 / static_cast<double>(k);
  }

  template <class Stream>
  double term(Stream& stream) const {
    return terms_ == Terms::exponential ? sample_exponential(stream) : gamma_(stream);
  }

  TruncationConfig cfg_;
  Terms terms_;
  GammaSmallShape gamma_;
  double shape_ = 1.0;
  double constant_ = 0.0;
  double tail_sd_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> log_terms_;
};

/// Draw of the truncated series for ln|Z| with exponential terms.
template <class Stream>
double sample_expnormal_series(Stream& stream, const TruncationConfig& cfg) {
  return SeriesSampler(1, cfg, SeriesSampler::Terms::exponential)(stream);
}

/// ln|Z| for Z drawn by the polar method; the ground-truth law.
template <class Stream>
double sample_expnormal_direct(Stream& stream) {
  return std::log(std::abs(sample_normal(stream)));
}

/// One root factor W_1 = eps * exp(series). Consumes the sign first.
class RootFactorSampler {
 public:
  RootFactorSampler(std::size_t k, const TruncationConfig& cfg)
      : k_(k), series_(k, cfg, SeriesSampler::Terms::gamma) {}

  std::size_t k() const { return k_; }

  template <class Stream>
  double operator()(Stream& stream) const {
    const int sign = sample_rademacher(stream);
    return sign * std::exp(series_(stream));
  }

 private:
  std::size_t k_;
  SeriesSampler series_;
};

template <class Stream>
double sample_root_factor(Stream& stream, std::size_t k, const TruncationConfig& cfg) {
  return RootFactorSampler(k, cfg)(stream);
}

/// W_1 ... W_k from k consecutive factor draws on the same stream.
class RootProductSampler {
 public:
  RootProductSampler(std::size_t k, const TruncationConfig& cfg) : factor_(k, cfg) {}

  template <class Stream>
  double operator()(Stream& stream) const {
    double product = 1.0;
    for (std::size_t i = 0; i < factor_.k(); ++i) product *= factor_(stream);
    return product;
  }

 private:
  RootFactorSampler factor_;
};

template <class Stream>
double sample_root_product(Stream& stream, std::size_t k, const TruncationConfig& cfg) {
  return RootProductSampler(k, cfg)(stream);
}

}  // namespace expnormal

#endif  // EXPNORMAL_SAMPLERS_HPP

#ifndef EXPNORMAL_BATCH_HPP
#define EXPNORMAL_BATCH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "expnormal/random_stream.hpp"
#include "expnormal/samplers.hpp"
#include "expnormal/truncation.hpp"
#include "expnormal/variates.hpp"

namespace expnormal {

enum class Distribution {
  expnormal_series,
  expnormal_direct,
  root_factor,
  root_product,
  uniform,
  exponential,
  gamma,
  normal,
  rademacher,
};

inline std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::expnormal_series: return "expnormal-series";
    case Distribution::expnormal_direct: return "expnormal-direct";
    case Distribution::root_factor: return "root-factor";
    case Distribution::root_product: return "root-product";
    case Distribution::uniform: return "uniform";
    case Distribution::exponential: return "exponential";
    case Distribution::gamma: return "gamma";
    case Distribution::normal: return "normal";
    case Distribution::rademacher: return "rademacher";
  }
  return "unknown";
}

inline std::optional<Distribution> parse_distribution(std::string_view s) {
  for (auto d : {Distribution::expnormal_series, Distribution::expnormal_direct,
                 Distribution::root_factor, Distribution::root_product, Distribution::uniform,
                 Distribution::exponential, Distribution::gamma, Distribution::normal,
                 Distribution::rademacher}) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

struct SampleParams {
  std::size_t k = 1;
  TruncationConfig cfg{};
  double shape = 1.0;  // gamma only
};

struct BatchMeta {
  Distribution distribution = Distribution::expnormal_direct;
  SampleParams params{};
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::size_t n = 0;
};

struct SampleBatch {
  std::vector<double> values;
  BatchMeta meta;

  std::size_t size() const { return values.size(); }
};

/// Draws per substream. Draw i of a batch comes from
/// RandomStream(seed, stream_id, i / kBatchChunk), consumed in index order,
/// so the batch does not depend on the worker count.
inline constexpr std::size_t kBatchChunk = 4096;

namespace detail {

using DrawFn = std::function<double(RandomStream&)>;

inline DrawFn make_draw(Distribution d, const SampleParams& p) {
  switch (d) {
    case Distribution::expnormal_series: {
      SeriesSampler s(1, p.cfg, SeriesSampler::Terms::exponential);
      return [s](RandomStream& r) { return s(r); };
    }
    case Distribution::expnormal_direct:
      return [](RandomStream& r) { return sample_expnormal_direct(r); };
    case Distribution::root_factor: {
      RootFactorSampler s(p.k, p.cfg);
      return [s](RandomStream& r) { return s(r); };
    }
    case Distribution::root_product: {
      RootProductSampler s(p.k, p.cfg);
      return [s](RandomStream& r) { return s(r); };
    }
    case Distribution::uniform:
      return [](RandomStream& r) { return sample_uniform(r); };
    case Distribution::exponential:
      return [](RandomStream& r) { return sample_exponential(r); };
    case Distribution::gamma: {
      GammaSmallShape g(p.shape);
      return [g](RandomStream& r) { return g(r); };
    }
    case Distribution::normal:
      return [](RandomStream& r) { return sample_normal(r); };
    case Distribution::rademacher:
      return [](RandomStream& r) { return static_cast<double>(sample_rademacher(r)); };
  }
  throw ConfigError("unknown distribution");
}

}  // namespace detail

/// n draws of `distribution` on the stream family (seed, stream_id).
/// `workers` > 1 fans chunks out over threads; output is identical for any
/// worker count.
inline SampleBatch make_batch(Distribution distribution, const SampleParams& params, std::size_t n,
                              std::uint64_t seed, std::uint64_t stream_id,
                              unsigned workers = 1) {
  if (n < 1) throw ConfigError("make_batch: n must be at least 1");
  const auto draw = detail::make_draw(distribution, params);

  SampleBatch batch;
  batch.meta = {distribution, params, seed, stream_id, n};
  batch.values.resize(n);
  const std::size_t chunks = (n + kBatchChunk - 1) / kBatchChunk;

  auto run_chunk = [&](std::size_t c) {
    RandomStream stream(seed, stream_id, c);
    const std::size_t end = std::min(n, (c + 1) * kBatchChunk);
    for (std::size_t i = c * kBatchChunk; i < end; ++i) batch.values[i] = draw(stream);
  };

  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    }
  }

  for (double v : batch.values) {
    if (!std::isfinite(v)) throw ConfigError("make_batch: non-finite draw");
  }
  return batch;
}

}  // namespace expnormal

#endif  // EXPNORMAL_BATCH_HPP

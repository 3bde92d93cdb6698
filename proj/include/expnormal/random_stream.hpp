#ifndef EXPNORMAL_RANDOM_STREAM_HPP
#define EXPNORMAL_RANDOM_STREAM_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <type_traits>

namespace expnormal {

/// Philox4x64-10 counter-based block function (Salmon et al., Random123).
/// Maps a 256-bit counter and a 128-bit key to 256 random bits.
class Philox4x64 {
 public:
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const auto [hi0, lo0] = mulhilo(kMul0, ctr[0]);
      const auto [hi1, lo1] = mulhilo(kMul1, ctr[2]);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

  /// Blocks for counters (first, c1, c2, c3) ... (first + Lanes - 1, c1, c2, c3),
  /// written word-interleaved to out[4 * lane + i]. Same values as calling
  /// block() per lane; evaluating lanes together hides multiply latency.
  template <std::size_t Lanes>
  static void blocks(std::uint64_t first, std::uint64_t c1, std::uint64_t c2, std::uint64_t c3,
                     Key key, std::array<std::uint64_t, 4 * Lanes>& out) {
    std::array<std::uint64_t, Lanes> x0, x1, x2, x3;
    for (std::size_t l = 0; l < Lanes; ++l) {
      x0[l] = first + l;
      x1[l] = c1;
      x2[l] = c2;
      x3[l] = c3;
    }
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      for (std::size_t l = 0; l < Lanes; ++l) {
        const auto [hi0, lo0] = mulhilo(kMul0, x0[l]);
        const auto [hi1, lo1] = mulhilo(kMul1, x2[l]);
        x0[l] = hi1 ^ x1[l] ^ key[0];
        x1[l] = lo1;
        x2[l] = hi0 ^ x3[l] ^ key[1];
        x3[l] = lo0;
      }
    }
    for (std::size_t l = 0; l < Lanes; ++l) {
      out[4 * l] = x0[l];
      out[4 * l + 1] = x1[l];
      out[4 * l + 2] = x2[l];
      out[4 * l + 3] = x3[l];
    }
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  struct HiLo {
    std::uint64_t hi;
    std::uint64_t lo;
  };
  static HiLo mulhilo(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    return {static_cast<std::uint64_t>(p >> 64), static_cast<std::uint64_t>(p)};
  }
};

/// Seeded, reproducible source of 64-bit words.
///
/// The key is (seed, stream_id); the counter is (block index, substream, 0).
/// Distinct (seed, stream_id, substream) triples therefore address disjoint
/// regions of one keyed bijection, and distinct keys give independent
/// Philox streams. The sequence depends on nothing but these three values.
///
/// One call to next_u64() consumes one word; block b yields words 4b..4b+3.
/// A stream is single-owner and must not be shared between threads.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t substream = 0)
      : seed_(seed), stream_id_(stream_id), substream_(substream) {}

  std::uint64_t next_u64() {
    if (index_ == kBufferWords) refill();
    return buffer_[index_++];
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t substream() const { return substream_; }

  /// Words consumed so far.
  std::uint64_t position() const { return block_ * 4 - (kBufferWords - index_); }

 private:
  static constexpr std::size_t kLanes = 8;
  static constexpr std::size_t kBufferWords = 4 * kLanes;

  void refill() {
    Philox4x64::blocks<kLanes>(block_, substream_, 0, 0, {seed_, stream_id_}, buffer_);
    block_ += kLanes;
    index_ = 0;
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t substream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, kBufferWords> buffer_{};
  std::size_t index_ = kBufferWords;
};

/// TEST-ONLY degenerate stream. Every primitive variate drawn from it returns
/// its distribution's mean (exponential 1, Gamma(a) a, normal 0) and the
/// Rademacher sign is +1, so series samplers collapse to their constants.
struct MeanPathStream {};

template <class Stream>
inline constexpr bool is_mean_path_v = std::is_same_v<std::remove_cvref_t<Stream>, MeanPathStream>;

}  // namespace expnormal

#endif  // EXPNORMAL_RANDOM_STREAM_HPP

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace nerf {

// Reproducible splittable random stream.
//
// Frozen algorithm (documented so results stay reproducible across builds of
// the same source): xoshiro256++ over a state seeded by finalizer-mixing the
// (seed, stream_id) pair per lane; uniforms take the top 53 bits; normals use
// the Marsaglia polar transform with the second variate cached. Identical
// (seed, stream_id) give identical sequences; distinct stream_ids give
// statistically independent streams. Bit-exact agreement across compilers is
// not promised, only across runs of the same binary.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    for (int lane = 0; lane < 4; ++lane) {
      std::uint64_t a = mix64(seed + 0x9e3779b97f4a7c15ULL * std::uint64_t(lane + 1));
      std::uint64_t b = mix64(stream_id + 0xbf58476d1ce4e5b9ULL * std::uint64_t(lane + 1));
      s_[lane] = a ^ rotl(b, 23);
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9e3779b97f4a7c15ULL;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Independent child stream; key is hashed into the id so nested use does
  // not collide with sibling top-level streams.
  RngStream substream(std::uint64_t key) const {
    return RngStream(seed_, mix64(stream_id_ ^ mix64(key + 0x94d049bb133111ebULL)));
  }

  std::uint64_t next_u64() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound) via multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t x = next_u64();
    __uint128_t m = (__uint128_t)x * bound;
    std::uint64_t lo = (std::uint64_t)m;
    if (lo < bound) {
      std::uint64_t t = (0 - bound) % bound;
      while (lo < t) {
        x = next_u64();
        m = (__uint128_t)x * bound;
        lo = (std::uint64_t)m;
      }
    }
    return (std::uint64_t)(m >> 64);
  }

  double next_normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_uniform() - 1.0;
      v = 2.0 * next_uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return u * f;
  }

  // X + iY with X, Y independent standard normals, so E|z|^2 = 2.
  std::complex<double> next_complex_normal() {
    double re = next_normal();
    double im = next_normal();
    return {re, im};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  // 64-bit finalizer; full-avalanche mix of the input word.
  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace nerf

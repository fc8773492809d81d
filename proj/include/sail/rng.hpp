#pragma once

#include <cmath>
#include <cstdint>

#include "sail/angles.hpp"

namespace sail {

// Counter-based random streams (Philox4x32-10, Salmon et al. 2011).
// A stream is addressed by (master seed, path index); draws within a
// stream are addressed by a step counter. Streams are therefore
// independent, order-independent and bit-reproducible: the k-th normal
// of path i never depends on scheduling or on other paths.

namespace detail {

inline constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
inline constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                      std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

struct PhiloxBlock {
  std::uint32_t v[4];
};

inline PhiloxBlock philox4x32_10(std::uint32_t c0, std::uint32_t c1,
                                 std::uint32_t c2, std::uint32_t c3,
                                 std::uint32_t k0, std::uint32_t k1) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mul_hi_lo(kPhiloxM4x32A, c0, lo0, hi0);
    mul_hi_lo(kPhiloxM4x32B, c2, lo1, hi1);
    const std::uint32_t n0 = hi1 ^ c1 ^ k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c3 ^ k1;
    const std::uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kPhiloxW32A;
    k1 += kPhiloxW32B;
  }
  return PhiloxBlock{{c0, c1, c2, c3}};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform in (0, 1], 53-bit resolution. The +1 keeps log() finite.
inline double u53_open0(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t x = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>((x >> 11) + 1ull) * 0x1.0p-53;
}

}  // namespace detail

// Stream of standard normals for one simulation path.
class NormalStream {
 public:
  NormalStream(std::uint64_t master_seed, std::uint64_t path_index)
      : counter_(0) {
    const std::uint64_t mixed = detail::splitmix64(
        detail::splitmix64(master_seed) ^
        (path_index * 0xD1B54A32D192ED03ull + 0x632BE59BD9B4E019ull));
    key0_ = static_cast<std::uint32_t>(mixed);
    key1_ = static_cast<std::uint32_t>(mixed >> 32);
  }

  // k-th normal of the stream, independent of calls made so far.
  double normal_at(std::uint64_t k) const {
    const auto b = detail::philox4x32_10(static_cast<std::uint32_t>(k),
                                         static_cast<std::uint32_t>(k >> 32),
                                         0u, 0u, key0_, key1_);
    const double u1 = detail::u53_open0(b.v[0], b.v[1]);
    const double u2 = detail::u53_open0(b.v[2], b.v[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  double next() { return normal_at(counter_++); }

  // Uniform in (0,1] at counter position k on a separate sub-stream.
  double uniform_at(std::uint64_t k) const {
    const auto b = detail::philox4x32_10(static_cast<std::uint32_t>(k),
                                         static_cast<std::uint32_t>(k >> 32),
                                         1u, 0u, key0_, key1_);
    return detail::u53_open0(b.v[0], b.v[1]);
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint32_t key0_, key1_;
  std::uint64_t counter_;
};

}  // namespace sail

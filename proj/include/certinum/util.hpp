#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace certinum {

/// Distance to the next representable double above |x| (unit in the last place).
inline double ulp_of(double x) {
  x = std::fabs(x);
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  double next = std::nextafter(x, std::numeric_limits<double>::infinity());
  return next - x;
}

/// |a - b| <= k ulps measured at the given magnitude scale.
inline bool eq_within_ulps(double a, double b, unsigned k, double scale) {
  if (a == b) return true;
  if (k == 0) return false;
  return std::fabs(a - b) <= static_cast<double>(k) * ulp_of(scale);
}

// splitmix64: tiny deterministic generator, identical across platforms.
// Sample plans promise bit-reproducible sequences for a fixed seed, which
// rules out std::uniform_real_distribution (implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;
inline constexpr std::uint64_t kDefaultBudget = 1000000;

}  // namespace certinum

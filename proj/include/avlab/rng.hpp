#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace avlab {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/**
 * Deterministic counter-based generator: the stream is a pure function of
 * (seed, index), so indexed work items can be partitioned across workers in
 * any order without changing any drawn value.
 */
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
               mix64(index * 0xff51afd7ed558ccdULL + 0x2545f4914f6cdd1dULL)) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Unbiased draw from [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform permutation of [n] in one-line notation via Fisher-Yates.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    for (int i = n - 1; i >= 1; --i)
      std::swap(p[i], p[static_cast<int>(below(static_cast<std::uint64_t>(i) + 1))]);
    return p;
  }

 private:
  std::uint64_t state_;
};

}  // namespace avlab

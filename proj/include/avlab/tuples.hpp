#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "avlab/common.hpp"
#include "avlab/errors.hpp"
#include "avlab/parallel.hpp"
#include "avlab/permutation.hpp"
#include "avlab/rng.hpp"

namespace avlab {

/**
 * Parallel containment: one common index set c_1 < ... < c_m that is
 * order-isomorphic to the pattern in every coordinate simultaneously.
 */
inline bool contains_parallel(const PermutationTuple& host, const PermutationTuple& pattern) {
  if (host.arity() != pattern.arity())
    throw ArityMismatch("host arity " + std::to_string(host.arity()) +
                        " vs pattern arity " + std::to_string(pattern.arity()));
  const int d = host.arity();
  const int n = host.size(), m = pattern.size();
  if (m == 0) return true;
  if (m > n) return false;
  std::vector<int> sel(m + 1, 0);
  auto rec = [&](auto&& self, int j) -> bool {
    if (j > m) return true;
    for (int c = sel[j - 1] + 1; c <= n - (m - j); ++c) {
      bool ok = true;
      for (int i = 1; i <= d && ok; ++i)
        for (int jp = 1; jp < j && ok; ++jp)
          if ((host.coord(i)(sel[jp]) < host.coord(i)(c)) !=
              (pattern.coord(i)(jp) < pattern.coord(i)(j)))
            ok = false;
      if (ok) {
        sel[j] = c;
        if (self(self, j + 1)) return true;
      }
    }
    return false;
  };
  return rec(rec, 1);
}

struct TupleCountOptions {
  double max_work = 1e8;  // ceiling on n!^d enumeration steps
  int threads = 1;
};

namespace detail {

inline PermutationTuple tuple_prefix(const PermutationTuple& t, int arity) {
  std::vector<Permutation> coords(t.coords().begin(), t.coords().begin() + arity);
  return PermutationTuple(std::move(coords));
}

}  // namespace detail

/**
 * Number of d-tuples over S_n that avoid the pattern tuple. Coordinates are
 * assigned depth first in lexicographic order; once an assigned prefix of
 * coordinates already fails to host the corresponding pattern prefix, every
 * completion avoids, and the remaining coordinates are counted in bulk.
 */
inline BigInt count_tuple_avoiders(const PermutationTuple& pattern, int n,
                                   const TupleCountOptions& opt = {}) {
  if (n < 1) throw BadParameter("n must be positive");
  const int d = pattern.arity();
  if (d < 1) throw BadParameter("pattern needs at least one coordinate");
  double work = 1;
  for (int i = 2; i <= n; ++i) work *= i;
  work = std::pow(work, d);
  if (work > opt.max_work)
    throw ResourceLimit("n!^d exceeds the configured work limit");

  const BigInt nfact = factorial(n);
  if (pattern.size() > n) return bigpow(nfact, d);
  std::vector<BigInt> pw(d + 1);
  pw[0] = 1;
  for (int i = 1; i <= d; ++i) pw[i] = pw[i - 1] * nfact;
  std::vector<PermutationTuple> prefix;
  prefix.reserve(d + 1);
  for (int i = 0; i <= d; ++i) prefix.push_back(detail::tuple_prefix(pattern, i));

  // One task per first image of the first coordinate.
  auto task = [&](std::size_t ti) -> BigInt {
    BigInt count = 0;
    std::vector<std::vector<int>> assigned(d);
    auto rec = [&](auto&& self, int level) -> void {
      std::vector<Permutation> coords;
      coords.reserve(level);
      for (int i = 0; i < level; ++i)
        coords.push_back(Permutation::from_images(assigned[i]));
      if (!contains_parallel(PermutationTuple(std::move(coords)), prefix[level])) {
        count += pw[d - level];
        return;
      }
      if (level == d) return;
      auto& img = assigned[level];
      img.resize(n);
      std::iota(img.begin(), img.end(), 1);
      do self(self, level + 1);
      while (std::next_permutation(img.begin(), img.end()));
    };
    auto& first = assigned[0];
    first.resize(n);
    first[0] = static_cast<int>(ti) + 1;
    for (int v = 1, at = 1; v <= n; ++v)
      if (v != first[0]) first[at++] = v;
    do rec(rec, 1);
    while (std::next_permutation(first.begin() + 1, first.end()));
    return count;
  };

  BigInt total = 0;
  for (const BigInt& part :
       run_tasks<BigInt>(static_cast<std::size_t>(n), opt.threads, task))
    total += part;
  return total;
}

/// Replaces coordinate i (1-based) by its value complement; an involution.
inline PermutationTuple complement_at(const PermutationTuple& t, int coordinate) {
  if (coordinate < 1 || coordinate > t.arity())
    throw IndexOutOfRange("coordinate " + std::to_string(coordinate) +
                          " outside 1.." + std::to_string(t.arity()));
  auto coords = t.coords();
  coords[coordinate - 1] = coords[coordinate - 1].complement();
  return PermutationTuple(std::move(coords));
}

/// Weak Bruhat order: the inversion set of a is contained in that of b.
inline bool weak_bruhat_leq(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw SizeMismatch("permutation sizes differ");
  const int n = a.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (a(i) > a(j) && b(i) < b(j)) return false;
  return true;
}

struct MonteCarloEstimate {
  double estimate = 0.0;
  std::uint64_t samples = 0;
  double standard_error = 0.0;
  std::uint64_t seed = 0;
};

/**
 * Monte Carlo estimate of the probability that a uniform d-tuple over S_n
 * forms an antichain, i.e. avoids (12, ..., 12) in parallel. Each sample's
 * permutations are drawn from a counter-based stream keyed by (seed, sample
 * index), so the estimate is bit-identical for any thread count.
 */
inline MonteCarloEstimate antichain_probability(int d, int n, std::uint64_t samples,
                                                std::uint64_t seed, int threads = 1) {
  if (d < 1) throw BadParameter("d must be positive");
  if (n < 1) throw BadParameter("n must be positive");
  if (samples < 1) throw BadParameter("samples must be positive");
  constexpr std::uint64_t kChunk = 4096;
  const std::size_t chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  auto task = [&](std::size_t ci) -> std::uint64_t {
    const std::uint64_t lo = ci * kChunk;
    const std::uint64_t hi = std::min(samples, lo + kChunk);
    std::uint64_t hits = 0;
    std::vector<std::vector<int>> perms(d);
    for (std::uint64_t s = lo; s < hi; ++s) {
      SampleRng rng(seed, s);
      for (int c = 0; c < d; ++c) perms[c] = rng.permutation(n);
      bool antichain = true;
      for (int i = 0; i < n && antichain; ++i)
        for (int j = i + 1; j < n && antichain; ++j) {
          bool ascending = true;
          for (int c = 0; c < d && ascending; ++c)
            if (perms[c][i] > perms[c][j]) ascending = false;
          if (ascending) antichain = false;
        }
      if (antichain) ++hits;
    }
    return hits;
  };
  std::uint64_t hits = 0;
  for (std::uint64_t part : run_tasks<std::uint64_t>(chunks, threads, task)) hits += part;
  MonteCarloEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  est.standard_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(samples));
  return est;
}

}  // namespace avlab

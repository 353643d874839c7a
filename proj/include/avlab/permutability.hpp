#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "avlab/errors.hpp"
#include "avlab/permutation.hpp"
#include "avlab/set_partition.hpp"

namespace avlab {

/**
 * A division of [n] into consecutive intervals, stored as the final element
 * of each interval. Valid for a partition when no interval meets a block
 * twice.
 */
struct IntervalCover {
  int n = 0;
  std::vector<int> ends;

  int count() const { return static_cast<int>(ends.size()); }

  /// [first, last] of the 0-based i-th interval.
  std::pair<int, int> interval(int i) const {
    return {i == 0 ? 1 : ends[i - 1] + 1, ends[i]};
  }

  bool valid_for(const SetPartition& p) const {
    if (n != p.size()) return false;
    std::vector<char> seen(p.block_count(), 0);
    for (int i = 0; i < count(); ++i) {
      std::fill(seen.begin(), seen.end(), 0);
      const auto [lo, hi] = interval(i);
      for (int e = lo; e <= hi; ++e) {
        if (seen[p.block_of(e)]) return false;
        seen[p.block_of(e)] = 1;
      }
    }
    return true;
  }
};

inline std::string render(const IntervalCover& c) {
  std::string out;
  for (int i = 0; i < c.count(); ++i) {
    if (i) out += '|';
    const auto [lo, hi] = c.interval(i);
    out += std::to_string(lo);
    if (hi != lo) out += '-' + std::to_string(hi);
  }
  return out;
}

/**
 * Greedy minimum interval cover: sweep 1..n extending the current interval,
 * cutting exactly when the next element's block already meets it. Intervals
 * come out maximal and leftmost.
 */
inline IntervalCover min_interval_cover(const SetPartition& p) {
  IntervalCover c;
  c.n = p.size();
  if (p.size() == 0) return c;
  std::vector<int> last(p.block_count(), 0);
  int start = 1;
  for (int e = 1; e <= p.size(); ++e) {
    const int b = p.block_of(e);
    if (last[b] >= start) {
      c.ends.push_back(e - 1);
      start = e;
    }
    last[b] = e;
  }
  c.ends.push_back(p.size());
  return c;
}

/// Interval permutability: minimum interval-cover size minus one.
inline int permutability(const SetPartition& p) {
  return std::max(0, min_interval_cover(p).count() - 1);
}

/// Exhaustive reference: minimum over all 2^(n-1) compositions of [n] of the
/// valid interval count, minus one.
inline int permutability_oracle(const SetPartition& p, int max_n = 10) {
  const int n = p.size();
  if (n > max_n)
    throw ResourceLimit("exhaustive permutability over [" + std::to_string(n) +
                        "] exceeds the configured limit " + std::to_string(max_n));
  if (n <= 1) return 0;
  int best = n;
  std::vector<char> seen(p.block_count(), 0);
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    int parts = 1;
    bool ok = true;
    std::fill(seen.begin(), seen.end(), 0);
    for (int e = 1; e <= n && ok; ++e) {
      const int b = p.block_of(e);
      if (seen[b])
        ok = false;
      else
        seen[b] = 1;
      if (e < n && ((mask >> (e - 1)) & 1)) {
        std::fill(seen.begin(), seen.end(), 0);
        ++parts;
      }
    }
    if (ok) best = std::min(best, parts);
  }
  return best - 1;
}

/// Strongly rectangular: permutability at most one.
inline bool is_srp(const SetPartition& p) { return permutability(p) <= 1; }

/**
 * The partition of [(d+1)m] whose i-th block is {i, m + s1(i), 2m + s2(i),
 * ..., dm + sd(i)} for the d-tuple (s1, ..., sd) over S_m. Its permutability
 * is exactly d.
 */
inline SetPartition correspondent_partition(const PermutationTuple& t) {
  const int d = t.arity();
  if (d < 1) throw BadParameter("tuple needs at least one coordinate");
  const int m = t.size();
  std::vector<std::vector<int>> blocks;
  blocks.reserve(m);
  for (int i = 1; i <= m; ++i) {
    std::vector<int> b{i};
    for (int j = 1; j <= d; ++j) b.push_back(j * m + t.coord(j)(i));
    blocks.push_back(std::move(b));
  }
  return SetPartition::from_blocks(std::move(blocks));
}

/// Number of partitions of [n] at each permutability, as (d, count) pairs in
/// increasing d; counts sum to bell(n).
inline std::vector<std::pair<int, std::uint64_t>> pm_distribution(
    int n, int max_n = kMaxEnumerationSize) {
  std::map<int, std::uint64_t> dist;
  for_each_partition(
      n, [&](const SetPartition& p) { ++dist[permutability(p)]; }, max_n);
  return {dist.begin(), dist.end()};
}

}  // namespace avlab

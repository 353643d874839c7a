#pragma once

// Reference implementations used only by the tests. Everything here is
// deliberately brute force and independent of the library under test:
// partitions are plain block lists, permutations are one-line int vectors,
// hypergraphs are plain edge lists. Scopes are small enough that no pruning
// is needed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using Blocks = std::vector<std::vector<int>>;
using Perm = std::vector<int>;
using Tuple = std::vector<Perm>;
using Edges = std::vector<std::vector<int>>;

inline Blocks canonical(Blocks b) {
  for (auto& blk : b) std::sort(blk.begin(), blk.end());
  std::sort(b.begin(), b.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return b;
}

/// All set partitions of [n] in canonical block form (element n=0 gives the
/// single empty partition). Built by inserting 1..n into every block or a
/// fresh one.
inline std::vector<Blocks> all_partitions(int n) {
  std::vector<Blocks> out{Blocks{}};
  for (int e = 1; e <= n; ++e) {
    std::vector<Blocks> next;
    for (const auto& p : out) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        Blocks q = p;
        q[i].push_back(e);
        next.push_back(std::move(q));
      }
      Blocks q = p;
      q.push_back({e});
      next.push_back(std::move(q));
    }
    out = std::move(next);
  }
  return out;
}

inline int element_count(const Blocks& b) {
  int n = 0;
  for (const auto& blk : b) n += static_cast<int>(blk.size());
  return n;
}

inline std::vector<int> block_index_of(const Blocks& b, int n) {
  std::vector<int> bo(n + 1, -1);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (int e : b[i]) bo[e] = static_cast<int>(i);
  return bo;
}

/// Advances a k-combination of [1..n] in lexicographic order.
inline bool next_combination(std::vector<int>& sel, int n) {
  const int k = static_cast<int>(sel.size());
  for (int i = k - 1; i >= 0; --i) {
    if (sel[i] < n - (k - 1 - i)) {
      ++sel[i];
      for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Containment of set-partition patterns: some k-subset of host elements has
/// pairwise co-membership identical to the pattern's.
inline bool partition_contains(const Blocks& host, const Blocks& pattern) {
  const int n = element_count(host);
  const int k = element_count(pattern);
  if (k == 0) return true;
  if (k > n) return false;
  const auto hb = block_index_of(host, n);
  const auto pb = block_index_of(pattern, k);
  std::vector<int> sel(k);
  std::iota(sel.begin(), sel.end(), 1);
  do {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = i + 1; j < k && ok; ++j)
        if ((hb[sel[i]] == hb[sel[j]]) != (pb[i + 1] == pb[j + 1])) ok = false;
    if (ok) return true;
  } while (next_combination(sel, n));
  return false;
}

/// Minimum interval count over all 2^(n-1) compositions of [n] such that no
/// interval meets a block twice, minus one. Returns 0 for n <= 1.
inline int permutability_bf(const Blocks& p, int n) {
  if (n <= 1) return 0;
  const auto bo = block_index_of(p, n);
  int best = n;
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    int parts = 1;
    bool ok = true;
    std::vector<char> seen(p.size(), 0);
    for (int e = 1; e <= n && ok; ++e) {
      if (seen[bo[e]])
        ok = false;
      else
        seen[bo[e]] = 1;
      if (e < n && ((mask >> (e - 1)) & 1)) {
        std::fill(seen.begin(), seen.end(), 0);
        ++parts;
      }
    }
    if (ok) best = std::min(best, parts);
  }
  return best - 1;
}

/// Involution numbers I(n) = I(n-1) + (n-1) I(n-2), I(0) = I(1) = 1.
inline std::vector<std::uint64_t> involutions(int nmax) {
  std::vector<std::uint64_t> v(nmax + 1);
  v[0] = 1;
  if (nmax >= 1) v[1] = 1;
  for (int n = 2; n <= nmax; ++n) v[n] = v[n - 1] + (n - 1) * v[n - 2];
  return v;
}

/// Stirling numbers of the second kind S(n, k).
inline std::vector<std::vector<std::uint64_t>> stirling2(int nmax) {
  std::vector<std::vector<std::uint64_t>> s(nmax + 1,
                                            std::vector<std::uint64_t>(nmax + 1, 0));
  s[0][0] = 1;
  for (int n = 1; n <= nmax; ++n)
    for (int k = 1; k <= n; ++k) s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
  return s;
}

inline std::vector<Perm> all_perms(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Classical single-permutation pattern containment.
inline bool perm_contains_classical(const Perm& host, const Perm& pat) {
  const int n = static_cast<int>(host.size());
  const int m = static_cast<int>(pat.size());
  if (m == 0) return true;
  if (m > n) return false;
  std::vector<int> sel(m);
  std::iota(sel.begin(), sel.end(), 1);
  do {
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      for (int j = i + 1; j < m && ok; ++j)
        if ((host[sel[i] - 1] < host[sel[j] - 1]) != (pat[i] < pat[j])) ok = false;
    if (ok) return true;
  } while (next_combination(sel, n));
  return false;
}

inline Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i] - 1] = static_cast<int>(i) + 1;
  return q;
}

/// Inversion-set inclusion: every inversion of a is an inversion of b.
inline bool inversions_subset(const Perm& a, const Perm& b) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a[i] > a[j] && b[i] < b[j]) return false;
  return true;
}

/// Parallel containment of d-tuples: one common index set, order-isomorphic in
/// every coordinate.
inline bool tuple_contains(const Tuple& host, const Tuple& pat) {
  const int d = static_cast<int>(host.size());
  const int n = host.empty() ? 0 : static_cast<int>(host[0].size());
  const int m = pat.empty() ? 0 : static_cast<int>(pat[0].size());
  if (m == 0) return true;
  if (m > n) return false;
  std::vector<int> sel(m);
  std::iota(sel.begin(), sel.end(), 1);
  do {
    bool ok = true;
    for (int c = 0; c < d && ok; ++c)
      for (int i = 0; i < m && ok; ++i)
        for (int j = i + 1; j < m && ok; ++j)
          if ((host[c][sel[i] - 1] < host[c][sel[j] - 1]) != (pat[c][i] < pat[c][j]))
            ok = false;
    if (ok) return true;
  } while (next_combination(sel, n));
  return false;
}

/// Counts d-tuples over S_n avoiding the pattern tuple, by full enumeration.
inline std::uint64_t count_tuple_avoiders_bf(const Tuple& pat, int n) {
  const int d = static_cast<int>(pat.size());
  const auto perms = all_perms(n);
  std::vector<std::size_t> idx(d, 0);
  Tuple host(d);
  std::uint64_t count = 0;
  while (true) {
    for (int c = 0; c < d; ++c) host[c] = perms[idx[c]];
    if (!tuple_contains(host, pat)) ++count;
    int c = d - 1;
    while (c >= 0 && ++idx[c] == perms.size()) idx[c--] = 0;
    if (c < 0) break;
  }
  return count;
}

/// Number of pairs (s1, s2) over S_n with inv(s1^-1) a subset of inv(s2^-1).
inline std::uint64_t weak_bruhat_pairs(int n) {
  const auto perms = all_perms(n);
  std::uint64_t count = 0;
  for (const auto& a : perms)
    for (const auto& b : perms)
      if (inversions_subset(inverse(a), inverse(b))) ++count;
  return count;
}

/// Ordered-hypergraph containment: an order-preserving vertex injection plus
/// an injective edge map, vertex images of each pattern edge landing inside
/// the image edge.
inline bool hg_contains(int gn, const Edges& ge, int hn, const Edges& he) {
  if (hn > gn) return false;
  if (he.size() > ge.size()) return false;
  if (he.empty()) return true;
  std::vector<int> f(hn);
  std::iota(f.begin(), f.end(), 1);
  do {
    std::vector<char> used(ge.size(), 0);
    std::vector<std::size_t> assign(he.size(), 0);
    // DFS over injective edge assignments.
    std::size_t j = 0;
    bool done = false;
    while (true) {
      if (j == he.size()) {
        done = true;
        break;
      }
      bool advanced = false;
      for (std::size_t& g = assign[j]; g < ge.size(); ++g) {
        if (used[g]) continue;
        bool subset = true;
        for (int v : he[j]) {
          const int image = f[v - 1];
          if (!std::binary_search(ge[g].begin(), ge[g].end(), image)) {
            subset = false;
            break;
          }
        }
        if (subset) {
          used[g] = 1;
          ++j;
          if (j < he.size()) assign[j] = 0;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (j == 0) break;
      --j;
      used[assign[j]] = 0;
      ++assign[j];
    }
    if (done) return true;
  } while (next_combination(f, gn));
  return false;
}

/// All nonempty subsets of [n] as sorted vertex lists.
inline Edges all_candidate_edges(int n) {
  Edges out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> e;
    for (int v = 1; v <= n; ++v)
      if ((mask >> (v - 1)) & 1) e.push_back(v);
    out.push_back(std::move(e));
  }
  return out;
}

/// Maximum total edge weight of a hypergraph on [n] avoiding (hn, he), by
/// enumerating every subset of the candidate edge universe. n <= 4 only.
inline int max_weight_bf(int hn, const Edges& he, int n) {
  const auto cand = all_candidate_edges(n);
  const int m = static_cast<int>(cand.size());
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    Edges g;
    int w = 0;
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1) {
        g.push_back(cand[i]);
        w += static_cast<int>(cand[i].size());
      }
    if (w <= best) continue;
    if (!hg_contains(n, g, hn, he)) best = w;
  }
  return best;
}

}  // namespace oracle

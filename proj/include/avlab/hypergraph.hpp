#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "avlab/common.hpp"
#include "avlab/errors.hpp"
#include "avlab/set_partition.hpp"

namespace avlab {

/**
 * An ordered hypergraph on the linearly ordered vertex set [n]: a set of
 * nonempty vertex subsets. Edges are stored sorted (each edge increasing,
 * edges in lexicographic order, duplicates collapsed). Isolated vertices are
 * allowed; n = 0 with no edges is valid.
 */
class OrderedHypergraph {
 public:
  OrderedHypergraph() = default;

  /// n < 0 infers the vertex count as the maximum vertex mentioned.
  static OrderedHypergraph from_edges(std::vector<std::vector<int>> edges, int n = -1) {
    int maxv = 0;
    for (auto& e : edges) {
      if (e.empty()) throw BadParameter("empty edge");
      std::sort(e.begin(), e.end());
      if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw BadParameter("repeated vertex in edge");
      if (e.front() < 1) throw OutOfRange("vertex " + std::to_string(e.front()));
      maxv = std::max(maxv, e.back());
    }
    if (n < 0) n = maxv;
    if (maxv > n)
      throw OutOfRange("vertex " + std::to_string(maxv) + " outside 1.." +
                       std::to_string(n));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    OrderedHypergraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    return g;
  }

  int size() const { return n_; }
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Total weight i(G): the sum of all edge sizes.
  int weight() const {
    int w = 0;
    for (const auto& e : edges_) w += static_cast<int>(e.size());
    return w;
  }

  /// Common edge size when t-uniform, nullopt otherwise or when edgeless.
  std::optional<int> uniform_size() const {
    if (edges_.empty()) return std::nullopt;
    const auto t = edges_.front().size();
    for (const auto& e : edges_)
      if (e.size() != t) return std::nullopt;
    return static_cast<int>(t);
  }

  friend bool operator==(const OrderedHypergraph& a, const OrderedHypergraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }
  friend bool operator!=(const OrderedHypergraph& a, const OrderedHypergraph& b) {
    return !(a == b);
  }
  friend bool operator<(const OrderedHypergraph& a, const OrderedHypergraph& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.edges_ < b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> edges_;
};

inline int weight(const OrderedHypergraph& g) { return g.weight(); }

/// Parses "1,4;2,5,6;3" with an optional "@n" vertex-count suffix ("1,2@5",
/// "@4" for four isolated vertices).
inline OrderedHypergraph parse_hypergraph(std::string_view text) {
  int n = -1;
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    n = detail::parse_int(text.substr(at + 1), "vertex count");
    if (n < 0) throw MalformedText("negative vertex count");
    text = text.substr(0, at);
  }
  std::vector<std::vector<int>> edges;
  if (!text.empty())
    for (std::string_view part : detail::split(text, ';')) {
      if (part.empty()) throw MalformedText("empty edge");
      std::vector<int> edge;
      for (std::string_view token : detail::split(part, ','))
        edge.push_back(detail::parse_int(token, "vertex"));
      edges.push_back(std::move(edge));
    }
  return OrderedHypergraph::from_edges(std::move(edges), n);
}

inline std::string render(const OrderedHypergraph& g) {
  std::string out;
  int maxv = 0;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < g.edges()[i].size(); ++j) {
      if (j) out += ',';
      out += std::to_string(g.edges()[i][j]);
    }
    maxv = std::max(maxv, g.edges()[i].back());
  }
  if (maxv != g.size()) out += '@' + std::to_string(g.size());
  return out;
}

/**
 * Containment: an order-preserving injection of pattern vertices into host
 * vertices together with an injection of pattern edges into host edges such
 * that the vertex images of each pattern edge land inside its image edge
 * (not necessarily onto). Vertex images are searched depth first in
 * increasing order; edge assignment is a bipartite matching over the
 * surviving candidate sets.
 */
inline bool contains_hypergraph(const OrderedHypergraph& g, const OrderedHypergraph& h) {
  const int n = g.size(), hn = h.size();
  if (hn > n) return false;
  const auto& ge = g.edges();
  const auto& he = h.edges();
  const std::size_t eg = ge.size(), eh = he.size();
  if (eh > eg) return false;
  if (eh == 0) return true;
  const std::size_t words = (eg + 63) / 64;

  // Host edges holding each host vertex, as bitmasks over host edge ids.
  std::vector<std::uint64_t> vmask(static_cast<std::size_t>(n + 1) * words, 0);
  for (std::size_t i = 0; i < eg; ++i)
    for (int v : ge[i]) vmask[static_cast<std::size_t>(v) * words + i / 64] |= 1ULL << (i % 64);

  // Initial candidates per pattern edge: host edges at least as large.
  std::vector<std::uint64_t> cand(static_cast<std::size_t>(hn + 1) * eh * words, 0);
  for (std::size_t j = 0; j < eh; ++j)
    for (std::size_t i = 0; i < eg; ++i)
      if (ge[i].size() >= he[j].size()) cand[j * words + i / 64] |= 1ULL << (i % 64);

  std::vector<std::vector<int>> at(hn + 1);
  for (std::size_t j = 0; j < eh; ++j)
    for (int v : he[j]) at[v].push_back(static_cast<int>(j));

  std::vector<int> match(eg, -1);
  std::vector<char> visited(eh, 0);
  auto augment = [&](auto&& self, const std::uint64_t* cm, std::size_t j) -> bool {
    visited[j] = 1;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = cm[j * words + w];
      while (bits) {
        const int i = static_cast<int>(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
        if (match[i] < 0 ||
            (!visited[match[i]] && self(self, cm, static_cast<std::size_t>(match[i])))) {
          match[i] = static_cast<int>(j);
          return true;
        }
      }
    }
    return false;
  };

  std::vector<int> img(hn + 1, 0);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v > hn) {
      const std::uint64_t* cm = &cand[static_cast<std::size_t>(hn) * eh * words];
      std::fill(match.begin(), match.end(), -1);
      for (std::size_t j = 0; j < eh; ++j) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, cm, j)) return false;
      }
      return true;
    }
    const std::uint64_t* prev = &cand[static_cast<std::size_t>(v - 1) * eh * words];
    std::uint64_t* cur = &cand[static_cast<std::size_t>(v) * eh * words];
    for (int x = img[v - 1] + 1; x <= n - (hn - v); ++x) {
      std::copy(prev, prev + eh * words, cur);
      bool ok = true;
      for (int j : at[v]) {
        bool any = false;
        for (std::size_t w = 0; w < words; ++w) {
          cur[static_cast<std::size_t>(j) * words + w] &=
              vmask[static_cast<std::size_t>(x) * words + w];
          if (cur[static_cast<std::size_t>(j) * words + w]) any = true;
        }
        if (!any) {
          ok = false;
          break;
        }
      }
      if (ok) {
        img[v] = x;
        if (self(self, v + 1)) return true;
      }
    }
    return false;
  };
  return rec(rec, 1);
}

/**
 * Projection of a t-uniform hypergraph: delete the J-indexed smallest
 * positions from every edge and collapse duplicates. J must leave at least
 * one position. The vertex set stays [n].
 */
inline OrderedHypergraph project(const OrderedHypergraph& g, std::vector<int> drop) {
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  if (g.edges().empty()) {
    if (!drop.empty())
      throw BadIndexSet("projection of an edgeless hypergraph takes an empty index set");
    return g;
  }
  const auto t = g.uniform_size();
  if (!t) throw NotUniform("projection requires a uniform hypergraph");
  for (int i : drop)
    if (i < 1 || i > *t)
      throw BadIndexSet("position " + std::to_string(i) + " outside 1.." +
                        std::to_string(*t));
  if (static_cast<int>(drop.size()) >= *t)
    throw BadIndexSet("must keep at least one position");
  std::vector<std::vector<int>> edges;
  edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    std::vector<int> kept;
    kept.reserve(e.size() - drop.size());
    for (int pos = 1, di = 0; pos <= *t; ++pos) {
      if (di < static_cast<int>(drop.size()) && drop[di] == pos)
        ++di;
      else
        kept.push_back(e[pos - 1]);
    }
    edges.push_back(std::move(kept));
  }
  return OrderedHypergraph::from_edges(std::move(edges), g.size());
}

/// Blocks become edges on the same ground set; the result is 1-regular.
inline OrderedHypergraph partition_to_hypergraph(const SetPartition& p) {
  return OrderedHypergraph::from_edges(p.blocks(), p.size());
}

struct ContractionReport {
  OrderedHypergraph contracted;
  /// Contracted edge -> number of source edges that map onto it.
  std::vector<std::pair<std::vector<int>, int>> multiplicity;
};

/**
 * Contracts [n] onto s consecutive intervals (the n mod s larger ones first)
 * and replaces every edge by the set of intervals it meets, collapsing
 * duplicates. The report keeps the collapse multiplicities.
 */
inline ContractionReport interval_contract_report(const OrderedHypergraph& g, int s) {
  const int n = g.size();
  if (s < 1 || s > n)
    throw BadParameter("interval count must be between 1 and " + std::to_string(n));
  const int q = n / s, r = n % s;
  std::vector<int> level(n + 1, 0);
  for (int i = 1, v = 1; i <= s; ++i)
    for (int j = 0; j < q + (i <= r ? 1 : 0); ++j) level[v++] = i;
  std::map<std::vector<int>, int> mult;
  for (const auto& e : g.edges()) {
    std::vector<int> c;
    for (int x : e) c.push_back(level[x]);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    ++mult[c];
  }
  ContractionReport rep;
  std::vector<std::vector<int>> edges;
  edges.reserve(mult.size());
  for (const auto& [edge, count] : mult) {
    edges.push_back(edge);
    rep.multiplicity.emplace_back(edge, count);
  }
  rep.contracted = OrderedHypergraph::from_edges(std::move(edges), s);
  return rep;
}

inline OrderedHypergraph interval_contract(const OrderedHypergraph& g, int s) {
  return interval_contract_report(g, s).contracted;
}

/**
 * Streams the d-permutation hypergraphs with k edges: k disjoint edges of
 * size d on [dk], one vertex in each of the d length-k segments, the first
 * segment in order. There are (k!)^(d-1) of them, streamed in lexicographic
 * order of the segment permutations.
 */
class PermHypergraphStream {
 public:
  PermHypergraphStream(int k, int d, double max_count = 1e7) : k_(k), d_(d) {
    if (k < 1 || d < 1) throw BadParameter("k and d must be positive");
    double kf = 1;
    for (int i = 2; i <= k; ++i) kf *= i;
    double total = 1;
    for (int j = 1; j < d; ++j) total *= kf;
    if (total > max_count)
      throw ResourceLimit("(k!)^(d-1) exceeds the configured limit");
    taus_.assign(d - 1, std::vector<int>(k));
    for (auto& t : taus_) std::iota(t.begin(), t.end(), 1);
  }

  std::optional<OrderedHypergraph> next() {
    if (done_) return std::nullopt;
    std::vector<std::vector<int>> edges;
    edges.reserve(k_);
    for (int i = 1; i <= k_; ++i) {
      std::vector<int> e{i};
      for (int j = 1; j < d_; ++j) e.push_back(j * k_ + taus_[j - 1][i - 1]);
      edges.push_back(std::move(e));
    }
    auto g = OrderedHypergraph::from_edges(std::move(edges), d_ * k_);
    advance();
    return g;
  }

 private:
  void advance() {
    for (int c = d_ - 2; c >= 0; --c)
      if (std::next_permutation(taus_[c].begin(), taus_[c].end())) return;
    done_ = true;
  }

  int k_, d_;
  std::vector<std::vector<int>> taus_;
  bool done_ = false;
};

inline std::vector<OrderedHypergraph> enumerate_perm_hypergraphs(int k, int d,
                                                                 double max_count = 1e7) {
  PermHypergraphStream stream(k, d, max_count);
  std::vector<OrderedHypergraph> out;
  while (auto g = stream.next()) out.push_back(std::move(*g));
  return out;
}

struct MaxWeightResult {
  OrderedHypergraph best;
  int weight = 0;
  bool exact = true;
  std::uint64_t expanded = 0;
};

/**
 * Branch and bound for the maximum-weight hypergraph on [n] avoiding h.
 * Candidate edges (all nonempty subsets, or only the size-t ones when
 * uniform_t > 0) are branched on in decreasing-size lexicographic order,
 * include before exclude, pruning when the remaining candidate weight cannot
 * beat the incumbent. A greedy pass seeds the incumbent. When the budget of
 * node expansions runs out the best hypergraph found so far is returned with
 * exact = false.
 */
inline MaxWeightResult max_weight_avoiding(const OrderedHypergraph& h, int n,
                                           std::uint64_t budget, int uniform_t = 0,
                                           int max_n = 8) {
  if (n < 0) throw BadParameter("n must be nonnegative");
  if (budget < 1) throw BadParameter("budget must be positive");
  if (uniform_t < 0 || uniform_t > n)
    throw BadParameter("uniform edge size outside 0.." + std::to_string(n));
  if (n > max_n)
    throw ResourceLimit("candidate universe over [" + std::to_string(n) +
                        "] exceeds the configured limit " + std::to_string(max_n));
  if (h.edge_count() == 0 && h.size() <= n)
    throw BadParameter("pattern is contained in every hypergraph on [n]");

  std::vector<std::vector<int>> cand;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> e;
    for (int v = 1; v <= n; ++v)
      if ((mask >> (v - 1)) & 1) e.push_back(v);
    if (uniform_t == 0 || static_cast<int>(e.size()) == uniform_t)
      cand.push_back(std::move(e));
  }
  std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  const int m = static_cast<int>(cand.size());
  std::vector<int> suffix(m + 1, 0);
  for (int i = m - 1; i >= 0; --i)
    suffix[i] = suffix[i + 1] + static_cast<int>(cand[i].size());

  auto avoids = [&](const std::vector<std::vector<int>>& edges) {
    return !contains_hypergraph(OrderedHypergraph::from_edges(edges, n), h);
  };

  // Greedy seed.
  std::vector<std::vector<int>> greedy;
  int greedy_weight = 0;
  for (const auto& e : cand) {
    greedy.push_back(e);
    if (avoids(greedy))
      greedy_weight += static_cast<int>(e.size());
    else
      greedy.pop_back();
  }

  MaxWeightResult result;
  result.best = OrderedHypergraph::from_edges(greedy, n);
  result.weight = greedy_weight;

  std::vector<std::vector<int>> chosen;
  int w = 0;
  std::uint64_t expanded = 0;
  bool out_of_budget = false;
  auto rec = [&](auto&& self, int i) -> void {
    if (out_of_budget) return;
    if (++expanded > budget) {
      out_of_budget = true;
      return;
    }
    if (w > result.weight) {
      result.weight = w;
      result.best = OrderedHypergraph::from_edges(chosen, n);
    }
    if (i == m || w + suffix[i] <= result.weight) return;
    chosen.push_back(cand[i]);
    if (avoids(chosen)) {
      w += static_cast<int>(cand[i].size());
      self(self, i + 1);
      w -= static_cast<int>(cand[i].size());
    }
    chosen.pop_back();
    self(self, i + 1);
  };
  rec(rec, 0);
  result.exact = !out_of_budget;
  result.expanded = expanded;

  if (contains_hypergraph(result.best, h))
    throw std::logic_error("max-weight search produced a non-avoiding result");
  return result;
}

}  // namespace avlab

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "avlab/common.hpp"
#include "avlab/errors.hpp"
#include "avlab/parallel.hpp"
#include "avlab/permutability.hpp"
#include "avlab/permutation.hpp"
#include "avlab/rng.hpp"
#include "avlab/set_partition.hpp"

namespace avlab {

/// Bump on any counting-semantics change; stale cache entries are ignored.
inline constexpr const char* kEngineVersion = "1";

enum class CountKind {
  partition_avoiders,
  partition_avoiders_no_singletons,
  tuple_avoiders,
  bell,
};

inline std::string to_string(CountKind kind) {
  switch (kind) {
    case CountKind::partition_avoiders: return "partition_avoiders";
    case CountKind::partition_avoiders_no_singletons:
      return "partition_avoiders_no_singletons";
    case CountKind::tuple_avoiders: return "tuple_avoiders";
    case CountKind::bell: return "bell";
  }
  throw BadParameter("unknown count kind");
}

inline CountKind count_kind_from_string(const std::string& text) {
  if (text == "partition_avoiders") return CountKind::partition_avoiders;
  if (text == "partition_avoiders_no_singletons")
    return CountKind::partition_avoiders_no_singletons;
  if (text == "tuple_avoiders") return CountKind::tuple_avoiders;
  if (text == "bell") return CountKind::bell;
  throw BadParameter("unknown count kind: " + text);
}

struct CountRecord {
  CountKind kind;
  std::string pattern;
  int n = 0;
  BigInt value;
  std::string engine_version = kEngineVersion;
};

/**
 * Append-only JSONL store of CountRecords in counts.jsonl under a directory.
 * Records are one flat object per line with keys in fixed (alphabetical)
 * order. Lines that fail to parse and lines from other engine versions are
 * skipped on load; store() is idempotent.
 */
class CountCache {
 public:
  explicit CountCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    std::ifstream in(file_path());
    std::string line;
    while (std::getline(in, line)) {
      const auto j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) continue;
      if (!j.contains("engine_version") || !j.contains("kind") || !j.contains("n") ||
          !j.contains("pattern") || !j.contains("value"))
        continue;
      if (!j["engine_version"].is_string() ||
          j["engine_version"].get<std::string>() != kEngineVersion)
        continue;
      if (!j["kind"].is_string() || !j["n"].is_number_integer() ||
          !j["pattern"].is_string() || !j["value"].is_string())
        continue;
      try {
        entries_[{j["kind"].get<std::string>(), j["pattern"].get<std::string>(),
                  j["n"].get<int>()}] = BigInt(j["value"].get<std::string>());
      } catch (const std::exception&) {
      }
    }
  }

  std::optional<BigInt> lookup(CountKind kind, const std::string& pattern, int n) const {
    const auto it = entries_.find({to_string(kind), pattern, n});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void store(CountKind kind, const std::string& pattern, int n, const BigInt& value) {
    const Key key{to_string(kind), pattern, n};
    if (entries_.count(key)) return;
    entries_.emplace(key, value);
    nlohmann::json j;
    j["engine_version"] = kEngineVersion;
    j["kind"] = to_string(kind);
    j["n"] = n;
    j["pattern"] = pattern;
    j["value"] = value.str();
    std::ofstream out(file_path(), std::ios::app);
    out << j.dump() << '\n';
  }

  std::filesystem::path file_path() const { return dir_ / "counts.jsonl"; }
  std::size_t size() const { return entries_.size(); }

  /// Cache directory from the CLI flag, else AVOIDANCE_LAB_CACHE, else none.
  static std::optional<std::filesystem::path> resolve_dir(const std::string& flag) {
    if (!flag.empty()) return std::filesystem::path(flag);
    if (const char* env = std::getenv("AVOIDANCE_LAB_CACHE"); env && *env)
      return std::filesystem::path(env);
    return std::nullopt;
  }

 private:
  using Key = std::tuple<std::string, std::string, int>;
  std::filesystem::path dir_;
  std::map<Key, BigInt> entries_;
};

/// Partitions of [n] with every block of size >= 2:
/// x_n = sum_{j>=2} C(n-1, j-1) x_{n-j}, x_0 = 1, x_1 = 0.
inline BigInt bell_no_singletons(int n) {
  if (n < 0) throw BadParameter("negative n");
  std::vector<BigInt> x(n + 1);
  x[0] = 1;
  if (n >= 1) x[1] = 0;
  for (int i = 2; i <= n; ++i)
    for (int j = 2; j <= i; ++j) x[i] += binomial(i - 1, j - 1) * x[i - j];
  return x[n];
}

struct CountOptions {
  bool no_singletons = false;
  int threads = 1;
  int max_n = 12;
  CountCache* cache = nullptr;
};

namespace detail {

/// Engine state-width limits: host blocks indexed in a 16-bit mask, pattern
/// blocks in a fixed 16-slot image array.
inline constexpr int kEngineMaxN = 16;

constexpr std::array<std::int8_t, kEngineMaxN> untouched_img() {
  std::array<std::int8_t, kEngineMaxN> img{};
  for (auto& slot : img) slot = -1;
  return img;
}

/**
 * One partial embedding of the pattern into a host prefix: j pattern
 * elements matched, `used` the host blocks consumed by pattern blocks
 * (injectivity), img the host block of each partially matched pattern block
 * (-1 when untouched or fully matched; finished blocks keep only their used
 * bit).
 */
struct EmbedState {
  std::int8_t j = 0;
  std::uint16_t used = 0;
  std::array<std::int8_t, kEngineMaxN> img = untouched_img();

  friend bool operator==(const EmbedState& a, const EmbedState& b) {
    return a.j == b.j && a.used == b.used && a.img == b.img;
  }
  friend bool operator<(const EmbedState& a, const EmbedState& b) {
    if (a.j != b.j) return a.j < b.j;
    if (a.used != b.used) return a.used < b.used;
    return a.img < b.img;
  }
};

struct PatternInfo {
  int k = 0;
  std::vector<int> block_of;  // 0-based block per element 1..k
  std::vector<int> max_elem;  // last element of each block

  explicit PatternInfo(const SetPartition& p) : k(p.size()) {
    block_of.resize(k + 1);
    max_elem.assign(p.block_count(), 0);
    for (int e = 1; e <= k; ++e) {
      block_of[e] = p.block_of(e);
      max_elem[block_of[e]] = e;
    }
  }
};

/// A search node: elements 1..e-1 placed into b blocks, with the embedding
/// frontier for that prefix.
struct SearchNode {
  int e = 1;
  int b = 0;
  int singles = 0;
  std::vector<int> bsize;
  std::vector<EmbedState> states;
};

/// Extends every frontier state by "element e goes to host block c"; returns
/// false (prune) when some extension completes the pattern.
inline bool advance_states(const PatternInfo& pat, const std::vector<EmbedState>& in,
                           int c, std::vector<EmbedState>& out) {
  out = in;  // every embedding may also skip the new element
  for (const auto& s : in) {
    EmbedState ns = s;
    const int pb = pat.block_of[s.j + 1];
    if (s.img[pb] >= 0) {
      if (s.img[pb] != c) continue;
    } else {
      if ((s.used >> c) & 1) continue;
      ns.img[pb] = static_cast<std::int8_t>(c);
      ns.used |= static_cast<std::uint16_t>(1u << c);
    }
    ++ns.j;
    if (pat.max_elem[pb] == ns.j) ns.img[pb] = -1;
    if (ns.j == pat.k) return false;
    out.push_back(ns);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return true;
}

inline BigInt count_from_node(const PatternInfo& pat, int n, bool no_singletons,
                              SearchNode node) {
  BigInt total = 0;
  std::vector<EmbedState> scratch;
  auto rec = [&](auto&& self, SearchNode& cur) -> void {
    if (cur.e > n) {
      ++total;
      return;
    }
    for (int c = 0; c <= cur.b; ++c) {
      const int singles = cur.singles + (c == cur.b ? 1 : cur.bsize[c] == 1 ? -1 : 0);
      if (no_singletons && singles > n - cur.e) continue;
      if (!advance_states(pat, cur.states, c, scratch)) continue;
      SearchNode child;
      child.e = cur.e + 1;
      child.b = cur.b + (c == cur.b ? 1 : 0);
      child.singles = singles;
      child.bsize = cur.bsize;
      if (c == cur.b)
        child.bsize.push_back(1);
      else
        ++child.bsize[c];
      child.states = scratch;
      self(self, child);
    }
  };
  rec(rec, node);
  return total;
}

}  // namespace detail

/**
 * Exact B_n(pattern) (or B'_n with no_singletons) by RGF-lexicographic
 * backtracking. A frontier of partial embeddings is carried along the
 * prefix; a branch is cut as soon as any embedding completes, which is sound
 * because containment is monotone under restriction. Work is split across
 * threads by prefix, so the count is independent of the worker count.
 */
inline BigInt count_avoiders(const SetPartition& pattern, int n,
                             const CountOptions& opt = {}) {
  if (n < 0) throw BadParameter("n must be nonnegative");
  if (n > opt.max_n || n > detail::kEngineMaxN)
    throw ResourceLimit("n=" + std::to_string(n) + " exceeds the configured maximum " +
                        std::to_string(std::min(opt.max_n, detail::kEngineMaxN)));
  const CountKind kind = opt.no_singletons
                             ? CountKind::partition_avoiders_no_singletons
                             : CountKind::partition_avoiders;
  const std::string key = render(pattern);
  if (opt.cache)
    if (const auto hit = opt.cache->lookup(kind, key, n)) return *hit;

  BigInt result;
  const int k = pattern.size();
  if (k == 0) {
    result = 0;  // the empty pattern is contained in every partition
  } else if (k > n) {
    result = opt.no_singletons ? bell_no_singletons(n) : bell(n);
  } else {
    const detail::PatternInfo pat(pattern);
    std::vector<detail::SearchNode> frontier(1);
    frontier[0].states.push_back({});
    // Grow the frontier breadth first until there is enough to share.
    const std::size_t want =
        opt.threads > 1 ? static_cast<std::size_t>(opt.threads) * 8 : 1;
    std::vector<detail::EmbedState> scratch;
    while (frontier.size() < want && !frontier.empty() && frontier.front().e <= n / 2) {
      std::vector<detail::SearchNode> next;
      for (auto& node : frontier)
        for (int c = 0; c <= node.b; ++c) {
          const int singles =
              node.singles + (c == node.b ? 1 : node.bsize[c] == 1 ? -1 : 0);
          if (opt.no_singletons && singles > n - node.e) continue;
          if (!detail::advance_states(pat, node.states, c, scratch)) continue;
          detail::SearchNode child;
          child.e = node.e + 1;
          child.b = node.b + (c == node.b ? 1 : 0);
          child.singles = singles;
          child.bsize = node.bsize;
          if (c == node.b)
            child.bsize.push_back(1);
          else
            ++child.bsize[c];
          child.states = scratch;
          next.push_back(std::move(child));
        }
      frontier = std::move(next);
    }
    const auto parts = run_tasks<BigInt>(
        frontier.size(), opt.threads, [&](std::size_t i) {
          return detail::count_from_node(pat, n, opt.no_singletons, frontier[i]);
        });
    result = 0;
    for (const auto& part : parts) result += part;
  }

  if (opt.cache) opt.cache->store(kind, key, n, result);
  return result;
}

/// Filter oracle: enumerates all partitions and tests containment directly.
inline BigInt count_avoiders_naive(const SetPartition& pattern, int n,
                                   bool no_singletons = false, int max_n = 10) {
  if (n < 0) throw BadParameter("n must be nonnegative");
  if (n > max_n)
    throw ResourceLimit("n=" + std::to_string(n) + " exceeds the naive maximum " +
                        std::to_string(max_n));
  BigInt count = 0;
  for_each_partition(n, [&](const SetPartition& p) {
    if (no_singletons)
      for (const auto& block : p.blocks())
        if (block.size() < 2) return;
    if (!contains_partition(p, pattern)) ++count;
  });
  return count;
}

inline std::vector<CountRecord> avoidance_sequence(const SetPartition& pattern,
                                                   int n_max,
                                                   const CountOptions& opt = {}) {
  if (n_max < 1) throw BadParameter("n_max must be positive");
  std::vector<CountRecord> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n)
    out.push_back({opt.no_singletons ? CountKind::partition_avoiders_no_singletons
                                     : CountKind::partition_avoiders,
                   render(pattern), n, count_avoiders(pattern, n, opt)});
  return out;
}

/// Natural log of a positive big integer, safe far beyond double range.
inline double log_big(const BigInt& x) {
  if (x <= 0) throw NonPositiveTerm("logarithm of a nonpositive term");
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits < 512) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 256;
  return std::log(BigInt(x >> shift).convert_to<double>()) +
         static_cast<double>(shift) * std::log(2.0);
}

struct GrowthEstimate {
  /// (n, alpha_n) with alpha_n = (ln a_n - ln a_{n-1}) / ln n, from n = 2.
  std::vector<std::pair<int, double>> per_n;
  double final_alpha = 0.0;
  /// alpha extrapolated to n = infinity, linearly in 1/ln n.
  double extrapolated = 0.0;
  /// Nearest growth regime: d in 1..8 for n^{n(1-1/d)}, 0 for the Bell regime.
  int d_hint = 0;
};

namespace detail {

inline std::vector<std::pair<int, double>> alpha_sequence(const std::vector<BigInt>& seq) {
  std::vector<std::pair<int, double>> out;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    out.emplace_back(n, (log_big(seq[i]) - log_big(seq[i - 1])) / std::log(n));
  }
  return out;
}

/// Linear extrapolation of alpha_n to 1/ln n -> 0 from the last two points.
inline double extrapolate_alpha(const std::vector<std::pair<int, double>>& per_n) {
  if (per_n.size() < 2) return per_n.back().second;
  const auto [np, ap] = per_n[per_n.size() - 2];
  const auto [nl, al] = per_n.back();
  const double u = 1.0 / std::log(nl), v = 1.0 / std::log(np);
  const double beta = (ap - al) / (v - u);
  return al - beta * u;
}

}  // namespace detail

/**
 * Growth-exponent diagnostics for a_1, a_2, ...: per-n exponents
 * alpha_n = (ln a_n - ln a_{n-1}) / ln n against the n^{n(1-1/d)} scale, an
 * extrapolation to n = infinity, and the nearest regime. The Bell regime is
 * its own candidate (the Bell sequence of the same length, extrapolated the
 * same way), and any extrapolated alpha beyond 1 - 1/8 counts as Bell.
 */
inline GrowthEstimate growth_fit(const std::vector<BigInt>& seq) {
  if (seq.size() < 2) throw BadParameter("need at least two terms");
  for (const auto& a : seq)
    if (a <= 0) throw NonPositiveTerm("sequence terms must be positive");

  GrowthEstimate est;
  est.per_n = detail::alpha_sequence(seq);
  est.final_alpha = est.per_n.back().second;
  est.extrapolated = detail::extrapolate_alpha(est.per_n);

  std::vector<BigInt> bells;
  for (int n = 1; n <= static_cast<int>(seq.size()); ++n) bells.push_back(bell(n));
  const double bell_ref = detail::extrapolate_alpha(detail::alpha_sequence(bells));

  if (est.extrapolated > 1.0 - 1.0 / 8) {
    est.d_hint = 0;
    return est;
  }
  int best_d = 1;
  double best = std::abs(est.extrapolated - 0.0);
  for (int d = 2; d <= 8; ++d) {
    const double dist = std::abs(est.extrapolated - (1.0 - 1.0 / d));
    if (dist < best) {
      best = dist;
      best_d = d;
    }
  }
  est.d_hint = std::abs(est.extrapolated - bell_ref) < best ? 0 : best_d;
  return est;
}

struct CertificateReport {
  int d = 0;
  int m = 0;
  BigInt certified_count;
  int verified_samples = 0;
  bool exhaustive = false;
  /// True when singleton blocks were removed before certification.
  bool stripped = false;
};

/**
 * Certifies the lower bound B'_n(pattern) >= (n/d)!^{d-1} where
 * d = permutability: every correspondent partition of a (d-1)-tuple over
 * S_{n/d} avoids the pattern. Verified exhaustively when the certified count
 * is at most 10^4, otherwise on 10^3 seeded random tuples. Singleton blocks
 * are stripped first; a verification failure means an internal bug and
 * throws logic_error.
 */
inline CertificateReport lower_bound_certificate(const SetPartition& pattern, int n,
                                                 std::uint64_t seed = 7) {
  CertificateReport rep;
  SetPartition eff = strip_singletons(pattern);
  rep.stripped = eff.size() != pattern.size();
  if (eff.size() == 0) throw BadParameter("pattern has no blocks of size >= 2");
  rep.d = permutability(eff);
  if (rep.d < 2) throw BadParameter("permutability below 2 certifies nothing");
  if (n < 1 || n % rep.d != 0)
    throw BadParameter("n must be a positive multiple of d=" + std::to_string(rep.d));
  rep.m = n / rep.d;
  rep.certified_count = bigpow(factorial(rep.m), rep.d - 1);

  auto check = [&](const std::vector<Permutation>& perms) {
    const SetPartition corr = correspondent_partition(PermutationTuple(perms));
    if (contains_partition(corr, eff))
      throw std::logic_error("correspondent partition fails to avoid the pattern");
  };

  rep.exhaustive = rep.certified_count <= 10000;
  if (rep.exhaustive) {
    std::vector<std::vector<int>> images(rep.d - 1);
    for (auto& im : images) {
      im.resize(rep.m);
      std::iota(im.begin(), im.end(), 1);
    }
    int verified = 0;
    for (;;) {
      std::vector<Permutation> perms;
      perms.reserve(images.size());
      for (const auto& im : images) perms.push_back(Permutation::from_images(im));
      check(perms);
      ++verified;
      int c = static_cast<int>(images.size()) - 1;
      while (c >= 0 && !std::next_permutation(images[c].begin(), images[c].end())) --c;
      if (c < 0) break;
    }
    rep.verified_samples = verified;
  } else {
    constexpr int kSamples = 1000;
    for (int i = 0; i < kSamples; ++i) {
      SampleRng rng(seed, static_cast<std::uint64_t>(i));
      std::vector<Permutation> perms;
      perms.reserve(rep.d - 1);
      for (int j = 0; j + 1 < rep.d; ++j)
        perms.push_back(Permutation::from_images(rng.permutation(rep.m)));
      check(perms);
    }
    rep.verified_samples = kSamples;
  }
  return rep;
}

enum class GrowthClass { bell, eventually_zero, exponential, superexp };

struct Classification {
  GrowthClass regime = GrowthClass::bell;
  int d = 0;  // set only for superexp
};

inline std::string to_string(const Classification& c) {
  switch (c.regime) {
    case GrowthClass::bell: return "bell";
    case GrowthClass::eventually_zero: return "eventually_zero";
    case GrowthClass::exponential: return "exponential";
    case GrowthClass::superexp: return "superexp(" + std::to_string(c.d) + ")";
  }
  throw BadParameter("unknown growth class");
}

/**
 * Coarse growth regime of the class avoiding every basis pattern: no
 * constraint gives the full Bell growth; a pattern of size <= 1 kills every
 * partition eventually; otherwise the minimum permutability d* over the
 * basis puts the class at n^{n(1-1/d*)}, which for d* <= 1 collapses to the
 * exponential regime.
 */
inline Classification classify_class(const std::vector<SetPartition>& basis) {
  if (basis.empty()) return {GrowthClass::bell, 0};
  for (const auto& p : basis)
    if (p.size() <= 1) return {GrowthClass::eventually_zero, 0};
  int dstar = permutability(basis.front());
  for (const auto& p : basis) dstar = std::min(dstar, permutability(p));
  if (dstar <= 1) return {GrowthClass::exponential, 0};
  return {GrowthClass::superexp, dstar};
}

}  // namespace avlab

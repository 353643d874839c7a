#pragma once

#include <algorithm>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avlab/common.hpp"
#include "avlab/errors.hpp"

namespace avlab {

/// Default ceiling for whole-universe enumeration (bell(14) is about 1.9e8).
inline constexpr int kMaxEnumerationSize = 14;

/**
 * A set partition of [n] in standard form: each block is internally
 * increasing, blocks are ordered by their minima, and the word mapping each
 * element to its block index is a restricted growth string. The empty
 * partition (n = 0, no blocks) is valid.
 */
class SetPartition {
 public:
  SetPartition() = default;

  /// Builds from arbitrary blocks, standardizing them. Throws NotAPartition
  /// when a block is empty or the blocks fail to tile [n].
  static SetPartition from_blocks(std::vector<std::vector<int>> blocks) {
    int n = 0;
    for (auto& b : blocks) {
      if (b.empty()) throw NotAPartition("empty block");
      std::sort(b.begin(), b.end());
      n += static_cast<int>(b.size());
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<int> rgf(n, -1);
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (int e : blocks[i]) {
        if (e < 1 || e > n)
          throw NotAPartition("element " + std::to_string(e) +
                              " outside 1.." + std::to_string(n));
        if (rgf[e - 1] != -1)
          throw NotAPartition("duplicate element " + std::to_string(e));
        rgf[e - 1] = static_cast<int>(i);
      }
    SetPartition p;
    p.n_ = n;
    p.blocks_ = std::move(blocks);
    p.rgf_ = std::move(rgf);
    return p;
  }

  /// Builds from a restricted growth string (0-based block labels).
  static SetPartition from_rgf(const std::vector<int>& rgf) {
    int top = -1;
    for (int v : rgf) {
      if (v < 0 || v > top + 1) throw NotAPartition("not a restricted growth string");
      if (v == top + 1) ++top;
    }
    SetPartition p;
    p.n_ = static_cast<int>(rgf.size());
    p.rgf_ = rgf;
    p.blocks_.resize(top + 1);
    for (int i = 0; i < p.n_; ++i) p.blocks_[rgf[i]].push_back(i + 1);
    return p;
  }

  int size() const { return n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  /// 0-based index of the block holding element e, 1 <= e <= n.
  int block_of(int e) const { return rgf_[e - 1]; }

  const std::vector<int>& rgf() const { return rgf_; }

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.rgf_ == b.rgf_;
  }
  friend bool operator!=(const SetPartition& a, const SetPartition& b) {
    return !(a == b);
  }
  friend bool operator<(const SetPartition& a, const SetPartition& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.rgf_ < b.rgf_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> rgf_;
};

inline SetPartition standardize(std::vector<std::vector<int>> blocks) {
  return SetPartition::from_blocks(std::move(blocks));
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == sep) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

inline int parse_int(std::string_view token, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw MalformedText(std::string("bad ") + what + " '" + std::string(token) + "'");
  return value;
}

}  // namespace detail

/**
 * Parses "1356/24" (digit-run form, n <= 9) or "1,10/2,3,4,5,6,7,8,9" (comma
 * form). A comma anywhere selects comma form for the whole text. The empty
 * string denotes the empty partition.
 */
inline SetPartition parse_partition(std::string_view text) {
  if (text.empty()) return SetPartition();
  const bool comma = text.find(',') != std::string_view::npos;
  std::vector<std::vector<int>> blocks;
  for (std::string_view part : detail::split(text, '/')) {
    if (part.empty()) throw MalformedText("empty block");
    std::vector<int> block;
    if (comma) {
      for (std::string_view token : detail::split(part, ','))
        block.push_back(detail::parse_int(token, "element"));
    } else {
      for (char c : part) {
        if (c < '0' || c > '9')
          throw MalformedText(std::string("bad character '") + c + "'");
        block.push_back(c - '0');
      }
    }
    blocks.push_back(std::move(block));
  }
  return SetPartition::from_blocks(std::move(blocks));
}

/// Renders in standard form: digit-run when n <= 9, comma form otherwise.
inline std::string render(const SetPartition& p) {
  std::string out;
  const bool digits = p.size() <= 9;
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    if (i) out += '/';
    for (std::size_t j = 0; j < p.blocks()[i].size(); ++j) {
      if (j && !digits) out += ',';
      out += std::to_string(p.blocks()[i][j]);
    }
  }
  return out;
}

/// Restriction to a subset of elements, relabeled order-preservingly to
/// [|S|]; empty intersections disappear.
inline SetPartition restrict_to(const SetPartition& p, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int e : keep)
    if (e < 1 || e > p.size())
      throw OutOfRange("element " + std::to_string(e) + " outside 1.." +
                       std::to_string(p.size()));
  std::vector<std::vector<int>> blocks(p.block_count());
  for (std::size_t r = 0; r < keep.size(); ++r)
    blocks[p.block_of(keep[r])].push_back(static_cast<int>(r) + 1);
  blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                              [](const auto& b) { return b.empty(); }),
               blocks.end());
  return SetPartition::from_blocks(std::move(blocks));
}

/**
 * Order-isomorphic containment: some |pattern|-subset of host elements has
 * exactly the pattern's co-membership structure. Pattern elements are matched
 * to increasing host elements, with a backtracking injective correspondence
 * from pattern blocks to host blocks.
 */
inline bool contains_partition(const SetPartition& host, const SetPartition& pattern) {
  const int n = host.size(), k = pattern.size();
  if (k == 0) return true;
  if (k > n || pattern.block_count() > host.block_count()) return false;
  std::vector<int> pb2hb(pattern.block_count(), -1);
  std::vector<char> hb_used(host.block_count(), 0);
  auto rec = [&](auto&& self, int j, int emin) -> bool {
    if (j > k) return true;
    const int pb = pattern.block_of(j);
    for (int e = emin; e <= n - (k - j); ++e) {
      const int hb = host.block_of(e);
      if (pb2hb[pb] == hb) {
        if (self(self, j + 1, e + 1)) return true;
      } else if (pb2hb[pb] == -1 && !hb_used[hb]) {
        pb2hb[pb] = hb;
        hb_used[hb] = 1;
        const bool hit = self(self, j + 1, e + 1);
        pb2hb[pb] = -1;
        hb_used[hb] = 0;
        if (hit) return true;
      }
    }
    return false;
  };
  return rec(rec, 1, 1);
}

/// True when every block is a consecutive interval.
inline bool is_layered(const SetPartition& p) {
  for (const auto& b : p.blocks())
    if (b.back() - b.front() + 1 != static_cast<int>(b.size())) return false;
  return true;
}

/// Removes all singleton blocks and relabels the rest to standard form.
inline SetPartition strip_singletons(const SetPartition& p) {
  std::vector<int> keep;
  for (const auto& b : p.blocks())
    if (b.size() >= 2) keep.insert(keep.end(), b.begin(), b.end());
  return restrict_to(p, std::move(keep));
}

/**
 * Streams every partition of [n] in lexicographic order of its restricted
 * growth string. Single consumer; next() yields nullopt when exhausted.
 */
class PartitionStream {
 public:
  explicit PartitionStream(int n, int max_n = kMaxEnumerationSize) : n_(n) {
    if (n < 0) throw BadParameter("n must be nonnegative");
    if (n > max_n)
      throw ResourceLimit("enumeration over [" + std::to_string(n) +
                          "] exceeds the configured limit " + std::to_string(max_n));
    rgf_.assign(n, 0);
  }

  std::optional<SetPartition> next() {
    if (done_) return std::nullopt;
    SetPartition out = SetPartition::from_rgf(rgf_);
    advance();
    return out;
  }

 private:
  void advance() {
    for (int i = n_ - 1; i >= 1; --i) {
      int top = 0;
      for (int j = 0; j < i; ++j) top = std::max(top, rgf_[j]);
      if (rgf_[i] <= top) {
        ++rgf_[i];
        std::fill(rgf_.begin() + i + 1, rgf_.end(), 0);
        return;
      }
    }
    done_ = true;
  }

  int n_;
  std::vector<int> rgf_;
  bool done_ = false;
};

template <class F>
inline void for_each_partition(int n, F&& f, int max_n = kMaxEnumerationSize) {
  PartitionStream stream(n, max_n);
  while (auto p = stream.next()) f(*p);
}

inline std::vector<SetPartition> enumerate_partitions(int n, int max_n = kMaxEnumerationSize) {
  std::vector<SetPartition> out;
  for_each_partition(n, [&](const SetPartition& p) { out.push_back(p); }, max_n);
  return out;
}

/// Bell number B_n via the Bell triangle.
inline BigInt bell(int n) {
  if (n < 0) throw BadParameter("n must be nonnegative");
  std::vector<BigInt> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<BigInt> next;
    next.reserve(i + 1);
    next.push_back(row.back());
    for (std::size_t j = 0; j < row.size(); ++j) next.push_back(next[j] + row[j]);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace avlab

#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "avlab/errors.hpp"
#include "avlab/set_partition.hpp"

namespace avlab {

/**
 * A permutation of [n] in one-line notation (the images of 1..n).
 */
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    Permutation p;
    p.images_ = std::move(v);
    return p;
  }

  static Permutation from_images(std::vector<int> images) {
    const int n = static_cast<int>(images.size());
    std::vector<char> seen(n + 1, 0);
    for (int v : images) {
      if (v < 1 || v > n || seen[v])
        throw BadParameter("not a permutation of 1.." + std::to_string(n));
      seen[v] = 1;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  int size() const { return static_cast<int>(images_.size()); }

  /// Image of i, 1 <= i <= n.
  int operator()(int i) const { return images_[i - 1]; }

  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      inv[images_[i] - 1] = static_cast<int>(i) + 1;
    Permutation p;
    p.images_ = std::move(inv);
    return p;
  }

  /// Value complement i -> n + 1 - i applied to every image.
  Permutation complement() const {
    const int n = size();
    std::vector<int> v(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) v[i] = n + 1 - images_[i];
    Permutation p;
    p.images_ = std::move(v);
    return p;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) {
    return !(a == b);
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

 private:
  std::vector<int> images_;
};

/// Parses "321" (digit-run, n <= 9) or "3,2,1" (comma form).
inline Permutation parse_permutation(std::string_view text) {
  std::vector<int> images;
  if (!text.empty()) {
    if (text.find(',') != std::string_view::npos) {
      for (std::string_view token : detail::split(text, ','))
        images.push_back(detail::parse_int(token, "image"));
    } else {
      for (char c : text) {
        if (c < '0' || c > '9')
          throw MalformedText(std::string("bad character '") + c + "'");
        images.push_back(c - '0');
      }
    }
  }
  return Permutation::from_images(std::move(images));
}

inline std::string render(const Permutation& p) {
  std::string out;
  const bool digits = p.size() <= 9;
  for (int i = 1; i <= p.size(); ++i) {
    if (i > 1 && !digits) out += ',';
    out += std::to_string(p(i));
  }
  return out;
}

/**
 * A d-tuple of permutations sharing one size n. Arity 0 is permitted and
 * behaves as a tuple over S_0.
 */
class PermutationTuple {
 public:
  PermutationTuple() = default;

  explicit PermutationTuple(std::vector<Permutation> coords) : coords_(std::move(coords)) {
    for (const auto& c : coords_)
      if (c.size() != coords_.front().size())
        throw SizeMismatch("tuple coordinates must share one size");
  }

  int arity() const { return static_cast<int>(coords_.size()); }
  int size() const { return coords_.empty() ? 0 : coords_.front().size(); }
  const std::vector<Permutation>& coords() const { return coords_; }
  const Permutation& coord(int i) const { return coords_[i - 1]; }

  friend bool operator==(const PermutationTuple& a, const PermutationTuple& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const PermutationTuple& a, const PermutationTuple& b) {
    return !(a == b);
  }

 private:
  std::vector<Permutation> coords_;
};

/// Parses coordinates joined by '|', e.g. "12|21".
inline PermutationTuple parse_tuple(std::string_view text) {
  std::vector<Permutation> coords;
  if (!text.empty())
    for (std::string_view part : detail::split(text, '|'))
      coords.push_back(parse_permutation(part));
  return PermutationTuple(std::move(coords));
}

inline std::string render(const PermutationTuple& t) {
  std::string out;
  for (int i = 1; i <= t.arity(); ++i) {
    if (i > 1) out += '|';
    out += render(t.coord(i));
  }
  return out;
}

}  // namespace avlab

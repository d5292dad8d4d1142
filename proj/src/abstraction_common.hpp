#pragma once

// Helpers shared by the sampling and LP abstraction backends.

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "polyra/abstraction.hpp"

namespace polyra::detail {

class Bitset {
 public:
  Bitset() = default;
  Bitset(std::size_t n, bool value)
      : words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(n) {
    trim();
  }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  // Whether some bit is set here but not in `o`.
  bool any_outside(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return true;
    return false;
  }
  std::size_t size() const { return size_; }

 private:
  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

struct HalfspaceHash {
  std::size_t operator()(const Halfspace& h) const noexcept {
    std::uint64_t acc = std::bit_cast<std::uint64_t>(h.bound());
    for (double v : h.normal())
      acc = splitmix(acc ^ std::bit_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(acc);
  }
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
};

// Which points of a fixed row-major matrix satisfy each halfspace, memoized.
class ConstraintCache {
 public:
  ConstraintCache(std::vector<double> points, std::size_t dim)
      : points_(std::move(points)), dim_(dim), n_(points_.size() / dim) {}

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  Point point(std::size_t i) const { return {points_.data() + i * dim_, dim_}; }

  const Bitset& get(const Halfspace& h) {
    auto it = cache_.find(h);
    if (it != cache_.end()) return it->second;
    Bitset bits(n_, false);
    for (std::size_t i = 0; i < n_; ++i)
      if (h.contains(point(i))) bits.set(i);
    return cache_.emplace(h, std::move(bits)).first->second;
  }

  Bitset satisfying(const std::vector<Halfspace>& term) {
    Bitset bits(n_, true);
    for (const auto& h : term) bits &= get(h);
    return bits;
  }

  // Drops cached entries for constraints no longer referenced by `terms`.
  void retain(const std::vector<std::vector<Halfspace>>& terms) {
    std::unordered_map<Halfspace, Bitset, HalfspaceHash> kept;
    for (const auto& t : terms)
      for (const auto& h : t) {
        auto it = cache_.find(h);
        if (it != cache_.end() && !kept.contains(h)) kept.emplace(h, it->second);
      }
    cache_ = std::move(kept);
  }

 private:
  std::vector<double> points_;
  std::size_t dim_;
  std::size_t n_;
  std::unordered_map<Halfspace, Bitset, HalfspaceHash> cache_;
};

using Terms = std::vector<std::vector<Halfspace>>;

inline Terms terms_of(const DnfForm& d) {
  Terms terms;
  terms.reserve(d.terms.size());
  for (const auto& p : d.terms) terms.push_back(p.constraints());
  return terms;
}

inline DnfForm dnf_of(std::size_t dim, Terms terms) {
  DnfForm d{dim, {}};
  d.terms.reserve(terms.size());
  for (auto& t : terms) d.terms.emplace_back(dim, std::move(t));
  return d;
}

// Removes, in order, every term whose covered training points are all
// covered by the remaining terms. Returns whether anything was removed.
inline bool drop_covered_terms(Terms& terms, ConstraintCache& training) {
  bool changed = false;
  std::vector<Bitset> cover;
  cover.reserve(terms.size());
  for (const auto& t : terms) cover.push_back(training.satisfying(t));
  for (std::size_t i = 0; i < terms.size();) {
    Bitset others(training.size(), false);
    for (std::size_t j = 0; j < terms.size(); ++j)
      if (j != i) others |= cover[j];
    if (!cover[i].any_outside(others)) {
      terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(i));
      cover.erase(cover.begin() + static_cast<std::ptrdiff_t>(i));
      changed = true;
    } else {
      ++i;
    }
  }
  return changed;
}

inline Halfspace negated(const Halfspace& h, double epsilon) {
  std::vector<double> normal = h.normal();
  for (auto& v : normal) v = -v;
  return Halfspace(std::move(normal), -h.bound() - epsilon);
}

inline void append_unique(std::vector<Halfspace>& out, const Halfspace& h) {
  for (const auto& e : out)
    if (e == h) return;
  out.push_back(h);
}

}  // namespace polyra::detail

namespace polyra {

AbstractFn make_sampling_abstractor(const Dataset& training, const AbstractConfig& cfg);
AbstractFn make_lp_abstractor(const Dataset& training, const AbstractConfig& cfg);

}  // namespace polyra

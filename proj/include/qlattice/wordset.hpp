#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace qlattice {

/// Fixed-capacity bitset of W 64-bit words; the working set type of the
/// search engine, where every operation must stay allocation-free.
template <std::size_t W>
struct WordSet {
  std::array<std::uint64_t, W> w{};

  static constexpr std::size_t capacity = 64 * W;

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }

  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }

  /// Lowest set index, or -1.
  int first() const {
    for (std::size_t k = 0; k < W; ++k)
      if (w[k]) return static_cast<int>(64 * k + std::countr_zero(w[k]));
    return -1;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < W; ++k) {
      std::uint64_t x = w[k];
      while (x) {
        const int b = std::countr_zero(x);
        fn(static_cast<std::size_t>(64 * k + b));
        x &= x - 1;
      }
    }
  }

  friend WordSet operator&(const WordSet& a, const WordSet& b) {
    WordSet r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = a.w[k] & b.w[k];
    return r;
  }
  friend WordSet operator|(const WordSet& a, const WordSet& b) {
    WordSet r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = a.w[k] | b.w[k];
    return r;
  }
  /// a \ b
  friend WordSet operator-(const WordSet& a, const WordSet& b) {
    WordSet r;
    for (std::size_t k = 0; k < W; ++k) r.w[k] = a.w[k] & ~b.w[k];
    return r;
  }
  bool intersects(const WordSet& o) const {
    for (std::size_t k = 0; k < W; ++k)
      if (w[k] & o.w[k]) return true;
    return false;
  }
  int count_and(const WordSet& o) const {
    int c = 0;
    for (std::size_t k = 0; k < W; ++k) c += std::popcount(w[k] & o.w[k]);
    return c;
  }
  bool operator==(const WordSet&) const = default;
};

}  // namespace qlattice

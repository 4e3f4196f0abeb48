#pragma once

// The linear lattice L(n, q): every subspace of F_q^n in reduced row echelon
// form, indexed, with the inclusion order materialized as bitmaps.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "qlattice/error.hpp"
#include "qlattice/gfq.hpp"
#include "qlattice/qarith.hpp"

namespace qlattice {

using Bitset = boost::dynamic_bitset<std::uint64_t>;
using Row = std::vector<Scalar>;

constexpr int kMaxLatticeDim = 6;
constexpr std::size_t kMaxLatticeElements = 1'000'000;
// Up/down bitmaps are quadratic in the element count.
constexpr std::size_t kMaxBitmapElements = 16'384;

/// A subspace of F_q^n stored as its RREF basis. Equality of values is
/// equality of subspaces.
struct Subspace {
  int n = 0;
  int q = 0;
  std::vector<Row> rows;  // k rows of length n, in RREF

  int dim() const { return static_cast<int>(rows.size()); }

  std::vector<int> pivots() const {
    std::vector<int> p;
    for (const auto& r : rows) {
      int c = 0;
      while (c < n && r[c] == 0) ++c;
      p.push_back(c);
    }
    return p;
  }

  bool operator==(const Subspace&) const = default;
};

inline bool canonical_less(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return a.rows < b.rows;
}

/// Reduced row echelon form of the span of `rows`; zero rows are dropped.
inline std::vector<Row> rref(const FieldSpec& f, std::vector<Row> rows, int n) {
  std::size_t r = 0;
  for (int c = 0; c < n && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Scalar s = f.inv(rows[r][c]);
    for (int j = 0; j < n; ++j) rows[r][j] = f.mul(rows[r][j], s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Scalar m = rows[i][c];
      for (int j = 0; j < n; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(m, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Canonical subspace spanned by an arbitrary list of vectors.
inline Subspace span_of(const FieldSpec& f, int n, const std::vector<Row>& vectors) {
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != n) throw Error(Errc::AmbientMismatch, "vector length differs from n");
    for (auto x : v)
      if (x >= f.q) throw Error(Errc::OutOfRange, "entry outside 0..q-1");
  }
  return Subspace{n, f.q, rref(f, vectors, n)};
}

/// Residue of `v` after reduction against an RREF basis; zero iff v lies in the span.
inline Row reduce_against(const FieldSpec& f, const Subspace& a, Row v) {
  const auto piv = a.pivots();
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const Scalar m = v[piv[i]];
    if (m == 0) continue;
    for (int j = 0; j < a.n; ++j) v[j] = f.sub(v[j], f.mul(m, a.rows[i][j]));
  }
  return v;
}

/// True iff b is a subspace of a.
inline bool contains(const FieldSpec& f, const Subspace& a, const Subspace& b) {
  if (a.n != b.n || a.q != b.q || a.q != f.q) throw Error(Errc::AmbientMismatch, "subspaces from different ambients");
  if (b.dim() > a.dim()) return false;
  for (const auto& r : b.rows) {
    const Row res = reduce_against(f, a, r);
    if (std::any_of(res.begin(), res.end(), [](Scalar x) { return x != 0; })) return false;
  }
  return true;
}

/// Orthogonal complement under the standard dot product. U -> U^perp reverses
/// inclusion and is an involution, so it is an anti-automorphism of L(n, q).
inline Subspace orthogonal_complement(const FieldSpec& f, const Subspace& a) {
  const auto piv = a.pivots();
  std::vector<bool> is_pivot(a.n, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<Row> basis;
  for (int free = 0; free < a.n; ++free) {
    if (is_pivot[free]) continue;
    Row v(a.n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < a.rows.size(); ++i) v[piv[i]] = f.neg(a.rows[i][free]);
    basis.push_back(std::move(v));
  }
  return Subspace{a.n, a.q, rref(f, basis, a.n)};
}

/// Image of a subspace under the linear map x -> x M (row vectors).
inline Subspace apply_matrix(const FieldSpec& f, const Subspace& a, const std::vector<Row>& m) {
  std::vector<Row> image;
  for (const auto& r : a.rows) {
    Row out(a.n, 0);
    for (int i = 0; i < a.n; ++i) {
      if (r[i] == 0) continue;
      for (int j = 0; j < a.n; ++j) out[j] = f.add(out[j], f.mul(r[i], m[i][j]));
    }
    image.push_back(std::move(out));
  }
  return Subspace{a.n, a.q, rref(f, image, a.n)};
}

/// All k-dimensional subspaces of F_q^n in canonical order, generated from
/// pivot patterns so that no deduplication is needed.
inline std::vector<Subspace> enumerate_level(int n, int k, const FieldSpec& f) {
  if (n < 0 || k < 0 || k > n) throw Error(Errc::OutOfRange, "enumerate_level needs 0 <= k <= n");
  std::vector<Subspace> out;
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;

  while (true) {
    // free positions: row i, column c > piv[i], c not a pivot column
    std::vector<std::pair<int, int>> free_slots;
    std::vector<bool> is_pivot(n, false);
    for (int c : piv) is_pivot[c] = true;
    for (int i = 0; i < k; ++i)
      for (int c = piv[i] + 1; c < n; ++c)
        if (!is_pivot[c]) free_slots.emplace_back(i, c);

    std::vector<int> digits(free_slots.size(), 0);
    while (true) {
      std::vector<Row> rows(k, Row(n, 0));
      for (int i = 0; i < k; ++i) rows[i][piv[i]] = 1;
      for (std::size_t s = 0; s < free_slots.size(); ++s)
        rows[free_slots[s].first][free_slots[s].second] = static_cast<Scalar>(digits[s]);
      out.push_back(Subspace{n, f.q, std::move(rows)});

      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == f.q) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }

    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

/// L(n, q) fully materialized. Element indices are stable: elements are sorted
/// by (dimension, rows), so index 0 is {0} and the last index is V.
class LinearLattice {
 public:
  int n() const { return n_; }
  int q() const { return field_.q; }
  const FieldSpec& field() const { return field_; }
  std::size_t size() const { return elements_.size(); }

  const Subspace& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<Subspace>& elements() const { return elements_; }
  int dim(std::size_t i) const { return dims_[i]; }

  /// Index range [begin, end) of the k-dimensional level.
  std::size_t level_begin(int k) const { return level_offsets_.at(k); }
  std::size_t level_end(int k) const { return level_offsets_.at(k + 1); }
  std::size_t level_size(int k) const { return level_end(k) - level_begin(k); }

  /// Elements strictly above / strictly below i.
  const Bitset& above(std::size_t i) const { return above_[i]; }
  const Bitset& below(std::size_t i) const { return below_[i]; }

  bool leq(std::size_t a, std::size_t b) const { return a == b || above_[a].test(b); }
  bool less(std::size_t a, std::size_t b) const { return above_[a].test(b); }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

  const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_covers_[i]; }
  const std::vector<std::size_t>& lower_covers(std::size_t i) const { return lower_covers_[i]; }

  /// Index of a subspace of this lattice's ambient space; any spanning set
  /// is accepted and canonicalized first.
  std::size_t index_of(const Subspace& s) const {
    if (s.n != n_ || s.q != field_.q) throw Error(Errc::AmbientMismatch, "subspace is not in this lattice");
    const Subspace c = span_of(field_, n_, s.rows);
    auto it = index_.find(c.rows);
    if (it == index_.end()) throw Error(Errc::OutOfRange, "subspace not found");
    return it->second;
  }

  std::size_t index_of_span(const std::vector<Row>& vectors) const {
    return index_of(Subspace{n_, field_.q, vectors});
  }

  /// Index of the orthogonal complement of element i.
  std::size_t complement_index(std::size_t i) const { return complement_[i]; }

  friend LinearLattice build_lattice(int n, int q);

 private:
  int n_ = 0;
  FieldSpec field_;
  std::vector<Subspace> elements_;
  std::vector<int> dims_;
  std::vector<std::size_t> level_offsets_;
  std::vector<Bitset> above_;
  std::vector<Bitset> below_;
  std::vector<std::vector<std::size_t>> upper_covers_;
  std::vector<std::vector<std::size_t>> lower_covers_;
  std::vector<std::size_t> complement_;
  std::map<std::vector<Row>, std::size_t> index_;
};

inline LinearLattice build_lattice(int n, int q) {
  if (n < 0 || n > kMaxLatticeDim) throw Error(Errc::TooLarge, "lattice dimension must be in 0..6");
  FieldSpec f = make_field(q);
  QInt total = 0;
  for (int k = 0; k <= n; ++k) total += q_binomial(n, k, q);
  if (total > kMaxLatticeElements || total > kMaxBitmapElements)
    throw Error(Errc::TooLarge, "L(" + std::to_string(n) + "," + std::to_string(q) + ") has " + total.str() +
                                    " elements, above the guard");

  LinearLattice L;
  L.n_ = n;
  L.field_ = std::move(f);
  L.level_offsets_.push_back(0);
  for (int k = 0; k <= n; ++k) {
    auto level = enumerate_level(n, k, L.field_);
    for (auto& s : level) {
      L.dims_.push_back(k);
      L.elements_.push_back(std::move(s));
    }
    L.level_offsets_.push_back(L.elements_.size());
  }
  const std::size_t m = L.elements_.size();
  for (std::size_t i = 0; i < m; ++i) L.index_.emplace(L.elements_[i].rows, i);

  // Upper covers of b are the spans b + <v> for v outside b.
  L.upper_covers_.assign(m, {});
  L.lower_covers_.assign(m, {});
  std::vector<Row> all_vectors;
  {
    Row v(n, 0);
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(q);
    for (std::size_t c = 0; c < count; ++c) {
      std::size_t x = c;
      for (int j = n - 1; j >= 0; --j) {
        v[j] = static_cast<Scalar>(x % q);
        x /= q;
      }
      all_vectors.push_back(v);
    }
  }
  for (std::size_t b = 0; b < m; ++b) {
    if (L.dims_[b] == n) continue;
    std::vector<std::size_t> covers;
    for (const auto& v : all_vectors) {
      auto rows = L.elements_[b].rows;
      rows.push_back(v);
      auto red = rref(L.field_, rows, n);
      if (static_cast<int>(red.size()) != L.dims_[b] + 1) continue;
      covers.push_back(L.index_.at(red));
    }
    std::sort(covers.begin(), covers.end());
    covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
    for (std::size_t a : covers) L.lower_covers_[a].push_back(b);
    L.upper_covers_[b] = std::move(covers);
  }
  for (auto& lc : L.lower_covers_) std::sort(lc.begin(), lc.end());

  // Transitive closure, bottom-up for below_ and top-down for above_.
  L.below_.assign(m, Bitset(m));
  L.above_.assign(m, Bitset(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t c : L.lower_covers_[a]) {
      L.below_[a] |= L.below_[c];
      L.below_[a].set(c);
    }
  }
  for (std::size_t a = m; a-- > 0;) {
    for (std::size_t c : L.upper_covers_[a]) {
      L.above_[a] |= L.above_[c];
      L.above_[a].set(c);
    }
  }

  L.complement_.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    L.complement_[i] = L.index_.at(orthogonal_complement(L.field_, L.elements_[i]).rows);
  return L;
}

/// All (dim(a)-1)-dimensional subspaces of element a.
inline std::vector<std::size_t> lower_shadow(const LinearLattice& L, std::size_t a) {
  if (L.dim(a) < 1) throw Error(Errc::OutOfRange, "the zero subspace has no lower shadow");
  return L.lower_covers(a);
}

/// All (dim(a)+1)-dimensional superspaces of element a.
inline std::vector<std::size_t> upper_shadow(const LinearLattice& L, std::size_t a) {
  if (L.dim(a) > L.n() - 1) throw Error(Errc::OutOfRange, "V has no upper shadow");
  return L.upper_covers(a);
}

}  // namespace qlattice

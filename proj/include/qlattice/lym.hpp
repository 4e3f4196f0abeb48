#pragma once

// LYM-type double counting over images of a simple family: a family H of
// spans of basis subsets, its level counts N_i(H), the largest P-free
// subfamily alpha(H, P), and the chain structures used as H.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qlattice/error.hpp"
#include "qlattice/family.hpp"
#include "qlattice/order_search.hpp"
#include "qlattice/posets.hpp"
#include "qlattice/qarith.hpp"

namespace qlattice {

constexpr int kMaxSimpleN = 20;

/// Subsets of {0..n-1} as bit masks; subset i stands for the span of the
/// corresponding basis vectors, so inclusion is the subspace order.
class SimpleFamily {
 public:
  SimpleFamily(int n, std::vector<std::uint32_t> sets) : n_(n), sets_(std::move(sets)) {
    if (n < 0 || n > kMaxSimpleN) throw Error(Errc::OutOfRange, "simple family needs 0 <= n <= 20");
    std::sort(sets_.begin(), sets_.end(), [](std::uint32_t a, std::uint32_t b) {
      const int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    if (std::adjacent_find(sets_.begin(), sets_.end()) != sets_.end())
      throw Error(Errc::PreconditionViolated, "repeated set in simple family");
    const std::uint32_t full = n == 32 ? ~0u : ((std::uint32_t{1} << n) - 1);
    for (auto s : sets_)
      if (s & ~full) throw Error(Errc::OutOfRange, "set uses an element outside 0..n-1");
  }

  int n() const { return n_; }
  std::size_t size() const { return sets_.size(); }
  const std::vector<std::uint32_t>& sets() const { return sets_; }

  /// N_i(H): members of size i.
  std::size_t N(int i) const {
    return static_cast<std::size_t>(std::count_if(sets_.begin(), sets_.end(), [&](std::uint32_t s) { return std::popcount(s) == i; }));
  }

  bool less(std::size_t a, std::size_t b) const {
    const auto x = sets_[a], y = sets_[b];
    return x != y && (x & y) == x;
  }

 private:
  int n_;
  std::vector<std::uint32_t> sets_;
};

inline std::uint32_t prefix_set(int i) { return i >= 32 ? ~0u : ((std::uint32_t{1} << i) - 1); }

/// Cyclic arcs of lengths 1..n-1 of a circularly ordered basis.
inline SimpleFamily cyclic_interval_family(int n) {
  if (n < 2) throw Error(Errc::OutOfRange, "cyclic interval family needs n >= 2");
  std::vector<std::uint32_t> sets;
  for (int len = 1; len < n; ++len)
    for (int start = 0; start < n; ++start) {
      std::uint32_t s = 0;
      for (int j = 0; j < len; ++j) s |= std::uint32_t{1} << ((start + j) % n);
      sets.push_back(s);
    }
  return SimpleFamily(n, sets);
}

inline SimpleFamily maximal_chain_family(int n) {
  std::vector<std::uint32_t> sets;
  for (int i = 0; i <= n; ++i) sets.push_back(prefix_set(i));
  return SimpleFamily(n, sets);
}

/// Union of the intervals [A_i, A_{i+k}] along the chain A_i = {0..i-1}.
inline SimpleFamily interval_chain_family(int n, int k) {
  if (k < 1 || k > n) throw Error(Errc::OutOfRange, "interval chain needs 1 <= k <= n");
  std::set<std::uint32_t> sets;
  for (int i = 0; i + k <= n; ++i) {
    const std::uint32_t lo = prefix_set(i);
    const std::uint32_t span = prefix_set(i + k) & ~lo;
    // every subset of the k free elements
    for (std::uint32_t sub = span;; sub = (sub - 1) & span) {
      sets.insert(lo | sub);
      if (sub == 0) break;
    }
  }
  return SimpleFamily(n, {sets.begin(), sets.end()});
}

inline SimpleFamily double_chain_family(int n) { return interval_chain_family(n, 2); }

struct AlphaResult {
  std::size_t value = 0;
  bool completed = true;
  std::vector<std::size_t> witness;  // positions in H.sets()
};

/// Largest subfamily of H (ordered by inclusion) avoiding every pattern.
inline AlphaResult alpha(const SimpleFamily& H, const std::vector<PosetSpec>& forbidden, bool induced, SearchBudget budget = {}) {
  if (forbidden.empty()) return {H.size(), true, {}};
  for (const auto& p : forbidden)
    if (p.size() == 1) return {0, true, {}};
  OrderSearchInput in;
  in.size = H.size();
  in.less = [&](std::size_t a, std::size_t b) { return H.less(a, b); };
  in.forbidden = forbidden;
  in.induced = induced;
  in.budget = budget;
  const auto r = search_order(in);
  if (!r.completed) throw Error(Errc::BudgetExceeded, "alpha search hit its budget");
  AlphaResult out;
  out.value = r.optimum;
  out.completed = r.completed;
  if (!r.extremal.empty()) out.witness = r.extremal.front();
  return out;
}

struct LymVerdict {
  Rational lhs;       // sum over F of N_dim(H) / [n choose dim]_q
  std::size_t alpha = 0;
  bool holds = true;  // lhs <= alpha
};

inline Rational lym_sum(const Family& F, const SimpleFamily& H) {
  const auto& L = F.lattice();
  if (H.n() != L.n()) throw Error(Errc::AmbientMismatch, "simple family and lattice differ in n");
  Rational s = 0;
  const auto counts = F.level_counts();
  for (int d = 0; d <= L.n(); ++d)
    if (counts[d]) s += Rational(QInt(counts[d]) * QInt(H.N(d)), q_binomial(L.n(), d, L.q()));
  return s;
}

inline LymVerdict lym_check(const Family& F, const SimpleFamily& H, const std::vector<PosetSpec>& forbidden, bool induced) {
  if (!is_free(F, forbidden, induced)) throw Error(Errc::NotFree, "family contains a forbidden pattern");
  LymVerdict v;
  v.lhs = lym_sum(F, H);
  v.alpha = alpha(H, forbidden, induced).value;
  v.holds = v.lhs <= Rational(v.alpha);
  return v;
}

/// Ordered bases pi of F_q^n for which a fixed r-dimensional F lies in H^pi.
/// The r basis vectors mapped into F can be any ordered basis of F and the
/// remaining n-r extend it to a basis of the whole space, for each of the
/// N_r(H) sets of size r.
inline QInt basis_map_count(int r, const SimpleFamily& H, int n, int q) {
  if (r < 0 || r > n) throw Error(Errc::OutOfRange, "r outside 0..n");
  if (H.n() != n) throw Error(Errc::AmbientMismatch, "simple family and n differ");
  QInt inside = 1;
  for (int i = 0; i < r; ++i) inside *= int_pow(q, r) - int_pow(q, i);
  QInt extend = 1;
  for (int j = r; j < n; ++j) extend *= int_pow(q, n) - int_pow(q, j);
  return inside * extend * QInt(H.N(r));
}

/// Ordered bases of F_q^n.
inline QInt ordered_basis_count(int n, int q) {
  QInt c = 1;
  for (int j = 0; j < n; ++j) c *= int_pow(q, n) - int_pow(q, j);
  return c;
}

// ---------------------------------------------------------------------------
// Maximal chains of L(n, q).

/// Number of maximal chains, by counting paths through the cover graph.
inline QInt maximal_chain_count(const LinearLattice& L) {
  std::vector<QInt> ways(L.size(), 0);
  ways[L.level_begin(0)] = 1;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (auto c : L.upper_covers(i)) ways[c] += ways[i];
  return ways[L.level_begin(L.n())];
}

/// Calls fn on every maximal chain (element indices from {0} up to V).
inline void for_each_maximal_chain(const LinearLattice& L, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (L.n() > 4) throw Error(Errc::TooLarge, "chain iteration is limited to n <= 4");
  std::vector<std::size_t> chain{L.level_begin(0)};
  auto rec = [&](auto&& self) -> void {
    const auto top = chain.back();
    if (L.dim(top) == L.n()) {
      fn(chain);
      return;
    }
    for (auto c : L.upper_covers(top)) {
      chain.push_back(c);
      self(self);
      chain.pop_back();
    }
  };
  rec(rec);
}

struct IdentityVerdict {
  QInt lhs, rhs;
  bool holds = false;
};

/// [n choose (n+3)/2] [(n+3)/2 choose (n-3)/2] ([(n-3)/2]!)^2 (q^2+q+1)(q+1) = [n]_q!
inline IdentityVerdict eq1_identity_check(int n, int q) {
  if (n < 3 || n % 2 == 0) throw Error(Errc::OutOfRange, "needs odd n >= 3");
  const int a = (n + 3) / 2, b = (n - 3) / 2;
  const QInt f = q_factorial(b, q);
  IdentityVerdict v;
  v.lhs = q_binomial(n, a, q) * q_binomial(a, b, q) * f * f * QInt(q * q + q + 1) * QInt(q + 1);
  v.rhs = q_factorial(n, q);
  v.holds = v.lhs == v.rhs;
  return v;
}

// ---------------------------------------------------------------------------
// Closed forms for alpha on chain structures.

/// k/2^{k-1} (|P| + (3k-5) 2^{k-2} (h(P)-1) - 1); for k = 2 this is |P| + h(P) - 2.
inline Rational interval_chain_formula(int k, int poset_size, int poset_height) {
  if (k < 2) throw Error(Errc::OutOfRange, "formula needs k >= 2");
  const QInt inner = QInt(poset_size) + QInt(3 * k - 5) * int_pow(2, k - 2) * (poset_height - 1) - 1;
  return Rational(QInt(k) * inner, int_pow(2, k - 1));
}

struct IntervalChainVerdict {
  std::size_t brute = 0;
  Rational formula;
  bool integral = false;
  bool attained = false;     // brute == formula
  bool within = false;       // brute <= formula
};

inline IntervalChainVerdict interval_chain_alpha_check(int k, int n, const PosetSpec& P) {
  if (k != 2 && k != 3) throw Error(Errc::OutOfRange, "k must be 2 or 3");
  if (n < k || n > 8) throw Error(Errc::OutOfRange, "n must be in k..8");
  if (P.size() > 5) throw Error(Errc::OutOfRange, "pattern has more than 5 elements");
  IntervalChainVerdict v;
  v.brute = alpha(interval_chain_family(n, k), {P}, false).value;
  v.formula = interval_chain_formula(k, P.size(), P.height());
  v.integral = boost::multiprecision::denominator(v.formula) == 1;
  v.attained = Rational(v.brute) == v.formula;
  v.within = Rational(v.brute) <= v.formula;
  return v;
}

}  // namespace qlattice

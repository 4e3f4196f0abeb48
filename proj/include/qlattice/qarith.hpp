#pragma once

// Exact q-analogue arithmetic: [n]_q, [n]_q!, Gaussian binomials and sums of
// the largest ones, plus the two forbidden-poset size bounds built on them.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qlattice/error.hpp"

namespace qlattice {

using QInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline QInt int_pow(long long base, int exp) {
  QInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// [n]_q = 1 + q + ... + q^{n-1}.
inline QInt q_bracket(int n, int q) {
  if (n < 0 || q < 2) throw Error(Errc::OutOfRange, "q_bracket needs n >= 0, q >= 2");
  QInt sum = 0;
  QInt term = 1;
  for (int i = 0; i < n; ++i) {
    sum += term;
    term *= q;
  }
  return sum;
}

inline QInt q_factorial(int n, int q) {
  if (n < 0) throw Error(Errc::OutOfRange, "q_factorial needs n >= 0");
  QInt r = 1;
  for (int i = 1; i <= n; ++i) r *= q_bracket(i, q);
  return r;
}

/// Number of k-dimensional subspaces of F_q^n, via the product form
/// prod_{i<k} (q^{n-i} - 1) / (q^{k-i} - 1) with one exact division at the end.
inline QInt q_binomial(int n, int k, int q) {
  if (n < 0 || k < 0 || k > n) throw Error(Errc::OutOfRange, "q_binomial needs 0 <= k <= n");
  if (q < 2) throw Error(Errc::OutOfRange, "q_binomial needs q >= 2");
  QInt num = 1;
  QInt den = 1;
  for (int i = 0; i < k; ++i) {
    num *= int_pow(q, n - i) - 1;
    den *= int_pow(q, k - i) - 1;
  }
  return num / den;
}

/// Total variant: 0 outside 0 <= k <= n.
inline QInt q_binomial_or_zero(int n, int k, int q) {
  if (n < 0 || k < 0 || k > n) return 0;
  return q_binomial(n, k, q);
}

/// Indices of the k largest levels of L(n, q); ties go to the index nearest
/// the middle, then to the smaller index. Returned in increasing order.
inline std::vector<int> largest_levels(int n, int k, int q) {
  if (n < 0 || k < 1 || k > n + 1) throw Error(Errc::OutOfRange, "largest_levels needs 1 <= k <= n+1");
  std::vector<int> idx(n + 1);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<QInt> sizes;
  for (int i = 0; i <= n; ++i) sizes.push_back(q_binomial(n, i, q));
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    const int da = std::abs(2 * a - n);
    const int db = std::abs(2 * b - n);
    if (da != db) return da < db;
    return a < b;
  });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// Sum of the k largest Gaussian binomials [n choose i]_q.
inline QInt sigma_q(int n, int k, int q) {
  QInt s = 0;
  for (int i : largest_levels(n, k, q)) s += q_binomial(n, i, q);
  return s;
}

inline QInt floor_of(const Rational& r) {
  QInt num = boost::multiprecision::numerator(r);
  QInt den = boost::multiprecision::denominator(r);
  QInt fl = num / den;
  if (num < 0 && fl * den != num) fl -= 1;
  return fl;
}

inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// A size bound as an exact rational and its floor.
struct BoundValue {
  Rational exact;
  QInt floor;
};

/// (|P| + h(P))/2 - 1 times the middle Gaussian binomial.
inline BoundValue bn_bound(int poset_size, int poset_height, int n, int q) {
  const Rational factor = Rational(poset_size + poset_height, 2) - 1;
  const Rational value = factor * Rational(q_binomial(n, n / 2, q));
  return {value, floor_of(value)};
}

/// 2^{-(k-1)} (|P| + (3k-5) 2^{k-2} (h(P)-1) - 1) times the middle Gaussian binomial.
inline BoundValue gm_bound(int poset_size, int poset_height, int n, int q, int k) {
  if (k < 2) throw Error(Errc::OutOfRange, "gm_bound needs k >= 2");
  const QInt inner = QInt(poset_size) + QInt(3 * k - 5) * int_pow(2, k - 2) * (poset_height - 1) - 1;
  const Rational value = Rational(inner, int_pow(2, k - 1)) * Rational(q_binomial(n, n / 2, q));
  return {value, floor_of(value)};
}

}  // namespace qlattice

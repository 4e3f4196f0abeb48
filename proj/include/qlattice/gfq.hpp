#pragma once

// Table-driven arithmetic for the finite fields F_q, q = p^e <= 16.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qlattice/error.hpp"

namespace qlattice {

using Scalar = std::uint8_t;

constexpr int kMaxFieldOrder = 16;

namespace detail {

struct PrimePowerFactor {
  int p = 0;
  int e = 0;
};

inline bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Returns p = 0 when q is not a prime power.
inline PrimePowerFactor factor_prime_power(int q) {
  if (q < 2) return {};
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1 || !is_prime(p)) return {};
  return {p, e};
}

// Monic irreducible modulus for F_{p^e}, coefficients from the constant term
// upwards. Each entry is the smallest monic irreducible polynomial of its degree
// when a polynomial sum c_i x^i is read as the integer sum c_i p^i.
inline std::vector<int> modulus_polynomial(int p, int e) {
  if (e == 1) return {0, 1};
  if (p == 2 && e == 2) return {1, 1, 1};
  if (p == 2 && e == 3) return {1, 1, 0, 1};
  if (p == 2 && e == 4) return {1, 1, 0, 0, 1};
  if (p == 3 && e == 2) return {1, 0, 1};
  throw Error(Errc::UnsupportedOrder, "no modulus for p=" + std::to_string(p) + " e=" + std::to_string(e));
}

}  // namespace detail

/// The field F_q as complete operation tables on {0, ..., q-1}.
///
/// An element of F_{p^e} is encoded as the integer sum a_i p^i of its
/// coefficient vector in the polynomial basis 1, x, ..., x^{e-1}; in prime
/// fields this is the residue itself. 0 and 1 are the additive and
/// multiplicative identities in every field.
struct FieldSpec {
  int q = 0;
  int p = 0;
  int e = 0;
  std::vector<Scalar> add_table;
  std::vector<Scalar> mul_table;
  std::vector<Scalar> neg_table;
  std::vector<Scalar> inv_table;  // inv_table[0] is unused and stored as 0

  Scalar add(Scalar a, Scalar b) const { return add_table[a * q + b]; }
  Scalar mul(Scalar a, Scalar b) const { return mul_table[a * q + b]; }
  Scalar neg(Scalar a) const { return neg_table[a]; }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar inv(Scalar a) const { return inv_table[a]; }

  Scalar pow(Scalar a, int k) const {
    Scalar r = 1;
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  bool operator==(const FieldSpec&) const = default;
};

/// Builds F_q. Deterministic: the same q always yields identical tables.
inline FieldSpec make_field(int q) {
  const auto f = detail::factor_prime_power(q);
  if (f.p == 0) throw Error(Errc::NotAPrimePower, std::to_string(q) + " is not a prime power");
  if (q > kMaxFieldOrder) throw Error(Errc::UnsupportedOrder, "field order " + std::to_string(q) + " exceeds 16");

  FieldSpec fs;
  fs.q = q;
  fs.p = f.p;
  fs.e = f.e;
  const int p = f.p;
  const int e = f.e;

  auto digits = [&](int v) {
    std::array<int, 4> d{};
    for (int i = 0; i < e; ++i) {
      d[i] = v % p;
      v /= p;
    }
    return d;
  };
  auto encode = [&](const std::array<int, 4>& d) {
    int v = 0;
    for (int i = e - 1; i >= 0; --i) v = v * p + d[i];
    return v;
  };

  const auto modulus = detail::modulus_polynomial(p, e);
  fs.add_table.resize(q * q);
  fs.mul_table.resize(q * q);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const auto da = digits(a);
      const auto db = digits(b);
      std::array<int, 4> sum{};
      for (int i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p;
      fs.add_table[a * q + b] = static_cast<Scalar>(encode(sum));

      if (e == 1) {
        fs.mul_table[a * q + b] = static_cast<Scalar>((a * b) % p);
        continue;
      }
      std::array<int, 8> prod{};
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      // reduce by the monic modulus from the top degree down
      for (int deg = 2 * e - 2; deg >= e; --deg) {
        const int c = prod[deg];
        if (c == 0) continue;
        for (int i = 0; i <= e; ++i) {
          prod[deg - e + i] = ((prod[deg - e + i] - c * modulus[i]) % p + p) % p;
        }
      }
      std::array<int, 4> red{};
      for (int i = 0; i < e; ++i) red[i] = prod[i];
      fs.mul_table[a * q + b] = static_cast<Scalar>(encode(red));
    }
  }

  fs.neg_table.assign(q, 0);
  fs.inv_table.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (fs.add_table[a * q + b] == 0) fs.neg_table[a] = static_cast<Scalar>(b);
      if (a != 0 && fs.mul_table[a * q + b] == 1) fs.inv_table[a] = static_cast<Scalar>(b);
    }
  }
  return fs;
}

/// Exhaustive check of the field axioms on the stored tables.
inline bool field_axiom_check(const FieldSpec& f) {
  const int q = f.q;
  if (q < 2) return false;
  const std::size_t sq = static_cast<std::size_t>(q) * q;
  if (f.add_table.size() != sq || f.mul_table.size() != sq) return false;
  if (f.neg_table.size() != static_cast<std::size_t>(q) || f.inv_table.size() != static_cast<std::size_t>(q))
    return false;
  for (auto v : f.add_table)
    if (v >= q) return false;
  for (auto v : f.mul_table)
    if (v >= q) return false;

  for (int a = 0; a < q; ++a) {
    const auto sa = static_cast<Scalar>(a);
    if (f.add(sa, 0) != sa || f.mul(sa, 1) != sa || f.mul(sa, 0) != 0) return false;
    if (f.add(sa, f.neg(sa)) != 0) return false;
    if (a != 0 && f.mul(sa, f.inv(sa)) != 1) return false;
    for (int b = 0; b < q; ++b) {
      const auto sb = static_cast<Scalar>(b);
      if (f.add(sa, sb) != f.add(sb, sa) || f.mul(sa, sb) != f.mul(sb, sa)) return false;
      for (int c = 0; c < q; ++c) {
        const auto sc = static_cast<Scalar>(c);
        if (f.add(f.add(sa, sb), sc) != f.add(sa, f.add(sb, sc))) return false;
        if (f.mul(f.mul(sa, sb), sc) != f.mul(sa, f.mul(sb, sc))) return false;
        if (f.mul(sa, f.add(sb, sc)) != f.add(f.mul(sa, sb), f.mul(sa, sc))) return false;
      }
    }
  }
  return true;
}

}  // namespace qlattice

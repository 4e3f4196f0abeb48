#pragma once

// Forbidden patterns: small posets, the named families used throughout
// (forks, butterflies, Y shapes, chains), a tiny text DSL, and the weak and
// induced embedding tests.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qlattice/error.hpp"
#include "qlattice/family.hpp"
#include "qlattice/qarith.hpp"

namespace qlattice {

constexpr int kMaxPosetSize = 24;

/// A finite poset on elements 0..m-1. `up[i]` has bit j set iff i < j; the
/// relation is kept transitively closed and irreflexive.
struct PosetSpec {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::uint32_t> up;

  int size() const { return static_cast<int>(up.size()); }
  bool less(int a, int b) const { return (up[a] >> b) & 1u; }
  bool comparable(int a, int b) const { return a == b || less(a, b) || less(b, a); }

  std::uint32_t down_mask(int i) const {
    std::uint32_t d = 0;
    for (int j = 0; j < size(); ++j)
      if (less(j, i)) d |= 1u << j;
    return d;
  }

  /// Number of elements in a longest chain.
  int height() const {
    if (up.empty()) return 0;
    std::vector<int> memo(size(), 0);
    auto longest_from = [&](auto&& self, int i) -> int {
      if (memo[i]) return memo[i];
      int best = 1;
      for (int j = 0; j < size(); ++j)
        if (less(i, j)) best = std::max(best, 1 + self(self, j));
      return memo[i] = best;
    };
    int h = 0;
    for (int i = 0; i < size(); ++i) h = std::max(h, longest_from(longest_from, i));
    return h;
  }

  bool operator==(const PosetSpec& o) const { return up == o.up; }
};

/// Builds a poset from strict relations (a, b) meaning a < b, applying the
/// transitive closure. Rejects cycles and self-relations.
inline PosetSpec make_poset(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& relations,
                            std::string name = {}) {
  const int m = static_cast<int>(labels.size());
  if (m > kMaxPosetSize) throw Error(Errc::OutOfRange, "poset too large");
  PosetSpec p;
  p.name = std::move(name);
  p.labels = std::move(labels);
  p.up.assign(m, 0);
  for (auto [a, b] : relations) {
    if (a < 0 || b < 0 || a >= m || b >= m) throw Error(Errc::OutOfRange, "relation references unknown element");
    p.up[a] |= 1u << b;
  }
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      if (p.less(i, k)) p.up[i] |= p.up[k];
  for (int i = 0; i < m; ++i)
    if (p.less(i, i)) throw Error(Errc::CycleError, "relations contain a cycle through " + p.labels[i]);
  return p;
}

/// The same elements with every relation reversed.
inline PosetSpec dual(const PosetSpec& p) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (p.less(i, j)) rel.emplace_back(j, i);
  std::string name = p.name.empty() ? std::string() : "dual(" + p.name + ")";
  return make_poset(p.labels, rel, name);
}

/// Longest chain length measured on the Hasse diagram (cover relations only);
/// agrees with height() on any valid poset.
inline int hasse_height(const PosetSpec& p) {
  const int m = p.size();
  std::vector<std::uint32_t> cover(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!p.less(i, j)) continue;
      bool direct = true;
      for (int k = 0; k < m && direct; ++k)
        if (p.less(i, k) && p.less(k, j)) direct = false;
      if (direct) cover[i] |= 1u << j;
    }
  std::vector<int> memo(m, 0);
  auto go = [&](auto&& self, int i) -> int {
    if (memo[i]) return memo[i];
    int best = 1;
    for (int j = 0; j < m; ++j)
      if ((cover[i] >> j) & 1u) best = std::max(best, 1 + self(self, j));
    return memo[i] = best;
  };
  int h = 0;
  for (int i = 0; i < m; ++i) h = std::max(h, go(go, i));
  return h;
}

namespace detail {

inline std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

inline int parse_positive(const std::string& s, const std::string& spec) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error(Errc::ParseError, "bad parameter in '" + spec + "'");
  const int v = std::stoi(s);
  if (v == 0) throw Error(Errc::OutOfRange, "parameter must be positive in '" + spec + "'");
  if (v > kMaxPosetSize - 2) throw Error(Errc::OutOfRange, "parameter too large in '" + spec + "'");
  return v;
}

}  // namespace detail

inline PosetSpec fork_poset(int k) {  // V_k: y below x_1..x_k
  std::vector<std::string> labels{"y"};
  std::vector<std::pair<int, int>> rel;
  for (int i = 1; i <= k; ++i) {
    labels.push_back("x" + std::to_string(i));
    rel.emplace_back(0, i);
  }
  return make_poset(labels, rel, "V:" + std::to_string(k));
}

inline PosetSpec join_poset(int l) {  // Lambda_l: x_1..x_l below y
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> rel;
  for (int i = 1; i <= l; ++i) {
    labels.push_back("x" + std::to_string(i));
    rel.emplace_back(i - 1, l);
  }
  labels.push_back("y");
  return make_poset(labels, rel, "L:" + std::to_string(l));
}

inline PosetSpec chain_poset(int h) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < h; ++i) {
    labels.push_back("c" + std::to_string(i + 1));
    if (i > 0) rel.emplace_back(i - 1, i);
  }
  return make_poset(labels, rel, "C:" + std::to_string(h));
}

inline PosetSpec butterfly_poset() {
  return make_poset({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, "B");
}

// Y_k: chain x_1 < ... < x_k with two incomparable elements y, z on top.
inline PosetSpec y_poset(int k) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < k; ++i) {
    labels.push_back("x" + std::to_string(i + 1));
    if (i > 0) rel.emplace_back(i - 1, i);
  }
  labels.push_back("y");
  labels.push_back("z");
  rel.emplace_back(k - 1, k);
  rel.emplace_back(k - 1, k + 1);
  return make_poset(labels, rel, "Y:" + std::to_string(k));
}

// Y'_k: y, z below the chain x_k < ... < x_1, listed bottom-up.
inline PosetSpec y_dual_poset(int k) {
  std::vector<std::string> labels{"y", "z"};
  std::vector<std::pair<int, int>> rel{{0, 2}, {1, 2}};
  for (int i = 0; i < k; ++i) {
    labels.push_back("x" + std::to_string(k - i));
    if (i > 0) rel.emplace_back(i + 1, i + 2);
  }
  return make_poset(labels, rel, "Y':" + std::to_string(k));
}

/// "V:k", "L:l", "B", "Y:k", "Y':k" or "C:h".
inline PosetSpec named_poset(const std::string& spec_in) {
  const std::string spec = detail::trim(spec_in);
  if (spec == "B") return butterfly_poset();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(Errc::ParseError, "unknown poset '" + spec + "'");
  const std::string head = spec.substr(0, colon);
  const int k = detail::parse_positive(spec.substr(colon + 1), spec);
  if (head == "V") return fork_poset(k);
  if (head == "L") return join_poset(k);
  if (head == "Y") return y_poset(k);
  if (head == "Y'") return y_dual_poset(k);
  if (head == "C") return chain_poset(k);
  throw Error(Errc::ParseError, "unknown poset '" + spec + "'");
}

/// Comma-separated list of named posets, e.g. "V:2,L:2".
inline std::vector<PosetSpec> named_posets(const std::string& list) {
  std::vector<PosetSpec> out;
  for (const auto& item : detail::split(list, ','))
    if (!item.empty()) out.push_back(named_poset(item));
  if (out.empty()) throw Error(Errc::ParseError, "empty poset list");
  return out;
}

/// Parses "elements: a,b,c; relations: a<c, b<c". `>` is accepted as well.
inline PosetSpec parse_poset_dsl(const std::string& text) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> raw;
  bool saw_elements = false;
  for (const auto& section : detail::split(text, ';')) {
    if (section.empty()) continue;
    const auto colon = section.find(':');
    if (colon == std::string::npos) throw Error(Errc::ParseError, "missing ':' in '" + section + "'");
    const std::string key = detail::trim(section.substr(0, colon));
    const std::string body = section.substr(colon + 1);
    if (key == "elements") {
      saw_elements = true;
      for (const auto& e : detail::split(body, ','))
        if (!e.empty()) labels.push_back(e);
    } else if (key == "relations") {
      for (const auto& r : detail::split(body, ',')) {
        if (r.empty()) continue;
        const auto lt = r.find('<');
        const auto gt = r.find('>');
        if ((lt == std::string::npos) == (gt == std::string::npos))
          throw Error(Errc::ParseError, "relation must contain exactly one of '<' '>': '" + r + "'");
        const auto pos = lt != std::string::npos ? lt : gt;
        std::string a = detail::trim(r.substr(0, pos));
        std::string b = detail::trim(r.substr(pos + 1));
        if (gt != std::string::npos) std::swap(a, b);
        raw.emplace_back(a, b);
      }
    } else {
      throw Error(Errc::ParseError, "unknown section '" + key + "'");
    }
  }
  if (!saw_elements || labels.empty()) throw Error(Errc::ParseError, "no elements declared");
  std::map<std::string, int> id;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!id.emplace(labels[i], static_cast<int>(i)).second) throw Error(Errc::ParseError, "duplicate element " + labels[i]);
  std::vector<std::pair<int, int>> rel;
  for (const auto& [a, b] : raw) {
    if (!id.count(a) || !id.count(b)) throw Error(Errc::ParseError, "relation uses undeclared element");
    if (a == b) throw Error(Errc::CycleError, "self relation on " + a);
    rel.emplace_back(id[a], id[b]);
  }
  return make_poset(labels, rel);
}

/// Shape of a fork: V_k (one element below k pairwise incomparable ones) or
/// its dual Lambda_k. The 2-chain is both V_1 and Lambda_1.
struct ForkShape {
  bool is_v = false;
  bool is_lambda = false;
  int k = 0;
};

inline std::optional<ForkShape> fork_shape(const PosetSpec& p) {
  const int m = p.size();
  if (m < 2) return std::nullopt;
  const std::uint32_t all = (m == 32) ? ~0u : ((1u << m) - 1);
  ForkShape s;
  s.k = m - 1;
  for (int y = 0; y < m; ++y) {
    const std::uint32_t others = all & ~(1u << y);
    bool others_free = true;
    for (int i = 0; i < m && others_free; ++i)
      if (i != y && (p.up[i] & others) != 0) others_free = false;
    if (!others_free) continue;
    if (p.up[y] == others) s.is_v = true;
    if (p.down_mask(y) == others) s.is_lambda = true;
  }
  if (!s.is_v && !s.is_lambda) return std::nullopt;
  return s;
}

/// Any order on indices that answers strict `less(a, b)`.
template <class H>
concept StrictOrder = requires(const H& h, std::size_t a, std::size_t b) {
  { h.less(a, b) } -> std::convertible_to<bool>;
};

/// Searches for an injection P -> members that preserves every relation
/// (weak) and, when `induced`, also reflects them. Elements of P are assigned
/// in index order and candidates tried in increasing member order, so the
/// first hit is the lexicographically least embedding. With `must_use`, only
/// embeddings whose image contains that member are considered.
template <StrictOrder Host>
std::optional<std::vector<std::size_t>> find_embedding(const PosetSpec& P, const Host& host,
                                                       const std::vector<std::size_t>& members, bool induced,
                                                       std::optional<std::size_t> must_use = std::nullopt) {
  const int m = P.size();
  if (m == 0) return std::vector<std::size_t>{};
  const std::size_t r = members.size();
  if (static_cast<std::size_t>(m) > r) return std::nullopt;

  // in-family up/down counts give a cheap necessary condition per candidate
  std::vector<int> up_count(r, 0), down_count(r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (i != j && host.less(members[i], members[j])) {
        ++up_count[i];
        ++down_count[j];
      }
  std::vector<int> need_up(m), need_down(m);
  for (int i = 0; i < m; ++i) {
    need_up[i] = __builtin_popcount(P.up[i]);
    need_down[i] = __builtin_popcount(P.down_mask(i));
  }

  std::vector<std::size_t> assigned(m);  // positions into members
  std::vector<bool> used(r, false);

  auto consistent = [&](int i, std::size_t pos) {
    const std::size_t a = members[pos];
    for (int j = 0; j < i; ++j) {
      const std::size_t b = members[assigned[j]];
      const bool a_lt_b = host.less(a, b);
      const bool b_lt_a = host.less(b, a);
      if (P.less(i, j) && !a_lt_b) return false;
      if (P.less(j, i) && !b_lt_a) return false;
      if (induced && !P.comparable(i, j) && (a_lt_b || b_lt_a)) return false;
    }
    return true;
  };

  std::optional<std::size_t> forced_pos;
  if (must_use) {
    auto it = std::find(members.begin(), members.end(), *must_use);
    if (it == members.end()) return std::nullopt;
    forced_pos = static_cast<std::size_t>(it - members.begin());
  }

  // when must_use is set, the forced member is tried as the image of each
  // element of P in turn
  for (int forced_elem = (forced_pos ? 0 : -1); forced_elem < (forced_pos ? m : 0); ++forced_elem) {
    std::fill(used.begin(), used.end(), false);
    bool found = false;
    auto assign = [&](auto&& self, int i) -> void {
      if (i == m) {
        found = true;
        return;
      }
      if (forced_pos && i == forced_elem) {
        const std::size_t pos = *forced_pos;
        if (used[pos] || up_count[pos] < need_up[i] || down_count[pos] < need_down[i] || !consistent(i, pos)) return;
        used[pos] = true;
        assigned[i] = pos;
        self(self, i + 1);
        if (!found) used[pos] = false;
        return;
      }
      for (std::size_t pos = 0; pos < r && !found; ++pos) {
        if (used[pos] || (forced_pos && pos == *forced_pos)) continue;
        if (up_count[pos] < need_up[i] || down_count[pos] < need_down[i]) continue;
        if (!consistent(i, pos)) continue;
        used[pos] = true;
        assigned[i] = pos;
        self(self, i + 1);
        if (!found) used[pos] = false;
      }
    };
    assign(assign, 0);
    if (found) {
      std::vector<std::size_t> out(m);
      for (int i = 0; i < m; ++i) out[i] = members[assigned[i]];
      return out;
    }
  }
  return std::nullopt;
}

/// Weak or induced embedding of P into a family of subspaces.
inline std::optional<std::vector<std::size_t>> embeds(const PosetSpec& P, const Family& F, bool induced) {
  return find_embedding(P, F.lattice(), F.indices(), induced);
}

/// True iff F contains none of the patterns.
inline bool is_free(const Family& F, const std::vector<PosetSpec>& forbidden, bool induced) {
  const auto idx = F.indices();
  for (const auto& p : forbidden)
    if (find_embedding(p, F.lattice(), idx, induced)) return false;
  return true;
}

namespace detail {

// Is there an antichain of `size` elements inside `pool` (a sorted index list)?
template <StrictOrder Host>
bool has_antichain(const Host& host, const std::vector<std::size_t>& pool, int size) {
  if (size <= 0) return true;
  if (static_cast<int>(pool.size()) < size) return false;
  if (size == 1) return true;
  for (std::size_t i = 0; i + size <= pool.size(); ++i) {
    std::vector<std::size_t> rest;
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      if (!host.less(pool[i], pool[j]) && !host.less(pool[j], pool[i])) rest.push_back(pool[j]);
    if (has_antichain(host, rest, size - 1)) return true;
  }
  return false;
}

}  // namespace detail

/// Freeness for fork patterns only. Weak: F avoids V_k iff every member has
/// at most k-1 strict superspaces in F (dually for Lambda_l). Induced: no
/// member's in-family strict up-set (down-set) holds an antichain of size k (l).
inline bool fast_free_check(const Family& F, const std::vector<PosetSpec>& forbidden, bool induced) {
  const auto& L = F.lattice();
  const auto idx = F.indices();
  for (const auto& p : forbidden) {
    const auto shape = fork_shape(p);
    if (!shape) throw Error(Errc::UnsupportedShape, "fast_free_check handles only V_k and Lambda_l shapes");
    for (std::size_t x : idx) {
      std::vector<std::size_t> ups, downs;
      for (std::size_t y : idx) {
        if (L.less(x, y)) ups.push_back(y);
        if (L.less(y, x)) downs.push_back(y);
      }
      for (int side = 0; side < 2; ++side) {
        const bool check = side == 0 ? shape->is_v : shape->is_lambda;
        if (!check) continue;
        const auto& pool = side == 0 ? ups : downs;
        if (!induced) {
          if (static_cast<int>(pool.size()) >= shape->k) return false;
        } else if (detail::has_antichain(L, pool, shape->k)) {
          return false;
        }
      }
    }
  }
  return true;
}

inline BoundValue bn_bound(const PosetSpec& P, int n, int q) { return bn_bound(P.size(), P.height(), n, q); }
inline BoundValue gm_bound(const PosetSpec& P, int n, int q, int k) { return gm_bound(P.size(), P.height(), n, q, k); }

}  // namespace qlattice

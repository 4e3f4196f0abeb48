#pragma once

// Matching-based level moves: the top level of a {V_k, Lambda_l}-free family
// is traded for an equally large set one level down, without creating a
// forbidden pattern. Weak families use all free lower covers; induced
// families use the pinned neighbourhoods M(A).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "qlattice/error.hpp"
#include "qlattice/family.hpp"
#include "qlattice/posets.hpp"
#include "qlattice/qarith.hpp"

namespace qlattice {

// ---------------------------------------------------------------------------
// Hopcroft-Karp on a bipartite graph given by left adjacency lists.

struct Matching {
  std::vector<int> left;   // partner of each left vertex, or -1
  std::vector<int> right;  // partner of each right vertex, or -1
  std::size_t size = 0;
};

inline Matching hopcroft_karp(const std::vector<std::vector<int>>& adj, int n_right) {
  const int nl = static_cast<int>(adj.size());
  constexpr int kInf = std::numeric_limits<int>::max();
  Matching m;
  m.left.assign(nl, -1);
  m.right.assign(n_right, -1);
  std::vector<int> dist(nl);

  auto bfs = [&] {
    std::queue<int> qu;
    bool reachable_free = false;
    for (int u = 0; u < nl; ++u) {
      if (m.left[u] < 0) {
        dist[u] = 0;
        qu.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!qu.empty()) {
      const int u = qu.front();
      qu.pop();
      for (int v : adj[u]) {
        const int w = m.right[v];
        if (w < 0) {
          reachable_free = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          qu.push(w);
        }
      }
    }
    return reachable_free;
  };
  auto dfs = [&](auto&& self, int u) -> bool {
    for (int v : adj[u]) {
      const int w = m.right[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && self(self, w))) {
        m.left[u] = v;
        m.right[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };
  while (bfs())
    for (int u = 0; u < nl; ++u)
      if (m.left[u] < 0 && dfs(dfs, u)) ++m.size;
  return m;
}

// ---------------------------------------------------------------------------
// Small members and M(A).

/// Members of F containing no other member.
inline std::vector<std::size_t> small_members(const Family& F) {
  const auto& L = F.lattice();
  std::vector<std::size_t> out;
  for (auto x : F.indices())
    if (!L.below(x).intersects(F.members())) out.push_back(x);
  return out;
}

struct MASet {
  std::size_t A = 0;
  int s = 0;
  std::vector<std::size_t> small;    // small members of F properly inside A
  std::vector<std::size_t> pins;     // one 1-dim subspace of each small member
  std::vector<std::size_t> members;  // (s-1)-dim subspaces of A containing no pin
  QInt size_bound;                   // [s]_q - (l-1)[s-1]_q
};

/// Builds M(A) with each pin the least 1-dim subspace (canonical order) of
/// its small member.
inline MASet build_ma(const Family& F, std::size_t A, int l) {
  const auto& L = F.lattice();
  if (!F.contains(A)) throw Error(Errc::NotAMember, "A is not a member of F");
  MASet ma;
  ma.A = A;
  ma.s = L.dim(A);
  if (ma.s < 1) throw Error(Errc::PreconditionViolated, "A must have dimension at least 1");
  if (l < 1) throw Error(Errc::OutOfRange, "l must be positive");
  for (auto x : small_members(F))
    if (L.less(x, A)) ma.small.push_back(x);
  if (static_cast<int>(ma.small.size()) >= l)
    throw Error(Errc::FreenessViolated, "A has at least l small members below it");
  for (auto x : ma.small) {
    if (L.dim(x) == 0) throw Error(Errc::PinUnavailable, "the zero subspace has no 1-dimensional subspace");
    std::size_t pin = L.level_end(1);
    for (std::size_t p = L.level_begin(1); p < L.level_end(1); ++p)
      if (L.leq(p, x)) {
        pin = p;
        break;
      }
    ma.pins.push_back(pin);
  }
  for (std::size_t b = L.level_begin(ma.s - 1); b < L.level_end(ma.s - 1); ++b) {
    if (!L.less(b, A)) continue;
    bool avoids = true;
    for (auto p : ma.pins)
      if (L.leq(p, b)) avoids = false;
    if (avoids) ma.members.push_back(b);
  }
  const int q = L.q();
  ma.size_bound = q_bracket(ma.s, q) - QInt(l - 1) * q_bracket(ma.s - 1, q);
  return ma;
}

// ---------------------------------------------------------------------------
// Pushdown.

struct PushdownStep {
  int s = 0;                                            // level removed
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (upper, lower)
  std::vector<std::pair<std::size_t, std::size_t>> matching;
  std::vector<std::size_t> replaced;                   // the new (s-1)-dim members
  std::size_t min_degree = 0;                          // over the upper side
  QInt degree_bound;                                   // weak: [s]_q - (l-1); induced: M(A) bound
  Rational ratio_lower;                                // the Hall ratio lower bound for this s
  std::vector<std::size_t> ma_sizes;                   // induced only
};

struct PushdownResult {
  Family family;
  std::vector<PushdownStep> steps;
  bool within_hypothesis = true;  // the parameters satisfy the lemma's assumptions
  std::string note;
};

// n/2 for even n (weak case), (n+1)/2 for odd n (induced case).
inline int default_floor(int n) { return (n + 1) / 2; }

/// Repeatedly replaces the top level t > floor by a saturating matching into
/// level t-1. Throws HallFailure if some step has no saturating matching and
/// FreenessViolatedAfterStep if a step creates a pattern.
inline PushdownResult pushdown(const Family& F, bool induced, int k, int l, std::optional<int> floor_opt = std::nullopt) {
  const auto& L = F.lattice();
  const int n = L.n(), q = L.q();
  if (k < 1 || l < 1) throw Error(Errc::OutOfRange, "k and l must be positive");
  const int floor_dim = floor_opt.value_or(default_floor(n));
  if (floor_dim < 0 || floor_dim > n) throw Error(Errc::OutOfRange, "floor outside 0..n");
  const std::vector<PosetSpec> forbidden = {fork_poset(k), join_poset(l)};
  if (!fast_free_check(F, forbidden, induced)) throw Error(Errc::FreenessViolated, "input family is not free");

  PushdownResult res;
  if (induced) {
    res.within_hypothesis = k <= q && l <= q;
    if (!res.within_hypothesis) res.note = "outside lemma hypothesis: k, l <= q required";
  } else {
    const QInt cap = int_pow(q, n / 2);
    res.within_hypothesis = n % 2 == 0 && QInt(k) <= cap && QInt(l) <= cap;
    if (!res.within_hypothesis) res.note = "outside lemma hypothesis: n even and k, l <= q^(n/2) required";
  }

  Family cur = F;
  while (cur.top_dim() > floor_dim && cur.top_dim() >= 1) {
    const int s = cur.top_dim();
    PushdownStep step;
    step.s = s;
    const auto upper = cur.level_members(s);
    std::vector<std::vector<int>> adj(upper.size());
    const std::size_t base = L.level_begin(s - 1);
    step.min_degree = std::numeric_limits<std::size_t>::max();
    for (std::size_t u = 0; u < upper.size(); ++u) {
      std::vector<std::size_t> nbrs;
      if (induced) {
        const auto ma = build_ma(cur, upper[u], l);
        nbrs = ma.members;
        step.ma_sizes.push_back(ma.members.size());
      } else {
        for (auto b : L.lower_covers(upper[u]))
          if (!cur.contains(b)) nbrs.push_back(b);
      }
      for (auto b : nbrs) {
        if (cur.contains(b)) throw Error(Errc::FreenessViolated, "neighbourhood meets the family");
        adj[u].push_back(static_cast<int>(b - base));
        step.edges.emplace_back(upper[u], b);
      }
      step.min_degree = std::min(step.min_degree, nbrs.size());
    }
    const QInt top = induced ? q_bracket(s, q) - QInt(l - 1) * q_bracket(s - 1, q) : q_bracket(s, q) - QInt(l - 1);
    step.degree_bound = top;
    step.ratio_lower = Rational(top, q_bracket(n - s + 1, q));

    const auto m = hopcroft_karp(adj, static_cast<int>(L.level_size(s - 1)));
    if (m.size != upper.size())
      throw Error(Errc::HallFailure, "no matching saturates level " + std::to_string(s));
    Bitset next = cur.members();
    for (std::size_t u = 0; u < upper.size(); ++u) {
      const std::size_t b = base + static_cast<std::size_t>(m.left[u]);
      step.matching.emplace_back(upper[u], b);
      step.replaced.push_back(b);
      next.reset(upper[u]);
      next.set(b);
    }
    std::sort(step.replaced.begin(), step.replaced.end());
    cur = Family(cur.lattice_ptr(), next);
    if (!fast_free_check(cur, forbidden, induced))
      throw Error(Errc::FreenessViolatedAfterStep, "step at level " + std::to_string(s) + " created a pattern");
    res.steps.push_back(std::move(step));
  }
  res.family = cur;
  return res;
}

/// Mirror image of pushdown through the complement map: the bottom level is
/// raised until it reaches `ceiling`.
inline PushdownResult dual_pushup(const Family& F, bool induced, int k, int l, std::optional<int> ceiling_opt = std::nullopt) {
  const int n = F.lattice().n();
  const int ceiling = ceiling_opt.value_or(n / 2);
  if (ceiling < 0 || ceiling > n) throw Error(Errc::OutOfRange, "ceiling outside 0..n");
  auto res = pushdown(F.dual(), induced, l, k, n - ceiling);
  const auto& L = F.lattice();
  res.family = res.family.dual();
  for (auto& st : res.steps) {
    st.s = n - st.s;
    for (auto& e : st.edges) e = {L.complement_index(e.first), L.complement_index(e.second)};
    for (auto& e : st.matching) e = {L.complement_index(e.first), L.complement_index(e.second)};
    for (auto& r : st.replaced) r = L.complement_index(r);
    std::sort(st.replaced.begin(), st.replaced.end());
  }
  return res;
}

// ---------------------------------------------------------------------------
// Tight sets in the cover graph between two levels.

/// Subsets A' of level s with |N(A')| = |A'| in the cover graph between
/// levels s and s+1, by exhaustive scan. Only levels of at most 20 elements.
inline std::vector<std::uint32_t> tight_subsets(const LinearLattice& L, int s) {
  if (s < 0 || s + 1 > L.n()) throw Error(Errc::OutOfRange, "need levels s and s+1");
  const std::size_t m = L.level_size(s);
  if (m > 20) throw Error(Errc::TooLarge, "level too large for a subset scan");
  std::vector<Bitset> nbr(m);
  for (std::size_t i = 0; i < m; ++i) {
    nbr[i] = Bitset(L.size());
    for (auto c : L.upper_covers(L.level_begin(s) + i)) nbr[i].set(c);
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    Bitset u(L.size());
    for (std::size_t i = 0; i < m; ++i)
      if ((mask >> i) & 1u) u |= nbr[i];
    if (u.count() == static_cast<std::size_t>(std::popcount(mask))) out.push_back(mask);
  }
  return out;
}

}  // namespace qlattice

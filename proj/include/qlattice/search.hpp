#pragma once

// La_q(n, P) and La_q*(n, P) at desk scale: exact maxima of pattern-free
// subspace families and, on request, every family attaining the maximum.

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "qlattice/error.hpp"
#include "qlattice/family.hpp"
#include "qlattice/order_search.hpp"
#include "qlattice/posets.hpp"

namespace qlattice {

enum class SearchMode { MaxSize, EnumerateExtremal };

struct SearchProblem {
  LatticePtr lattice;
  std::vector<PosetSpec> forbidden;
  bool induced = false;
  int dim_lo = 0;
  int dim_hi = -1;  // -1 means n
  SearchMode mode = SearchMode::MaxSize;
  SearchBudget budget;
  unsigned threads = 1;
  std::size_t max_extremal = 100000;
};

struct SearchReport {
  std::size_t optimum = 0;
  std::vector<Family> extremal;  // canonical order; one witness in MaxSize mode
  std::uint64_t nodes_explored = 0;
  bool completed = true;
  bool extremal_truncated = false;
  PruneStats stats;
  std::size_t seed_size = 0;  // size of the level used as the starting incumbent
  int seed_level = -1;
};

namespace detail {

inline void check_problem(const SearchProblem& p, int& lo, int& hi) {
  if (!p.lattice) throw Error(Errc::PreconditionViolated, "search problem has no lattice");
  if (p.forbidden.empty()) throw Error(Errc::PreconditionViolated, "forbidden set is empty");
  const int n = p.lattice->n();
  lo = p.dim_lo;
  hi = p.dim_hi < 0 ? n : p.dim_hi;
  if (lo < 0 || hi > n || lo > hi) throw Error(Errc::OutOfRange, "dimension range outside 0..n");
}

}  // namespace detail

/// Elements of the dimension range in branch order: levels nearest the middle
/// first, then lower dimension, then canonical index.
inline std::vector<std::size_t> branch_order(const LinearLattice& L, int lo, int hi) {
  std::vector<std::size_t> order;
  for (int d = lo; d <= hi; ++d)
    for (std::size_t i = L.level_begin(d); i < L.level_end(d); ++i) order.push_back(i);
  const int n = L.n();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int da = std::abs(2 * L.dim(a) - n);
    const int db = std::abs(2 * L.dim(b) - n);
    if (da != db) return da < db;
    if (L.dim(a) != L.dim(b)) return L.dim(a) < L.dim(b);
    return a < b;
  });
  return order;
}

inline SearchReport solve(const SearchProblem& p) {
  int lo = 0, hi = 0;
  detail::check_problem(p, lo, hi);
  const LinearLattice& L = *p.lattice;
  const auto order = branch_order(L, lo, hi);

  OrderSearchInput in;
  in.size = order.size();
  in.less = [&](std::size_t a, std::size_t b) { return L.less(order[a], order[b]); };
  in.forbidden = p.forbidden;
  in.induced = p.induced;
  in.enumerate = p.mode == SearchMode::EnumerateExtremal;
  in.budget = p.budget;
  in.threads = p.threads;
  in.max_extremal = p.max_extremal;

  // Incumbent: the largest level in range that is free (checked independently).
  SearchReport rep;
  std::size_t best_level_size = 0;
  for (int d = lo; d <= hi; ++d) {
    Family level(p.lattice);
    for (std::size_t i = L.level_begin(d); i < L.level_end(d); ++i) level = level.with(i);
    if (L.level_size(d) > best_level_size && is_free(level, p.forbidden, p.induced)) {
      best_level_size = L.level_size(d);
      rep.seed_level = d;
    }
  }
  if (rep.seed_level >= 0) {
    for (std::size_t pos = 0; pos < order.size(); ++pos)
      if (L.dim(order[pos]) == rep.seed_level) in.seed.push_back(pos);
    rep.seed_size = best_level_size;
  }

  const auto res = search_order(in);
  rep.optimum = res.optimum;
  rep.completed = res.completed;
  rep.extremal_truncated = res.extremal_truncated;
  rep.stats = res.stats;
  rep.nodes_explored = res.stats.nodes;
  for (const auto& positions : res.extremal) {
    std::vector<std::size_t> idx;
    for (auto pos : positions) idx.push_back(order[pos]);
    rep.extremal.emplace_back(p.lattice, idx);
  }
  std::sort(rep.extremal.begin(), rep.extremal.end());
  return rep;
}

/// Families inside levels 1 and 2 of L(3, q) avoiding {V_k, Lambda_l}, with
/// the two sufficient conditions under which the maximum is q^2 + q + 1 and
/// under which the two levels are the only maximum families.
struct TwoLevelReport {
  SearchReport search;
  int q = 0, k = 0, l = 0;
  long long plane_count = 0;  // q^2 + q + 1
  bool bound_condition = false;
  bool structure_condition = false;
  bool levels_only = false;
  bool induced_agrees = false;
};

inline long long bound_condition_rhs(int q, int k, int l) {
  return 1LL * (q + 3 - l) * (q + 1 - l) + 1LL * (q + 3 - k) * (q + 1 - k) + 2;
}
inline long long structure_condition_rhs(int q, int k, int l) {
  return 1LL * (q + 2 - l) * (q + 1 - l) + 1LL * (q + 2 - k) * (q + 1 - k) + 2;
}

inline TwoLevelReport solve_restricted_two_levels(int q, int k, int l, SearchBudget budget = {}, unsigned threads = 1,
                                                  LatticePtr lattice = nullptr) {
  if (q != 2 && q != 3 && q != 4) throw Error(Errc::OutOfRange, "two-level search supports q in {2,3,4}");
  if (k < 1 || l < 1) throw Error(Errc::OutOfRange, "k and l must be positive");
  if (!lattice) lattice = make_lattice(3, q);
  if (lattice->n() != 3 || lattice->q() != q) throw Error(Errc::WrongLattice, "expected L(3,q)");
  SearchProblem p;
  p.lattice = lattice;
  p.forbidden = {fork_poset(k), join_poset(l)};
  p.induced = false;
  p.dim_lo = 1;
  p.dim_hi = 2;
  p.mode = SearchMode::EnumerateExtremal;
  p.budget = budget;
  p.threads = threads;

  TwoLevelReport r;
  r.q = q;
  r.k = k;
  r.l = l;
  r.search = solve(p);
  p.induced = true;
  const auto induced = solve(p);
  r.induced_agrees = induced.optimum == r.search.optimum && induced.extremal == r.search.extremal;
  r.plane_count = 1LL * q * q + q + 1;
  r.bound_condition = r.plane_count < bound_condition_rhs(q, k, l);
  r.structure_condition = r.plane_count < structure_condition_rhs(q, k, l);
  r.levels_only = true;
  for (const auto& f : r.search.extremal) {
    const auto c = f.level_counts();
    if (c[1] != 0 && c[2] != 0) r.levels_only = false;
  }
  return r;
}

}  // namespace qlattice

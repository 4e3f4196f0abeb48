#pragma once

// Seeded property suites over random families. Families are generated from
// (seed, index) alone, so results do not depend on how the work is split
// between threads.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qlattice/error.hpp"
#include "qlattice/families.hpp"
#include "qlattice/posets.hpp"
#include "qlattice/transforms.hpp"

namespace qlattice {

/// A random {V_k, Lambda_l}-free family (weak) on dims lo..n with at least
/// one member of dim > lo; greedy insertion along a random order.
inline Family random_fork_free_family(const LatticePtr& L, int lo, int k, int l, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  const int n = L->n();
  if (lo < 0 || lo >= n) throw Error(Errc::OutOfRange, "need 0 <= lo < n");
  std::vector<std::size_t> upper, pool;
  for (int d = lo; d <= n; ++d)
    for (std::size_t i = L->level_begin(d); i < L->level_end(d); ++i) {
      pool.push_back(i);
      if (d > lo) upper.push_back(i);
    }
  const std::vector<PosetSpec> forb = {fork_poset(k), join_poset(l)};
  std::uniform_int_distribution<std::size_t> pick(0, upper.size() - 1);
  Family F(L, std::vector<std::size_t>{upper[pick(rng)]});
  std::shuffle(pool.begin(), pool.end(), rng);
  std::uniform_int_distribution<std::size_t> target_dist(1, L->level_size(n / 2));
  const std::size_t target = target_dist(rng);
  for (auto x : pool) {
    if (F.size() >= target) break;
    if (F.contains(x)) continue;
    const Family G = F.with(x);
    if (fast_free_check(G, forb, false)) F = G;
  }
  return F;
}

struct PushdownCase {
  std::uint64_t index = 0;
  std::vector<std::size_t> input_profile;
  std::vector<std::size_t> output_profile;
  std::size_t steps = 0;
  bool size_kept = false;
  bool free_after = false;    // independent embedding check
  bool landed = false;        // max dim <= floor
  bool degree_ok = false;     // every step's min degree meets [s]_q - (l-1)
  bool ratio_ok = false;      // every step's Hall ratio bound is >= 1
  bool hall_failure = false;
  std::string error;
  bool ok() const { return size_kept && free_after && landed && degree_ok && ratio_ok && !hall_failure && error.empty(); }
};

struct PushdownSuiteResult {
  std::uint64_t seed = 0;
  int n = 4, q = 2, k = 2, l = 2, lo = 2, floor_dim = 2;
  std::vector<PushdownCase> cases;
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const PushdownCase& c) { return !c.ok(); }));
  }
  std::size_t hall_failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const PushdownCase& c) { return c.hall_failure; }));
  }
};

inline PushdownCase run_pushdown_case(const LatticePtr& L, const PushdownSuiteResult& cfg, std::uint64_t index) {
  PushdownCase c;
  c.index = index;
  const Family F = random_fork_free_family(L, cfg.lo, cfg.k, cfg.l, cfg.seed, index);
  c.input_profile = F.level_counts();
  try {
    const auto r = pushdown(F, false, cfg.k, cfg.l, cfg.floor_dim);
    c.output_profile = r.family.level_counts();
    c.steps = r.steps.size();
    c.size_kept = r.family.size() == F.size();
    c.free_after = is_free(r.family, {fork_poset(cfg.k), join_poset(cfg.l)}, false);
    c.landed = r.family.top_dim() <= cfg.floor_dim;
    c.degree_ok = c.ratio_ok = true;
    for (const auto& st : r.steps) {
      if (QInt(st.min_degree) < st.degree_bound) c.degree_ok = false;
      if (st.ratio_lower < 1) c.ratio_ok = false;
    }
  } catch (const Error& e) {
    c.hall_failure = e.code() == Errc::HallFailure;
    c.error = e.what();
  }
  return c;
}

/// `count` random weak {V_k, Lambda_l}-free families of L(n, q) on dims >= lo,
/// each pushed down to `floor_dim`.
inline PushdownSuiteResult pushdown_property_suite(const LatticePtr& L, std::uint64_t seed, std::size_t count, unsigned threads,
                                                   int k = 2, int l = 2, int lo = 2, int floor_dim = 2) {
  PushdownSuiteResult res;
  res.seed = seed;
  res.n = L->n();
  res.q = L->q();
  res.k = k;
  res.l = l;
  res.lo = lo;
  res.floor_dim = floor_dim;
  res.cases.resize(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) res.cases[i] = run_pushdown_case(L, res, i);
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return res;
}

}  // namespace qlattice

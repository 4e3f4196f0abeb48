#pragma once

// Exact branch-and-bound for the largest subfamily of a finite order that
// avoids a set of patterns (weak or induced). Works on any host order given
// as a strict relation on candidate positions; the lattice search and the
// alpha computations on set families are both thin wrappers around it.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "qlattice/error.hpp"
#include "qlattice/posets.hpp"
#include "qlattice/wordset.hpp"

namespace qlattice {

struct SearchBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0.0;     // 0 = unlimited
};

struct PruneStats {
  std::uint64_t nodes = 0;
  std::uint64_t bound_prunes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t subtrees = 0;
};

struct OrderSearchInput {
  std::size_t size = 0;                             // candidate positions 0..size-1, in branch order
  std::function<bool(std::size_t, std::size_t)> less;  // strict order on positions
  std::vector<PosetSpec> forbidden;
  bool induced = false;
  bool enumerate = false;  // collect every family of maximum size
  SearchBudget budget;
  unsigned threads = 1;
  std::size_t max_extremal = 100000;
  std::vector<std::size_t> seed;  // a known free family (positions); empty is allowed
};

struct OrderSearchResult {
  std::size_t optimum = 0;
  std::vector<std::vector<std::size_t>> extremal;  // sorted position lists, sorted
  bool completed = true;
  bool extremal_truncated = false;
  PruneStats stats;
};

constexpr std::size_t kMaxSearchElements = 4096;
// Depth of the include/exclude prefix expanded before subtrees go to workers.
// Fixed so the decomposition, and with it every reported count, does not
// depend on the worker count.
constexpr int kSplitDepth = 10;

namespace detail {

template <std::size_t W>
class SearchEngine {
 public:
  using Set = WordSet<W>;

  explicit SearchEngine(const OrderSearchInput& in) : in_(in), m_(in.size) {
    above_.resize(m_);
    below_.resize(m_);
    incomp_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        if (i == j) continue;
        if (in.less(i, j)) {
          above_[i].set(j);
          below_[j].set(i);
        }
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j)
        if (j != i && !above_[i].test(j) && !below_[i].test(j)) incomp_[i].set(j);
    }
    classify();
  }

  OrderSearchResult run() {
    start_ = std::chrono::steady_clock::now();
    Set seed;
    for (auto s : in_.seed) seed.set(s);
    if (!in_.seed.empty() && !family_free(seed)) throw Error(Errc::PreconditionViolated, "seed family is not free");

    Set all;
    for (std::size_t i = 0; i < m_; ++i) all.set(i);

    // Prefix expansion, single-threaded and deterministic.
    Local prefix;
    prefix.best = in_.seed.size();
    if (in_.enumerate && !in_.seed.empty()) prefix.extremal.push_back(seed);
    if (!in_.enumerate) prefix.witness = seed;
    std::vector<Task> tasks;
    dfs(prefix, Set{}, 0, all, false, 0, &tasks);

    std::vector<Local> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        const std::size_t t = next.fetch_add(1);
        if (t >= tasks.size()) return;
        Local& loc = results[t];
        loc.best = prefix.best;
        dfs(loc, tasks[t].F, tasks[t].size, tasks[t].cand, tasks[t].filtered, kSplitDepth, nullptr);
      }
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(in_.threads, static_cast<unsigned>(tasks.size())));
    if (nthreads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    // Merge in task order.
    OrderSearchResult out;
    std::size_t best = prefix.best;
    for (const auto& r : results) best = std::max(best, r.best);
    out.optimum = best;
    out.stats = prefix.stats;
    out.stats.subtrees = tasks.size();
    std::vector<Set> collected;
    auto take = [&](const Local& loc) {
      if (loc.truncated) out.extremal_truncated = true;
      if (loc.best != best) return;
      if (in_.enumerate) {
        for (const auto& s : loc.extremal) collected.push_back(s);
      } else if (loc.witness) {
        collected.push_back(*loc.witness);
      }
    };
    take(prefix);
    for (const auto& r : results) {
      out.stats.nodes += r.stats.nodes;
      out.stats.bound_prunes += r.stats.bound_prunes;
      out.stats.leaves += r.stats.leaves;
      take(r);
    }

    for (const auto& s : collected) {
      std::vector<std::size_t> v;
      s.for_each([&](std::size_t i) { v.push_back(i); });
      if (v.size() == best) out.extremal.push_back(std::move(v));
    }
    std::sort(out.extremal.begin(), out.extremal.end());
    out.extremal.erase(std::unique(out.extremal.begin(), out.extremal.end()), out.extremal.end());
    if (!in_.enumerate && out.extremal.size() > 1) out.extremal.resize(1);
    if (out.extremal.size() > in_.max_extremal) {
      out.extremal.resize(in_.max_extremal);
      out.extremal_truncated = true;
    }
    out.completed = !stop_.load();
    return out;
  }

  /// Independent of the incremental checks: full re-verification of a set.
  bool family_free(const Set& F) const {
    Set G;
    bool ok = true;
    F.for_each([&](std::size_t x) {
      if (ok && !can_add(G, x)) ok = false;
      G.set(x);
    });
    return ok;
  }

  bool can_add(const Set& F, std::size_t x) const {
    if (fork_mode_) return in_.induced ? fork_induced_ok(F, x) : fork_weak_ok(F, x);
    Set G = F;
    G.set(x);
    for (const auto& p : in_.forbidden)
      if (embeds_through(p, G, x)) return false;
    return true;
  }

 private:
  struct Task {
    Set F;
    std::size_t size;
    Set cand;
    bool filtered;
  };
  struct Local {
    std::size_t best = 0;
    std::vector<Set> extremal;
    std::optional<Set> witness;
    bool truncated = false;
    PruneStats stats;
    std::uint64_t unflushed = 0;
  };

  void classify() {
    fork_mode_ = true;
    for (const auto& p : in_.forbidden) {
      const auto s = fork_shape(p);
      if (!s) {
        fork_mode_ = false;
        break;
      }
      if (s->is_v) v_k_ = v_k_ == 0 ? s->k : std::min(v_k_, s->k);
      if (s->is_lambda) l_k_ = l_k_ == 0 ? s->k : std::min(l_k_, s->k);
    }
    if (in_.forbidden.empty()) fork_mode_ = true;
    for (const auto& p : in_.forbidden)
      if (p.size() == 0) throw Error(Errc::PreconditionViolated, "empty forbidden poset");
  }

  bool fork_weak_ok(const Set& F, std::size_t x) const {
    if (v_k_) {
      if (F.count_and(above_[x]) >= v_k_) return false;
      bool bad = false;
      (F & below_[x]).for_each([&](std::size_t y) {
        if (!bad && F.count_and(above_[y]) >= v_k_ - 1) bad = true;
      });
      if (bad) return false;
    }
    if (l_k_) {
      if (F.count_and(below_[x]) >= l_k_) return false;
      bool bad = false;
      (F & above_[x]).for_each([&](std::size_t y) {
        if (!bad && F.count_and(below_[y]) >= l_k_ - 1) bad = true;
      });
      if (bad) return false;
    }
    return true;
  }

  bool antichain(Set pool, int k) const {
    if (k <= 0) return true;
    if (pool.count() < k) return false;
    if (k == 1) return true;
    while (pool.count() >= k) {
      const int i = pool.first();
      pool.reset(i);
      if (antichain(pool & incomp_[i], k - 1)) return true;
    }
    return false;
  }

  bool fork_induced_ok(const Set& F, std::size_t x) const {
    if (v_k_) {
      if (antichain(F & above_[x], v_k_)) return false;
      bool bad = false;
      (F & below_[x]).for_each([&](std::size_t y) {
        if (!bad && antichain(F & above_[y] & incomp_[x], v_k_ - 1)) bad = true;
      });
      if (bad) return false;
    }
    if (l_k_) {
      if (antichain(F & below_[x], l_k_)) return false;
      bool bad = false;
      (F & above_[x]).for_each([&](std::size_t y) {
        if (!bad && antichain(F & below_[y] & incomp_[x], l_k_ - 1)) bad = true;
      });
      if (bad) return false;
    }
    return true;
  }

  // Is there an embedding of P into G whose image contains x?
  bool embeds_through(const PosetSpec& P, const Set& G, std::size_t x) const {
    const int m = P.size();
    if (G.count() < m) return false;
    std::array<int, kMaxPosetSize> order{};
    std::array<std::size_t, kMaxPosetSize> phi{};
    for (int forced = 0; forced < m; ++forced) {
      int pos = 0;
      order[pos++] = forced;
      for (int i = 0; i < m; ++i)
        if (i != forced) order[pos++] = i;
      Set used;
      auto go = [&](auto&& self, int step) -> bool {
        if (step == m) return true;
        const int i = order[step];
        Set cand;
        if (step == 0) {
          cand.set(x);
        } else {
          cand = G - used;
        }
        for (int s = 0; s < step; ++s) {
          const int j = order[s];
          const std::size_t pj = phi[j];
          if (P.less(j, i)) {
            cand = cand & above_[pj];
          } else if (P.less(i, j)) {
            cand = cand & below_[pj];
          } else if (in_.induced) {
            cand = cand & incomp_[pj];
          }
        }
        bool found = false;
        cand.for_each([&](std::size_t c) {
          if (found) return;
          phi[i] = c;
          used.set(c);
          if (self(self, step + 1)) found = true;
          used.reset(c);
        });
        return found;
      };
      if (go(go, 0)) return true;
    }
    return false;
  }

  void tick(Local& loc) {
    ++loc.stats.nodes;
    // small node budgets need a finer flush, or short tasks never report
    const std::uint64_t every = in_.budget.max_nodes ? std::clamp<std::uint64_t>(in_.budget.max_nodes / 64, 1, 1024) : 1024;
    if (++loc.unflushed < every) return;
    const auto total = nodes_.fetch_add(loc.unflushed) + loc.unflushed;
    loc.unflushed = 0;
    if (in_.budget.max_nodes && total > in_.budget.max_nodes) stop_.store(true);
    if (in_.budget.max_seconds > 0) {
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (el > in_.budget.max_seconds) stop_.store(true);
    }
  }

  void record(Local& loc, const Set& F, std::size_t size) {
    ++loc.stats.leaves;
    if (size > loc.best) {
      loc.best = size;
      loc.extremal.clear();
      loc.truncated = false;
      loc.witness = F;
      if (in_.enumerate) loc.extremal.push_back(F);
      return;
    }
    if (size == loc.best && !loc.witness) loc.witness = F;
    if (size == loc.best && in_.enumerate) {
      if (loc.extremal.size() < in_.max_extremal) {
        loc.extremal.push_back(F);
      } else {
        loc.truncated = true;
      }
    }
  }

  void dfs(Local& loc, const Set& F, std::size_t size, Set cand, bool filtered, int depth, std::vector<Task>* tasks) {
    if (stop_.load(std::memory_order_relaxed)) return;
    if (tasks && depth == kSplitDepth) {
      tasks->push_back(Task{F, size, cand, filtered});
      return;
    }
    tick(loc);
    if (!filtered) {
      Set kept;
      cand.for_each([&](std::size_t c) {
        if (can_add(F, c)) kept.set(c);
      });
      cand = kept;
    }
    const std::size_t room = static_cast<std::size_t>(cand.count());
    if (in_.enumerate ? size + room < loc.best : size + room <= loc.best) {
      ++loc.stats.bound_prunes;
      return;
    }
    if (room == 0) {
      record(loc, F, size);
      return;
    }
    const int x = cand.first();
    cand.reset(x);
    Set with = F;
    with.set(x);
    dfs(loc, with, size + 1, cand, false, depth + 1, tasks);
    dfs(loc, F, size, cand, true, depth + 1, tasks);
  }

  const OrderSearchInput& in_;
  std::size_t m_;
  std::vector<Set> above_, below_, incomp_;
  bool fork_mode_ = false;
  int v_k_ = 0;
  int l_k_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> nodes_{0};
  std::chrono::steady_clock::time_point start_;
};

template <std::size_t W>
OrderSearchResult run_engine(const OrderSearchInput& in) {
  SearchEngine<W> engine(in);
  return engine.run();
}

}  // namespace detail

/// Largest pattern-free subfamily of the candidate order; with `enumerate`,
/// every family of that size.
inline OrderSearchResult search_order(const OrderSearchInput& in) {
  if (in.size > kMaxSearchElements) throw Error(Errc::OutOfGuard, "search host too large");
  if (in.size <= 64) return detail::run_engine<1>(in);
  if (in.size <= 128) return detail::run_engine<2>(in);
  if (in.size <= 256) return detail::run_engine<4>(in);
  if (in.size <= 512) return detail::run_engine<8>(in);
  if (in.size <= 1024) return detail::run_engine<16>(in);
  if (in.size <= 2048) return detail::run_engine<32>(in);
  return detail::run_engine<64>(in);
}

}  // namespace qlattice

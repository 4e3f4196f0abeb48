#pragma once

// Canonical families (levels, unions of levels, the exceptional extremal
// families of L(3,2)), structure checks on near-extremal families, and the
// family file format.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlattice/error.hpp"
#include "qlattice/family.hpp"
#include "qlattice/posets.hpp"
#include "qlattice/qarith.hpp"
#include "qlattice/search.hpp"

namespace qlattice {

inline Family level_family(const LatticePtr& L, int k) {
  if (k < 0 || k > L->n()) throw Error(Errc::OutOfRange, "level outside 0..n");
  Bitset m(L->size());
  for (std::size_t i = L->level_begin(k); i < L->level_end(k); ++i) m.set(i);
  return Family(L, m);
}

inline Family union_of_levels(const LatticePtr& L, const std::vector<int>& ks) {
  std::set<int> seen;
  Bitset m(L->size());
  for (int k : ks) {
    if (k < 0 || k > L->n()) throw Error(Errc::OutOfRange, "level outside 0..n");
    if (!seen.insert(k).second) throw Error(Errc::OutOfRange, "repeated level");
    for (std::size_t i = L->level_begin(k); i < L->level_end(k); ++i) m.set(i);
  }
  return Family(L, m);
}

inline bool is_level(const Family& F) {
  const int t = F.top_dim();
  return t >= 0 && F.bottom_dim() == t && F.size() == F.lattice().level_size(t);
}

// ---------------------------------------------------------------------------
// Structure checks for families of extremal size on two adjacent levels.

enum class StructureSide { Up, Down };

struct StructureVerdict {
  bool vacuous = false;        // the outer part is empty
  bool holds = true;           // a witness was found (or vacuous)
  std::size_t witness = 0;     // element index in F's lattice
  std::size_t related = 0;     // members of F on the inner level related to the witness
  QInt threshold;              // q^ceil(n/2)
  QInt relation_lower_bound;   // averaging lower bound on the number of relations
  std::size_t relations = 0;   // actual relation count between the two levels
};

namespace detail {

inline StructureVerdict structure_up(const Family& F) {
  const auto& L = F.lattice();
  const int n = L.n(), q = L.q();
  const int c = (n + 1) / 2;
  if (c + 1 > n) throw Error(Errc::PreconditionViolated, "no level above ceil(n/2)");
  const auto counts = F.level_counts();
  for (int s = 0; s <= n; ++s)
    if (counts[s] && s != c && s != c + 1) throw Error(Errc::PreconditionViolated, "family not supported on the two levels");
  if (QInt(F.size()) != q_binomial(n, c, q)) throw Error(Errc::PreconditionViolated, "family size is not the middle binomial");

  StructureVerdict v;
  v.threshold = int_pow(q, c);
  if (counts[c + 1] == 0) {
    v.vacuous = true;
    return v;
  }
  const auto top = F.level_members(c + 1);
  const auto mid = F.level_members(c);
  std::size_t best = 0, arg = top.front();
  for (auto a : top) {
    std::size_t cnt = 0;
    for (auto b : mid)
      if (L.less(b, a)) ++cnt;
    v.relations += cnt;
    if (cnt > best) {
      best = cnt;
      arg = a;
    }
  }
  const QInt missing = QInt(L.level_size(c)) - QInt(counts[c]);
  v.relation_lower_bound = q_bracket(c + 1, q) * QInt(counts[c + 1]) - q_bracket(n / 2, q) * missing;
  v.witness = arg;
  v.related = best;
  v.holds = QInt(best) >= v.threshold;
  return v;
}

}  // namespace detail

/// Up: F lives on dims ceil(n/2), ceil(n/2)+1 with |F| equal to the middle
/// binomial; some top member then has at least q^ceil(n/2) members below it.
/// Down is the same statement for the order dual.
inline StructureVerdict structure_lemma_check(const Family& F, StructureSide side) {
  if (side == StructureSide::Up) return detail::structure_up(F);
  auto v = detail::structure_up(F.dual());
  if (!v.vacuous) v.witness = F.lattice().complement_index(v.witness);
  return v;
}

/// For odd n, a family on the two middle levels of maximum induced size has
/// exactly q^2+q+1 members between any G2 <= G1 of dims (n-3)/2 and (n+3)/2.
struct BetweenVerdict {
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::size_t expected = 0;
  std::size_t low = 0, high = 0;  // first offending pair, if any
  std::size_t found = 0;
};

inline BetweenVerdict between_count_check(const Family& F) {
  const auto& L = F.lattice();
  const int n = L.n(), q = L.q();
  if (n < 3 || n % 2 == 0) throw Error(Errc::PreconditionViolated, "needs odd n >= 3");
  const auto counts = F.level_counts();
  for (int s = 0; s <= n; ++s)
    if (counts[s] && s != (n - 1) / 2 && s != (n + 1) / 2)
      throw Error(Errc::PreconditionViolated, "family not supported on the two middle levels");
  if (QInt(F.size()) != q_binomial(n, (n + 1) / 2, q)) throw Error(Errc::PreconditionViolated, "family is not of extremal size");
  BetweenVerdict v;
  v.expected = static_cast<std::size_t>(q * q + q + 1);
  const auto idx = F.indices();
  const int lo = (n - 3) / 2, hi = (n + 3) / 2;
  for (std::size_t g2 = L.level_begin(lo); g2 < L.level_end(lo); ++g2) {
    for (std::size_t g1 = L.level_begin(hi); g1 < L.level_end(hi); ++g1) {
      if (!L.less(g2, g1)) continue;
      ++v.pairs_checked;
      std::size_t cnt = 0;
      for (auto x : idx)
        if (L.less(g2, x) && L.less(x, g1)) ++cnt;
      if (cnt != v.expected && v.holds) {
        v.holds = false;
        v.low = g2;
        v.high = g1;
        v.found = cnt;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Symmetry: GL(n, q) acting on families.

/// All invertible n x n matrices over F_q, in lexicographic order of entries.
inline std::vector<std::vector<Row>> general_linear_group(const FieldSpec& f, int n) {
  std::vector<std::vector<Row>> out;
  std::vector<Row> m;
  // Rows are chosen one at a time outside the span of the previous rows.
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(m);
      return;
    }
    Row r(n, 0);
    const Subspace sofar = span_of(f, n, m);
    long long total = 1;
    for (int j = 0; j < n; ++j) total *= f.q;
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int j = n - 1; j >= 0; --j) {
        r[j] = static_cast<Scalar>(c % f.q);
        c /= f.q;
      }
      const Row red = reduce_against(f, sofar, r);
      if (std::all_of(red.begin(), red.end(), [](Scalar x) { return x == 0; })) continue;
      m.push_back(r);
      self(self, i + 1);
      m.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Image of every element under x -> xM, as a permutation of element indices.
inline std::vector<std::size_t> element_permutation(const LinearLattice& L, const std::vector<Row>& M) {
  std::vector<std::size_t> perm(L.size());
  for (std::size_t i = 0; i < L.size(); ++i) perm[i] = L.index_of(apply_matrix(L.field(), L.element(i), M));
  return perm;
}

/// Number of orbits of the given families under GL(n, q); families are
/// assumed closed under the action (as extremal sets are).
inline std::size_t orbit_count(const std::vector<Family>& families) {
  if (families.empty()) return 0;
  const auto& L = families.front().lattice();
  const auto group = general_linear_group(L.field(), L.n());
  std::vector<std::vector<std::size_t>> perms;
  perms.reserve(group.size());
  for (const auto& M : group) perms.push_back(element_permutation(L, M));
  std::set<std::vector<std::size_t>> seen;
  std::size_t orbits = 0;
  for (const auto& F : families) {
    const auto base = F.indices();
    if (seen.count(base)) continue;
    ++orbits;
    for (const auto& p : perms) {
      std::vector<std::size_t> img;
      for (auto i : base) img.push_back(p[i]);
      std::sort(img.begin(), img.end());
      seen.insert(std::move(img));
    }
  }
  return orbits;
}

/// The maximum induced {V, Lambda}-free families of L(3,2) that are not
/// levels, found by exhaustive search.
inline std::vector<Family> fig1_families(const LatticePtr& L, unsigned threads = 1) {
  if (L->n() != 3 || L->q() != 2) throw Error(Errc::WrongLattice, "defined for L(3,2) only");
  SearchProblem p;
  p.lattice = L;
  p.forbidden = {fork_poset(2), join_poset(2)};
  p.induced = true;
  p.mode = SearchMode::EnumerateExtremal;
  p.threads = threads;
  const auto rep = solve(p);
  std::vector<Family> out;
  for (const auto& f : rep.extremal)
    if (!is_level(f)) out.push_back(f);
  return out;
}

/// Comparable pairs of F forming a perfect matching on all but one member,
/// with nothing else comparable: the shape of the exceptional families.
inline bool is_matching_plus_isolated(const Family& F) {
  const auto& L = F.lattice();
  const auto idx = F.indices();
  std::vector<int> degree(idx.size(), 0);
  std::size_t edges = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (L.comparable(idx[i], idx[j])) {
        ++degree[i];
        ++degree[j];
        ++edges;
      }
  const auto isolated = std::count(degree.begin(), degree.end(), 0);
  const auto matched = std::count(degree.begin(), degree.end(), 1);
  return isolated == 1 && static_cast<std::size_t>(matched) + 1 == idx.size() && 2 * edges + 1 == idx.size();
}

// ---------------------------------------------------------------------------
// Family files: {"n": n, "q": q, "subspaces": [[[row], ...], ...]}.

inline nlohmann::json family_to_json(const Family& F) {
  const auto& L = F.lattice();
  nlohmann::json subs = nlohmann::json::array();
  for (auto i : F.indices()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : L.element(i).rows) {
      nlohmann::json row = nlohmann::json::array();
      for (auto x : r) row.push_back(static_cast<int>(x));
      rows.push_back(row);
    }
    subs.push_back(rows);
  }
  return {{"n", L.n()}, {"q", L.q()}, {"subspaces", subs}};
}

/// Spanning sets are reduced to canonical form; the lattice must match n, q.
inline Family family_from_json(const nlohmann::json& j, const LatticePtr& L) {
  try {
    const int n = j.at("n").get<int>();
    const int q = j.at("q").get<int>();
    if (n != L->n() || q != L->q()) throw Error(Errc::WrongLattice, "family file is for a different lattice");
    std::vector<std::size_t> idx;
    for (const auto& s : j.at("subspaces")) {
      std::vector<Row> rows;
      for (const auto& r : s) {
        Row row;
        for (const auto& x : r) {
          const int v = x.get<int>();
          if (v < 0 || v >= q) throw Error(Errc::ParseError, "coordinate outside the field");
          row.push_back(static_cast<Scalar>(v));
        }
        if (static_cast<int>(row.size()) != n) throw Error(Errc::ParseError, "row length differs from n");
        rows.push_back(std::move(row));
      }
      idx.push_back(L->index_of_span(rows));
    }
    return Family(L, idx);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

inline std::pair<int, int> family_file_ambient(const nlohmann::json& j) {
  try {
    return {j.at("n").get<int>(), j.at("q").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

}  // namespace qlattice

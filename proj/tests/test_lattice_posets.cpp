#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace qlattice;

namespace {

Row row(std::initializer_list<int> v) {
  Row r;
  for (int x : v) r.push_back(static_cast<Scalar>(x));
  return r;
}

}  // namespace

TEST(Lattice, EnumerateLevelExamples) {
  const auto f2 = make_field(2);
  EXPECT_EQ(enumerate_level(3, 1, f2).size(), 7u);
  EXPECT_EQ(enumerate_level(4, 2, f2).size(), 35u);
  const auto zero = enumerate_level(5, 0, make_field(3));
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].dim(), 0);
}

TEST(Lattice, LevelSizesMatchClosureOracle) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}}) {
    const auto levels = oracle::all_subspaces(oracle::PrimeSpace(n, q));
    for (int k = 0; k <= n; ++k) EXPECT_EQ(enumerate_level(n, k, make_field(q)).size(), levels[k].size()) << n << q << k;
  }
}

TEST(Lattice, BuildSizes) {
  EXPECT_EQ(build_lattice(3, 2).size(), 16u);
  EXPECT_EQ(build_lattice(1, 5).size(), 2u);
  EXPECT_EQ(build_lattice(4, 2).size(), 67u);
  EXPECT_EQ(build_lattice(3, 4).size(), 44u);
}

TEST(Lattice, OrderMatchesVectorSets) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {3, 3}}) {
    const auto L = build_lattice(n, q);
    const support::Mirror M(L);
    std::set<std::string> distinct;
    for (const auto& e : M.elems) distinct.insert(oracle::key(e));
    EXPECT_EQ(distinct.size(), L.size());
    for (std::size_t a = 0; a < L.size(); ++a) {
      EXPECT_EQ(M.V.dim(M.elems[a]), L.dim(a));
      for (std::size_t b = 0; b < L.size(); ++b) EXPECT_EQ(L.less(a, b), static_cast<bool>(M.order.lt[a][b])) << a << " " << b;
    }
  }
}

TEST(Lattice, ContainsExamples) {
  const auto f = make_field(2);
  const auto V = span_of(f, 3, {row({1, 0, 0}), row({0, 1, 0}), row({0, 0, 1})});
  const auto p = span_of(f, 3, {row({1, 0, 0})});
  const auto p2 = span_of(f, 3, {row({0, 1, 0})});
  const auto plane = span_of(f, 3, {row({1, 0, 0}), row({0, 1, 0})});
  const auto diag = span_of(f, 3, {row({1, 1, 0})});
  EXPECT_TRUE(contains(f, V, plane));
  EXPECT_FALSE(contains(f, p, p2));
  EXPECT_TRUE(contains(f, plane, diag));
}

TEST(Lattice, Shadows) {
  const auto L = build_lattice(3, 2);
  EXPECT_EQ(lower_shadow(L, L.level_begin(1)).size(), 1u);
  EXPECT_EQ(lower_shadow(L, L.level_begin(2)).size(), 3u);
  EXPECT_EQ(upper_shadow(L, L.level_begin(0)).size(), 7u);
  EXPECT_EQ(upper_shadow(L, L.level_begin(1)).size(), 3u);
  EXPECT_EQ(upper_shadow(L, L.level_begin(2)).size(), 1u);
  const auto L43 = build_lattice(4, 3);
  EXPECT_EQ(lower_shadow(L43, L43.level_begin(3)).size(), 13u);
}

TEST(Lattice, ComplementIsOrderReversingInvolution) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {3, 4}}) {
    const auto L = build_lattice(n, q);
    for (std::size_t a = 0; a < L.size(); ++a) {
      const auto c = L.complement_index(a);
      EXPECT_EQ(L.dim(c), n - L.dim(a));
      EXPECT_EQ(L.complement_index(c), a);
      for (std::size_t b = 0; b < L.size(); ++b) EXPECT_EQ(L.less(a, b), L.less(L.complement_index(b), c));
    }
  }
}

TEST(Lattice, IndexOfSpanCanonicalizes) {
  const auto L = build_lattice(3, 3);
  const auto i = L.index_of_span({row({1, 2, 0}), row({2, 1, 1})});
  const auto j = L.index_of_span({row({0, 0, 1}), row({1, 2, 0})});
  EXPECT_EQ(i, j);
  EXPECT_EQ(L.dim(i), 2);
}

TEST(Posets, NamedShapes) {
  const auto v2 = named_poset("V:2");
  EXPECT_EQ(v2.size(), 3);
  EXPECT_EQ(v2.height(), 2);
  const auto c1 = named_poset("C:1");
  EXPECT_EQ(c1.size(), 1);
  EXPECT_EQ(c1.height(), 1);
  const auto y2 = named_poset("Y:2");
  EXPECT_EQ(y2.size(), 4);
  EXPECT_EQ(y2.height(), 3);
  EXPECT_EQ(named_poset("Y':3").height(), 4);
  EXPECT_EQ(named_poset("B").height(), 2);
  EXPECT_EQ(named_posets("V:2,L:2").size(), 2u);
  EXPECT_THROW(named_poset("Q:2"), Error);
  EXPECT_THROW(named_poset("V:0"), Error);
}

TEST(Posets, DslParses) {
  const auto b = parse_poset_dsl("elements: a,b,c,d; relations: a<c,a<d,b<c,b<d");
  EXPECT_TRUE(b == butterfly_poset());
  const auto pt = parse_poset_dsl("elements: a; relations:");
  EXPECT_EQ(pt.size(), 1);
  try {
    parse_poset_dsl("elements: a,b; relations: a<b, b<a");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CycleError);
  }
  EXPECT_THROW(parse_poset_dsl("relations: a<b"), Error);
  EXPECT_THROW(parse_poset_dsl("elements: a; relations: a<z"), Error);
}

TEST(Posets, ForkShape) {
  const auto s = fork_shape(fork_poset(3));
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->is_v);
  EXPECT_FALSE(s->is_lambda);
  const auto c = fork_shape(chain_poset(2));
  ASSERT_TRUE(c);
  EXPECT_TRUE(c->is_v && c->is_lambda);
  EXPECT_FALSE(fork_shape(butterfly_poset()));
}

TEST(Posets, EmbeddingExamples) {
  const auto L = make_lattice(3, 2);
  Family F(L, std::vector<std::size_t>{L->level_begin(0), L->level_begin(1)});
  EXPECT_TRUE(embeds(fork_poset(1), F, false));
  const auto L4 = make_lattice(4, 2);
  EXPECT_FALSE(embeds(fork_poset(2), Family(L4, [&] {
                        std::vector<std::size_t> v;
                        for (auto i = L4->level_begin(2); i < L4->level_end(2); ++i) v.push_back(i);
                        return v;
                      }()),
                      false));
  // plane with two of its points: a Lambda_2 both weakly and induced
  const std::size_t A = L->level_begin(2);
  std::vector<std::size_t> pts;
  for (auto c : L->lower_covers(A)) pts.push_back(c);
  Family G(L, std::vector<std::size_t>{A, pts[0], pts[1]});
  EXPECT_TRUE(embeds(join_poset(2), G, true));
  EXPECT_TRUE(embeds(join_poset(2), G, false));
  // {0} with two points
  Family H(L, std::vector<std::size_t>{L->level_begin(0), L->level_begin(1), L->level_begin(1) + 1});
  EXPECT_FALSE(fast_free_check(H, {fork_poset(2)}, false));
  EXPECT_FALSE(fast_free_check(H, {fork_poset(2)}, true));
}

TEST(Posets, FreenessAgreesWithOracleOnRandomFamilies) {
  const auto L = make_lattice(3, 2);
  const support::Mirror M(*L);
  const std::vector<std::pair<PosetSpec, oracle::Order>> pats = {
      {fork_poset(2), oracle::fork(2)},   {join_poset(2), oracle::join(2)}, {fork_poset(3), oracle::fork(3)},
      {butterfly_poset(), oracle::butterfly()}, {y_poset(2), oracle::y_shape(2)}, {y_dual_poset(2), oracle::y_dual(2)},
      {chain_poset(3), oracle::chain(3)}};
  std::mt19937_64 rng(7);
  for (int t = 0; t < 3000; ++t) {
    const std::uint64_t mask = rng() & 0xFFFF;
    const Family F = support::family_of_mask(L, mask);
    for (bool induced : {false, true})
      for (const auto& [P, O] : pats) {
        const bool expect = oracle::free_of(M.order, mask, {O}, induced);
        EXPECT_EQ(is_free(F, {P}, induced), expect) << P.name << " " << mask << " " << induced;
        if (fork_shape(P)) EXPECT_EQ(fast_free_check(F, {P}, induced), expect) << P.name << " " << mask;
      }
  }
}

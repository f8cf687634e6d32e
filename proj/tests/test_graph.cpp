#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace pavecount;

namespace {

std::set<std::string> label_strings(const VertexSubset& u) {
  std::set<std::string> out;
  for (const auto& s : u.labels()) out.insert(s.to_string());
  return out;
}

}  // namespace

TEST(Johnson, FourTwoIsOctahedron) {
  const auto j = johnson_graph(4, 2);
  ASSERT_EQ(j.size(), 6u);
  for (std::size_t v = 0; v < 6; ++v) EXPECT_EQ(j.degree(v), 4u);
  std::set<std::string> non_edges;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b)
      if (!j.adjacent(a, b)) non_edges.insert(j.label(a).to_string() + "|" + j.label(b).to_string());
  EXPECT_EQ(non_edges, (std::set<std::string>{"{1,2}|{3,4}", "{1,3}|{2,4}", "{2,3}|{1,4}"}));
}

TEST(Johnson, RankOneIsComplete) {
  for (int n = 2; n <= 9; ++n) {
    const auto j = johnson_graph(n, 1);
    EXPECT_EQ(j.n_edges(), oracle::binom(n, 2));
  }
}

TEST(Johnson, RegularWithDegreeRTimesNMinusR) {
  for (int n = 2; n <= 9; ++n)
    for (int r = 1; r < n; ++r) {
      const auto j = johnson_graph(n, r);
      for (std::size_t v = 0; v < j.size(); ++v) ASSERT_EQ(j.degree(v), static_cast<std::size_t>(r * (n - r)));
      // adjacency agrees with pairwise intersection sizes
      for (std::size_t a = 0; a < j.size(); ++a)
        for (std::size_t b = 0; b < j.size(); ++b)
          ASSERT_EQ(j.adjacent(a, b), intersection_size(j.label(a), j.label(b)) == r - 1);
    }
  const auto j73 = johnson_graph(7, 3);
  EXPECT_EQ(j73.size(), 35u);
  EXPECT_EQ(j73.max_degree(), 12u);
}

TEST(Johnson, VertexTransitiveUnderRelabeling) {
  // Any permutation of [n] maps J(n,r) onto itself.
  const int n = 6, r = 3;
  const auto j = johnson_graph(n, r);
  const std::vector<int> perm = {3, 0, 5, 1, 4, 2};
  for (std::size_t a = 0; a < j.size(); ++a)
    for (std::size_t b = 0; b < j.size(); ++b) {
      const auto pa = j.index_of(KSubset::from_mask(n, oracle::permute(j.label(a).mask(), perm)));
      const auto pb = j.index_of(KSubset::from_mask(n, oracle::permute(j.label(b).mask(), perm)));
      ASSERT_EQ(j.adjacent(a, b), j.adjacent(pa, pb));
    }
}

TEST(Johnson, RejectsBadParametersAndCap) {
  EXPECT_THROW(johnson_graph(4, 0), ParameterError);
  EXPECT_THROW(johnson_graph(4, 4), ParameterError);
  EXPECT_THROW(johnson_graph(40, 3), ParameterError);
  try {
    johnson_graph(12, 6, GraphOptions{500});
    FAIL() << "cap not enforced";
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("500"), std::string::npos);
  }
}

TEST(VH, ExamplesFromDefinition) {
  const auto j = johnson_graph(6, 3);
  const auto vh = vh_vertex_set(j, KSubset(6, {1, 2, 3, 4}));
  EXPECT_EQ(label_strings(vh), (std::set<std::string>{"{1,5,6}", "{2,5,6}", "{3,5,6}", "{4,5,6}"}));
  EXPECT_TRUE(vh_vertex_set(4, 2, KSubset(4, {1, 2, 3})).empty());
  EXPECT_THROW(vh_vertex_set(j, KSubset(6, {1, 2})), ParameterError);
  EXPECT_THROW(vh_vertex_set(j, KSubset(6, {1, 2, 3, 4, 5, 6})), ParameterError);
}

TEST(VH, MatchesBruteForceFilterForEveryH) {
  for (int n = 4; n <= 8; ++n)
    for (int r = 2; r < n; ++r) {
      const auto j = johnson_graph(n, r);
      for (int t = 0; t <= n - r - 1; ++t)
        for (const auto& h : enumerate_ksubsets(n, r + t)) {
          std::vector<Mask> got;
          for (const auto& x : vh_vertex_set(j, h).labels()) got.push_back(x.mask());
          ASSERT_EQ(got, oracle::vh(n, r, h.mask())) << n << "," << r << " H=" << h.to_string();
        }
    }
}

TEST(VC, FamiliesIntersectVHSets) {
  const KSubset h(8, {1, 2, 3, 4});
  EXPECT_EQ(vc_vertex_set(8, 3, std::vector{h}).labels(), vh_vertex_set(8, 3, h).labels());

  const std::vector<KSubset> c = {KSubset(6, {1, 2, 3, 4}), KSubset(6, {1, 2, 5, 6})};
  const auto vc = vc_vertex_set(6, 3, c);
  for (const auto& x : vc.labels())
    for (const auto& y : c) EXPECT_LE(intersection_size(x, y), 1);
  EXPECT_TRUE(vc.labels().empty());  // {5,6,a} meets {1,2,5,6} in two places

  // Three 4-sets that together touch every triple twice.
  const std::vector<KSubset> cover = {KSubset(6, {1, 2, 3, 4}), KSubset(6, {3, 4, 5, 6}), KSubset(6, {1, 2, 5, 6})};
  EXPECT_TRUE(vc_vertex_set(6, 3, cover).empty());
}

TEST(Induced, VHOfSixThreeIsK4) {
  const auto j = johnson_graph(6, 3);
  const auto g = induced(j, vh_vertex_set(j, KSubset(6, {1, 2, 3, 4})));
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.n_edges(), 6u);
  EXPECT_EQ(g.label(0).to_string(), "{1,5,6}");
}

TEST(Induced, FullAndEmptySubsets) {
  const auto j = johnson_graph(5, 2);
  const auto all = induced(j, VertexSubset::all(j));
  EXPECT_EQ(all.edges(), j.edges());
  EXPECT_EQ(all.labels(), j.labels());
  const auto none = induced(j, VertexSubset::none(j));
  EXPECT_EQ(none.size(), 0u);
  const auto other = johnson_graph(5, 2);
  EXPECT_THROW(induced(other, VertexSubset::all(j)), ParameterError);
}

TEST(DistanceSix, Examples) {
  const auto g62 = distance_six_graph(6, 2);
  EXPECT_EQ(g62.size(), 20u);
  EXPECT_FALSE(g62.adjacent(g62.index_of(KSubset(6, {1, 2, 3})), g62.index_of(KSubset(6, {4, 5, 6}))));
  const auto g63 = distance_six_graph(6, 3);
  EXPECT_EQ(g63.size(), 15u);
  EXPECT_EQ(g63.n_edges(), 105u);
  EXPECT_EQ(distance_six_graph(7, 3).max_degree(), 30u);
  EXPECT_THROW(distance_six_graph(6, 1), ParameterError);
  EXPECT_THROW(distance_six_graph(6, 4), ParameterError);
}

TEST(DistanceSix, MeasuredDegreeMatchesClosedForm) {
  for (int n = 5; n <= 9; ++n)
    for (int r = 2; r <= n - 3; ++r) {
      const auto g = distance_six_graph(n, r);
      for (std::size_t v = 0; v < g.size(); ++v)
        ASSERT_EQ(BigCount(g.degree(v)), distance_six_degree_formula(n, r)) << n << "," << r;
    }
}

TEST(GSFiber, Examples) {
  EXPECT_EQ(label_strings(gs_fiber(4, 2, 1)), (std::set<std::string>{"{1,4}", "{2,3}"}));
  std::vector<std::size_t> sizes;
  for (int k = 0; k < 4; ++k) sizes.push_back(gs_fiber(4, 2, k).size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 1, 2}));
  EXPECT_THROW(gs_fiber(4, 2, 4), ParameterError);
  EXPECT_THROW(gs_fiber(4, 2, -1), ParameterError);
}

TEST(GSFiber, FibersAreStableAndPartition) {
  for (int n = 2; n <= 8; ++n)
    for (int r = 1; r < n; ++r) {
      const auto j = johnson_graph(n, r);
      VertexBits seen(j.size());
      for (int k = 0; k < n; ++k) {
        const auto u = gs_fiber(j, k);
        ASSERT_TRUE(u.is_stable());
        ASSERT_FALSE(seen.intersects(u.bits()));
        seen |= u.bits();
      }
      ASSERT_EQ(seen.count(), j.size());
    }
}

TEST(Export, AdjacencyFormat) {
  std::ostringstream os;
  write_adjacency(os, johnson_graph(3, 1));
  EXPECT_EQ(os.str(), "3 3\n0 1\n0 2\n1 2\n");
}

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pavecount;

namespace {

void expect_no_failures(const std::vector<BoundCheck>& rows) {
  for (const auto& c : rows)
    EXPECT_NE(c.verdict, Verdict::fails) << c.name << " n=" << c.n << " r=" << c.r << " t=" << c.t << " " << c.params
                                         << " " << c.note;
}

const BoundCheck* find(const std::vector<BoundCheck>& rows, const std::string& name) {
  for (const auto& c : rows)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST(ClosedForm, VHSizeValues) {
  EXPECT_EQ(vh_size_formula(6, 3, 1), 4);
  EXPECT_EQ(vh_size_formula(4, 2, 1), 0);
  EXPECT_EQ(vh_size_formula(8, 4, 1), 35);
  EXPECT_THROW(vh_size_formula(6, 1, 1), ParameterError);
  EXPECT_THROW(vh_size_formula(6, 3, 3), ParameterError);
}

TEST(ClosedForm, VHSizeMatchesMeasurementUpToEight) {
  for (int n = 3; n <= 8; ++n)
    for (int r = 2; r < n; ++r)
      for (int t = 1; t <= n - r - 1; ++t)
        for (const auto& h : enumerate_ksubsets(n, r + t))
          ASSERT_EQ(BigCount(oracle::vh(n, r, h.mask()).size()), vh_size_formula(n, r, t));
}

TEST(ClosedForm, DeltaValuesAndIdentity) {
  EXPECT_EQ(delta_n(6, 3), Rational(4, 5));
  EXPECT_EQ(delta_n(8, 4), Rational(1, 2));
  EXPECT_EQ(delta_n(4, 2), Rational(1));
  for (int n = 3; n <= 10; ++n)
    for (int r = 2; r < n; ++r)
      if (n - r - 1 >= 1) {
        EXPECT_EQ(Rational(1) - delta_n(n, r), Rational(vh_size_formula(n, r, 1), binomial(n, r)));
      }
}

TEST(ClosedForm, DistanceSixDegree) {
  EXPECT_EQ(distance_six_degree_formula(7, 3), 30);
  EXPECT_EQ(distance_six_degree_formula(6, 3), 14);
}

TEST(ExactCompare, ScaledPowers) {
  EXPECT_TRUE(geq_scaled_power(4, 4, 10, Rational(0)));
  EXPECT_FALSE(geq_scaled_power(3, 4, 10, Rational(0)));
  // 15^5 * 271 = 205790625 sits between 45^5 and 46^5
  EXPECT_TRUE(geq_scaled_power(46, 15, 271, Rational(1, 5)));
  EXPECT_FALSE(geq_scaled_power(45, 15, 271, Rational(1, 5)));
  // negative exponents move s to the left
  EXPECT_TRUE(geq_scaled_power(2, 4, 4, Rational(-1, 2)));
  EXPECT_FALSE(geq_scaled_power(1, 4, 4, Rational(-1, 2)));
  EXPECT_EQ(compare_powers(2, 10, 32, 2), 0);
  EXPECT_LT(compare_powers(2, 9, 32, 2), 0);
}

TEST(Lab, VHRowsHold) {
  BoundsLab lab;
  for (int n = 3; n <= 8; ++n)
    for (int r = 2; r < n; ++r)
      for (int t = 1; t <= n - r - 1; ++t)
        EXPECT_EQ(lab.check_vh_size(n, r, t, subset_unrank(n, r + t, 0)).verdict, Verdict::holds);
}

TEST(Lab, ShearerExamples) {
  BoundsLab lab;
  const auto j = johnson_graph(6, 3);
  const auto full = lab.check_shearer(j, VertexSubset::all(j), "all");
  EXPECT_EQ(full.verdict, Verdict::holds);
  EXPECT_EQ(full.lhs_log2, full.rhs_log2);
  EXPECT_EQ(lab.check_shearer(j, vh_vertex_set(j, KSubset(6, {1, 2, 3, 4})), "vh").verdict, Verdict::holds);
  const auto j52 = johnson_graph(5, 2);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(lab.check_shearer(j52, gs_fiber(j52, k), "fiber").verdict, Verdict::holds);
  EXPECT_EQ(lab.check_shearer(j, VertexSubset::none(j), "none").verdict, Verdict::not_applicable);
}

TEST(Lab, InducedCountAtFourTwoIsTight) {
  BoundsLab lab;
  const auto rows = lab.check_induced_count_bound(4, 2, 1);
  ASSERT_EQ(rows.size(), 8u);  // two rows per H, four H
  for (const auto& c : rows) {
    // V_H is empty here, so the power form has nothing to say
    EXPECT_EQ(c.verdict, c.name == "induced-count" ? Verdict::holds : Verdict::not_applicable) << c.name;
    if (c.name == "induced-count") {
      EXPECT_EQ(*c.lhs, 1);
      EXPECT_EQ(*c.rhs, 1);
    }
  }
}

TEST(Lab, InducedCountAtSixThree) {
  BoundsLab lab;
  const auto rows = lab.check_induced_count_bound(6, 3, 1);
  expect_no_failures(rows);
  std::size_t seen = 0;
  for (const auto& c : rows)
    if (c.name == "induced-count") {
      EXPECT_GE(*c.lhs, 5);
      EXPECT_EQ(*c.rhs, 5);
      ++seen;
    }
  EXPECT_EQ(seen, 15u);
  for (const auto& c : lab.check_induced_count_bound(6, 3, 2))
    if (c.name == "induced-count") {
      EXPECT_EQ(*c.rhs, 1);
    }
}

TEST(Lab, AmplifiedRows) {
  BoundsLab lab;
  for (int n = 4; n <= 6; ++n) expect_no_failures(lab.check_amplified(n));
  const auto rows = lab.check_amplified(4);
  const auto* a = find(rows, "amplified");
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->verdict, Verdict::holds);
  EXPECT_FALSE(a->rhs.has_value());  // 4 * 10^0, kept as a log
  EXPECT_NEAR(a->rhs_log2.value(), 2.0, 1e-12);
  const auto six = lab.check_amplified(6);
  const auto* d = find(six, "amplified-disjoint");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->verdict, Verdict::holds);
  EXPECT_EQ(*d->lhs, 75);
}

TEST(Lab, GrahamSloaneRows) {
  BoundsLab lab;
  for (int n = 2; n <= 6; ++n)
    for (int r = 1; r < n; ++r) {
      const auto rows = lab.check_gs_bound(n, r);
      expect_no_failures(rows);
      EXPECT_EQ(rows.size(), 3u);
    }
}

TEST(Lab, DistanceSixRows) {
  BoundsLab lab;
  for (auto [n, r] : {std::pair{5, 2}, {6, 2}, {6, 3}, {7, 3}}) {
    const auto rows = lab.check_distance_six(n, r);
    expect_no_failures(rows);
    ASSERT_NE(find(rows, "d6-alpha"), nullptr);
  }
  const auto rows = lab.check_distance_six(6, 3);
  const auto* deg = find(rows, "d6-max-degree");
  ASSERT_NE(deg, nullptr);
  EXPECT_EQ(*deg->lhs, 14);
  EXPECT_NE(find(rows, "d6-alpha")->note.find("alpha=1"), std::string::npos);
}

TEST(Lab, HybridRows) {
  BoundsLab lab;
  const auto rows = lab.check_hybrid_sum(6, 3);
  expect_no_failures(rows);
  const auto* inj = find(rows, "hybrid-injective");
  ASSERT_NE(inj, nullptr);
  EXPECT_EQ(inj->verdict, Verdict::holds);
  EXPECT_EQ(*inj->lhs, 75);
}

TEST(Lab, SparseCensusRows) {
  BoundsLab lab;
  for (int n = 2; n <= 6; ++n)
    for (int r = 1; r < n; ++r) EXPECT_EQ(lab.check_sparse_census(n, r).verdict, Verdict::holds);
}

TEST(Lab, DeterministicAcrossThreadCounts) {
  LabOptions one, four;
  four.threads = 4;
  BoundsLab a(one), b(four);
  for (int n = 4; n <= 6; ++n) {
    const auto x = a.check_amplified(n);
    const auto y = b.check_amplified(n);
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_EQ(to_csv_row(x[i]), to_csv_row(y[i]));
      EXPECT_EQ(x[i].lhs, y[i].lhs);
    }
  }
}

TEST(RatioTable, RowsAndValues) {
  BoundsLab lab;
  const auto rows = ratio_table(7, lab);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].n, 4);
  EXPECT_EQ(*rows[0].i_vh, 1);
  EXPECT_EQ(*rows[0].sp, 10);
  EXPECT_EQ(rows[2].n, 6);
  EXPECT_EQ(*rows[2].i_vh, 5);
  EXPECT_EQ(rows[2].choices, 15);
  EXPECT_EQ(rows[2].vh_size, 4);
  for (const auto& r : rows) EXPECT_TRUE(r.complete());
  EXPECT_TRUE(ratio_table(3, lab).empty());
}

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pavecount;

TEST(Json, MatroidRoundTrip) {
  const auto m = build_from_hyperplane_family(HyperplaneFamily(6, 2, {KSubset(6, {1, 2, 3}), KSubset(6, {4, 5, 6})}));
  const json j = to_json(m);
  EXPECT_EQ(j["n"], 6);
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(j["bases"].size(), 9u);
  EXPECT_EQ(j["bases"][0], (std::vector<int>{1, 4}));
  EXPECT_EQ(matroid_from_json(j), m);
  EXPECT_EQ(matroid_from_json(json::parse(j.dump())), m);
}

TEST(Json, MalformedMatroidIsAParameterError) {
  EXPECT_THROW(matroid_from_json(json::parse(R"({"n":4})")), ParameterError);
  EXPECT_THROW(matroid_from_json(json::parse(R"({"n":4,"rank":2,"bases":[[1,2],[3,4]]})")), ParameterError);
  EXPECT_THROW(matroid_from_json(json::parse(R"({"n":4,"rank":2,"bases":[[1,9]]})")), ParameterError);
}

TEST(Json, CountIsADecimalString) {
  const json j = to_json(count_stable_sets(johnson_graph(4, 2)));
  EXPECT_EQ(j["count"], "10");
  EXPECT_TRUE(j.contains("nodes"));
  EXPECT_TRUE(j.contains("elapsed_ms"));
  EXPECT_EQ(to_json(pow2(100)), "1267650600228229401496703205376");
}

TEST(Json, ConstructionRecord) {
  const auto rec = one_large_hyperplane(6, 3, 1, KSubset(6, {1, 2, 3, 4}), std::vector{KSubset(6, {1, 5, 6})});
  const json j = to_json(rec);
  EXPECT_EQ(j["provenance"], "one-large-hyperplane");
  EXPECT_EQ(j["family"]["large"], json::array({{1, 2, 3, 4}}));
  EXPECT_EQ(j["family"]["rank_sized"], json::array({{1, 5, 6}}));
}

TEST(Json, LabelsSidecar) {
  const json j = labels_json(johnson_graph(4, 2));
  EXPECT_EQ(j["n_vertices"], 6);
  EXPECT_EQ(j["labels"][5], (std::vector<int>{3, 4}));
}

TEST(Csv, BoundRowFormat) {
  BoundsLab lab;
  const auto row = lab.check_vh_size(6, 3, 1, KSubset(6, {1, 2, 3, 4}));
  EXPECT_EQ(to_csv_row(row), "vh-size,6,3,1,2.000000,2.000000,holds");
  BoundCheck empty;
  empty.name = "x";
  EXPECT_EQ(to_csv_row(empty), "x,0,0,0,-inf,-inf,not-applicable");
}

TEST(Csv, RatioRowFormat) {
  BoundsLab lab;
  const auto rows = ratio_table(6, lab);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(to_csv_row(rows[0]), "4,2,1,10,1,0,-3.321928,-2.000000,-1.321928,0/4,0.000000,complete");
  const auto six = to_csv_row(rows[2]);
  EXPECT_EQ(six.substr(0, 13), "6,3,1,271,5,4");
  EXPECT_NE(six.find(",-3.906891,"), std::string::npos);
  EXPECT_NE(six.find(",4/6,0.666667,complete"), std::string::npos);
}

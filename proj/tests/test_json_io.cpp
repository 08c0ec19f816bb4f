#include <gtest/gtest.h>

#include "flagtrop/json_io.hpp"

using namespace flagtrop;

TEST(Rationals, IntegersAndFractions) {
  EXPECT_EQ(parse_rational(Json(3)), Rational(3));
  EXPECT_EQ(parse_rational(Json("-4/6")), Rational(-2, 3));
  EXPECT_THROW(parse_rational(Json("1/x")), std::invalid_argument);
  EXPECT_THROW(parse_rational(Json(0.5)), std::invalid_argument);
  EXPECT_EQ(rational_json(Rational(7)), Json(7));
  EXPECT_EQ(rational_json(Rational(1, 2)), Json("1/2"));
}

TEST(Flags, NonbasesAndConstituentsAgree) {
  const auto a = flag_from_json(Json::parse(R"({"n":4,"ranks":[1,2,3],"nonbases":["1","12","13","14"]})"));
  const auto b = flag_from_json(flag_json(a));
  EXPECT_EQ(serialize_key(a), serialize_key(b));
  EXPECT_EQ(a.ranks(), (std::vector<int>{1, 2, 3}));
  EXPECT_FALSE(a.in_bases(parse_subset("13")));
}

TEST(Flags, ValidationReportsExchangeWitness) {
  const auto r = validate_flag_json(Json::parse(R"({"n":4,"constituents":[["12","34"]]})"));
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.witness.find("exchange"), std::string::npos);
  EXPECT_THROW(flag_from_json(Json::parse(R"({"n":4,"constituents":[["12","34"]]})")), std::invalid_argument);
}

TEST(Flags, ValidationReportsQuotientFailure) {
  // the single basis 34 has no room for the points 1, 2
  const Json j = Json::parse(R"({"n":4,"constituents":[["1","2"],["34"]]})");
  const auto r = validate_flag_json(j);
  EXPECT_FALSE(r.valid);
  EXPECT_NE(r.witness.find("quotient"), std::string::npos);
  EXPECT_TRUE(validate_flag_json(Json::parse(R"({"n":3,"ranks":[1,2]})")).valid);
}

TEST(Weights, LabelsToRationals) {
  const auto w = weights_from_json(Json::parse(R"({"12":1,"3":"1/2"})"));
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w.at(parse_subset("12")), Rational(1));
  EXPECT_EQ(w.at(parse_subset("3")), Rational(1, 2));
}

TEST(Fixtures, CorrectionsCheckThePrintedValue) {
  Json entry = Json::parse(R"({"a":[{"label":"x","v":1}],"corrections":[{"field":"a.x.v","printed":1,"value":2}]})");
  EXPECT_EQ(corrected(entry).at("a").at(0).at("v"), 2);
  entry["corrections"][0]["printed"] = 5;
  EXPECT_THROW(corrected(entry), std::logic_error);
  entry["corrections"][0]["field"] = "a.y.v";
  EXPECT_THROW(corrected(entry), std::out_of_range);
}

TEST(Fixtures, AllCorrectionsApply) {
  for (const auto& r : fixture("table1").at("rows")) EXPECT_NO_THROW(corrected(r));
  for (const auto& s : fixture("subdivisions").at("subdivisions")) EXPECT_NO_THROW(corrected(s));
  EXPECT_EQ(representatives_from_fixture().size(), 14u);
  EXPECT_THROW(fixture("nope"), std::out_of_range);
}

TEST(Fixtures, RepresentativesMatchTheBuiltIns) {
  const auto a = representatives_from_fixture();
  const auto b = tfl4_representatives();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].rays, b[i].rays);
    EXPECT_EQ(a[i].expected_orbit, b[i].expected_orbit);
  }
}

TEST(Reports, SubdivisionJsonAndDot) {
  const auto u = FlagMatroid::uniform({1, 2, 3}, 4);
  const auto s = regular_subdivision(WeightedConfig::from_flag(u, weights_from_json(Json::parse(R"({"1":1})"))));
  const auto j = subdivision_json(s);
  EXPECT_EQ(j.at("cells").size(), 2u);
  EXPECT_TRUE(j.at("matroidal").get<bool>());
  EXPECT_EQ(j.at("edges").size(), 1u);
  const auto dot = subdivision_dot(s);
  EXPECT_EQ(dot.rfind("graph subdivision {", 0), 0u);
  EXPECT_NE(dot.find("c0 -- c1"), std::string::npos);
}

TEST(Reports, ChartJson) {
  const auto j = chart_json(chart_presentation(table1_representative(12)));
  EXPECT_EQ(j.at("dim"), 4);
  EXPECT_EQ(j.at("ideal").size(), 1u);
}

#include <gtest/gtest.h>

#include <vector>

#include "fixtures.hpp"
#include "utadis/core.hpp"
#include "utadis/errors.hpp"

using namespace utadis;

namespace {

SortingModel linear_model(std::vector<double> weights, std::vector<double> thresholds) {
  SortingModel m;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    m.marginals.push_back({"g" + std::to_string(j + 1), {0.0, 1.0}, {0.0, weights[j]}});
  }
  m.thresholds = std::move(thresholds);
  return m;
}

}  // namespace

TEST(Core, CharacteristicPointsAreEquallySpaced) {
  const Criterion c{"g", 0.0, 10.0, 3, ""};
  EXPECT_EQ(characteristic_points(c), (std::vector<double>{0.0, 5.0, 10.0}));
  const Criterion d{"h", -1.0, 1.0, 5, ""};
  const auto pts = characteristic_points(d);
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_DOUBLE_EQ(pts[1], -0.5);
  EXPECT_DOUBLE_EQ(pts.back(), 1.0);
}

TEST(Core, MarginalInterpolation) {
  const MarginalFunction mf{"g", {0.0, 5.0, 10.0}, {0.0, 0.2, 0.3}};
  EXPECT_DOUBLE_EQ(marginal_value(mf, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(marginal_value(mf, 2.5), 0.1);
  EXPECT_DOUBLE_EQ(marginal_value(mf, 5.0), 0.2);
  EXPECT_NEAR(marginal_value(mf, 7.5), 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(marginal_value(mf, 10.0), 0.3);
  EXPECT_THROW(marginal_value(mf, 10.5), DomainError);
  EXPECT_THROW(marginal_value(mf, -0.1), DomainError);
}

TEST(Core, HalfOpenAssignment) {
  const std::vector<double> t{0.3, 0.6};
  EXPECT_EQ(assign_value(t, 0.0), 1);
  EXPECT_EQ(assign_value(t, 0.2999999), 1);
  EXPECT_EQ(assign_value(t, 0.3), 2);
  EXPECT_EQ(assign_value(t, 0.5999999), 2);
  EXPECT_EQ(assign_value(t, 0.6), 3);
  EXPECT_EQ(assign_value(t, 1.0), 3);
}

TEST(Core, TableValidation) {
  EXPECT_THROW(fixtures::unit_table({{0.5}}, 1), ConfigurationError);
  EXPECT_THROW(fixtures::unit_table({{1.5}}, 2), DomainError);
  std::vector<Criterion> crit{{"g", 0.0, 1.0, 2, ""}, {"g", 0.0, 1.0, 2, ""}};
  EXPECT_THROW(PerformanceTable(crit, {{"a", {0.1, 0.2}, ""}}, 2), DomainError);
  std::vector<Criterion> one{{"g", 0.0, 1.0, 2, ""}};
  EXPECT_THROW(PerformanceTable(one, {{"a", {0.1, 0.2}, ""}}, 2), DomainError);
  EXPECT_THROW(PerformanceTable(one, {{"a", {0.1}, ""}, {"a", {0.2}, ""}}, 2), DomainError);
}

TEST(Core, ExamplesValidation) {
  const auto table = fixtures::unit_table({{0.1}, {0.9}}, 2);
  EXPECT_THROW(AssignmentExamples(table, {{0, 3}}), DomainError);
  EXPECT_THROW(AssignmentExamples(table, {{5, 1}}), DomainError);
  EXPECT_THROW(AssignmentExamples(table, {{0, 1}, {0, 2}}), DomainError);
  EXPECT_THROW(AssignmentExamples::from_ids(table, {{"zz", 1}}), DomainError);
  const auto ex = AssignmentExamples::from_ids(table, {{"a2", 2}, {"a1", 1}});
  ASSERT_EQ(ex.size(), 2u);
  EXPECT_EQ(ex.items().front().alternative, 0u);
  EXPECT_EQ(ex.class_of(1), 2);
  EXPECT_FALSE(AssignmentExamples(table, {{0, 1}}).class_of(1).has_value());
}

TEST(Core, ComprehensiveValueAndAssignment) {
  const auto table = fixtures::unit_table({{0.2, 0.4}, {1.0, 1.0}, {0.0, 0.0}}, 3);
  const SortingModel m = linear_model({0.25, 0.75}, {0.3, 0.6});
  EXPECT_NEAR(comprehensive_value(m, table.alternative(0)), 0.35, 1e-15);
  EXPECT_EQ(assign_all(m, table), (std::vector<int>{2, 3, 1}));
}

TEST(Core, MidpointThresholds) {
  const auto table = fixtures::unit_table({{0.1}, {0.3}, {0.7}, {0.9}}, 2);
  const AssignmentExamples ex(table, {{0, 1}, {1, 1}, {2, 2}, {3, 2}});
  const SortingModel lin = linear_model({1.0}, {});
  const auto t = midpoint_thresholds(lin.marginals, table, ex);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_NEAR(t[0], 0.5, 1e-15);

  const AssignmentExamples lonely(table, {{0, 1}});
  EXPECT_THROW(midpoint_thresholds(lin.marginals, table, lonely), ConfigurationError);
  const AssignmentExamples crossed(table, {{3, 1}, {0, 2}});
  EXPECT_THROW(midpoint_thresholds(lin.marginals, table, crossed), InconsistencyError);
}

TEST(Core, SettleThresholdsLowersOntoTies) {
  const auto table = fixtures::unit_table({{0.5}}, 2);
  const AssignmentExamples ex(table, {{0, 2}});
  SortingModel m = linear_model({1.0}, {0.50000005});
  EXPECT_FALSE(reproduces(m, table, ex));
  settle_thresholds(m, table, ex.items());
  EXPECT_TRUE(reproduces(m, table, ex));
  SortingModel far = linear_model({1.0}, {0.6});
  settle_thresholds(far, table, ex.items());
  EXPECT_DOUBLE_EQ(far.thresholds[0], 0.6);
}

TEST(Core, CheckModel) {
  EXPECT_TRUE(check_model(linear_model({0.4, 0.6}, {0.3, 0.7}), 1e-6).ok);
  EXPECT_FALSE(check_model(linear_model({0.4, 0.5}, {0.3}), 1e-6).ok);
  EXPECT_FALSE(check_model(linear_model({0.4, 0.6}, {0.5, 0.5}), 1e-6).ok);
  EXPECT_FALSE(check_model(linear_model({1.2, -0.2}, {0.5}), 1e-6).ok);
  EXPECT_FALSE(check_model(linear_model({0.4, 0.6}, {0.0}), 1e-6).ok);
}

TEST(Core, GreenCitiesReferenceValues) {
  const auto& data = fixtures::green_cities();
  const auto& ref = fixtures::green_reference();
  const auto u = comprehensive_values(ref, data.table);
  const auto cls = assign_all(ref, data.table);
  const auto gold = fixtures::published_classes();
  ASSERT_EQ(u.size(), published::rows.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_EQ(data.table.alternative(i).id, published::rows[i].id);
    EXPECT_NEAR(u[i], published::rows[i].value, 1e-4) << published::rows[i].id;
    EXPECT_EQ(cls[i], gold[i]) << published::rows[i].id;
  }
  EXPECT_TRUE(reproduces(ref, data.table, data.examples));
}

#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "utadis/errors.hpp"
#include "utadis/polytope.hpp"

using namespace utadis;

TEST(Polytope, VariableLayout) {
  const auto& d = fixtures::green_cities();
  const CompatibleSet cs(d.table, d.examples);
  EXPECT_EQ(cs.marginal_variable_count(), 8u);
  EXPECT_EQ(cs.threshold_count(), 2u);
  EXPECT_EQ(cs.dimension(), 10u);
  EXPECT_EQ(cs.marginal_index(0, 2), 0u);
  EXPECT_EQ(cs.max_index(0), 1u);
  EXPECT_EQ(cs.marginal_index(3, 3), 7u);
  EXPECT_EQ(cs.threshold_index(1), 8u);
  EXPECT_EQ(cs.threshold_index(2), 9u);
}

TEST(Polytope, RowBlocks) {
  const auto& d = fixtures::green_cities();
  const CompatibleSet cs(d.table, d.examples);
  std::map<Block, int> count;
  for (const auto& r : cs.rows()) ++count[r.block];
  EXPECT_EQ(count[Block::normalization], 1);
  EXPECT_EQ(count[Block::monotonicity], 8);
  EXPECT_EQ(count[Block::thresholds], 3);
  EXPECT_EQ(count[Block::assignment_upper], 6);
  EXPECT_EQ(count[Block::assignment_lower], 6);
}

TEST(Polytope, EncodeDecodeRoundTrip) {
  const auto& d = fixtures::green_cities();
  const auto& ref = fixtures::green_reference();
  const CompatibleSet cs(d.table, d.examples);
  const auto x = cs.encode(ref);
  ASSERT_EQ(x.size(), cs.dimension());
  const SortingModel back = cs.decode(x);
  EXPECT_EQ(cs.encode(back), x);
  EXPECT_LE(cs.max_violation(x), 1e-9);
  for (std::size_t a = 0; a < d.table.alternative_count(); ++a) {
    EXPECT_NEAR(cs.value(a, x), comprehensive_value(ref, d.table.alternative(a)), 1e-12);
  }
}

TEST(Polytope, Compatibility) {
  auto solver = mp::make_solver("highs");
  const auto& d = fixtures::green_cities();
  EXPECT_TRUE(check_compatibility(CompatibleSet(d.table, d.examples), *solver));
  const auto bad = io::load_dataset(fixtures::data_path("contradictory.json"));
  const CompatibleSet cs(bad.table, bad.examples);
  EXPECT_FALSE(check_compatibility(cs, *solver));
  EXPECT_FALSE(feasible_point(cs, *solver).has_value());
  EXPECT_THROW(chebyshev_center(cs, *solver), InconsistencyError);
}

TEST(Polytope, FeasiblePointReproducesExamples) {
  auto solver = mp::make_solver("highs");
  const auto& d = fixtures::green_cities();
  const CompatibleSet cs(d.table, d.examples);
  const auto x = feasible_point(cs, *solver);
  ASSERT_TRUE(x.has_value());
  EXPECT_TRUE(reproduces(cs.decode(*x), d.table, d.examples));
}

TEST(Polytope, ChebyshevCenterOfSingleCriterion) {
  const auto table = fixtures::unit_table({{0.5}}, 2, 3);
  const AssignmentExamples none;
  const CompatibleSet cs(table, none);
  auto solver = mp::make_solver("highs");
  const ChebyshevCenter c = chebyshev_center(cs, *solver);
  EXPECT_NEAR(c.radius, 0.5, 1e-9);
  EXPECT_NEAR(c.point[cs.marginal_index(0, 2)], 0.5, 1e-9);
  EXPECT_NEAR(c.point[cs.max_index(0)], 1.0, 1e-9);
}

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "utadis/errors.hpp"
#include "utadis/robust.hpp"

using namespace utadis;

TEST(Robust, PrunedRelationsMatchPlainLps) {
  const auto& d = fixtures::green_cities();
  const CompatibleSet cs(d.table, d.examples);
  auto solver = mp::make_solver("highs");
  const ModelSample s = har_sample(cs, 1000, 2, *solver);
  NecessaryStats with, without;
  const auto rw = compute_necessary_relations(cs, *solver, &s, &with);
  const auto rp = compute_necessary_relations(cs, *solver, nullptr, &without);
  EXPECT_EQ(rw.matrix(), rp.matrix());
  EXPECT_GT(with.by_witness, 0u);
  EXPECT_LT(with.lp_solves, without.lp_solves);
  const std::size_t n = d.table.alternative_count();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      EXPECT_EQ(rp.weak(a, b), necessary_weak(cs, a, b, *solver)) << a << "," << b;
    }
  }
}

TEST(Robust, RelationIsReflexiveAndTransitive) {
  const auto& d = fixtures::green_cities();
  const CompatibleSet cs(d.table, d.examples);
  auto solver = mp::make_solver("highs");
  const auto rel = compute_necessary_relations(cs, *solver);
  const std::size_t n = rel.size();
  for (std::size_t a = 0; a < n; ++a) {
    EXPECT_TRUE(rel.weak(a, a));
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (rel.weak(a, b) && rel.weak(b, c)) EXPECT_TRUE(rel.weak(a, c));
      }
    }
  }
  const auto a1 = *d.table.find_alternative("a1");
  const auto a15 = *d.table.find_alternative("a15");
  EXPECT_TRUE(rel.strict(a1, a15));
  for (const auto& [c, e] : rel.equal_pairs()) EXPECT_LT(c, e);
}

TEST(Robust, NecessaryImpliesFullOutrankingAcceptability) {
  const auto& d = fixtures::green_cities();
  const CompatibleSet cs(d.table, d.examples);
  auto solver = mp::make_solver("highs");
  const auto rel = compute_necessary_relations(cs, *solver);
  const Acceptabilities acc = compute_acceptabilities(har_sample(cs, 5000, 9, *solver), cs);
  std::size_t checked = 0;
  for (std::size_t a = 0; a < rel.size(); ++a) {
    for (std::size_t b = 0; b < rel.size(); ++b) {
      if (!rel.weak(a, b)) continue;
      ++checked;
      EXPECT_DOUBLE_EQ(acc.apoi(a, b), 1.0) << a << "," << b;
    }
  }
  EXPECT_GT(checked, rel.size());
}

TEST(Robust, BruteForceAgreesOnTinyInstances) {
  auto highs = mp::make_solver("highs");
  mp::BruteForceSolver brute;
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto tiny = fixtures::tiny_instance(k);
    const CompatibleSet cs(tiny.table, tiny.examples);
    EXPECT_EQ(compute_necessary_relations(cs, *highs).matrix(),
              compute_necessary_relations(cs, brute).matrix());
  }
}

TEST(Robust, RejectsRaggedMatrix) {
  EXPECT_THROW(NecessaryRelations({{1, 0}, {1}}), DomainError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "fixtures.hpp"
#include "stats.hpp"
#include "utadis/errors.hpp"
#include "utadis/random.hpp"
#include "utadis/sampler.hpp"

using namespace utadis;

using stats::batch_mean;
using stats::Estimate;

TEST(Sampler, UniformOnAnalyticSimplex) {
  const auto table = fixtures::unit_table({{0.5, 0.5, 0.5}}, 2);
  const AssignmentExamples none;
  const CompatibleSet cs(table, none);
  auto solver = mp::make_solver("highs");
  const ModelSample s = har_sample(cs, 40000, 3, *solver);
  ASSERT_EQ(s.count(), 40000u);

  const std::size_t u1 = cs.max_index(0), u2 = cs.max_index(1), t = cs.threshold_index(1);
  struct Stat {
    const char* name;
    std::function<double(const std::vector<double>&)> f;
    double truth;
  };
  const double eps = cs.epsilon();
  const std::vector<Stat> checks{
      {"E u1", [&](const auto& x) { return x[u1]; }, 1.0 / 3.0},
      {"E u1^2", [&](const auto& x) { return x[u1] * x[u1]; }, 1.0 / 6.0},
      {"P u1 < 1/2", [&](const auto& x) { return x[u1] < 0.5 ? 1.0 : 0.0; }, 0.75},
      {"P u1 > u2", [&](const auto& x) { return x[u1] > x[u2] ? 1.0 : 0.0; }, 0.5},
      {"E u1 u2", [&](const auto& x) { return x[u1] * x[u2]; }, 1.0 / 12.0},
      {"E t", [&](const auto& x) { return x[t]; }, 0.5},
      {"P t < 1/4", [&](const auto& x) { return x[t] < 0.25 ? 1.0 : 0.0; },
       (0.25 - eps) / (1.0 - 2.0 * eps)},
  };
  for (const auto& st : checks) {
    std::vector<double> xs;
    for (const auto& x : s.points) xs.push_back(st.f(x));
    const Estimate e = batch_mean(xs);
    EXPECT_LE(std::abs(e.mean - st.truth), 3.0 * e.se)
        << st.name << ": " << e.mean << " vs " << st.truth << " (se " << e.se << ")";
  }
}

TEST(Sampler, SeedDeterminism) {
  const auto& d = fixtures::green_cities();
  const CompatibleSet cs(d.table, d.examples);
  auto solver = mp::make_solver("highs");
  const ModelSample a = har_sample(cs, 300, 42, *solver);
  const ModelSample b = har_sample(cs, 300, 42, *solver);
  const ModelSample c = har_sample(cs, 300, 43, *solver);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, c.points);
}

TEST(Sampler, SamplesAreCompatible) {
  const auto& d = fixtures::green_cities();
  const CompatibleSet cs(d.table, d.examples);
  auto solver = mp::make_solver("highs");
  const ModelSample s = har_sample(cs, 500, 1, *solver);
  for (const auto& x : s.points) ASSERT_LE(cs.max_violation(x), 1e-7);
  for (const auto& m : s.models(cs)) ASSERT_TRUE(reproduces(m, d.table, d.examples));
}

TEST(Sampler, AgreesWithRejectionSampling) {
  auto solver = mp::make_solver("highs");
  for (std::uint64_t k = 0; k < 5; ++k) {
    const auto tiny = fixtures::tiny_instance(100 + k);
    const CompatibleSet cs(tiny.table, tiny.examples);
    const Acceptabilities har = compute_acceptabilities(har_sample(cs, 20000, k, *solver), cs);

    Rng rng(1000 + k);
    std::vector<std::vector<int>> accepted;
    while (accepted.size() < 20000) {
      const double w = rng.uniform();
      const double t = cs.epsilon() + (1.0 - 2.0 * cs.epsilon()) * rng.uniform();
      const std::vector<double> x{w, 1.0 - w, t};
      if (cs.max_violation(x) > 0.0) continue;
      std::vector<int> cls;
      for (std::size_t a = 0; a < tiny.table.alternative_count(); ++a) {
        cls.push_back(assign_value(std::vector<double>{t}, cs.value(a, x)));
      }
      accepted.push_back(std::move(cls));
    }
    const Acceptabilities exact =
        acceptabilities_from_assignments(accepted, 2, tiny.table.alternative_count());
    EXPECT_LE((har.cai - exact.cai).cwiseAbs().maxCoeff(), 0.03) << "instance " << k;
    EXPECT_LE((har.apwi - exact.apwi).cwiseAbs().maxCoeff(), 0.03) << "instance " << k;
  }
}

TEST(Sampler, PinnedThresholdHasNoInterior) {
  const auto table = fixtures::unit_table({{0.5}, {0.500001}}, 2);
  const AssignmentExamples ex(table, {{0, 1}, {1, 2}});
  const CompatibleSet cs(table, ex, 1e-6);
  auto solver = mp::make_solver("highs");
  EXPECT_THROW(har_sample(cs, 10, 1, *solver), DegenerateInteriorError);
}

TEST(Acceptabilities, PartitionIdentities) {
  const auto& d = fixtures::green_cities();
  const CompatibleSet cs(d.table, d.examples);
  auto solver = mp::make_solver("highs");
  const Acceptabilities acc = compute_acceptabilities(har_sample(cs, 2000, 5, *solver), cs);
  const auto n = static_cast<Eigen::Index>(acc.alternative_count());
  for (Eigen::Index a = 0; a < n; ++a) {
    EXPECT_NEAR(acc.cai.row(a).sum(), 1.0, 1e-9);
    EXPECT_DOUBLE_EQ(acc.apei(a, a), 1.0);
    for (Eigen::Index b = 0; b < n; ++b) {
      if (a == b) continue;
      EXPECT_NEAR(acc.apwi(a, b) + acc.apwi(b, a) + acc.apei(a, b), 1.0, 1e-9);
      EXPECT_DOUBLE_EQ(acc.apei(a, b), acc.apei(b, a));
      EXPECT_NEAR(acc.apoi(a, b) + acc.apoi(b, a) - acc.apei(a, b), 1.0, 1e-9);
    }
  }
  for (const auto& e : d.examples.items()) {
    EXPECT_DOUBLE_EQ(acc.cai(static_cast<Eigen::Index>(e.alternative), e.class_index - 1), 1.0);
  }
}

TEST(Acceptabilities, FromAssignments) {
  const Acceptabilities acc = acceptabilities_from_assignments({{1, 2, 2}, {2, 2, 1}}, 2, 3);
  EXPECT_DOUBLE_EQ(acc.cai(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(acc.cai(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(acc.apwi(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(acc.apei(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(acc.apwi(0, 2), 0.5);
  EXPECT_DOUBLE_EQ(acc.apwi(2, 0), 0.5);
  EXPECT_DOUBLE_EQ(acc.apoi(1, 2), 1.0);
  EXPECT_EQ(acc.argmax_class(0), 1);
  EXPECT_EQ(acc.argmax_class(1), 2);
  EXPECT_THROW(acceptabilities_from_assignments({}, 2, 3), DomainError);
}

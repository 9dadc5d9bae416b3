#include <gtest/gtest.h>

#include <vector>

#include "fixtures.hpp"
#include "utadis/errors.hpp"
#include "utadis/measures.hpp"
#include "utadis/random.hpp"

using namespace utadis;

namespace {

SortingModel linear(std::vector<double> w, std::vector<double> t) {
  SortingModel m;
  for (std::size_t j = 0; j < w.size(); ++j) {
    m.marginals.push_back({"g" + std::to_string(j + 1), {0.0, 0.5, 1.0}, {0.0, w[j] / 2, w[j]}});
  }
  m.thresholds = std::move(t);
  return m;
}

SortingModel random_model(Rng& rng) {
  const double w = rng.uniform();
  const double t = 0.1 + 0.8 * rng.uniform();
  SortingModel m = linear({w, 1.0 - w}, {t});
  m.marginals[0].values[1] = w * rng.uniform();
  return m;
}

Acceptabilities published_acceptabilities() {
  Acceptabilities acc;
  acc.cai.resize(30, 3);
  for (std::size_t i = 0; i < 30; ++i) {
    for (int l = 0; l < 3; ++l) {
      acc.cai(static_cast<Eigen::Index>(i), l) = published::rows[i].cai[static_cast<std::size_t>(l)];
    }
  }
  acc.apwi = Eigen::MatrixXd::Zero(30, 30);
  acc.apei = Eigen::MatrixXd::Identity(30, 30);
  return acc;
}

}  // namespace

TEST(Measures, Accuracy) {
  const auto table = fixtures::unit_table({{0.1, 0.1}, {0.9, 0.9}, {0.6, 0.2}, {0.2, 0.6}}, 2);
  const SortingModel m = linear({0.5, 0.5}, {0.5});
  const std::vector<std::size_t> test{0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(accuracy(m, table, test, std::vector<int>{1, 2, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(accuracy(m, table, test, std::vector<int>{2, 2, 2, 1}), 0.5);
}

TEST(Measures, McaiAgainstTheStudyAcceptabilities) {
  const auto& d = fixtures::green_cities();
  const Acceptabilities acc = published_acceptabilities();
  const auto test = d.non_reference();
  const McaiValues ref = mcai(fixtures::green_reference(), d.table, acc, test);
  EXPECT_NEAR(ref.rel, -0.0809, 1e-3);
  EXPECT_NEAR(ref.max, 0.9656, 1e-3);
  EXPECT_NEAR(ref.abs, (1.0 + ref.rel) * ref.max, 1e-12);
}

TEST(Measures, McaiOfArgmaxModelIsMaximal) {
  const auto table = fixtures::unit_table({{0.2, 0.2}, {0.8, 0.8}}, 2);
  const Acceptabilities acc = acceptabilities_from_assignments({{1, 2}, {1, 2}, {2, 2}}, 2, 2);
  const std::vector<std::size_t> test{0, 1};
  const McaiValues v = mcai(linear({0.5, 0.5}, {0.5}), table, acc, test);
  EXPECT_NEAR(v.abs, (2.0 / 3.0 + 1.0) / 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(v.abs, v.max);
  EXPECT_DOUBLE_EQ(v.rel, 0.0);
  const McaiValues w = mcai(linear({0.5, 0.5}, {0.1}), table, acc, test);
  EXPECT_NEAR(w.abs, (1.0 / 3.0 + 1.0) / 2.0, 1e-12);
  EXPECT_LT(w.rel, 0.0);
}

TEST(Measures, DistancesAreMetrics) {
  Rng rng(4);
  const auto table = fixtures::unit_table({{0.1, 0.7}, {0.4, 0.4}, {0.9, 0.3}}, 2, 3);
  const std::vector<std::size_t> test{0, 1, 2};
  for (int k = 0; k < 50; ++k) {
    const SortingModel a = random_model(rng), b = random_model(rng), c = random_model(rng);
    EXPECT_DOUBLE_EQ(delta_marginal(a, a), 0.0);
    EXPECT_DOUBLE_EQ(delta_marginal(a, b), delta_marginal(b, a));
    EXPECT_LE(delta_marginal(a, c), delta_marginal(a, b) + delta_marginal(b, c) + 1e-15);
    EXPECT_LE(delta_cv(a, c, table, test),
              delta_cv(a, b, table, test) + delta_cv(b, c, table, test) + 1e-15);
    EXPECT_NEAR(delta_th(a, b), std::abs(a.thresholds[0] - b.thresholds[0]), 1e-15);
  }
}

TEST(Measures, DeltaMarginalSkipsTheOrigin) {
  const SortingModel a = linear({0.4, 0.6}, {0.5});
  const SortingModel b = linear({0.6, 0.4}, {0.5});
  EXPECT_NEAR(delta_marginal(a, b), (0.1 + 0.2 + 0.1 + 0.2) / 4.0, 1e-15);
}

TEST(Measures, MismatchedGridsRaise) {
  SortingModel a = linear({0.4, 0.6}, {0.5});
  SortingModel b = a;
  b.marginals[0].breakpoints = {0.0, 0.4, 1.0};
  EXPECT_THROW(delta_marginal(a, b), DomainError);
  b = a;
  b.thresholds.push_back(0.7);
  EXPECT_THROW(delta_th(a, b), DomainError);
}

TEST(Measures, ReportBundlesEveryMeasure) {
  const auto& d = fixtures::green_cities();
  const auto& ref = fixtures::green_reference();
  const Acceptabilities acc = published_acceptabilities();
  const auto test = d.non_reference();
  const MeasureReport self = measure(ref, ref, ref, d.table, acc, test);
  EXPECT_DOUBLE_EQ(self.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(self.delta_marginal_ref, 0.0);
  EXPECT_DOUBLE_EQ(self.delta_cv_ref, 0.0);
  EXPECT_DOUBLE_EQ(self.delta_th_ref, 0.0);
  EXPECT_NEAR(self.mcai_rel, -0.0809, 1e-3);
}

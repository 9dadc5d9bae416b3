#include <gtest/gtest.h>

#include <numeric>
#include <set>
#include <sstream>

#include "utadis/errors.hpp"
#include "utadis/experiment.hpp"
#include "utadis/random.hpp"

using namespace utadis;

namespace {

SuiteSpec small_suite() {
  SuiteSpec s;
  s.p = {2, 3};
  s.m = {2};
  s.gamma = {2, 3};
  s.R = {2};
  s.instances_per_cell = 2;
  s.samples = 300;
  s.seed = 77;
  return s;
}

std::string results_csv(const ResultTable& t) {
  std::ostringstream os;
  write_results_csv(os, t);
  return os.str();
}

}  // namespace

TEST(Experiment, ClassProportions) {
  for (int p = 2; p <= 6; ++p) {
    const auto v = class_proportions(p);
    ASSERT_EQ(v.size(), static_cast<std::size_t>(p));
    EXPECT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, 1e-12);
  }
  EXPECT_THROW(class_proportions(1), ConfigurationError);
}

TEST(Experiment, GeneratedInstanceIsConsistent) {
  InstanceSpec spec;
  spec.p = 3;
  spec.m = 4;
  spec.gamma = 3;
  spec.R = 5;
  spec.seed = 12;
  const Instance inst = generate_instance(spec);
  EXPECT_EQ(inst.table.alternative_count(), 3u * (5u + 10u));
  EXPECT_EQ(inst.examples.size(), 15u);
  EXPECT_EQ(inst.test.size(), 30u);
  EXPECT_TRUE(check_model(inst.reference, kDefaultEpsilon).ok);
  EXPECT_TRUE(reproduces(inst.reference, inst.table, inst.examples));
  EXPECT_EQ(assign_all(inst.reference, inst.table), inst.reference_classes);
  for (std::size_t a : inst.test) EXPECT_FALSE(inst.examples.class_of(a).has_value());
  for (const auto& mf : inst.reference.marginals) {
    EXPECT_EQ(mf.breakpoints.size(), 3u);
    EXPECT_DOUBLE_EQ(mf.values.front(), 0.0);
  }
}

TEST(Experiment, ReferenceThresholdsFollowClassShares) {
  InstanceSpec spec;
  spec.p = 3;
  spec.m = 3;
  spec.gamma = 2;
  spec.seed = 5;
  const Instance inst = generate_instance(spec);
  Rng rng(99);
  std::vector<double> share(3, 0.0);
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Alternative a{"", {rng.uniform(), rng.uniform(), rng.uniform()}, ""};
    share[static_cast<std::size_t>(assign(inst.reference, a) - 1)] += 1.0 / n;
  }
  const auto want = class_proportions(3);
  for (std::size_t l = 0; l < 3; ++l) EXPECT_NEAR(share[l], want[l], 0.06);
}

TEST(Experiment, InstancesAreSeedDeterministic) {
  InstanceSpec spec;
  spec.seed = 3;
  const Instance a = generate_instance(spec), b = generate_instance(spec);
  ASSERT_EQ(a.table.alternative_count(), b.table.alternative_count());
  for (std::size_t i = 0; i < a.table.alternative_count(); ++i) {
    EXPECT_EQ(a.table.alternative(i).performances, b.table.alternative(i).performances);
  }
  EXPECT_EQ(a.reference.thresholds, b.reference.thresholds);
  spec.seed = 4;
  EXPECT_NE(a.table.alternative(0).performances, generate_instance(spec).table.alternative(0).performances);
}

TEST(Experiment, RejectsBadSpecs) {
  InstanceSpec spec;
  spec.gamma = 1;
  EXPECT_THROW(generate_instance(spec), ConfigurationError);
  SuiteSpec suite;
  suite.R.clear();
  EXPECT_THROW(run_suite(suite), ConfigurationError);
  EXPECT_THROW(measure_value(MeasureReport{}, "nope"), ConfigurationError);
}

TEST(Experiment, SuiteGrid) {
  SuiteSpec s;
  const auto specs = suite_instances(s);
  EXPECT_EQ(specs.size(), 160u);
  std::set<std::uint64_t> seeds;
  for (const auto& sp : specs) seeds.insert(sp.seed);
  EXPECT_EQ(seeds.size(), 160u);
  EXPECT_EQ(specs.front().p, 2);
  EXPECT_EQ(specs.back().R, 5);
}

TEST(Experiment, SuiteRerunsAreByteIdentical) {
  SuiteSpec s = small_suite();
  const ResultTable a = run_suite(s);
  const ResultTable b = run_suite(s);
  s.workers = 3;
  const ResultTable c = run_suite(s);
  EXPECT_EQ(a.rows.size(), 8u * all_procedures().size() - 4u);
  EXPECT_EQ(results_csv(a), results_csv(b));
  EXPECT_EQ(results_csv(a), results_csv(c));
  for (const auto& r : a.rows) {
    if (r.procedure == ProcedureId::MSCVF && r.spec.gamma < 3) continue;
    EXPECT_TRUE(r.ok) << procedure_name(r.procedure) << ": " << r.error;
  }
}

TEST(Experiment, WritersEmitHeaders) {
  SuiteSpec s = small_suite();
  s.p = {2};
  s.gamma = {2};
  s.instances_per_cell = 1;
  s.procedures = {ProcedureId::UTADISMP1, ProcedureId::CAI};
  const ResultTable t = run_suite(s);
  std::ostringstream summary, table, timings;
  write_summary_csv(summary, t);
  write_measure_table_csv(table, t, "accuracy");
  write_timings_csv(timings, t);
  EXPECT_EQ(summary.str().rfind("procedure,", 0), 0u);
  EXPECT_EQ(table.str().rfind("procedure", 0), 0u);
  EXPECT_NE(timings.str().find("seconds"), std::string::npos);
  EXPECT_NE(results_csv(t).find("UTADISMP1"), std::string::npos);
  for (const auto& name : measure_names()) EXPECT_NO_THROW(measure_value(t.rows[0].measures, name));
}

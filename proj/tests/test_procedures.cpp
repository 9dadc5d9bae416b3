#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "fixtures.hpp"
#include "utadis/errors.hpp"
#include "utadis/measures.hpp"
#include "utadis/procedures.hpp"

using namespace utadis;

namespace {

struct Study {
  const io::Dataset& data = fixtures::green_cities();
  CompatibleSet cs{data.table, data.examples};
  std::unique_ptr<mp::Solver> solver = mp::make_solver("highs");
  ModelSample sample;
  Acceptabilities acc;
  NecessaryRelations rel;

  Study() {
    sample = har_sample(cs, 10000, 7, *solver);
    acc = compute_acceptabilities(sample, cs);
    rel = compute_necessary_relations(cs, *solver, &sample);
  }
  SelectionContext context() {
    SelectionContext ctx;
    ctx.cs = &cs;
    ctx.solver = solver.get();
    ctx.acceptabilities = &acc;
    ctx.relations = &rel;
    ctx.sample = &sample;
    return ctx;
  }
};

Study& study() {
  static Study s;
  return s;
}

double u(const SortingModel& m, std::size_t j, int s) { return m.marginals[j].values[s - 1]; }

std::set<std::string> misclassified(const SortingModel& m) {
  const auto& d = fixtures::green_cities();
  const auto gold = fixtures::published_classes();
  const auto got = assign_all(m, d.table);
  std::set<std::string> out;
  for (std::size_t a : d.non_reference()) {
    if (got[a] != gold[a]) out.insert(d.table.alternative(a).id);
  }
  return out;
}

}  // namespace

TEST(Procedures, NamesRoundTrip) {
  EXPECT_EQ(all_procedures().size(), 16u);
  for (ProcedureId id : all_procedures()) {
    EXPECT_EQ(parse_procedure(procedure_name(id)), id);
  }
  EXPECT_EQ(parse_procedure("utadis_jls"), ProcedureId::UTADIS_JLS);
  EXPECT_EQ(parse_procedure("max-svf"), ProcedureId::MAX_SVF);
  EXPECT_FALSE(parse_procedure("UTADISMP4").has_value());
  EXPECT_NE(valid_procedure_names().find("ROBUST-COMP"), std::string::npos);
}

TEST(Procedures, Mp2MaximizesSlopes) {
  auto& s = study();
  const auto r = utadismp(2, s.cs, *s.solver);
  EXPECT_NEAR(r.diagnostics.at("rho"), 0.10763, 1e-3);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(u(r.model, j, 2), 0.1076, 1e-3);
  const auto r3 = utadismp(3, s.cs, *s.solver);
  EXPECT_EQ(assign_all(r.model, s.data.table), assign_all(r3.model, s.data.table));
}

TEST(Procedures, Mp1Misclassifications) {
  auto& s = study();
  const auto r = utadismp(1, s.cs, *s.solver);
  EXPECT_EQ(misclassified(r.model), (std::set<std::string>{"a6", "a9", "a23", "a25", "a26"}));
  EXPECT_GT(r.diagnostics.at("delta"), 0.0);
}

TEST(Procedures, MscvfIsLinearOnTheStudy) {
  auto& s = study();
  const auto r = mscvf(s.cs, *s.solver);
  EXPECT_NEAR(r.diagnostics.at("phi"), 0.0, 1e-9);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(2.0 * u(r.model, j, 2), u(r.model, j, 3), 1e-7);
}

TEST(Procedures, MscvfNeedsThreePoints) {
  const auto tiny = fixtures::tiny_instance(3);
  const CompatibleSet cs(tiny.table, tiny.examples);
  auto solver = mp::make_solver("highs");
  EXPECT_THROW(mscvf(cs, *solver), ConfigurationError);
}

TEST(Procedures, MscvfDetectsForcedCurvature) {
  const auto table = fixtures::unit_table({{0.5, 0.5}, {1.0, 0.25}, {0.25, 1.0}}, 2, 3);
  const AssignmentExamples ex(table, {{0, 2}, {1, 1}, {2, 1}});
  const CompatibleSet cs(table, ex);

  // Linear models are U = w g1 + (1 - w) g2; scan w and the threshold.
  bool linear_fits = false;
  for (int i = 0; i <= 1000 && !linear_fits; ++i) {
    const double w = i / 1000.0;
    const double ua = 0.5, ub = w + 0.25 * (1.0 - w), uc = 0.25 * w + (1.0 - w);
    linear_fits = std::max(ub, uc) + cs.epsilon() <= ua;
  }
  EXPECT_FALSE(linear_fits);

  auto solver = mp::make_solver("highs");
  const auto r = mscvf(cs, *solver);
  EXPECT_GT(r.diagnostics.at("phi"), 1e-3);
  EXPECT_TRUE(reproduces(r.model, table, ex));
}

TEST(Procedures, SumScores) {
  auto& s = study();
  const auto mx = sum_scores(true, s.cs, *s.solver);
  EXPECT_NEAR(u(mx.model, 2, 2), 1.0, 1e-3);
  for (std::size_t j : {0u, 1u, 3u}) EXPECT_NEAR(u(mx.model, j, 3), 0.0, 1e-3);

  const auto mn = sum_scores(false, s.cs, *s.solver);
  EXPECT_NEAR(u(mn.model, 1, 3), 0.6122, 1e-2);
  EXPECT_NEAR(u(mn.model, 3, 3), 0.3878, 1e-2);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(u(mn.model, j, 2), 0.0, 1e-2);
  SortingModel published = mn.model;
  published.thresholds = {0.098490, 0.245878};
  const auto gold = fixtures::published_classes();
  const auto got = assign_all(published, s.data.table);
  std::set<std::string> above;
  for (std::size_t a : s.data.non_reference()) {
    if (got[a] > gold[a]) above.insert(s.data.table.alternative(a).id);
  }
  EXPECT_EQ(above, (std::set<std::string>{"a22"}));

  for (const auto* r : {&mx, &mn}) {
    const auto t = midpoint_thresholds(r->model.marginals, s.data.table, s.data.examples);
    EXPECT_EQ(t, r->model.thresholds);
  }
}

TEST(Procedures, JlsAveragesExtremes) {
  auto& s = study();
  const auto r = jls(s.cs, *s.solver);
  EXPECT_EQ(r.diagnostics.at("extreme_solutions"), 8.0);
  EXPECT_NEAR(u(r.model, 3, 2), 0.0, 1e-9);
  EXPECT_NEAR(r.diagnostics.at("u3_max"), 1.0, 1e-5);
}

TEST(Procedures, JlsOnSinglePoint) {
  const auto table = fixtures::unit_table({{0.5}, {0.500001}}, 2);
  const AssignmentExamples ex(table, {{0, 1}, {1, 2}});
  const CompatibleSet cs(table, ex, 1e-6);
  auto solver = mp::make_solver("highs");
  const auto r = jls(cs, *solver);
  EXPECT_NEAR(r.model.thresholds[0], 0.500001, 1e-9);
  EXPECT_NEAR(u(r.model, 0, 2), 1.0, 1e-12);
}

TEST(Procedures, ChebyshevAccuracy) {
  auto& s = study();
  const auto r = select_representative(ProcedureId::CHEBYSHEV, s.context());
  EXPECT_EQ(misclassified(r.model).size(), 4u);
  EXPECT_GT(r.diagnostics.at("r"), 0.0);
}

TEST(Procedures, AcutadisAnalyticCenter) {
  auto& s = study();
  const auto r = acutadis(s.cs, *s.solver);
  EXPECT_NEAR(r.model.thresholds[0], 0.3530, 2e-2);
  EXPECT_NEAR(r.model.thresholds[1], 0.5400, 2e-2);
  EXPECT_NEAR(u(r.model, 2, 3), 0.3731, 2e-2);
  EXPECT_EQ(misclassified(r.model), (std::set<std::string>{"a6"}));
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_GT(u(r.model, j, 2), 0.0);
    EXPECT_GT(u(r.model, j, 3), u(r.model, j, 2));
  }
}

TEST(Procedures, AcutadisSymmetry) {
  const auto table = fixtures::unit_table({{0.3, 0.7}, {0.7, 0.3}, {0.9, 0.9}}, 2);
  const AssignmentExamples ex(table, {{0, 1}, {1, 1}, {2, 2}});
  const CompatibleSet cs(table, ex);
  auto solver = mp::make_solver("highs");
  const auto r = acutadis(cs, *solver);
  EXPECT_NEAR(u(r.model, 0, 2), u(r.model, 1, 2), 1e-7);
  EXPECT_NEAR(u(r.model, 0, 2), 0.5, 1e-7);
}

TEST(Procedures, AcutadisIgnoresAlternativeOrder) {
  const auto& d = fixtures::green_cities();
  std::vector<Alternative> alts = d.table.alternatives();
  std::reverse(alts.begin(), alts.end());
  const PerformanceTable rev(d.table.criteria(), alts, d.table.class_count());
  std::vector<std::pair<std::string, int>> ids;
  for (const auto& e : d.examples.items()) {
    ids.emplace_back(d.table.alternative(e.alternative).id, e.class_index);
  }
  const auto ex = AssignmentExamples::from_ids(rev, ids);
  auto solver = mp::make_solver("highs");
  const auto a = acutadis(CompatibleSet(d.table, d.examples), *solver);
  const auto b = acutadis(CompatibleSet(rev, ex), *solver);
  EXPECT_LE(delta_marginal(a.model, b.model), 1e-6);
  EXPECT_LE(delta_th(a.model, b.model), 1e-6);
}

TEST(Procedures, CentroidAverages) {
  auto& s = study();
  ModelSample one;
  one.points = {s.sample.points[0]};
  const auto r1 = centroid(one, s.cs);
  EXPECT_LE(delta_marginal(r1.model, s.cs.decode(one.points[0])), 1e-12);

  ModelSample two;
  two.points = {s.sample.points[0], s.sample.points[1]};
  const auto r2 = centroid(two, s.cs);
  const auto x = s.cs.encode(r2.model);
  for (std::size_t k = 0; k < x.size(); ++k) {
    EXPECT_NEAR(x[k], 0.5 * (two.points[0][k] + two.points[1][k]), 1e-12);
  }
  EXPECT_THROW(centroid(ModelSample{}, s.cs), DomainError);
}

TEST(Procedures, RepdisOnTheStudy) {
  auto& s = study();
  const auto r = repdis(s.cs, s.acc, *s.solver);
  double top = 0.0;
  for (std::size_t j = 0; j < 4; ++j) top = std::max(top, u(r.model, j, 3));
  EXPECT_NEAR(top, u(r.model, 3, 3), 1e-12);
  EXPECT_GT(top, 0.8);
  const auto a11 = *s.data.table.find_alternative("a11");
  EXPECT_EQ(assign(r.model, s.data.table.alternative(a11)), 2);
  EXPECT_FALSE(r.fallback);
}

TEST(Procedures, RepdisWithoutPairsFallsBack) {
  auto& s = study();
  const std::size_t n = s.data.table.alternative_count();
  const Acceptabilities flat =
      acceptabilities_from_assignments({std::vector<int>(n, 2)}, 3, n);
  const auto r = repdis(s.cs, flat, *s.solver);
  EXPECT_TRUE(r.fallback);
  EXPECT_TRUE(reproduces(r.model, s.data.table, s.data.examples));
}

TEST(Procedures, StochasticMilpsAgree) {
  auto& s = study();
  for (auto v : {StochasticVariant::cai, StochasticVariant::apoi, StochasticVariant::comb}) {
    const auto r = stochastic_milp(v, s.cs, s.acc, *s.solver);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(u(r.model, j, 3), 0.25, 1e-2);
    EXPECT_NEAR(u(r.model, 1, 2), 0.0195, 1e-2);
    EXPECT_NEAR(r.model.thresholds[0], 0.1488, 1e-2);
    if (v != StochasticVariant::cai) EXPECT_NEAR(r.model.thresholds[1], 0.3545, 1e-2);
    EXPECT_NEAR(r.diagnostics.at("xi"), 0.0, 1e-7);
    EXPECT_TRUE(reproduces(r.model, s.data.table, s.data.examples));
  }
  const auto cai = stochastic_milp(StochasticVariant::cai, s.cs, s.acc, *s.solver);
  const auto test = s.data.non_reference();
  EXPECT_NEAR(mcai(cai.model, s.data.table, s.acc, test).rel, 0.0, 1e-12);
}

TEST(Procedures, StochasticMilpFollowsSingleModel) {
  auto& s = study();
  const SortingModel m = s.cs.decode(s.sample.points[17]);
  const std::vector<SortingModel> single{m};
  const Acceptabilities acc = compute_acceptabilities(single, s.data.table);
  for (auto v : {StochasticVariant::cai, StochasticVariant::apoi, StochasticVariant::comb}) {
    const auto r = stochastic_milp(v, s.cs, acc, *s.solver);
    EXPECT_EQ(assign_all(r.model, s.data.table), assign_all(m, s.data.table));
  }
}

TEST(Procedures, RobustFallsBackWithoutStrictPairs) {
  auto& s = study();
  const std::size_t n = s.data.table.alternative_count();
  const NecessaryRelations all_equal(std::vector<std::vector<char>>(n, std::vector<char>(n, 1)));
  for (auto v : {RobustVariant::iter, RobustVariant::comp}) {
    const auto r = robust_exact(v, s.cs, all_equal, *s.solver);
    EXPECT_TRUE(r.fallback);
    EXPECT_TRUE(reproduces(r.model, s.data.table, s.data.examples));
  }
}

TEST(Procedures, RobustUsesMidpointThresholds) {
  auto& s = study();
  for (auto v : {RobustVariant::iter, RobustVariant::comp}) {
    const auto r = robust_exact(v, s.cs, s.rel, *s.solver);
    EXPECT_EQ(r.model.thresholds,
              midpoint_thresholds(r.model.marginals, s.data.table, s.data.examples));
    EXPECT_EQ(r.diagnostics.at("strict_pairs"), static_cast<double>(s.rel.strict_pairs().size()));
  }
}

TEST(Procedures, SelectionDispatchAndMissingInputs) {
  auto& s = study();
  const auto direct = utadismp(2, s.cs, *s.solver);
  const auto via = select_representative(ProcedureId::UTADISMP2, s.context());
  EXPECT_EQ(s.cs.encode(direct.model), s.cs.encode(via.model));

  SelectionContext bare;
  bare.cs = &s.cs;
  bare.solver = s.solver.get();
  EXPECT_THROW(select_representative(ProcedureId::CAI, bare), ConfigurationError);
  EXPECT_THROW(select_representative(ProcedureId::CENTROID, bare), ConfigurationError);
  EXPECT_THROW(select_representative(ProcedureId::ROBUST_ITER, bare), ConfigurationError);
  SelectionContext none;
  EXPECT_THROW(select_representative(ProcedureId::UTADISMP1, none), ConfigurationError);
}

TEST(Procedures, EveryProcedureReproducesExamples) {
  auto& s = study();
  for (ProcedureId id : all_procedures()) {
    const auto r = select_representative(id, s.context());
    EXPECT_TRUE(reproduces(r.model, s.data.table, s.data.examples)) << procedure_name(id);
    EXPECT_TRUE(check_model(r.model, s.cs.epsilon()).ok) << procedure_name(id);
  }
}

TEST(Procedures, IncompatibleExamplesRaise) {
  const auto bad = io::load_dataset(fixtures::data_path("contradictory.json"));
  const CompatibleSet cs(bad.table, bad.examples);
  auto solver = mp::make_solver("highs");
  EXPECT_THROW(utadismp(1, cs, *solver), InconsistencyError);
  EXPECT_THROW(sum_scores(true, cs, *solver), InconsistencyError);
  EXPECT_THROW(jls(cs, *solver), InconsistencyError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "utadis/errors.hpp"
#include "utadis/mathprog.hpp"
#include "utadis/random.hpp"

using namespace utadis;
using namespace utadis::mp;

namespace {

struct Dense {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

Dense random_packing(Rng& rng, std::size_t rows, std::size_t cols) {
  Dense d;
  d.a.assign(rows, std::vector<double>(cols));
  for (auto& r : d.a) {
    for (double& v : r) v = 0.1 + rng.uniform();
  }
  for (std::size_t i = 0; i < rows; ++i) d.b.push_back(1.0 + 4.0 * rng.uniform());
  for (std::size_t j = 0; j < cols; ++j) d.c.push_back(rng.uniform() * 2.0 - 0.5);
  return d;
}

// max c'x, Ax <= b, x >= 0
Program primal(const Dense& d, bool binary = false) {
  Program p;
  std::vector<VarId> x;
  for (std::size_t j = 0; j < d.c.size(); ++j) {
    x.push_back(binary ? p.add_binary("x" + std::to_string(j))
                       : p.add_variable("x" + std::to_string(j)));
  }
  for (std::size_t i = 0; i < d.b.size(); ++i) {
    LinearExpr e;
    for (std::size_t j = 0; j < x.size(); ++j) e.add(x[j], d.a[i][j]);
    p.add_constraint("r" + std::to_string(i), e, Relation::less_equal, d.b[i]);
  }
  LinearExpr obj;
  for (std::size_t j = 0; j < x.size(); ++j) obj.add(x[j], d.c[j]);
  p.set_objective(Sense::maximize, obj);
  return p;
}

// min b'y, A'y >= c, y >= 0
Program dual(const Dense& d) {
  Program p;
  std::vector<VarId> y;
  for (std::size_t i = 0; i < d.b.size(); ++i) y.push_back(p.add_variable("y" + std::to_string(i)));
  for (std::size_t j = 0; j < d.c.size(); ++j) {
    LinearExpr e;
    for (std::size_t i = 0; i < y.size(); ++i) e.add(y[i], d.a[i][j]);
    p.add_constraint("c" + std::to_string(j), e, Relation::greater_equal, d.c[j]);
  }
  LinearExpr obj;
  for (std::size_t i = 0; i < y.size(); ++i) obj.add(y[i], d.b[i]);
  p.set_objective(Sense::minimize, obj);
  return p;
}

Program random_program(Rng& rng) {
  Program p;
  const std::size_t n = 2 + rng.below(6);
  for (std::size_t j = 0; j < n; ++j) {
    switch (rng.below(4)) {
      case 0: p.add_variable("x" + std::to_string(j)); break;
      case 1: p.add_variable("free_" + std::to_string(j), -kInf, kInf); break;
      case 2: p.add_variable("b" + std::to_string(j), -1.5, 2.25); break;
      default: p.add_binary("z" + std::to_string(j)); break;
    }
  }
  const std::size_t m = rng.below(5);
  for (std::size_t i = 0; i < m; ++i) {
    LinearExpr e;
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.uniform() < 0.6) e.add(j, std::round((rng.uniform() - 0.5) * 1e6) / 1e3);
    }
    const auto rel = static_cast<Relation>(rng.below(3));
    p.add_constraint(i % 2 ? "" : "row" + std::to_string(i), e, rel, rng.uniform() * 3.0 - 1.0);
  }
  LinearExpr obj(rng.uniform());
  for (std::size_t j = 0; j < n; ++j) obj.add(j, rng.uniform() - 0.5);
  p.set_objective(rng.below(2) ? Sense::maximize : Sense::minimize, obj);
  return p;
}

}  // namespace

TEST(LinearExpr, NormalizesTerms) {
  LinearExpr e = LinearExpr::var(3, 2.0) + LinearExpr::var(1, 1.0) - LinearExpr::var(3, 2.0);
  e.add(1, 0.5).add_constant(4.0);
  const auto t = e.normalized_terms();
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], (Term{1, 1.5}));
  EXPECT_DOUBLE_EQ(e.evaluate({0.0, 2.0, 0.0, 7.0}), 7.0);
  EXPECT_DOUBLE_EQ((2.0 * e).constant(), 8.0);
}

TEST(Program, ConstantMovesToRhs) {
  Program p;
  const VarId x = p.add_variable("x");
  p.add_constraint("c", LinearExpr::var(x) + LinearExpr(2.0), Relation::less_equal, 5.0);
  EXPECT_DOUBLE_EQ(p.constraints()[0].rhs, 3.0);
}

TEST(Program, ValidateRejectsBadInput) {
  Program p;
  p.add_variable("x");
  p.add_constraint("c", LinearExpr::var(4), Relation::equal, 0.0);
  EXPECT_THROW(p.validate(), ConfigurationError);
  Program q;
  const VarId z = q.add_binary("z");
  q.set_bounds(z, 0.0, 2.0);
  EXPECT_THROW(q.validate(), ConfigurationError);
}

TEST(Program, ViolationMeasuresEveryRequirement) {
  Program p;
  const VarId x = p.add_variable("x", 0.0, 1.0);
  const VarId z = p.add_binary("z");
  p.add_constraint("c", LinearExpr::var(x) + LinearExpr::var(z), Relation::greater_equal, 1.0);
  EXPECT_DOUBLE_EQ(p.max_violation({0.5, 1.0}), 0.0);
  EXPECT_NEAR(p.max_violation({0.5, 0.3}), 0.3, 1e-12);
  EXPECT_NEAR(p.max_violation({1.25, 0.0}), 0.25, 1e-12);
}

TEST(LpText, RoundTripsRandomPrograms) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const Program p = random_program(rng);
    const std::string text = to_lp_text(p);
    const Program q = parse_lp_text(text);
    EXPECT_EQ(p, q) << text;
    EXPECT_EQ(text, to_lp_text(q));
  }
}

TEST(LpText, RejectsGarbage) {
  EXPECT_ANY_THROW(parse_lp_text("maximize\n obj: 2 x +\nbogus"));
}

TEST(Highs, SolvesSmallLp) {
  Program p;
  const VarId x = p.add_variable("x");
  const VarId y = p.add_variable("y");
  p.add_constraint("a", LinearExpr::var(x) + LinearExpr::var(y), Relation::less_equal, 4.0);
  p.add_constraint("b", LinearExpr::var(x) + 3.0 * LinearExpr::var(y), Relation::less_equal, 6.0);
  p.set_objective(Sense::maximize, 3.0 * LinearExpr::var(x) + 5.0 * LinearExpr::var(y));
  HighsSolver s;
  const Solution sol = s.solve(p);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 14.0, 1e-9);
  EXPECT_NEAR(sol[x], 3.0, 1e-9);
  EXPECT_NEAR(sol[y], 1.0, 1e-9);
}

TEST(Solvers, ReportInfeasibleAndUnbounded) {
  Program inf;
  const VarId x = inf.add_variable("x");
  inf.add_constraint("lo", LinearExpr::var(x), Relation::greater_equal, 2.0);
  inf.add_constraint("hi", LinearExpr::var(x), Relation::less_equal, 1.0);
  Program unb;
  const VarId y = unb.add_variable("y");
  unb.set_objective(Sense::maximize, LinearExpr::var(y));
  HighsSolver h;
  BruteForceSolver b;
  EXPECT_EQ(h.solve(inf).status, Status::infeasible);
  EXPECT_EQ(b.solve(inf).status, Status::infeasible);
  EXPECT_EQ(h.solve(unb).status, Status::unbounded);
  EXPECT_EQ(b.solve(unb).status, Status::unbounded);
}

TEST(Solvers, StrongDualityOnRandomLps) {
  Rng rng(5);
  HighsSolver highs;
  for (int k = 0; k < 40; ++k) {
    const Dense d = random_packing(rng, 2 + rng.below(5), 2 + rng.below(6));
    const Program p = primal(d);
    const Solution sp = highs.solve(p);
    const Solution sd = highs.solve(dual(d));
    ASSERT_TRUE(sp.optimal());
    ASSERT_TRUE(sd.optimal());
    EXPECT_NEAR(sp.objective, sd.objective, 1e-7);
    EXPECT_LE(p.max_violation(sp.values), 1e-7);
    const Solution dense = solve_dense_lp(p);
    ASSERT_TRUE(dense.optimal());
    EXPECT_NEAR(dense.objective, sp.objective, 1e-7);
  }
}

TEST(Solvers, BruteForceMatchesHighsOnRandomMilps) {
  Rng rng(9);
  HighsSolver highs;
  BruteForceSolver brute;
  for (int k = 0; k < 40; ++k) {
    const Dense d = random_packing(rng, 1 + rng.below(3), 3 + rng.below(6));
    Program p = primal(d, true);
    const VarId c = p.add_variable("slack", 0.0, 1.0);
    LinearExpr e = LinearExpr::var(c);
    e.add(0, -0.5);
    p.add_constraint("mix", e, Relation::less_equal, 0.3);
    const Solution a = highs.solve(p);
    const Solution b = brute.solve(p);
    ASSERT_EQ(a.status, b.status);
    if (a.optimal()) {
      EXPECT_NEAR(a.objective, b.objective, 1e-7);
      EXPECT_LE(p.max_violation(b.values), 1e-7);
    }
  }
}

TEST(Solvers, BruteForceRefusesTooManyBinaries) {
  Program p;
  for (int i = 0; i < 5; ++i) p.add_binary("z" + std::to_string(i));
  BruteForceSolver small(4);
  EXPECT_THROW(small.solve(p), ConfigurationError);
}

TEST(Solvers, FactoryNames) {
  EXPECT_EQ(make_solver("highs")->name(), "highs");
  EXPECT_EQ(make_solver("bruteforce")->name(), "bruteforce");
  EXPECT_THROW(make_solver("cplex"), ConfigurationError);
}

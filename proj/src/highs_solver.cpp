#include <cmath>
#include <string>

#include "Highs.h"
#include "utadis/errors.hpp"
#include "utadis/mathprog.hpp"

namespace utadis::mp {

namespace {

HighsLp to_highs(const Program& p) {
  HighsLp lp;
  const auto n = static_cast<HighsInt>(p.variable_count());
  const auto m = static_cast<HighsInt>(p.constraint_count());
  lp.num_col_ = n;
  lp.num_row_ = m;
  lp.sense_ = p.sense() == Sense::maximize ? ObjSense::kMaximize : ObjSense::kMinimize;
  lp.offset_ = p.objective_constant();
  lp.col_cost_.assign(n, 0.0);
  for (const Term& t : p.objective()) lp.col_cost_[t.var] = t.coef;
  lp.col_lower_.resize(n);
  lp.col_upper_.resize(n);
  lp.integrality_.assign(n, HighsVarType::kContinuous);
  bool any_integer = false;
  for (HighsInt v = 0; v < n; ++v) {
    const Variable& var = p.variable(v);
    lp.col_lower_[v] = var.lower;
    lp.col_upper_[v] = var.upper;
    if (var.kind == VarKind::binary) {
      lp.integrality_[v] = HighsVarType::kInteger;
      any_integer = true;
    }
  }
  if (!any_integer) lp.integrality_.clear();

  // Column-wise copy of the row-oriented constraint list.
  std::vector<HighsInt> count(n, 0);
  for (const Constraint& c : p.constraints()) {
    for (const Term& t : c.terms) ++count[t.var];
  }
  auto& a = lp.a_matrix_;
  a.format_ = MatrixFormat::kColwise;
  a.num_col_ = n;
  a.num_row_ = m;
  a.start_.assign(n + 1, 0);
  for (HighsInt v = 0; v < n; ++v) a.start_[v + 1] = a.start_[v] + count[v];
  a.index_.resize(a.start_[n]);
  a.value_.resize(a.start_[n]);
  std::vector<HighsInt> fill(a.start_.begin(), a.start_.end() - 1);
  lp.row_lower_.resize(m);
  lp.row_upper_.resize(m);
  for (HighsInt r = 0; r < m; ++r) {
    const Constraint& c = p.constraints()[r];
    for (const Term& t : c.terms) {
      a.index_[fill[t.var]] = r;
      a.value_[fill[t.var]] = t.coef;
      ++fill[t.var];
    }
    switch (c.relation) {
      case Relation::less_equal:
        lp.row_lower_[r] = -kHighsInf;
        lp.row_upper_[r] = c.rhs;
        break;
      case Relation::greater_equal:
        lp.row_lower_[r] = c.rhs;
        lp.row_upper_[r] = kHighsInf;
        break;
      case Relation::equal:
        lp.row_lower_[r] = c.rhs;
        lp.row_upper_[r] = c.rhs;
        break;
    }
  }
  return lp;
}

void configure(Highs& h, const HighsSolver::Options& o) {
  h.setOptionValue("output_flag", false);
  h.setOptionValue("threads", 1);
  h.setOptionValue("random_seed", 0);
  h.setOptionValue("primal_feasibility_tolerance", o.feasibility_tolerance);
  h.setOptionValue("dual_feasibility_tolerance", o.feasibility_tolerance);
  h.setOptionValue("mip_feasibility_tolerance", o.feasibility_tolerance);
  h.setOptionValue("mip_rel_gap", 0.0);
  h.setOptionValue("mip_abs_gap", 1e-9);
  if (std::isfinite(o.time_limit_seconds)) {
    h.setOptionValue("time_limit", o.time_limit_seconds);
  }
}

Solution run_once(const Program& p, const HighsSolver::Options& o, bool presolve,
                  const std::vector<double>* start) {
  Highs h;
  configure(h, o);
  if (!presolve) h.setOptionValue("presolve", "off");
  if (h.passModel(to_highs(p)) == HighsStatus::kError) {
    throw SolverError("HiGHS rejected the model");
  }
  if (start && start->size() == p.variable_count()) {
    HighsSolution hint;
    hint.col_value = *start;
    hint.value_valid = true;
    h.setSolution(hint);
  }
  if (h.run() == HighsStatus::kError) {
    throw SolverError("HiGHS failed: " + h.modelStatusToString(h.getModelStatus()));
  }
  Solution s;
  switch (h.getModelStatus()) {
    case HighsModelStatus::kOptimal:
    case HighsModelStatus::kModelEmpty:
      s.status = Status::optimal;
      s.values = h.getSolution().col_value;
      s.values.resize(p.variable_count(), 0.0);
      s.objective = p.objective_value(s.values);
      return s;
    case HighsModelStatus::kInfeasible:
      s.status = Status::infeasible;
      return s;
    case HighsModelStatus::kUnbounded:
      s.status = Status::unbounded;
      return s;
    case HighsModelStatus::kUnboundedOrInfeasible:
      if (presolve) return run_once(p, o, false, start);
      throw SolverError("HiGHS could not distinguish unbounded from infeasible");
    case HighsModelStatus::kUnknown:
      if (presolve) return run_once(p, o, false, start);
      [[fallthrough]];
    default:
      throw SolverError("HiGHS stopped with status '" +
                        h.modelStatusToString(h.getModelStatus()) + "'");
  }
}

}  // namespace

Solution HighsSolver::solve(const Program& program) {
  return solve(program, std::vector<double>());
}

Solution HighsSolver::solve(const Program& program, const std::vector<double>& start) {
  program.validate();
  Solution s = run_once(program, options_, true, start.empty() ? nullptr : &start);
  if (!s.optimal() || program.binary_count() == 0) return s;

  // Round the binaries and re-solve the continuous part so big-M rows hold
  // exactly rather than up to the integrality tolerance.
  Program fixed = program;
  for (VarId v = 0; v < program.variable_count(); ++v) {
    const Variable& var = program.variable(v);
    if (var.kind != VarKind::binary) continue;
    const double b = std::round(s.values[v]);
    fixed.set_kind(v, VarKind::continuous);
    fixed.set_bounds(v, b, b);
  }
  Solution polished = run_once(fixed, options_, true, nullptr);
  if (polished.optimal()) {
    const bool better_or_equal =
        program.sense() == Sense::maximize
            ? polished.objective >= s.objective - 1e-9 * (1.0 + std::abs(s.objective))
            : polished.objective <= s.objective + 1e-9 * (1.0 + std::abs(s.objective));
    if (better_or_equal) return polished;
  }
  return s;
}

}  // namespace utadis::mp

#include "utadis/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "utadis/errors.hpp"

namespace utadis {

using mp::LinearExpr;
using mp::Relation;
using mp::Term;

std::vector<double> ModelVars::slice(const mp::Solution& s) const {
  return {s.values.begin() + static_cast<long>(first),
          s.values.begin() + static_cast<long>(first + count)};
}

CompatibleSet::CompatibleSet(const PerformanceTable& table, const AssignmentExamples& examples,
                             double epsilon)
    : table_(&table), examples_(&examples), epsilon_(epsilon) {
  if (!(epsilon > 0.0)) throw ConfigurationError("epsilon must be positive");
  const std::size_t m = table.criterion_count();
  std::size_t next = 0;
  for (std::size_t j = 0; j < m; ++j) {
    first_marginal_.push_back(next);
    next += static_cast<std::size_t>(table.criterion(j).char_point_count - 1);
    breakpoints_.push_back(characteristic_points(table.criterion(j)));
  }
  first_threshold_ = next;

  value_terms_.resize(table.alternative_count());
  for (std::size_t i = 0; i < table.alternative_count(); ++i) {
    LinearExpr u;
    const Alternative& a = table.alternative(i);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& b = breakpoints_[j];
      const double x = a.performances[j];
      auto it = std::upper_bound(b.begin(), b.end(), x);
      if (it == b.end()) {
        u.add(max_index(j), 1.0);
        continue;
      }
      const int s = static_cast<int>(it - b.begin());  // b[s-1] <= x < b[s], 1-based segment s
      const double w = (x - b[s - 1]) / (b[s] - b[s - 1]);
      if (s >= 2) u.add(marginal_index(j, s), 1.0 - w);
      u.add(marginal_index(j, s + 1), w);
    }
    value_terms_[i] = u.normalized_terms();
  }

  ModelRow norm{Block::normalization, {}, Relation::equal, 1.0};
  for (std::size_t j = 0; j < m; ++j) norm.terms.push_back({max_index(j), 1.0});
  rows_.push_back(norm);

  for (std::size_t j = 0; j < m; ++j) {
    for (int s = 2; s <= table.criterion(j).char_point_count; ++s) {
      ModelRow r{Block::monotonicity, {{marginal_index(j, s), 1.0}}, Relation::greater_equal, 0.0};
      if (s > 2) r.terms.insert(r.terms.begin(), Term{marginal_index(j, s - 1), -1.0});
      r.rho_coef = -1.0;
      r.criterion = j;
      r.breakpoint = s;
      rows_.push_back(std::move(r));
    }
  }

  const int p = table.class_count();
  for (int l = 1; l <= p - 1; ++l) {
    ModelRow r{Block::thresholds, {{threshold_index(l), 1.0}}, Relation::greater_equal, epsilon};
    if (l > 1) r.terms.insert(r.terms.begin(), Term{threshold_index(l - 1), -1.0});
    rows_.push_back(std::move(r));
  }
  rows_.push_back({Block::thresholds, {{threshold_index(p - 1), -1.0}}, Relation::greater_equal,
                   epsilon - 1.0});

  for (const AssignmentExample& e : examples.items()) {
    const auto& u = value_terms_[e.alternative];
    if (e.class_index <= p - 1) {
      LinearExpr expr = LinearExpr::var(threshold_index(e.class_index));
      for (const Term& t : u) expr.add(t.var, -t.coef);
      ModelRow r{Block::assignment_upper, expr.normalized_terms(), Relation::greater_equal, epsilon};
      r.delta_coef = -1.0;
      r.alternative = e.alternative;
      r.class_index = e.class_index;
      rows_.push_back(std::move(r));
    }
    if (e.class_index >= 2) {
      LinearExpr expr;
      for (const Term& t : u) expr.add(t.var, t.coef);
      expr.add(threshold_index(e.class_index - 1), -1.0);
      ModelRow r{Block::assignment_lower, expr.normalized_terms(), Relation::greater_equal, 0.0};
      r.delta_coef = -1.0;
      r.alternative = e.alternative;
      r.class_index = e.class_index;
      rows_.push_back(std::move(r));
    }
  }
}

std::size_t CompatibleSet::marginal_index(std::size_t criterion, int s) const {
  const int gamma = table_->criterion(criterion).char_point_count;
  if (s < 2 || s > gamma) {
    throw DomainError("breakpoint index " + std::to_string(s) + " outside 2.." +
                      std::to_string(gamma));
  }
  return first_marginal_[criterion] + static_cast<std::size_t>(s - 2);
}

std::size_t CompatibleSet::max_index(std::size_t criterion) const {
  return marginal_index(criterion, table_->criterion(criterion).char_point_count);
}

std::size_t CompatibleSet::threshold_index(int l) const {
  if (l < 1 || l > table_->class_count() - 1) {
    throw DomainError("threshold index " + std::to_string(l) + " outside 1.." +
                      std::to_string(table_->class_count() - 1));
  }
  return first_threshold_ + static_cast<std::size_t>(l - 1);
}

double CompatibleSet::value(std::size_t alternative, std::span<const double> x) const {
  double v = 0.0;
  for (const Term& t : value_terms(alternative)) v += t.coef * x[t.var];
  return v;
}

ModelVars CompatibleSet::add_to(mp::Program& program, AddOptions options) const {
  ModelVars vars;
  vars.count = dimension();
  for (std::size_t j = 0; j < table_->criterion_count(); ++j) {
    for (int s = 2; s <= table_->criterion(j).char_point_count; ++s) {
      const auto id = program.add_variable("u" + std::to_string(j + 1) + "_" + std::to_string(s),
                                           0.0, 1.0);
      if (marginal_index(j, s) == 0) vars.first = id;
    }
  }
  for (int l = 1; l < table_->class_count(); ++l) {
    program.add_variable("t" + std::to_string(l), 0.0, 1.0);
  }
  vars.delta = program.add_variable("delta", 0.0, options.free_delta ? mp::kInf : 0.0);
  vars.rho = program.add_variable("rho", 0.0, options.free_rho ? mp::kInf : 0.0);
  if (!options.include_rows) return vars;

  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const ModelRow& r = rows_[k];
    LinearExpr expr;
    for (const Term& t : r.terms) expr.add(vars[t.var], t.coef);
    expr.add(vars.delta, r.delta_coef);
    expr.add(vars.rho, r.rho_coef);
    std::string name;
    switch (r.block) {
      case Block::normalization: name = "norm"; break;
      case Block::monotonicity:
        name = "mono" + std::to_string(r.criterion + 1) + "_" + std::to_string(r.breakpoint);
        break;
      case Block::thresholds: name = "thr" + std::to_string(k); break;
      case Block::assignment_upper: name = "up" + std::to_string(r.alternative + 1); break;
      case Block::assignment_lower: name = "lo" + std::to_string(r.alternative + 1); break;
    }
    program.add_constraint(std::move(name), expr, r.relation, r.rhs);
  }
  return vars;
}

LinearExpr CompatibleSet::value_expr(const ModelVars& vars, std::size_t alternative) const {
  LinearExpr e;
  for (const Term& t : value_terms(alternative)) e.add(vars[t.var], t.coef);
  return e;
}

SortingModel CompatibleSet::decode(std::span<const double> x) const {
  if (x.size() != dimension()) {
    throw DomainError("model vector has " + std::to_string(x.size()) + " entries, expected " +
                      std::to_string(dimension()));
  }
  SortingModel model;
  for (std::size_t j = 0; j < table_->criterion_count(); ++j) {
    MarginalFunction mf{table_->criterion(j).id, breakpoints_[j], {0.0}};
    for (int s = 2; s <= table_->criterion(j).char_point_count; ++s) {
      mf.values.push_back(x[marginal_index(j, s)]);
    }
    model.marginals.push_back(std::move(mf));
  }
  for (int l = 1; l < table_->class_count(); ++l) model.thresholds.push_back(x[threshold_index(l)]);
  return model;
}

std::vector<double> CompatibleSet::encode(const SortingModel& model) const {
  if (model.marginals.size() != table_->criterion_count() ||
      model.thresholds.size() != threshold_count()) {
    throw DomainError("model shape does not match the compatible set");
  }
  std::vector<double> x(dimension());
  for (std::size_t j = 0; j < table_->criterion_count(); ++j) {
    const auto& mf = model.marginals[j];
    const auto& b = breakpoints_[j];
    if (mf.breakpoints.size() != b.size() || mf.values.size() != b.size()) {
      throw DomainError("marginal of '" + table_->criterion(j).id +
                        "' does not use the characteristic points of the set");
    }
    for (std::size_t s = 0; s < b.size(); ++s) {
      if (std::abs(mf.breakpoints[s] - b[s]) > 1e-9 * (1.0 + std::abs(b[s]))) {
        throw DomainError("marginal of '" + table_->criterion(j).id +
                          "' does not use the characteristic points of the set");
      }
    }
    for (int s = 2; s <= static_cast<int>(b.size()); ++s) x[marginal_index(j, s)] = mf.values[s - 1];
  }
  for (int l = 1; l < table_->class_count(); ++l) x[threshold_index(l)] = model.thresholds[l - 1];
  return x;
}

double CompatibleSet::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (const ModelRow& r : rows_) {
    double a = 0.0;
    for (const Term& t : r.terms) a += t.coef * x[t.var];
    switch (r.relation) {
      case Relation::greater_equal: worst = std::max(worst, r.rhs - a); break;
      case Relation::less_equal: worst = std::max(worst, a - r.rhs); break;
      case Relation::equal: worst = std::max(worst, std::abs(a - r.rhs)); break;
    }
  }
  return worst;
}

std::optional<std::vector<double>> feasible_point(const CompatibleSet& cs, mp::Solver& solver) {
  mp::Program p;
  const ModelVars vars = cs.add_to(p);
  p.set_objective(mp::Sense::minimize, LinearExpr());
  const mp::Solution s = solver.solve(p);
  if (!s.optimal()) return std::nullopt;
  return vars.slice(s);
}

bool check_compatibility(const CompatibleSet& cs, mp::Solver& solver) {
  return feasible_point(cs, solver).has_value();
}

ChebyshevCenter chebyshev_center(const CompatibleSet& cs, mp::Solver& solver) {
  if (!check_compatibility(cs, solver)) {
    throw InconsistencyError("assignment examples admit no compatible sorting model");
  }
  mp::Program p;
  const ModelVars vars = cs.add_to(p, {.include_rows = false});
  const mp::VarId r = p.add_variable("r", 0.0, mp::kInf);
  for (const ModelRow& row : cs.rows()) {
    LinearExpr expr;
    for (const Term& t : row.terms) expr.add(vars[t.var], t.coef);
    double rhs = row.rhs;
    switch (row.block) {
      case Block::normalization:
      case Block::thresholds:
        break;
      case Block::monotonicity:
        expr.add(r, -1.0);
        break;
      case Block::assignment_upper:
      case Block::assignment_lower: {
        double norm = 0.0;
        for (const Term& t : row.terms) norm += t.coef * t.coef;
        expr.add(r, -std::sqrt(norm));
        rhs = 0.0;
        break;
      }
    }
    p.add_constraint("", expr, row.relation, rhs);
  }
  p.set_objective(mp::Sense::maximize, LinearExpr::var(r));
  const mp::Solution s = solver.solve(p);
  if (!s.optimal()) {
    throw SolverError("Chebyshev program ended " + std::string(mp::to_string(s.status)) +
                      " on a compatible set");
  }
  ChebyshevCenter c;
  c.point = vars.slice(s);
  c.radius = s[r];
  c.model = cs.decode(c.point);
  return c;
}

}  // namespace utadis

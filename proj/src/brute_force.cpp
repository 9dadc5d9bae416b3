#include <algorithm>
#include <cmath>
#include <string>

#include "utadis/errors.hpp"
#include "utadis/mathprog.hpp"

namespace utadis::mp {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;
constexpr double kPhaseOneTol = 1e-9;

// Original variable x = offset + y[col] - y[col2] (col2 optional) or
// x = offset - y[col] when flipped.
struct ColumnMap {
  double offset = 0.0;
  double sign = 1.0;
  long col = -1;
  long col2 = -1;
};

// Dense tableau for min c'y, Ay = b, y >= 0, b >= 0.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return a_[r * (n_ + 1) + n_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& cost, double& cost_rhs) {
    const double pv = at(r, c);
    for (std::size_t k = 0; k <= n_; ++k) a_[r * (n_ + 1) + k] /= pv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k <= n_; ++k) a_[i * (n_ + 1) + k] -= f * a_[r * (n_ + 1) + k];
      at(i, c) = 0.0;
    }
    const double f = cost[c];
    if (f != 0.0) {
      for (std::size_t k = 0; k < n_; ++k) cost[k] -= f * at(r, k);
      cost_rhs -= f * rhs(r);
      cost[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Bland's rule on reduced costs `cost` restricted to columns < limit.
  // Returns false when unbounded.
  bool optimize(std::vector<double>& cost, double& cost_rhs, std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t c = 0; c < limit; ++c) {
        if (cost[c] < -kCostTol) {
          enter = c;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        const double v = at(r, enter);
        if (v <= kPivotTol) continue;
        const double ratio = rhs(r) / v;
        if (leave == m_ || ratio < best - 1e-14 ||
            (ratio <= best + 1e-14 && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter, cost, cost_rhs);
    }
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<long>(r * (n_ + 1)),
             a_.begin() + static_cast<long>((r + 1) * (n_ + 1)));
    basis_.erase(basis_.begin() + static_cast<long>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

struct Row {
  std::vector<std::pair<std::size_t, double>> terms;  // over y columns
  Relation relation;
  double rhs;
};

}  // namespace

Solution solve_dense_lp(const Program& program) {
  program.validate();
  const std::size_t nv = program.variable_count();
  std::vector<ColumnMap> map(nv);
  std::vector<Row> rows;
  std::size_t ny = 0;
  for (VarId v = 0; v < nv; ++v) {
    const Variable& var = program.variable(v);
    const double lo = var.lower, up = var.upper;
    ColumnMap& cm = map[v];
    if (lo > up) return {};
    if (lo == up) {
      cm.offset = lo;
    } else if (std::isfinite(lo)) {
      cm.offset = lo;
      cm.col = static_cast<long>(ny++);
      if (std::isfinite(up)) {
        rows.push_back({{{static_cast<std::size_t>(cm.col), 1.0}}, Relation::less_equal, up - lo});
      }
    } else if (std::isfinite(up)) {
      cm.offset = up;
      cm.sign = -1.0;
      cm.col = static_cast<long>(ny++);
    } else {
      cm.col = static_cast<long>(ny++);
      cm.col2 = static_cast<long>(ny++);
    }
  }

  auto expand = [&](const std::vector<Term>& terms, std::vector<double>& dense) {
    double shift = 0.0;
    for (const Term& t : terms) {
      const ColumnMap& cm = map[t.var];
      shift += t.coef * cm.offset;
      if (cm.col >= 0) dense[cm.col] += t.coef * cm.sign;
      if (cm.col2 >= 0) dense[cm.col2] -= t.coef;
    }
    return shift;
  };

  for (const Constraint& c : program.constraints()) {
    std::vector<double> dense(ny, 0.0);
    const double shift = expand(c.terms, dense);
    Row row{{}, c.relation, c.rhs - shift};
    for (std::size_t k = 0; k < ny; ++k) {
      if (dense[k] != 0.0) row.terms.emplace_back(k, dense[k]);
    }
    if (row.terms.empty()) {
      const double tol = kFeasibilityTolerance;
      const bool ok = (c.relation == Relation::less_equal && 0.0 <= row.rhs + tol) ||
                      (c.relation == Relation::greater_equal && 0.0 >= row.rhs - tol) ||
                      (c.relation == Relation::equal && std::abs(row.rhs) <= tol);
      if (!ok) return {};
      continue;
    }
    rows.push_back(std::move(row));
  }

  std::vector<double> cost(ny, 0.0);
  expand(program.objective(), cost);
  const double dir = program.sense() == Sense::maximize ? -1.0 : 1.0;
  for (double& c : cost) c *= dir;

  const std::size_t m = rows.size();
  std::size_t slacks = 0;
  for (const Row& r : rows) slacks += r.relation != Relation::equal;
  const std::size_t real_cols = ny + slacks;
  Tableau tab(m, real_cols + m);
  std::size_t slack = ny;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = rows[i];
    const double s = r.rhs < 0 ? -1.0 : 1.0;
    for (const auto& [k, a] : r.terms) tab.at(i, k) = s * a;
    if (r.relation == Relation::less_equal) tab.at(i, slack++) = s;
    else if (r.relation == Relation::greater_equal) tab.at(i, slack++) = -s;
    tab.rhs(i) = s * r.rhs;
    tab.at(i, real_cols + i) = 1.0;
    tab.basis()[i] = real_cols + i;
  }

  // Phase 1: minimise the sum of artificials.
  std::vector<double> red(real_cols + m, 0.0);
  double red_rhs = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < real_cols; ++k) red[k] -= tab.at(i, k);
    red_rhs -= tab.rhs(i);
  }
  tab.optimize(red, red_rhs, real_cols + m);
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(rows[i].rhs));
  if (-red_rhs > kPhaseOneTol * scale) return {};

  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < real_cols) {
      ++i;
      continue;
    }
    std::size_t c = real_cols;
    for (std::size_t k = 0; k < real_cols; ++k) {
      if (std::abs(tab.at(i, k)) > 1e-9) {
        c = k;
        break;
      }
    }
    if (c == real_cols) {
      tab.drop_row(i);
    } else {
      tab.pivot(i, c, red, red_rhs);
      ++i;
    }
  }

  // Phase 2 on the real columns.
  std::vector<double> z(real_cols + m, 0.0);
  std::copy(cost.begin(), cost.end(), z.begin());
  double z_rhs = 0.0;
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const std::size_t b = tab.basis()[i];
    const double f = z[b];
    if (f == 0.0) continue;
    for (std::size_t k = 0; k < real_cols; ++k) z[k] -= f * tab.at(i, k);
    z_rhs -= f * tab.rhs(i);
    z[b] = 0.0;
  }
  if (!tab.optimize(z, z_rhs, real_cols)) {
    Solution s;
    s.status = Status::unbounded;
    return s;
  }

  std::vector<double> y(real_cols, 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (tab.basis()[i] < real_cols) y[tab.basis()[i]] = std::max(0.0, tab.rhs(i));
  }
  Solution s;
  s.status = Status::optimal;
  s.values.resize(nv);
  for (VarId v = 0; v < nv; ++v) {
    const ColumnMap& cm = map[v];
    double x = cm.offset;
    if (cm.col >= 0) x += cm.sign * y[cm.col];
    if (cm.col2 >= 0) x -= y[cm.col2];
    s.values[v] = x;
  }
  s.objective = program.objective_value(s.values);
  return s;
}

Solution BruteForceSolver::solve(const Program& program) {
  program.validate();
  last_lp_count_ = 0;
  std::vector<VarId> binaries;
  std::size_t open = 0;
  for (VarId v = 0; v < program.variable_count(); ++v) {
    const Variable& var = program.variable(v);
    if (var.kind != VarKind::binary) continue;
    binaries.push_back(v);
    open += var.lower < var.upper;
  }
  if (open > max_binaries_) {
    throw ConfigurationError("brute-force backend limited to " + std::to_string(max_binaries_) +
                             " free binaries, program has " + std::to_string(open));
  }
  if (binaries.empty()) {
    last_lp_count_ = 1;
    return solve_dense_lp(program);
  }

  std::vector<const Constraint*> pure;
  for (const Constraint& c : program.constraints()) {
    const bool all_binary = std::all_of(c.terms.begin(), c.terms.end(), [&](const Term& t) {
      return program.variable(t.var).kind == VarKind::binary;
    });
    if (all_binary) pure.push_back(&c);
  }

  Program fixed = program;
  for (VarId v : binaries) fixed.set_kind(v, VarKind::continuous);
  std::vector<double> lo(program.variable_count()), up(program.variable_count());
  for (VarId v : binaries) {
    lo[v] = std::ceil(program.variable(v).lower - 1e-9);
    up[v] = std::floor(program.variable(v).upper + 1e-9);
  }

  auto row_possible = [&](const Constraint& c) {
    double mn = 0.0, mx = 0.0;
    for (const Term& t : c.terms) {
      const double a = t.coef * lo[t.var], b = t.coef * up[t.var];
      mn += std::min(a, b);
      mx += std::max(a, b);
    }
    const double tol = kFeasibilityTolerance;
    switch (c.relation) {
      case Relation::less_equal: return mn <= c.rhs + tol;
      case Relation::greater_equal: return mx >= c.rhs - tol;
      case Relation::equal: return mn <= c.rhs + tol && mx >= c.rhs - tol;
    }
    return true;
  };

  const bool maximize = program.sense() == Sense::maximize;
  Solution best;
  bool unbounded = false;

  auto search = [&](auto&& self, std::size_t depth) -> void {
    for (const Constraint* c : pure) {
      if (!row_possible(*c)) return;
    }
    if (depth == binaries.size()) {
      for (VarId v : binaries) fixed.set_bounds(v, lo[v], up[v]);
      ++last_lp_count_;
      Solution s = solve_dense_lp(fixed);
      if (s.status == Status::unbounded) unbounded = true;
      if (!s.optimal()) return;
      const double margin = 1e-9 * (1.0 + std::abs(best.objective));
      if (!best.optimal() || (maximize ? s.objective > best.objective + margin
                                       : s.objective < best.objective - margin)) {
        best = std::move(s);
      }
      return;
    }
    const VarId v = binaries[depth];
    const double l0 = lo[v], u0 = up[v];
    for (double value = l0; value <= u0; value += 1.0) {
      lo[v] = up[v] = value;
      self(self, depth + 1);
    }
    lo[v] = l0;
    up[v] = u0;
  };
  search(search, 0);

  if (unbounded) {
    Solution s;
    s.status = Status::unbounded;
    return s;
  }
  return best;
}

}  // namespace utadis::mp

#include "utadis/procedures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "utadis/errors.hpp"

namespace utadis {

using mp::LinearExpr;
using mp::Program;
using mp::Relation;
using mp::Sense;

namespace {

struct Entry {
  ProcedureId id;
  std::string_view name;
};

constexpr Entry kEntries[] = {
    {ProcedureId::UTADISMP1, "UTADISMP1"},   {ProcedureId::UTADISMP2, "UTADISMP2"},
    {ProcedureId::UTADISMP3, "UTADISMP3"},   {ProcedureId::UTADIS_JLS, "UTADIS-JLS"},
    {ProcedureId::CHEBYSHEV, "CHEBYSHEV"},   {ProcedureId::MAX_SVF, "MAX-SVF"},
    {ProcedureId::MIN_SVF, "MIN-SVF"},       {ProcedureId::MSCVF, "MSCVF"},
    {ProcedureId::ACUTADIS, "ACUTADIS"},     {ProcedureId::CENTROID, "CENTROID"},
    {ProcedureId::REPDIS, "REPDIS"},         {ProcedureId::CAI, "CAI"},
    {ProcedureId::APOI, "APOI"},             {ProcedureId::COMB, "COMB"},
    {ProcedureId::ROBUST_ITER, "ROBUST-ITER"}, {ProcedureId::ROBUST_COMP, "ROBUST-COMP"},
};

std::string canonical(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_') c = '-';
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

mp::Solution solve_checked(const Program& p, mp::Solver& solver, const std::string& what,
                           const std::vector<double>& start = {}) {
  mp::Solution s = start.empty() ? solver.solve(p) : solver.solve(p, start);
  if (s.status == mp::Status::infeasible) {
    throw InconsistencyError(what + ": assignment examples admit no compatible sorting model");
  }
  if (s.status == mp::Status::unbounded) throw SolverError(what + ": program is unbounded");
  return s;
}

ProcedureResult finish(ProcedureId id, const CompatibleSet& cs, std::span<const double> x,
                       bool midpoint) {
  ProcedureResult r;
  r.id = id;
  r.model = cs.decode(x);
  if (midpoint) {
    r.model.thresholds = midpoint_thresholds(r.model.marginals, cs.table(), cs.examples());
  } else {
    settle_thresholds(r.model, cs.table(), cs.examples().items());
  }
  return r;
}

// Re-solves with `bound` >= best - tol, first tol = 0 and then tol = tolerance.
mp::Solution solve_staged(Program p, mp::VarId bound, double best, double tolerance,
                          mp::Solver& solver, const std::vector<double>& start,
                          const std::string& what, double* used = nullptr) {
  mp::Solution s;
  for (double tol : {0.0, tolerance}) {
    p.set_bounds(bound, best - tol, p.variable(bound).upper);
    s = solver.solve(p, start);
    if (used) *used = tol;
    if (s.optimal()) return s;
  }
  throw NumericError(what + " second stage is " + std::string(mp::to_string(s.status)) +
                     " even with the first-stage optimum relaxed by " + std::to_string(tolerance));
}

LinearExpr reference_value_sum(const CompatibleSet& cs, const ModelVars& vars) {
  LinearExpr sum;
  for (const auto& e : cs.examples().items()) sum += cs.value_expr(vars, e.alternative);
  return sum;
}

}  // namespace

const std::vector<ProcedureId>& all_procedures() {
  static const std::vector<ProcedureId> ids = [] {
    std::vector<ProcedureId> v;
    for (const Entry& e : kEntries) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string_view procedure_name(ProcedureId id) {
  for (const Entry& e : kEntries) {
    if (e.id == id) return e.name;
  }
  return "?";
}

std::optional<ProcedureId> parse_procedure(std::string_view text) {
  const std::string c = canonical(text);
  for (const Entry& e : kEntries) {
    if (canonical(e.name) == c) return e.id;
  }
  return std::nullopt;
}

std::string valid_procedure_names() {
  std::string out;
  for (const Entry& e : kEntries) {
    if (!out.empty()) out += ", ";
    out += e.name;
  }
  return out;
}

bool needs_sample(ProcedureId id) { return id == ProcedureId::CENTROID; }

bool needs_acceptabilities(ProcedureId id) {
  return id == ProcedureId::REPDIS || id == ProcedureId::CAI || id == ProcedureId::APOI ||
         id == ProcedureId::COMB;
}

bool needs_relations(ProcedureId id) {
  return id == ProcedureId::ROBUST_ITER || id == ProcedureId::ROBUST_COMP;
}

ProcedureResult utadismp(int variant, const CompatibleSet& cs, mp::Solver& solver) {
  if (variant < 1 || variant > 3) {
    throw ConfigurationError("UTADISMP variant must be 1, 2 or 3");
  }
  Program p;
  const ModelVars vars = cs.add_to(p, {.free_delta = variant != 3, .free_rho = variant != 1});
  LinearExpr obj;
  if (variant != 3) obj.add(vars.delta, 1.0);
  if (variant != 1) obj.add(vars.rho, 1.0);
  p.set_objective(Sense::maximize, obj);
  const mp::Solution s = solve_checked(p, solver, "UTADISMP" + std::to_string(variant));
  const ProcedureId ids[] = {ProcedureId::UTADISMP1, ProcedureId::UTADISMP2,
                             ProcedureId::UTADISMP3};
  ProcedureResult r = finish(ids[variant - 1], cs, vars.slice(s), false);
  r.diagnostics["objective"] = s.objective;
  r.diagnostics["delta"] = s[vars.delta];
  r.diagnostics["rho"] = s[vars.rho];
  return r;
}

ProcedureResult mscvf(const CompatibleSet& cs, mp::Solver& solver) {
  const PerformanceTable& table = cs.table();
  for (const Criterion& c : table.criteria()) {
    if (c.char_point_count < 3) {
      throw ConfigurationError("MSCVF needs at least three characteristic points; criterion '" +
                               c.id + "' has " + std::to_string(c.char_point_count));
    }
  }
  Program p;
  const ModelVars vars = cs.add_to(p);
  const mp::VarId phi = p.add_variable("phi", 0.0, mp::kInf);
  for (std::size_t j = 0; j < table.criterion_count(); ++j) {
    const auto beta = characteristic_points(table.criterion(j));
    auto u = [&](int s) {
      return s == 1 ? LinearExpr() : LinearExpr::var(vars[cs.marginal_index(j, s)]);
    };
    auto slope = [&](int s) { return (u(s) - u(s - 1)) * (1.0 / (beta[s - 1] - beta[s - 2])); };
    for (int k = 3; k <= table.criterion(j).char_point_count; ++k) {
      const LinearExpr change = slope(k) - slope(k - 1);
      p.add_constraint("", change - LinearExpr::var(phi), Relation::less_equal, 0.0);
      p.add_constraint("", change * -1.0 - LinearExpr::var(phi), Relation::less_equal, 0.0);
    }
  }
  p.set_objective(Sense::minimize, LinearExpr::var(phi));
  const mp::Solution s = solve_checked(p, solver, "MSCVF");
  ProcedureResult r = finish(ProcedureId::MSCVF, cs, vars.slice(s), true);
  r.diagnostics["phi"] = s[phi];
  return r;
}

ProcedureResult sum_scores(bool maximize, const CompatibleSet& cs, mp::Solver& solver) {
  Program p;
  const ModelVars vars = cs.add_to(p);
  p.set_objective(maximize ? Sense::maximize : Sense::minimize, reference_value_sum(cs, vars));
  const mp::Solution s = solve_checked(p, solver, maximize ? "MAX-SVF" : "MIN-SVF");
  ProcedureResult r =
      finish(maximize ? ProcedureId::MAX_SVF : ProcedureId::MIN_SVF, cs, vars.slice(s), true);
  r.diagnostics["objective"] = s.objective;
  return r;
}

ProcedureResult jls(const CompatibleSet& cs, mp::Solver& solver) {
  std::vector<double> mean(cs.dimension(), 0.0);
  const std::size_t m = cs.table().criterion_count();
  int solved = 0;
  std::map<std::string, double> extremes;
  for (std::size_t j = 0; j < m; ++j) {
    for (Sense sense : {Sense::maximize, Sense::minimize}) {
      Program p;
      const ModelVars vars = cs.add_to(p);
      p.set_objective(sense, LinearExpr::var(vars[cs.max_index(j)]));
      const mp::Solution s = solve_checked(p, solver, "UTADIS-JLS");
      const auto x = vars.slice(s);
      for (std::size_t k = 0; k < x.size(); ++k) mean[k] += x[k];
      extremes["u" + std::to_string(j + 1) + (sense == Sense::maximize ? "_max" : "_min")] =
          s.objective;
      ++solved;
    }
  }
  for (double& v : mean) v /= solved;
  ProcedureResult r = finish(ProcedureId::UTADIS_JLS, cs, mean, false);
  r.diagnostics.merge(extremes);
  r.diagnostics["extreme_solutions"] = solved;
  return r;
}

ProcedureResult chebyshev(const CompatibleSet& cs, mp::Solver& solver) {
  const ChebyshevCenter c = chebyshev_center(cs, solver);
  ProcedureResult r = finish(ProcedureId::CHEBYSHEV, cs, c.point, false);
  r.diagnostics["r"] = c.radius;
  if (!reproduces(r.model, cs.table(), cs.examples())) {
    throw DegenerateInteriorError("Chebyshev radius " + std::to_string(c.radius) +
                                  " is too small for the center to reproduce the examples");
  }
  return r;
}

ProcedureResult acutadis(const CompatibleSet& cs, mp::Solver& solver,
                         const NewtonOptions& options) {
  const ReducedPolytope poly = ReducedPolytope::from(cs);
  const InteriorPoint start = reduced_center(poly, solver);
  if (!(start.radius > 1e-10)) {
    throw DegenerateInteriorError("ACUTADIS needs a compatible set with interior (radius " +
                                  std::to_string(start.radius) + ")");
  }

  std::vector<Eigen::Index> barrier, hard;
  for (std::size_t i = 0; i < poly.sources.size(); ++i) {
    const Block b = poly.sources[i]->block;
    (b == Block::thresholds ? hard : barrier).push_back(static_cast<Eigen::Index>(i));
  }
  const auto k = static_cast<Eigen::Index>(poly.dimension());
  auto build = [&](const std::vector<Eigen::Index>& idx, Eigen::MatrixXd& a, Eigen::VectorXd& c,
                   bool drop_epsilon) {
    a.resize(static_cast<Eigen::Index>(idx.size()), k);
    c.resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      a.row(row) = poly.rows.row(idx[i]);
      c(row) = poly.rhs(idx[i]) - (drop_epsilon ? poly.sources[idx[i]]->rhs : 0.0);
    }
  };
  Eigen::MatrixXd a, h;
  Eigen::VectorXd c, hc;
  // Slacks d = U - t, t - U and u_s - u_{s-1}, without the epsilon margin.
  build(barrier, a, c, true);
  if (Eigen::FullPivLU<Eigen::MatrixXd>(a).rank() < k) {
    // Some threshold is not delimited by any example: let E^T bound it.
    barrier.insert(barrier.end(), hard.begin(), hard.end());
    hard.clear();
    build(barrier, a, c, false);
  }
  build(hard, h, hc, false);

  auto value = [&](const Eigen::VectorXd& z, double& f) {
    const Eigen::VectorXd s = a * z - c;
    if ((s.array() <= 0.0).any()) return false;
    if (h.rows() > 0 && ((h * z - hc).array() <= 0.0).any()) return false;
    f = s.array().log().sum();
    return true;
  };

  Eigen::VectorXd z = start.z;
  double f = 0.0;
  if (!value(z, f)) throw NumericError("ACUTADIS start point is not strictly interior");
  int iter = 0;
  double gnorm = 0.0;
  for (;; ++iter) {
    const Eigen::VectorXd inv = (a * z - c).cwiseInverse();
    const Eigen::VectorXd g = a.transpose() * inv;
    gnorm = g.norm();
    if (gnorm <= options.gradient_tolerance) break;
    if (iter >= options.max_iterations) {
      std::ostringstream os;
      os << "ACUTADIS Newton did not converge in " << options.max_iterations
         << " iterations (gradient norm " << gnorm << ", barrier " << f << ")";
      throw NumericError(os.str());
    }
    const Eigen::MatrixXd hess = a.transpose() * inv.cwiseAbs2().asDiagonal() * a;
    const Eigen::VectorXd step = hess.ldlt().solve(g);
    const double decrement = g.dot(step);
    // Predicted gain below the round-off of the barrier value.
    if (0.5 * decrement <= 1e-14 * std::max(1.0, std::abs(f))) break;
    double alpha = 1.0, fn = 0.0;
    Eigen::VectorXd zn;
    while (true) {
      zn = z + alpha * step;
      if (value(zn, fn) && fn >= f + 0.25 * alpha * decrement) break;
      alpha *= options.backtrack;
      if (alpha < 1e-20) {
        std::ostringstream os;
        os << "ACUTADIS line search stalled at iteration " << iter << " (gradient norm " << gnorm
           << ")";
        throw NumericError(os.str());
      }
    }
    z = zn;
    f = fn;
  }
  const Eigen::VectorXd x = poly.lift(z);
  ProcedureResult r = finish(ProcedureId::ACUTADIS, cs, std::vector<double>(x.data(), x.data() + x.size()), false);
  r.diagnostics["barrier"] = f;
  r.diagnostics["newton_iterations"] = iter;
  r.diagnostics["gradient_norm"] = gnorm;
  return r;
}

ProcedureResult centroid(const ModelSample& sample, const CompatibleSet& cs) {
  if (sample.empty()) throw DomainError("CENTROID needs a nonempty sample");
  std::vector<double> mean(cs.dimension(), 0.0);
  for (const auto& x : sample.points) {
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += x.at(k);
  }
  for (double& v : mean) v /= static_cast<double>(sample.count());
  ProcedureResult r = finish(ProcedureId::CENTROID, cs, mean, false);
  r.diagnostics["samples"] = static_cast<double>(sample.count());
  return r;
}

ProcedureResult repdis(const CompatibleSet& cs, const Acceptabilities& acc, mp::Solver& solver,
                       const ProcedureParams& params) {
  const std::size_t n = cs.table().alternative_count();
  if (acc.alternative_count() != n) {
    throw ConfigurationError("acceptabilities do not cover the table alternatives");
  }
  Program p;
  const ModelVars vars = cs.add_to(p);
  const mp::VarId omega = p.add_variable("omega", -mp::kInf, mp::kInf);
  LinearExpr sum;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !(acc.apwi(a, b) > acc.apwi(b, a))) continue;
      const mp::VarId w = p.add_variable(
          "w" + std::to_string(a + 1) + "_" + std::to_string(b + 1), -mp::kInf, mp::kInf);
      p.add_constraint("", cs.value_expr(vars, a) - cs.value_expr(vars, b) - LinearExpr::var(w),
                       Relation::greater_equal, 0.0);
      p.add_constraint("", LinearExpr::var(w) - LinearExpr::var(omega), Relation::greater_equal,
                       0.0);
      sum.add(w, 1.0);
      ++pairs;
    }
  }
  if (pairs == 0) {
    p.set_objective(Sense::minimize, LinearExpr());
    p.set_bounds(omega, 0.0, 0.0);
    const mp::Solution s = solve_checked(p, solver, "REPDIS");
    ProcedureResult r = finish(ProcedureId::REPDIS, cs, vars.slice(s), true);
    r.fallback = true;
    r.note = "no pair with APWI'(a,b) > APWI'(b,a); returned an arbitrary compatible model";
    return r;
  }
  p.set_objective(Sense::maximize, LinearExpr::var(omega));
  const mp::Solution s1 = solve_checked(p, solver, "REPDIS");
  const double best = s1[omega];
  p.set_objective(Sense::maximize, sum);
  const mp::Solution s2 =
      solve_staged(p, omega, best, params.stage_tolerance, solver, s1.values, "REPDIS");
  ProcedureResult r = finish(ProcedureId::REPDIS, cs, vars.slice(s2), true);
  r.diagnostics["omega"] = best;
  r.diagnostics["omega_sum"] = s2.objective;
  r.diagnostics["pairs"] = static_cast<double>(pairs);
  return r;
}

ProcedureResult stochastic_milp(StochasticVariant variant, const CompatibleSet& cs,
                                const Acceptabilities& acc, mp::Solver& solver,
                                const ProcedureParams& params) {
  const PerformanceTable& table = cs.table();
  const std::size_t n = table.alternative_count();
  const int p = table.class_count();
  if (acc.alternative_count() != n || acc.class_count() != p) {
    throw ConfigurationError("acceptabilities do not cover the table alternatives and classes");
  }
  if (!(params.mu > 0.0)) throw ConfigurationError("mu must be positive");
  if (!(params.big_m > std::max(1.0, static_cast<double>(p)))) {
    throw ConfigurationError("M must exceed both 1 and the class count");
  }
  const double big_m = params.big_m;
  const bool use_cai = variant != StochasticVariant::apoi;
  const bool use_pairs = variant != StochasticVariant::cai;
  const ProcedureId id = variant == StochasticVariant::cai    ? ProcedureId::CAI
                         : variant == StochasticVariant::apoi ? ProcedureId::APOI
                                                              : ProcedureId::COMB;
  const std::string label(procedure_name(id));

  Program prog;
  const ModelVars vars = cs.add_to(prog);
  std::vector<std::vector<mp::VarId>> x(n, std::vector<mp::VarId>(static_cast<std::size_t>(p)));
  LinearExpr kappa;
  std::vector<LinearExpr> level(n);
  for (std::size_t i = 0; i < n; ++i) {
    const LinearExpr u = cs.value_expr(vars, i);
    const auto ref = cs.examples().class_of(i);
    LinearExpr one;
    for (int l = 1; l <= p; ++l) {
      const mp::VarId v = prog.add_binary("x" + std::to_string(i + 1) + "_" + std::to_string(l));
      x[i][l - 1] = v;
      if (ref) prog.set_bounds(v, *ref == l ? 1.0 : 0.0, *ref == l ? 1.0 : 0.0);
      if (l >= 2) {
        prog.add_constraint("", u - LinearExpr::var(vars[cs.threshold_index(l - 1)]) -
                                    LinearExpr::var(vars.delta) - LinearExpr::var(v, big_m),
                            Relation::greater_equal, -big_m);
      }
      if (l <= p - 1) {
        prog.add_constraint("", LinearExpr::var(vars[cs.threshold_index(l)]) - u -
                                    LinearExpr::var(vars.delta) - LinearExpr::var(v, big_m),
                            Relation::greater_equal, cs.epsilon() - big_m);
      }
      one.add(v, 1.0);
      level[i].add(v, static_cast<double>(l));
      if (use_cai) kappa.add(v, std::log(acc.cai(i, l - 1) + params.mu));
    }
    prog.add_constraint("", one, Relation::equal, 1.0);
  }

  struct PairVars {
    std::size_t i, j;
    mp::VarId vij, vji, e;
  };
  std::vector<PairVars> pairs;
  if (use_pairs) {
    // Each unordered pair stands for the ordered pairs (i, j) and (j, i); both
    // carry the same three selectors, so the objective weight doubles.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::string tag = std::to_string(i + 1) + "_" + std::to_string(j + 1);
        PairVars pv{i, j, prog.add_binary("v" + tag), prog.add_binary("vr" + tag),
                    prog.add_variable("e" + tag, 0.0, 1.0)};
        const LinearExpr diff = level[i] - level[j];
        prog.add_constraint("", diff - LinearExpr::var(pv.vij, big_m), Relation::greater_equal,
                            0.5 - big_m);
        prog.add_constraint("", diff - LinearExpr::var(pv.vij, big_m), Relation::less_equal, 0.5);
        prog.add_constraint("", diff * -1.0 - LinearExpr::var(pv.vji, big_m),
                            Relation::greater_equal, 0.5 - big_m);
        prog.add_constraint("", diff * -1.0 - LinearExpr::var(pv.vji, big_m),
                            Relation::less_equal, 0.5);
        prog.add_constraint(
            "", LinearExpr::var(pv.vij) + LinearExpr::var(pv.e) + LinearExpr::var(pv.vji),
            Relation::equal, 1.0);
        kappa.add(pv.vij, 2.0 * std::log(acc.apwi(i, j) + params.mu));
        kappa.add(pv.e, 2.0 * std::log(acc.apei(i, j) + params.mu));
        kappa.add(pv.vji, 2.0 * std::log(acc.apwi(j, i) + params.mu));
        pairs.push_back(pv);
      }
    }
  }

  // Start from the class pattern of the Chebyshev center when it is representable.
  std::vector<double> start;
  {
    const ChebyshevCenter c = chebyshev_center(cs, solver);
    std::vector<double> full(prog.variable_count(), 0.0);
    for (std::size_t k = 0; k < vars.count; ++k) full[vars[k]] = c.point[k];
    std::span<const double> t(c.point.data() + cs.threshold_index(1), cs.threshold_count());
    std::vector<int> cls(n);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = cs.value(i, c.point);
      cls[i] = assign_value(t, u);
      if (cls[i] < p && t[cls[i] - 1] - u < cs.epsilon()) ok = false;
      full[x[i][cls[i] - 1]] = 1.0;
    }
    for (const PairVars& pv : pairs) {
      full[pv.vij] = cls[pv.i] > cls[pv.j];
      full[pv.vji] = cls[pv.j] > cls[pv.i];
      full[pv.e] = cls[pv.i] == cls[pv.j];
    }
    if (ok) start = std::move(full);
  }

  const mp::VarId kvar = prog.add_variable("kappa", -mp::kInf, mp::kInf);
  prog.add_constraint("kappa_def", kappa - LinearExpr::var(kvar), Relation::equal, 0.0);
  if (!start.empty()) {
    start.push_back(0.0);
    start[kvar] = kappa.evaluate(start);
  }
  prog.set_objective(Sense::maximize, LinearExpr::var(kvar));
  const mp::Solution s1 = solve_checked(prog, solver, label, start);
  const double kappa_star = s1[kvar];

  // Second stage: keep the optimal acceptability and balance the criteria maxima.
  const mp::VarId xi = prog.add_variable("xi", 0.0, mp::kInf);
  const std::size_t m = table.criterion_count();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      prog.add_constraint("", LinearExpr::var(vars[cs.max_index(a)]) -
                                  LinearExpr::var(vars[cs.max_index(b)]) - LinearExpr::var(xi),
                          Relation::less_equal, 0.0);
    }
  }
  std::vector<double> start2 = s1.values;
  double spread = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      spread = std::max(spread, s1[vars[cs.max_index(a)]] - s1[vars[cs.max_index(b)]]);
    }
  }
  start2.push_back(spread);
  prog.set_objective(Sense::minimize, LinearExpr::var(xi));
  double used_tolerance = 0.0;
  const mp::Solution s2 = solve_staged(prog, kvar, kappa_star, params.stage_tolerance, solver,
                                       start2, label, &used_tolerance);

  ProcedureResult r;
  r.id = id;
  r.model = cs.decode(vars.slice(s2));
  std::vector<AssignmentExample> wanted;
  for (std::size_t i = 0; i < n; ++i) {
    for (int l = 1; l <= p; ++l) {
      if (s2[x[i][l - 1]] > 0.5) wanted.push_back({i, l});
    }
  }
  settle_thresholds(r.model, table, wanted);
  r.diagnostics["kappa"] = kappa_star;
  r.diagnostics["kappa_stage2"] = s2[kvar];
  r.diagnostics["xi"] = s2[xi];
  r.diagnostics["stage_tolerance"] = used_tolerance;
  return r;
}

ProcedureResult robust_exact(RobustVariant variant, const CompatibleSet& cs,
                             const NecessaryRelations& rel, mp::Solver& solver,
                             const ProcedureParams& params) {
  const ProcedureId id =
      variant == RobustVariant::iter ? ProcedureId::ROBUST_ITER : ProcedureId::ROBUST_COMP;
  const std::string label(procedure_name(id));
  if (rel.size() != cs.table().alternative_count()) {
    throw ConfigurationError("necessary relations do not cover the table alternatives");
  }
  const auto strict = rel.strict_pairs();
  const auto equal = rel.equal_pairs();

  Program p;
  const ModelVars vars = cs.add_to(p);
  if (strict.empty()) {
    p.set_objective(Sense::minimize, LinearExpr());
    const mp::Solution s = solve_checked(p, solver, label);
    ProcedureResult r = finish(id, cs, vars.slice(s), true);
    r.fallback = true;
    r.note = "no strictly necessary pair; returned an arbitrary compatible model";
    return r;
  }
  const mp::VarId omega = p.add_variable("omega", -mp::kInf, mp::kInf);
  const mp::VarId lambda = p.add_variable("lambda", 0.0, mp::kInf);
  for (const auto& [a, b] : strict) {
    p.add_constraint("", cs.value_expr(vars, a) - cs.value_expr(vars, b) - LinearExpr::var(omega),
                     Relation::greater_equal, 0.0);
  }
  for (const auto& [c, d] : equal) {
    const LinearExpr diff = cs.value_expr(vars, c) - cs.value_expr(vars, d);
    p.add_constraint("", diff - LinearExpr::var(lambda), Relation::less_equal, 0.0);
    p.add_constraint("", diff * -1.0 - LinearExpr::var(lambda), Relation::less_equal, 0.0);
  }

  ProcedureResult r;
  if (variant == RobustVariant::iter) {
    p.set_objective(Sense::maximize, LinearExpr::var(omega));
    const mp::Solution s1 = solve_checked(p, solver, label);
    const double best = s1[omega];
    p.set_objective(Sense::minimize, LinearExpr::var(lambda));
    const mp::Solution s2 =
        solve_staged(p, omega, best, params.stage_tolerance, solver, s1.values, label);
    r = finish(id, cs, vars.slice(s2), true);
    r.diagnostics["omega"] = best;
    r.diagnostics["lambda"] = s2[lambda];
  } else {
    // max omega - lambda: the quadruple family U(a)-U(b)-iota >= |U(c)-U(d)|
    // over strict (a,b) and equal (c,d), including c = d, collapses to it.
    const mp::VarId iota = p.add_variable("iota", -mp::kInf, mp::kInf);
    p.add_constraint("iota_def",
                     LinearExpr::var(omega) - LinearExpr::var(lambda) - LinearExpr::var(iota),
                     Relation::greater_equal, 0.0);
    p.set_objective(Sense::maximize, LinearExpr::var(iota));
    const mp::Solution s = solve_checked(p, solver, label);
    r = finish(id, cs, vars.slice(s), true);
    r.diagnostics["iota"] = s[iota];
    r.diagnostics["omega"] = s[omega];
    r.diagnostics["lambda"] = s[lambda];
  }
  r.diagnostics["strict_pairs"] = static_cast<double>(strict.size());
  r.diagnostics["equal_pairs"] = static_cast<double>(equal.size());
  return r;
}

ProcedureResult select_representative(ProcedureId id, const SelectionContext& ctx) {
  if (!ctx.cs) throw ConfigurationError("selection context has no compatible set");
  if (!ctx.solver) throw ConfigurationError("selection context has no solver");
  const std::string name(procedure_name(id));
  if (needs_sample(id) && !ctx.sample) {
    throw ConfigurationError(name + " needs a model sample in the selection context");
  }
  if (needs_acceptabilities(id) && !ctx.acceptabilities) {
    throw ConfigurationError(name + " needs acceptabilities in the selection context");
  }
  if (needs_relations(id) && !ctx.relations) {
    throw ConfigurationError(name + " needs necessary relations in the selection context");
  }
  const CompatibleSet& cs = *ctx.cs;
  mp::Solver& solver = *ctx.solver;
  ProcedureResult r;
  switch (id) {
    case ProcedureId::UTADISMP1: r = utadismp(1, cs, solver); break;
    case ProcedureId::UTADISMP2: r = utadismp(2, cs, solver); break;
    case ProcedureId::UTADISMP3: r = utadismp(3, cs, solver); break;
    case ProcedureId::UTADIS_JLS: r = jls(cs, solver); break;
    case ProcedureId::CHEBYSHEV: r = chebyshev(cs, solver); break;
    case ProcedureId::MAX_SVF: r = sum_scores(true, cs, solver); break;
    case ProcedureId::MIN_SVF: r = sum_scores(false, cs, solver); break;
    case ProcedureId::MSCVF: r = mscvf(cs, solver); break;
    case ProcedureId::ACUTADIS: r = acutadis(cs, solver, ctx.params.newton); break;
    case ProcedureId::CENTROID: r = centroid(*ctx.sample, cs); break;
    case ProcedureId::REPDIS: r = repdis(cs, *ctx.acceptabilities, solver, ctx.params); break;
    case ProcedureId::CAI:
      r = stochastic_milp(StochasticVariant::cai, cs, *ctx.acceptabilities, solver, ctx.params);
      break;
    case ProcedureId::APOI:
      r = stochastic_milp(StochasticVariant::apoi, cs, *ctx.acceptabilities, solver, ctx.params);
      break;
    case ProcedureId::COMB:
      r = stochastic_milp(StochasticVariant::comb, cs, *ctx.acceptabilities, solver, ctx.params);
      break;
    case ProcedureId::ROBUST_ITER:
      r = robust_exact(RobustVariant::iter, cs, *ctx.relations, solver, ctx.params);
      break;
    case ProcedureId::ROBUST_COMP:
      r = robust_exact(RobustVariant::comp, cs, *ctx.relations, solver, ctx.params);
      break;
  }
  if (!reproduces(r.model, cs.table(), cs.examples())) {
    throw NumericError(name + " returned a model that does not reproduce the assignment examples");
  }
  return r;
}

}  // namespace utadis

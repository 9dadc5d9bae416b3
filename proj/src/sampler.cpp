#include "utadis/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "utadis/errors.hpp"
#include "utadis/random.hpp"

namespace utadis {

std::vector<SortingModel> ModelSample::models(const CompatibleSet& cs) const {
  std::vector<SortingModel> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(cs.decode(x));
  return out;
}

ReducedPolytope ReducedPolytope::from(const CompatibleSet& cs) {
  const auto d = static_cast<Eigen::Index>(cs.dimension());
  std::vector<const ModelRow*> eq, ineq;
  for (const ModelRow& r : cs.rows()) {
    (r.relation == mp::Relation::equal ? eq : ineq).push_back(&r);
  }
  auto dense = [&](const ModelRow& r) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(d);
    for (const mp::Term& t : r.terms) row(static_cast<Eigen::Index>(t.var)) += t.coef;
    return row;
  };

  Eigen::MatrixXd e(static_cast<Eigen::Index>(eq.size()), d);
  Eigen::VectorXd f(static_cast<Eigen::Index>(eq.size()));
  for (std::size_t k = 0; k < eq.size(); ++k) {
    e.row(static_cast<Eigen::Index>(k)) = dense(*eq[k]);
    f(static_cast<Eigen::Index>(k)) = eq[k]->rhs;
  }

  ReducedPolytope poly;
  if (eq.empty()) {
    poly.origin = Eigen::VectorXd::Zero(d);
    poly.basis = Eigen::MatrixXd::Identity(d, d);
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(e.transpose());
    const auto rank = qr.rank();
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    poly.basis = q.rightCols(d - rank);
    poly.origin = e.completeOrthogonalDecomposition().solve(f);
  }

  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (const ModelRow* r : ineq) {
    Eigen::RowVectorXd a = dense(*r);
    double b = r->rhs;
    if (r->relation == mp::Relation::less_equal) {
      a = -a;
      b = -b;
    }
    const Eigen::RowVectorXd reduced = a * poly.basis;
    const double shifted = b - a.dot(poly.origin);
    if (reduced.norm() <= 1e-12) {
      if (shifted > 1e-9) {
        throw InconsistencyError("compatible set has a row contradicting its equalities");
      }
      continue;
    }
    rows.push_back(reduced);
    rhs.push_back(shifted);
    poly.sources.push_back(r);
  }
  poly.rows.resize(static_cast<Eigen::Index>(rows.size()), poly.basis.cols());
  poly.rhs.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    poly.rows.row(static_cast<Eigen::Index>(k)) = rows[k];
    poly.rhs(static_cast<Eigen::Index>(k)) = rhs[k];
  }
  return poly;
}

InteriorPoint reduced_center(const ReducedPolytope& poly, mp::Solver& solver) {
  mp::Program p;
  const std::size_t k = poly.dimension();
  std::vector<mp::VarId> z(k);
  for (std::size_t i = 0; i < k; ++i) {
    z[i] = p.add_variable("z" + std::to_string(i + 1), -mp::kInf, mp::kInf);
  }
  const mp::VarId r = p.add_variable("r", 0.0, mp::kInf);
  for (Eigen::Index i = 0; i < poly.rows.rows(); ++i) {
    mp::LinearExpr e;
    for (std::size_t c = 0; c < k; ++c) e.add(z[c], poly.rows(i, static_cast<Eigen::Index>(c)));
    e.add(r, -poly.rows.row(i).norm());
    p.add_constraint("", e, mp::Relation::greater_equal, poly.rhs(i));
  }
  p.set_objective(mp::Sense::maximize, mp::LinearExpr::var(r));
  const mp::Solution s = solver.solve(p);
  if (s.status == mp::Status::infeasible) {
    throw InconsistencyError("assignment examples admit no compatible sorting model");
  }
  if (s.status == mp::Status::unbounded) {
    throw DomainError("compatible set is unbounded");
  }
  InteriorPoint c;
  c.z.resize(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) c.z(static_cast<Eigen::Index>(i)) = s[z[i]];
  c.radius = s[r];
  return c;
}

ModelSample har_sample(const CompatibleSet& cs, std::size_t count, std::uint64_t seed,
                       mp::Solver& solver, const HarOptions& options) {
  ModelSample sample;
  sample.seed = seed;
  if (count == 0) return sample;

  const ReducedPolytope poly = ReducedPolytope::from(cs);
  const std::size_t k = poly.dimension();
  if (k == 0) throw DegenerateInteriorError("compatible set is a single point");
  const InteriorPoint start = reduced_center(poly, solver);
  if (!(start.radius > options.min_radius)) {
    throw DegenerateInteriorError(
        "compatible set has no interior (Chebyshev radius " + std::to_string(start.radius) +
        "); the examples pin some comprehensive value to a threshold, consider a smaller epsilon");
  }

  const std::size_t thinning = options.thinning == 0 ? k : options.thinning;
  const Eigen::Index rows = poly.rows.rows();
  Rng rng(seed);
  Eigen::VectorXd z = start.z;
  Eigen::VectorXd slack = poly.rows * z - poly.rhs;
  Eigen::VectorXd dir(static_cast<Eigen::Index>(k));
  Eigen::VectorXd rate(rows);

  auto step = [&]() {
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) {
        throw NumericError("hit-and-run could not find a non-degenerate chord");
      }
      for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = rng.normal();
      const double n = dir.norm();
      if (n == 0.0) continue;
      dir /= n;
      rate.noalias() = poly.rows * dir;
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows; ++i) {
        const double a = rate(i);
        const double s = std::max(slack(i), 0.0);
        if (a > 0.0) lo = std::max(lo, -s / a);
        else if (a < 0.0) hi = std::min(hi, s / -a);
      }
      if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("compatible set is unbounded along a sampled direction");
      }
      if (hi - lo < options.min_chord) continue;
      const double lambda = lo + rng.uniform() * (hi - lo);
      z.noalias() += lambda * dir;
      slack.noalias() += lambda * rate;
      return;
    }
  };

  std::size_t steps = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      step();
      if (++steps % 1024 == 0) slack = poly.rows * z - poly.rhs;
    }
  };

  advance(options.burn_in);
  sample.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    advance(thinning);
    const Eigen::VectorXd x = poly.lift(z);
    std::vector<double> point(x.data(), x.data() + x.size());
    if (i % 50 == 0 && cs.max_violation(point) > mp::kFeasibilityTolerance) {
      throw NumericError("hit-and-run left the compatible set (violation " +
                         std::to_string(cs.max_violation(point)) + ")");
    }
    sample.points.push_back(std::move(point));
  }
  return sample;
}

int Acceptabilities::argmax_class(std::size_t a) const {
  Eigen::Index best = 0;
  const auto row = static_cast<Eigen::Index>(a);
  for (Eigen::Index l = 1; l < cai.cols(); ++l) {
    if (cai(row, l) > cai(row, best)) best = l;
  }
  return static_cast<int>(best) + 1;
}

Acceptabilities acceptabilities_from_assignments(const std::vector<std::vector<int>>& classes,
                                                 int class_count, std::size_t alternative_count) {
  if (classes.empty()) throw DomainError("acceptabilities need a nonempty sample");
  const auto n = static_cast<Eigen::Index>(alternative_count);
  Eigen::MatrixXd cai = Eigen::MatrixXd::Zero(n, class_count);
  Eigen::MatrixXd win = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd eq = Eigen::MatrixXd::Zero(n, n);
  for (const auto& l : classes) {
    for (Eigen::Index a = 0; a < n; ++a) {
      cai(a, l[a] - 1) += 1.0;
      for (Eigen::Index b = a + 1; b < n; ++b) {
        if (l[a] > l[b]) win(a, b) += 1.0;
        else if (l[a] < l[b]) win(b, a) += 1.0;
        else eq(a, b) += 1.0;
      }
    }
  }
  const double total = static_cast<double>(classes.size());
  Acceptabilities acc;
  acc.sample_count = classes.size();
  acc.cai = cai / total;
  acc.apwi = win / total;
  acc.apei = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      acc.apei(a, b) = acc.apei(b, a) = eq(a, b) / total;
    }
  }
  return acc;
}

Acceptabilities compute_acceptabilities(const ModelSample& sample, const CompatibleSet& cs) {
  const std::size_t n = cs.table().alternative_count();
  std::vector<std::vector<int>> classes;
  classes.reserve(sample.count());
  std::vector<double> t;
  for (const auto& x : sample.points) {
    t.assign(x.begin() + static_cast<long>(cs.threshold_index(1)),
             x.begin() + static_cast<long>(cs.threshold_index(1) + cs.threshold_count()));
    std::vector<int> l(n);
    for (std::size_t a = 0; a < n; ++a) l[a] = assign_value(t, cs.value(a, x));
    classes.push_back(std::move(l));
  }
  return acceptabilities_from_assignments(classes, cs.class_count(), n);
}

Acceptabilities compute_acceptabilities(std::span<const SortingModel> models,
                                        const PerformanceTable& table) {
  std::vector<std::vector<int>> classes;
  classes.reserve(models.size());
  for (const auto& m : models) classes.push_back(assign_all(m, table));
  return acceptabilities_from_assignments(classes, table.class_count(), table.alternative_count());
}

}  // namespace utadis

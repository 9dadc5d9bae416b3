#include "utadis/robust.hpp"

#include "utadis/errors.hpp"

namespace utadis {

namespace {

// Whether some compatible model has U(b) >= t_l and t_l - U(a) >= eps.
bool beats_at(const CompatibleSet& cs, std::size_t a, std::size_t b, int l, mp::Solver& solver) {
  mp::Program p;
  const ModelVars vars = cs.add_to(p);
  const mp::LinearExpr t = mp::LinearExpr::var(vars[cs.threshold_index(l)]);
  p.add_constraint("b_above", cs.value_expr(vars, b) - t, mp::Relation::greater_equal, 0.0);
  p.add_constraint("a_below", t - cs.value_expr(vars, a), mp::Relation::greater_equal,
                   cs.epsilon());
  p.set_objective(mp::Sense::minimize, mp::LinearExpr());
  return solver.solve(p).optimal();
}

bool dominates(const Alternative& a, const Alternative& b) {
  for (std::size_t j = 0; j < a.performances.size(); ++j) {
    if (a.performances[j] < b.performances[j]) return false;
  }
  return true;
}

}  // namespace

bool necessary_weak(const CompatibleSet& cs, std::size_t a, std::size_t b, mp::Solver& solver) {
  if (a == b) return true;
  for (int l = 1; l < cs.class_count(); ++l) {
    if (beats_at(cs, a, b, l, solver)) return false;
  }
  return true;
}

NecessaryRelations::NecessaryRelations(std::vector<std::vector<char>> weak)
    : weak_(std::move(weak)) {
  for (const auto& row : weak_) {
    if (row.size() != weak_.size()) throw DomainError("relation matrix must be square");
  }
}

std::vector<std::pair<std::size_t, std::size_t>> NecessaryRelations::strict_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      if (a != b && strict(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> NecessaryRelations::equal_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t c = 0; c < size(); ++c) {
    for (std::size_t d = c + 1; d < size(); ++d) {
      if (equal(c, d)) out.emplace_back(c, d);
    }
  }
  return out;
}

NecessaryRelations compute_necessary_relations(const CompatibleSet& cs, mp::Solver& solver,
                                               const ModelSample* witnesses,
                                               NecessaryStats* stats) {
  const PerformanceTable& table = cs.table();
  const std::size_t n = table.alternative_count();
  constexpr signed char unknown = -1;
  std::vector<std::vector<signed char>> w(n, std::vector<signed char>(n, unknown));
  NecessaryStats st;
  st.pairs = n * (n - 1);

  if (witnesses) {
    std::vector<int> cls(n);
    std::vector<char> margin(n);
    for (const auto& x : witnesses->points) {
      const std::size_t t0 = cs.threshold_index(1);
      std::span<const double> t(x.data() + t0, cs.threshold_count());
      for (std::size_t a = 0; a < n; ++a) {
        const double u = cs.value(a, x);
        cls[a] = assign_value(t, u);
        margin[a] = cls[a] < cs.class_count() && t[cls[a] - 1] - u >= cs.epsilon();
      }
      for (std::size_t a = 0; a < n; ++a) {
        if (!margin[a]) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (cls[b] > cls[a] && w[a][b] == unknown) {
            w[a][b] = 0;
            ++st.by_witness;
          }
        }
      }
    }
  }

  const AssignmentExamples& ex = cs.examples();
  for (std::size_t a = 0; a < n; ++a) {
    w[a][a] = 1;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || w[a][b] != unknown) continue;
      const auto ka = ex.class_of(a), kb = ex.class_of(b);
      if (ka && kb) {
        w[a][b] = *ka >= *kb;
        ++st.by_shortcut;
      } else if (dominates(table.alternative(a), table.alternative(b))) {
        w[a][b] = 1;
        ++st.by_shortcut;
      }
    }
  }

  auto implied = [&](std::size_t a, std::size_t b) -> signed char {
    for (std::size_t c = 0; c < n; ++c) {
      if (c == a || c == b) continue;
      if (w[a][c] == 1 && w[c][b] == 1) return 1;
      if (w[c][a] == 1 && w[c][b] == 0) return 0;
      if (w[b][c] == 1 && w[a][c] == 0) return 0;
    }
    return unknown;
  };

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (w[a][b] != unknown) continue;
      if (const signed char v = implied(a, b); v != unknown) {
        w[a][b] = v;
        ++st.by_transitivity;
        continue;
      }
      bool weak = true;
      for (int l = 1; l < cs.class_count() && weak; ++l) {
        ++st.lp_solves;
        if (beats_at(cs, a, b, l, solver)) weak = false;
      }
      w[a][b] = weak;
      ++st.by_lp;
    }
  }

  std::vector<std::vector<char>> out(n, std::vector<char>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out[a][b] = w[a][b] == 1;
  }
  if (stats) *stats = st;
  return NecessaryRelations(std::move(out));
}

}  // namespace utadis

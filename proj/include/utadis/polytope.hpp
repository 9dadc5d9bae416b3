#pragma once

// The set of sorting models compatible with a set of assignment examples,
// kept as tagged linear rows over the model variables
//   [u_1(β^2) .. u_1(β^γ1), u_2(β^2) .., ..., t_1 .. t_{p-1}].

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "utadis/core.hpp"
#include "utadis/mathprog.hpp"

namespace utadis {

enum class Block { normalization, monotonicity, thresholds, assignment_upper, assignment_lower };

/// One row `terms relation rhs` over model-variable indices. delta_coef and
/// rho_coef are the coefficients the row gives to the auxiliary δ and ρ
/// variables (zero when absent).
struct ModelRow {
  Block block;
  std::vector<mp::Term> terms;
  mp::Relation relation = mp::Relation::greater_equal;
  double rhs = 0.0;
  double delta_coef = 0.0;
  double rho_coef = 0.0;
  /// For assignment rows: the alternative and its desired class.
  std::size_t alternative = 0;
  int class_index = 0;
  /// For monotonicity rows: criterion and breakpoint index s (1-based, s >= 2).
  std::size_t criterion = 0;
  int breakpoint = 0;
};

/// Program variables created by CompatibleSet::add_to.
struct ModelVars {
  mp::VarId first = 0;  ///< program id of model variable 0
  std::size_t count = 0;
  mp::VarId delta = 0;
  mp::VarId rho = 0;

  mp::VarId operator[](std::size_t k) const { return first + k; }
  std::vector<double> slice(const mp::Solution& s) const;
};

struct AddOptions {
  bool free_delta = false;  ///< δ >= 0 free instead of fixed at 0
  bool free_rho = false;    ///< ρ >= 0 free instead of fixed at 0
  bool include_rows = true;
};

class CompatibleSet {
 public:
  /// `table` and `examples` must outlive the set.
  CompatibleSet(const PerformanceTable& table, const AssignmentExamples& examples,
                double epsilon = kDefaultEpsilon);

  const PerformanceTable& table() const noexcept { return *table_; }
  const AssignmentExamples& examples() const noexcept { return *examples_; }
  double epsilon() const noexcept { return epsilon_; }
  int class_count() const noexcept { return table_->class_count(); }

  std::size_t marginal_variable_count() const noexcept { return first_threshold_; }
  std::size_t threshold_count() const noexcept {
    return static_cast<std::size_t>(table_->class_count() - 1);
  }
  std::size_t dimension() const noexcept { return first_threshold_ + threshold_count(); }

  /// Model variable of u_j(β^s), s in 2..γ_j (1-based as in the model).
  std::size_t marginal_index(std::size_t criterion, int s) const;
  /// Model variable of u_j(β^γ_j).
  std::size_t max_index(std::size_t criterion) const;
  /// Model variable of t_l, l in 1..p-1.
  std::size_t threshold_index(int l) const;

  /// U(a) of any table alternative as a linear combination of model variables.
  const std::vector<mp::Term>& value_terms(std::size_t alternative) const {
    return value_terms_.at(alternative);
  }
  double value(std::size_t alternative, std::span<const double> x) const;

  const std::vector<ModelRow>& rows() const noexcept { return rows_; }

  /// Declares the model variables plus δ and ρ in `program` and, unless
  /// disabled, every row of the set.
  ModelVars add_to(mp::Program& program, AddOptions options = {}) const;

  /// Linear expression of U(a) over program variables.
  mp::LinearExpr value_expr(const ModelVars& vars, std::size_t alternative) const;

  SortingModel decode(std::span<const double> x) const;
  std::vector<double> encode(const SortingModel& model) const;

  /// Largest violation of any row at point x (δ = ρ = 0).
  double max_violation(std::span<const double> x) const;

 private:
  const PerformanceTable* table_;
  const AssignmentExamples* examples_;
  double epsilon_;
  std::vector<std::size_t> first_marginal_;  // per criterion
  std::size_t first_threshold_ = 0;
  std::vector<std::vector<double>> breakpoints_;
  std::vector<std::vector<mp::Term>> value_terms_;
  std::vector<ModelRow> rows_;
};

/// True iff the set admits a model.
bool check_compatibility(const CompatibleSet& cs, mp::Solver& solver);

struct ChebyshevCenter {
  SortingModel model;
  std::vector<double> point;
  double radius = 0.0;
};

/// Center of the largest ball inscribed into the monotonicity and assignment
/// rows (scaled by their coefficient norms), E^N and E^T kept as they are.
/// Throws InconsistencyError when the set is empty.
ChebyshevCenter chebyshev_center(const CompatibleSet& cs, mp::Solver& solver);

/// A model reproducing the examples exactly, or nullopt when incompatible.
std::optional<std::vector<double>> feasible_point(const CompatibleSet& cs, mp::Solver& solver);

}  // namespace utadis

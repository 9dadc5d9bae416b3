#pragma once

// Solver-independent linear and mixed-integer programs. Variables are dense
// indices; every procedure builds a Program and hands it to an injected
// Solver.

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace utadis::mp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kFeasibilityTolerance = 1e-7;

using VarId = std::size_t;

enum class VarKind { continuous, binary };
enum class Relation { less_equal, equal, greater_equal };
enum class Sense { minimize, maximize };

struct Term {
  VarId var;
  double coef;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sum of coefficient * variable plus a constant.
class LinearExpr {
 public:
  LinearExpr() = default;
  explicit LinearExpr(double constant) : constant_(constant) {}

  static LinearExpr var(VarId v, double coef = 1.0) {
    LinearExpr e;
    e.add(v, coef);
    return e;
  }

  LinearExpr& add(VarId v, double coef) {
    if (coef != 0.0) terms_.push_back({v, coef});
    return *this;
  }
  LinearExpr& add(const LinearExpr& other, double scale = 1.0);
  LinearExpr& add_constant(double c) {
    constant_ += c;
    return *this;
  }

  LinearExpr& operator+=(const LinearExpr& o) { return add(o, 1.0); }
  LinearExpr& operator-=(const LinearExpr& o) { return add(o, -1.0); }
  LinearExpr& operator*=(double s);

  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
  friend LinearExpr operator*(LinearExpr a, double s) { return a *= s; }
  friend LinearExpr operator*(double s, LinearExpr a) { return a *= s; }

  /// Merges duplicate variables and drops zero coefficients; terms sorted by id.
  std::vector<Term> normalized_terms() const;
  const std::vector<Term>& raw_terms() const noexcept { return terms_; }
  double constant() const noexcept { return constant_; }

  double evaluate(const std::vector<double>& values) const;

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lower = 0.0;
  double upper = kInf;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  ///< normalized: unique, sorted, non-zero
  Relation relation = Relation::greater_equal;
  double rhs = 0.0;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

class Program {
 public:
  VarId add_variable(std::string name, double lower = 0.0, double upper = kInf,
                     VarKind kind = VarKind::continuous);
  VarId add_binary(std::string name) {
    return add_variable(std::move(name), 0.0, 1.0, VarKind::binary);
  }
  void set_bounds(VarId v, double lower, double upper);
  void set_kind(VarId v, VarKind kind);

  /// Adds `expr relation rhs`; the constant of expr is moved to the rhs.
  std::size_t add_constraint(std::string name, const LinearExpr& expr,
                             Relation relation, double rhs);

  void set_objective(Sense sense, const LinearExpr& objective);

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const Variable& variable(VarId v) const { return variables_.at(v); }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  Sense sense() const noexcept { return sense_; }
  const std::vector<Term>& objective() const noexcept { return objective_; }
  double objective_constant() const noexcept { return objective_constant_; }
  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::size_t constraint_count() const noexcept { return constraints_.size(); }
  std::size_t binary_count() const;

  /// Throws ConfigurationError on undeclared variables or bad binary bounds.
  void validate() const;

  /// Largest violation of any bound, constraint or integrality requirement.
  double max_violation(const std::vector<double>& values) const;
  double objective_value(const std::vector<double>& values) const;

  friend bool operator==(const Program&, const Program&) = default;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Sense sense_ = Sense::minimize;
  std::vector<Term> objective_;
  double objective_constant_ = 0.0;
};

enum class Status { optimal, infeasible, unbounded };

std::string_view to_string(Status status);

struct Solution {
  Status status = Status::infeasible;
  double objective = 0.0;
  std::vector<double> values;

  bool optimal() const noexcept { return status == Status::optimal; }
  double operator[](VarId v) const { return values.at(v); }
};

/// Solver capability. Implementations are reentrant per instance but a
/// single instance must not serve two concurrent solves.
class Solver {
 public:
  virtual ~Solver() = default;
  /// Failures of the backend are raised as SolverError, never reported as
  /// infeasible.
  virtual Solution solve(const Program& program) = 0;
  /// Same, with a feasible assignment offered as a starting point; backends
  /// without MIP starts ignore it.
  virtual Solution solve(const Program& program, const std::vector<double>& start) {
    (void)start;
    return solve(program);
  }
  virtual std::string name() const = 0;
};

/// HiGHS-based default backend (simplex for LP, branch-and-cut for MILP).
class HighsSolver final : public Solver {
 public:
  struct Options {
    double feasibility_tolerance = kFeasibilityTolerance;
    double time_limit_seconds = kInf;
  };
  HighsSolver() = default;
  explicit HighsSolver(Options options) : options_(options) {}
  Solution solve(const Program& program) override;
  Solution solve(const Program& program, const std::vector<double>& start) override;
  std::string name() const override { return "highs"; }

 private:
  Options options_;
};

/// Testing oracle: enumerates binary patterns (pruning rows whose variables
/// are all binary) and solves the remaining LP per pattern with a dense
/// two-phase simplex.
class BruteForceSolver final : public Solver {
 public:
  explicit BruteForceSolver(std::size_t max_binaries = 32)
      : max_binaries_(max_binaries) {}
  Solution solve(const Program& program) override;
  using Solver::solve;
  std::string name() const override { return "bruteforce"; }

  /// Number of LPs solved by the last call.
  std::size_t last_lp_count() const noexcept { return last_lp_count_; }

 private:
  std::size_t max_binaries_;
  std::size_t last_lp_count_ = 0;
};

/// Solves an LP (binary variables relaxed to [0,1]) with the dense simplex.
Solution solve_dense_lp(const Program& program);

/// Backend named by `name` ("highs" or "bruteforce"); empty name reads the
/// UTADIS_SOLVER environment variable and defaults to HiGHS.
std::unique_ptr<Solver> make_solver(std::string_view name = {});

/// LP-style plain-text dump; parse_lp_text(to_lp_text(p)) == p.
std::string to_lp_text(const Program& program);
Program parse_lp_text(std::string_view text);

}  // namespace utadis::mp

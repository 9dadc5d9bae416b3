#pragma once

// Domain types of the threshold-based additive value sorting model and the
// deterministic arithmetic on them. Class indices are 1-based: C_1 is the
// least preferred class and C_p the most preferred one. All criteria are of
// gain type; cost criteria must be negated by the caller.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace utadis {

inline constexpr double kDefaultEpsilon = 1e-6;

struct Criterion {
  std::string id;
  double scale_min = 0.0;
  double scale_max = 1.0;
  int char_point_count = 2;
  std::string name;
};

struct Alternative {
  std::string id;
  /// One performance per criterion, in the table's criterion order.
  std::vector<double> performances;
  std::string name;
};

class PerformanceTable {
 public:
  PerformanceTable() = default;
  /// Validates ids, scales and performances; throws DomainError or
  /// ConfigurationError.
  PerformanceTable(std::vector<Criterion> criteria,
                   std::vector<Alternative> alternatives, int class_count);

  const std::vector<Criterion>& criteria() const noexcept { return criteria_; }
  const std::vector<Alternative>& alternatives() const noexcept {
    return alternatives_;
  }
  const Criterion& criterion(std::size_t j) const { return criteria_.at(j); }
  const Alternative& alternative(std::size_t i) const {
    return alternatives_.at(i);
  }
  std::size_t criterion_count() const noexcept { return criteria_.size(); }
  std::size_t alternative_count() const noexcept {
    return alternatives_.size();
  }
  int class_count() const noexcept { return class_count_; }

  std::optional<std::size_t> find_alternative(const std::string& id) const;
  std::optional<std::size_t> find_criterion(const std::string& id) const;

 private:
  std::vector<Criterion> criteria_;
  std::vector<Alternative> alternatives_;
  int class_count_ = 2;
  std::unordered_map<std::string, std::size_t> alternative_index_;
  std::unordered_map<std::string, std::size_t> criterion_index_;
};

struct AssignmentExample {
  std::size_t alternative = 0;  ///< index into the performance table
  int class_index = 1;          ///< in 1..p
};

/// The assignment examples a* -> C_l, kept sorted by alternative index.
class AssignmentExamples {
 public:
  AssignmentExamples() = default;
  /// Throws DomainError when an alternative is unknown, a class index is out
  /// of range, or an alternative is listed twice.
  AssignmentExamples(const PerformanceTable& table,
                     std::vector<AssignmentExample> examples);
  static AssignmentExamples from_ids(
      const PerformanceTable& table,
      const std::vector<std::pair<std::string, int>>& assignments);

  const std::vector<AssignmentExample>& items() const noexcept {
    return items_;
  }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  /// Class of an alternative if it is a reference alternative.
  std::optional<int> class_of(std::size_t alternative) const;

 private:
  std::vector<AssignmentExample> items_;
};

struct MarginalFunction {
  std::string criterion_id;
  std::vector<double> breakpoints;
  std::vector<double> values;
};

struct SortingModel {
  std::vector<MarginalFunction> marginals;
  std::vector<double> thresholds;

  int class_count() const noexcept {
    return static_cast<int>(thresholds.size()) + 1;
  }
};

/// Equally spaced characteristic points over [scale_min, scale_max].
std::vector<double> characteristic_points(const Criterion& criterion);

/// Piecewise-linear interpolation; throws DomainError outside the grid.
double marginal_value(const MarginalFunction& mf, double x);

double comprehensive_value(const SortingModel& model, const Alternative& a);

/// Class l with t_{l-1} <= U < t_l, t_0 = 0, t_p = +inf.
int assign_value(std::span<const double> thresholds, double value);
int assign(const SortingModel& model, const Alternative& a);

std::vector<double> comprehensive_values(const SortingModel& model,
                                         const PerformanceTable& table);
std::vector<int> assign_all(const SortingModel& model,
                            const PerformanceTable& table);

/// t_l = (max U over examples in C_l + min U over examples in C_{l+1}) / 2.
/// Throws ConfigurationError when a class has no example and
/// InconsistencyError when the value function does not separate the classes.
std::vector<double> midpoint_thresholds(
    std::span<const MarginalFunction> value_function,
    const PerformanceTable& table, const AssignmentExamples& examples);

/// Builds a model with the given value function and its midpoint thresholds.
SortingModel with_midpoint_thresholds(std::vector<MarginalFunction> marginals,
                                      const PerformanceTable& table,
                                      const AssignmentExamples& examples);

/// Lowers t_{l-1} onto U(a*) for examples a* -> C_l that fall below it by at
/// most `tolerance`, so that ties left by LP round-off assign as intended.
void settle_thresholds(SortingModel& model, const PerformanceTable& table,
                       std::span<const AssignmentExample> wanted, double tolerance = 1e-7);

struct ModelCheck {
  bool ok = true;
  std::string message;
};

/// Normalization within 1e-8, monotonicity and threshold separation (gaps
/// >= epsilon) within tolerance.
ModelCheck check_model(const SortingModel& model, double epsilon,
                       double tolerance = 1e-7);

/// True when the model reproduces every example through assign().
bool reproduces(const SortingModel& model, const PerformanceTable& table,
                const AssignmentExamples& examples);

}  // namespace utadis

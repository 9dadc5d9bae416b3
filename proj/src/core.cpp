#include "utadis/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "utadis/errors.hpp"

namespace utadis {

PerformanceTable::PerformanceTable(std::vector<Criterion> criteria,
                                   std::vector<Alternative> alternatives,
                                   int class_count)
    : criteria_(std::move(criteria)),
      alternatives_(std::move(alternatives)),
      class_count_(class_count) {
  if (class_count_ < 2) {
    throw ConfigurationError("class count must be at least 2, got " +
                             std::to_string(class_count_));
  }
  if (criteria_.empty()) throw ConfigurationError("no criteria defined");
  for (std::size_t j = 0; j < criteria_.size(); ++j) {
    const Criterion& c = criteria_[j];
    if (!(c.scale_min < c.scale_max)) {
      throw DomainError("criterion '" + c.id + "': scale_min must be < scale_max");
    }
    if (c.char_point_count < 2) {
      throw DomainError("criterion '" + c.id +
                        "': at least 2 characteristic points required");
    }
    if (!criterion_index_.emplace(c.id, j).second) {
      throw DomainError("duplicate criterion id '" + c.id + "'");
    }
  }
  for (std::size_t i = 0; i < alternatives_.size(); ++i) {
    const Alternative& a = alternatives_[i];
    if (!alternative_index_.emplace(a.id, i).second) {
      throw DomainError("duplicate alternative id '" + a.id + "'");
    }
    if (a.performances.size() != criteria_.size()) {
      throw DomainError("alternative '" + a.id + "' has " +
                        std::to_string(a.performances.size()) +
                        " performances, expected " +
                        std::to_string(criteria_.size()));
    }
    for (std::size_t j = 0; j < criteria_.size(); ++j) {
      const double x = a.performances[j];
      if (!std::isfinite(x) || x < criteria_[j].scale_min ||
          x > criteria_[j].scale_max) {
        std::ostringstream os;
        os << "alternative '" << a.id << "': performance " << x
           << " on criterion '" << criteria_[j].id << "' outside ["
           << criteria_[j].scale_min << ", " << criteria_[j].scale_max << "]";
        throw DomainError(os.str());
      }
    }
  }
}

std::optional<std::size_t> PerformanceTable::find_alternative(
    const std::string& id) const {
  auto it = alternative_index_.find(id);
  if (it == alternative_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PerformanceTable::find_criterion(
    const std::string& id) const {
  auto it = criterion_index_.find(id);
  if (it == criterion_index_.end()) return std::nullopt;
  return it->second;
}

AssignmentExamples::AssignmentExamples(const PerformanceTable& table,
                                       std::vector<AssignmentExample> examples)
    : items_(std::move(examples)) {
  std::sort(items_.begin(), items_.end(),
            [](const auto& a, const auto& b) { return a.alternative < b.alternative; });
  for (std::size_t k = 0; k < items_.size(); ++k) {
    const auto& e = items_[k];
    if (e.alternative >= table.alternative_count()) {
      throw DomainError("assignment example references unknown alternative #" +
                        std::to_string(e.alternative));
    }
    if (e.class_index < 1 || e.class_index > table.class_count()) {
      throw DomainError("alternative '" + table.alternative(e.alternative).id +
                        "' assigned to class " + std::to_string(e.class_index) +
                        " outside 1.." + std::to_string(table.class_count()));
    }
    if (k > 0 && items_[k - 1].alternative == e.alternative) {
      throw DomainError("alternative '" + table.alternative(e.alternative).id +
                        "' has more than one assignment example");
    }
  }
}

AssignmentExamples AssignmentExamples::from_ids(
    const PerformanceTable& table,
    const std::vector<std::pair<std::string, int>>& assignments) {
  std::vector<AssignmentExample> items;
  items.reserve(assignments.size());
  for (const auto& [id, cls] : assignments) {
    auto idx = table.find_alternative(id);
    if (!idx) throw DomainError("assignment example references unknown alternative '" + id + "'");
    items.push_back({*idx, cls});
  }
  return AssignmentExamples(table, std::move(items));
}

std::optional<int> AssignmentExamples::class_of(std::size_t alternative) const {
  auto it = std::lower_bound(
      items_.begin(), items_.end(), alternative,
      [](const AssignmentExample& e, std::size_t a) { return e.alternative < a; });
  if (it == items_.end() || it->alternative != alternative) return std::nullopt;
  return it->class_index;
}

std::vector<double> characteristic_points(const Criterion& criterion) {
  const int gamma = criterion.char_point_count;
  std::vector<double> points(static_cast<std::size_t>(gamma));
  const double width = criterion.scale_max - criterion.scale_min;
  for (int s = 0; s < gamma; ++s) {
    points[s] = criterion.scale_min + width * static_cast<double>(s) / (gamma - 1);
  }
  points.back() = criterion.scale_max;
  return points;
}

double marginal_value(const MarginalFunction& mf, double x) {
  const auto& b = mf.breakpoints;
  const auto& v = mf.values;
  if (b.size() < 2 || b.size() != v.size()) {
    throw DomainError("marginal function of '" + mf.criterion_id + "' is malformed");
  }
  if (!(x >= b.front() && x <= b.back())) {
    std::ostringstream os;
    os << "performance " << x << " outside [" << b.front() << ", " << b.back()
       << "] of criterion '" << mf.criterion_id << "'";
    throw DomainError(os.str());
  }
  auto it = std::upper_bound(b.begin(), b.end(), x);
  if (it == b.end()) return v.back();
  const std::size_t s = static_cast<std::size_t>(it - b.begin());  // b[s-1] <= x < b[s]
  if (x == b[s - 1]) return v[s - 1];
  const double w = (x - b[s - 1]) / (b[s] - b[s - 1]);
  return v[s - 1] + (v[s] - v[s - 1]) * w;
}

double comprehensive_value(const SortingModel& model, const Alternative& a) {
  if (a.performances.size() != model.marginals.size()) {
    throw DomainError("alternative '" + a.id + "' has " +
                      std::to_string(a.performances.size()) +
                      " performances but the model has " +
                      std::to_string(model.marginals.size()) + " criteria");
  }
  double u = 0.0;
  for (std::size_t j = 0; j < model.marginals.size(); ++j) {
    u += marginal_value(model.marginals[j], a.performances[j]);
  }
  return u;
}

int assign_value(std::span<const double> thresholds, double value) {
  int cls = 1;
  for (double t : thresholds) {
    if (value >= t) ++cls;
    else break;
  }
  return cls;
}

int assign(const SortingModel& model, const Alternative& a) {
  return assign_value(model.thresholds, comprehensive_value(model, a));
}

std::vector<double> comprehensive_values(const SortingModel& model,
                                         const PerformanceTable& table) {
  std::vector<double> out;
  out.reserve(table.alternative_count());
  for (const auto& a : table.alternatives()) out.push_back(comprehensive_value(model, a));
  return out;
}

std::vector<int> assign_all(const SortingModel& model, const PerformanceTable& table) {
  std::vector<int> out;
  out.reserve(table.alternative_count());
  for (const auto& a : table.alternatives()) out.push_back(assign(model, a));
  return out;
}

std::vector<double> midpoint_thresholds(std::span<const MarginalFunction> value_function,
                                        const PerformanceTable& table,
                                        const AssignmentExamples& examples) {
  const int p = table.class_count();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> lo(static_cast<std::size_t>(p) + 1, inf);
  std::vector<double> hi(static_cast<std::size_t>(p) + 1, -inf);
  SortingModel probe{{value_function.begin(), value_function.end()}, {}};
  for (const auto& e : examples.items()) {
    const double u = comprehensive_value(probe, table.alternative(e.alternative));
    lo[e.class_index] = std::min(lo[e.class_index], u);
    hi[e.class_index] = std::max(hi[e.class_index], u);
  }
  for (int l = 1; l <= p; ++l) {
    if (hi[l] == -inf) {
      throw ConfigurationError("midpoint thresholds need an example in every class; class " +
                               std::to_string(l) + " has none");
    }
  }
  std::vector<double> t(static_cast<std::size_t>(p) - 1);
  for (int l = 1; l < p; ++l) {
    if (!(hi[l] < lo[l + 1])) {
      std::ostringstream os;
      os << "value function does not separate classes " << l << " and " << l + 1
         << ": max U in C_" << l << " = " << hi[l] << " >= min U in C_" << l + 1
         << " = " << lo[l + 1];
      throw InconsistencyError(os.str());
    }
    t[l - 1] = 0.5 * (hi[l] + lo[l + 1]);
  }
  return t;
}

SortingModel with_midpoint_thresholds(std::vector<MarginalFunction> marginals,
                                      const PerformanceTable& table,
                                      const AssignmentExamples& examples) {
  SortingModel model{std::move(marginals), {}};
  model.thresholds = midpoint_thresholds(model.marginals, table, examples);
  return model;
}

void settle_thresholds(SortingModel& model, const PerformanceTable& table,
                       std::span<const AssignmentExample> wanted, double tolerance) {
  for (const auto& e : wanted) {
    if (e.class_index < 2) continue;
    double& t = model.thresholds.at(static_cast<std::size_t>(e.class_index - 2));
    const double u = comprehensive_value(model, table.alternative(e.alternative));
    if (u < t && t - u <= tolerance) t = u;
  }
}

ModelCheck check_model(const SortingModel& model, double epsilon, double tolerance) {
  auto fail = [](std::string m) { return ModelCheck{false, std::move(m)}; };
  double total = 0.0;
  for (const auto& mf : model.marginals) {
    if (mf.values.empty() || mf.values.size() != mf.breakpoints.size()) {
      return fail("marginal '" + mf.criterion_id + "' is malformed");
    }
    if (std::abs(mf.values.front()) > tolerance) {
      return fail("marginal '" + mf.criterion_id + "' does not start at 0");
    }
    for (std::size_t s = 1; s < mf.values.size(); ++s) {
      if (!(mf.breakpoints[s] > mf.breakpoints[s - 1])) {
        return fail("marginal '" + mf.criterion_id + "' breakpoints not increasing");
      }
      if (mf.values[s] < mf.values[s - 1] - tolerance) {
        return fail("marginal '" + mf.criterion_id + "' is decreasing");
      }
    }
    total += mf.values.back();
  }
  if (std::abs(total - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "marginal maxima sum to " << total << ", not 1";
    return fail(os.str());
  }
  const auto& t = model.thresholds;
  for (std::size_t l = 0; l < t.size(); ++l) {
    const double below = l == 0 ? 0.0 : t[l - 1];
    if (t[l] - below < epsilon - tolerance) {
      return fail("threshold t_" + std::to_string(l + 1) + " is closer than epsilon to its predecessor");
    }
  }
  if (!t.empty() && 1.0 - t.back() < epsilon - tolerance) {
    return fail("last threshold is closer than epsilon to 1");
  }
  return {};
}

bool reproduces(const SortingModel& model, const PerformanceTable& table,
                const AssignmentExamples& examples) {
  for (const auto& e : examples.items()) {
    if (assign(model, table.alternative(e.alternative)) != e.class_index) return false;
  }
  return true;
}

}  // namespace utadis

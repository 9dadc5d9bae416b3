#include "utadis/measures.hpp"

#include <cmath>

#include "utadis/errors.hpp"

namespace utadis {

namespace {

void require_test(std::span<const std::size_t> test, const PerformanceTable& table) {
  if (test.empty()) throw DomainError("the test set is empty");
  for (std::size_t a : test) {
    if (a >= table.alternative_count()) throw DomainError("test alternative out of range");
  }
}

}  // namespace

double accuracy(const SortingModel& model, const PerformanceTable& table,
                std::span<const std::size_t> test, std::span<const int> reference_classes) {
  require_test(test, table);
  if (reference_classes.size() != table.alternative_count()) {
    throw DomainError("reference classes must cover every table alternative");
  }
  std::size_t hits = 0;
  for (std::size_t a : test) hits += assign(model, table.alternative(a)) == reference_classes[a];
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

McaiValues mcai(const SortingModel& model, const PerformanceTable& table, const Acceptabilities& acc,
                std::span<const std::size_t> test) {
  require_test(test, table);
  if (acc.alternative_count() != table.alternative_count() ||
      acc.class_count() != model.class_count()) {
    throw DomainError("acceptabilities do not cover the model's table");
  }
  double sum = 0.0, best = 0.0;
  for (std::size_t a : test) {
    const auto row = static_cast<Eigen::Index>(a);
    sum += acc.cai(row, assign(model, table.alternative(a)) - 1);
    best += acc.cai(row, acc.argmax_class(a) - 1);
  }
  const double n = static_cast<double>(test.size());
  McaiValues v{sum / n, best / n, 0.0};
  v.rel = v.max > 0.0 ? v.abs / v.max - 1.0 : 0.0;
  return v;
}

double delta_marginal(const SortingModel& p, const SortingModel& q) {
  if (p.marginals.size() != q.marginals.size()) {
    throw DomainError("models have different criteria");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < p.marginals.size(); ++j) {
    const MarginalFunction& a = p.marginals[j];
    const MarginalFunction& b = q.marginals[j];
    if (a.breakpoints.size() != b.breakpoints.size()) {
      throw DomainError("models have different breakpoint grids on criterion " +
                        std::to_string(j + 1));
    }
    for (std::size_t s = 0; s < a.breakpoints.size(); ++s) {
      if (std::abs(a.breakpoints[s] - b.breakpoints[s]) > 1e-9) {
        throw DomainError("models have different breakpoint grids on criterion " +
                          std::to_string(j + 1));
      }
    }
    for (std::size_t s = 1; s < a.values.size(); ++s) {
      sum += std::abs(a.values[s] - b.values[s]);
      ++count;
    }
  }
  if (count == 0) throw DomainError("models have no characteristic points beyond the first");
  return sum / static_cast<double>(count);
}

double delta_cv(const SortingModel& p, const SortingModel& q, const PerformanceTable& table,
                std::span<const std::size_t> test) {
  require_test(test, table);
  double sum = 0.0;
  for (std::size_t a : test) {
    sum += std::abs(comprehensive_value(p, table.alternative(a)) -
                    comprehensive_value(q, table.alternative(a)));
  }
  return sum / static_cast<double>(test.size());
}

double delta_th(const SortingModel& p, const SortingModel& q) {
  if (p.thresholds.size() != q.thresholds.size()) {
    throw DomainError("models have different class counts");
  }
  if (p.thresholds.empty()) throw DomainError("threshold distance needs at least two classes");
  double sum = 0.0;
  for (std::size_t l = 0; l < p.thresholds.size(); ++l) {
    sum += std::abs(p.thresholds[l] - q.thresholds[l]);
  }
  return sum / static_cast<double>(p.thresholds.size());
}

MeasureReport measure(const SortingModel& model, const SortingModel& reference,
                      const SortingModel& centroid, const PerformanceTable& table,
                      const Acceptabilities& acc, std::span<const std::size_t> test) {
  MeasureReport r;
  const std::vector<int> truth = assign_all(reference, table);
  r.accuracy = accuracy(model, table, test, truth);
  const McaiValues m = mcai(model, table, acc, test);
  r.mcai_abs = m.abs;
  r.mcai_max = m.max;
  r.mcai_rel = m.rel;
  r.delta_marginal_ref = delta_marginal(model, reference);
  r.delta_marginal_cent = delta_marginal(model, centroid);
  r.delta_cv_ref = delta_cv(model, reference, table, test);
  r.delta_th_ref = delta_th(model, reference);
  return r;
}

}  // namespace utadis

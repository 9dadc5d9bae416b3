#pragma once

// Comparison measures between a representative model, the hidden reference
// model and the sample of compatible models.

#include <cstddef>
#include <span>
#include <vector>

#include "utadis/core.hpp"
#include "utadis/sampler.hpp"

namespace utadis {

struct MeasureReport {
  double accuracy = 0.0;
  double mcai_abs = 0.0;
  double mcai_max = 0.0;
  double mcai_rel = 0.0;
  double delta_marginal_ref = 0.0;
  double delta_marginal_cent = 0.0;
  double delta_cv_ref = 0.0;
  double delta_th_ref = 0.0;
};

struct McaiValues {
  double abs = 0.0;
  double max = 0.0;
  double rel = 0.0;
};

/// Share of `test` alternatives that `model` assigns to `reference_classes[a]`
/// (indexed by table alternative).
double accuracy(const SortingModel& model, const PerformanceTable& table,
                std::span<const std::size_t> test, std::span<const int> reference_classes);

/// Mean CAI' of the model's assignments over `test`, the same for the
/// argmax-CAI' assignment (lowest class on ties), and abs / max - 1.
McaiValues mcai(const SortingModel& model, const PerformanceTable& table, const Acceptabilities& acc,
                std::span<const std::size_t> test);

/// Mean |u_p,j(β^s) - u_q,j(β^s)| over every criterion and s >= 2.
double delta_marginal(const SortingModel& p, const SortingModel& q);

/// Mean |U_p(a) - U_q(a)| over `test`.
double delta_cv(const SortingModel& p, const SortingModel& q, const PerformanceTable& table,
                std::span<const std::size_t> test);

/// Mean |t_p,l - t_q,l|.
double delta_th(const SortingModel& p, const SortingModel& q);

/// All measures of `model`; `centroid` is the CENTROID model of the same sample.
MeasureReport measure(const SortingModel& model, const SortingModel& reference,
                      const SortingModel& centroid, const PerformanceTable& table,
                      const Acceptabilities& acc, std::span<const std::size_t> test);

}  // namespace utadis

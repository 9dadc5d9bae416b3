#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "published_study.hpp"
#include "utadis/core.hpp"
#include "utadis/io.hpp"
#include "utadis/random.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(UTADIS_DATA_DIR) + "/" + name;
}

inline const utadis::io::Dataset& green_cities() {
  static const utadis::io::Dataset data = utadis::io::load_dataset(data_path("green_cities.json"));
  return data;
}

inline const utadis::SortingModel& green_reference() {
  static const utadis::SortingModel model =
      utadis::io::load_model(data_path("green_cities_reference.json"));
  return model;
}

// Classes of the published comprehensive values under t = (0.3977, 0.6543).
inline std::vector<int> published_classes() {
  std::vector<int> out;
  for (const auto& row : published::rows) {
    out.push_back(row.value < 0.3977 ? 1 : row.value < 0.6543 ? 2 : 3);
  }
  return out;
}

inline utadis::PerformanceTable unit_table(std::vector<std::vector<double>> perf, int classes,
                                           int char_points = 2) {
  std::vector<utadis::Criterion> crit;
  for (std::size_t j = 0; j < perf.front().size(); ++j) {
    crit.push_back({"g" + std::to_string(j + 1), 0.0, 1.0, char_points, ""});
  }
  std::vector<utadis::Alternative> alts;
  for (std::size_t i = 0; i < perf.size(); ++i) {
    alts.push_back({"a" + std::to_string(i + 1), perf[i], ""});
  }
  return utadis::PerformanceTable(std::move(crit), std::move(alts), classes);
}

struct Tiny {
  utadis::PerformanceTable table;
  utadis::AssignmentExamples examples;
};

// Two criteria, two points each, two classes: five alternatives, two to four
// of them assigned by a hidden linear model with a visible margin.
inline Tiny tiny_instance(std::uint64_t seed) {
  utadis::Rng rng(seed);
  for (;;) {
    const double w = 0.15 + 0.7 * rng.uniform();
    const double t = 0.3 + 0.4 * rng.uniform();
    std::vector<std::vector<double>> perf;
    std::vector<int> cls;
    bool clear = true;
    for (int i = 0; i < 5; ++i) {
      const double g1 = std::round(rng.uniform() * 100.0) / 100.0;
      const double g2 = std::round(rng.uniform() * 100.0) / 100.0;
      const double u = w * g1 + (1.0 - w) * g2;
      clear = clear && std::abs(u - t) > 0.02;
      perf.push_back({g1, g2});
      cls.push_back(u < t ? 1 : 2);
    }
    if (!clear) continue;
    const auto count = 2 + static_cast<std::size_t>(rng.below(3));
    std::vector<std::size_t> order{0, 1, 2, 3, 4};
    rng.shuffle(std::span<std::size_t>(order));
    std::vector<utadis::AssignmentExample> ex;
    bool low = false, high = false;
    for (std::size_t k = 0; k < count; ++k) {
      ex.push_back({order[k], cls[order[k]]});
      (cls[order[k]] == 1 ? low : high) = true;
    }
    if (!low || !high) continue;
    Tiny out{unit_table(perf, 2), {}};
    out.examples = utadis::AssignmentExamples(out.table, ex);
    return out;
  }
}

}  // namespace fixtures

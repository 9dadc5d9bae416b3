#pragma once

// Synthetic sorting problems with a hidden reference model, and the harness
// comparing every procedure on a grid of them.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "utadis/core.hpp"
#include "utadis/measures.hpp"
#include "utadis/procedures.hpp"

namespace utadis {

struct InstanceSpec {
  int p = 3;      ///< classes
  int m = 3;      ///< criteria
  int gamma = 3;  ///< characteristic points per criterion
  int R = 3;      ///< reference alternatives per class
  std::uint64_t seed = 0;
  std::size_t pool_size = 1000;
  int test_per_class = 10;
};

struct Instance {
  InstanceSpec spec;
  PerformanceTable table;
  AssignmentExamples examples;
  SortingModel reference;
  std::vector<int> reference_classes;  ///< per table alternative
  std::vector<std::size_t> test;       ///< table indices of A^T
  int attempts = 1;
};

/// Class shares of the reference thresholds for p = 2..5.
std::vector<double> class_proportions(int p);

/// Throws ConfigurationError for a non-positive spec and InconsistencyError
/// after ten unsuccessful draws.
Instance generate_instance(const InstanceSpec& spec);

struct SuiteSpec {
  std::vector<int> p{2, 3};
  std::vector<int> m{3, 5};
  std::vector<int> gamma{2, 4};
  std::vector<int> R{3, 5};
  std::size_t instances_per_cell = 10;
  std::size_t samples = 10000;
  std::vector<ProcedureId> procedures = all_procedures();
  std::uint64_t seed = 1;
  double epsilon = kDefaultEpsilon;
  ProcedureParams params;
  std::string solver;  ///< backend name, empty for the default
  unsigned workers = 1;
};

struct ResultRow {
  InstanceSpec spec;
  std::size_t instance = 0;  ///< index within its grid cell
  ProcedureId procedure = ProcedureId::UTADISMP1;
  bool ok = false;
  std::string error;
  bool fallback = false;
  MeasureReport measures;
  double wall_seconds = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

/// Specs of every instance of the suite, grid cells in p, m, gamma, R order.
std::vector<InstanceSpec> suite_instances(const SuiteSpec& suite);

/// Runs one instance; errors are recorded in the rows.
std::vector<ResultRow> run_instance(const InstanceSpec& spec, std::size_t index,
                                    const SuiteSpec& suite, mp::Solver& solver);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;
ResultTable run_suite(const SuiteSpec& suite, const ProgressFn& progress = {});

/// One row per instance and procedure, without timings (reruns are identical).
void write_results_csv(std::ostream& out, const ResultTable& table);
void write_timings_csv(std::ostream& out, const ResultTable& table);
/// Mean and standard deviation per procedure, overall and per dimension value.
void write_summary_csv(std::ostream& out, const ResultTable& table);
/// Procedures by dimension values for one measure, mean (std) per cell.
void write_measure_table_csv(std::ostream& out, const ResultTable& table,
                             const std::string& measure);

const std::vector<std::string>& measure_names();
double measure_value(const MeasureReport& r, const std::string& name);

}  // namespace utadis

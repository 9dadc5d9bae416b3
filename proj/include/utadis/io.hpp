#pragma once

// File formats: dataset JSON and CSV, model JSON, result CSVs and the
// experiment run-spec. Malformed input raises ParseError naming the file.

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "utadis/core.hpp"
#include "utadis/experiment.hpp"
#include "utadis/measures.hpp"
#include "utadis/procedures.hpp"
#include "utadis/robust.hpp"
#include "utadis/sampler.hpp"

namespace utadis::io {

struct Dataset {
  PerformanceTable table;
  AssignmentExamples examples;

  /// Table indices of the alternatives without an assignment example.
  std::vector<std::size_t> non_reference() const;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

Dataset parse_dataset_json(std::string_view text, const std::string& file = "<json>");
/// Performance CSV plus the assignments CSV.
Dataset parse_dataset_csv(std::string_view table_csv, std::string_view assignments_csv,
                          const std::string& table_file = "<table>",
                          const std::string& assignments_file = "<assignments>");
/// A .csv path reads `<stem>.assignments.csv` next to it unless
/// `assignments_path` is given; anything else is read as JSON.
Dataset load_dataset(const std::string& path, const std::string& assignments_path = {});
std::string dataset_to_json(const Dataset& data);

SortingModel parse_model_json(std::string_view text, const std::string& file = "<json>");
SortingModel load_model(const std::string& path);
std::string model_to_json(const SortingModel& model);

std::string procedure_result_to_json(const ProcedureResult& result);

void write_assignments_csv(std::ostream& out, const SortingModel& model, const Dataset& data);
void write_cai_csv(std::ostream& out, const Acceptabilities& acc, const PerformanceTable& table);
/// Square matrix with a header row and the row alternative in the first column.
void write_pairwise_csv(std::ostream& out, const Eigen::MatrixXd& values,
                        const PerformanceTable& table);
/// One row per ordered pair: weak, strict and equal necessary relations.
void write_relations_csv(std::ostream& out, const NecessaryRelations& rel,
                         const PerformanceTable& table);
void write_measures_csv(std::ostream& out,
                        const std::vector<std::pair<std::string, MeasureReport>>& rows);

SuiteSpec parse_run_spec(std::string_view text, const std::string& file = "<json>");
SuiteSpec load_run_spec(const std::string& path);

}  // namespace utadis::io

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "utadis/errors.hpp"
#include "utadis/io.hpp"

using namespace utadis;

namespace {

const char* kTableCsv =
    "id,name,g1,g2\n"
    "@min,,0,0\n"
    "@max,,10,1\n"
    "@char_points,,3,2\n"
    "x,\"Left, town\",2.5,0.25\n"
    "y,Right,7.5,0.75\n"
    "z,Mid,5,0.5\n";

const char* kAssignmentsCsv =
    "alternative,class\n"
    "x,1\n"
    "y,2\n"
    "@classes,3\n";

int parse_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Io, DatasetJsonRoundTrip) {
  const auto& d = fixtures::green_cities();
  const io::Dataset back = io::parse_dataset_json(io::dataset_to_json(d));
  ASSERT_EQ(back.table.alternative_count(), 30u);
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_EQ(back.table.alternative(i).id, d.table.alternative(i).id);
    EXPECT_EQ(back.table.alternative(i).name, d.table.alternative(i).name);
    EXPECT_EQ(back.table.alternative(i).performances, d.table.alternative(i).performances);
  }
  EXPECT_EQ(back.table.criterion(2).char_point_count, 3);
  EXPECT_EQ(back.examples.size(), 9u);
  EXPECT_EQ(back.non_reference().size(), 21u);
  EXPECT_EQ(io::dataset_to_json(back), io::dataset_to_json(d));
}

TEST(Io, JsonSyntaxErrorNamesFileAndLine) {
  const std::string text = "{\n  \"criteria\": [],\n  \"alternatives\": [,]\n}\n";
  try {
    io::parse_dataset_json(text, "broken.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.file(), "broken.json");
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("broken.json:3"), std::string::npos);
  }
}

TEST(Io, JsonSemanticErrorsNameTheField) {
  try {
    io::parse_dataset_json(R"({"criteria": [], "classes": 2})", "d.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("alternatives"), std::string::npos);
  }
  const std::string unknown_alt =
      R"({"criteria": [{"id": "g", "min": 0, "max": 1, "char_points": 2}],
          "alternatives": [{"id": "a", "performances": [0.5]}],
          "classes": 2, "assignments": {"b": 1}})";
  EXPECT_THROW(io::parse_dataset_json(unknown_alt), ParseError);
  const std::string out_of_scale =
      R"({"criteria": [{"id": "g", "min": 0, "max": 1, "char_points": 2}],
          "alternatives": [{"id": "a", "performances": [1.5]}], "classes": 2})";
  EXPECT_THROW(io::parse_dataset_json(out_of_scale), ParseError);
}

TEST(Io, DatasetCsv) {
  const io::Dataset d = io::parse_dataset_csv(kTableCsv, kAssignmentsCsv);
  EXPECT_EQ(d.table.class_count(), 3);
  EXPECT_EQ(d.table.criterion(0).scale_max, 10.0);
  EXPECT_EQ(d.table.criterion(0).char_point_count, 3);
  EXPECT_EQ(d.table.criterion(1).char_point_count, 2);
  EXPECT_EQ(d.table.alternative(0).name, "Left, town");
  EXPECT_EQ(d.table.alternative(2).performances, (std::vector<double>{5.0, 0.5}));
  EXPECT_EQ(d.examples.class_of(1), 2);
  EXPECT_EQ(d.non_reference(), (std::vector<std::size_t>{2}));
}

TEST(Io, CsvErrorsCarryLines) {
  std::string bad = kTableCsv;
  bad += "w,Broken,abc,0.1\n";
  EXPECT_EQ(parse_line([&] { io::parse_dataset_csv(bad, kAssignmentsCsv); }), 8);
  EXPECT_EQ(parse_line([&] { io::parse_dataset_csv("id,g1\nx,0.1,0.2\n", "alternative,class\n"); }), 2);
  EXPECT_EQ(parse_line([&] { io::parse_dataset_csv("id,g1\nx,0.1\n", "alternative,class\nx,one\n"); }),
            2);
  EXPECT_EQ(parse_line([&] { io::parse_dataset_csv("name,g1\n", "alternative,class\n"); }), 1);
}

TEST(Io, CsvSidecarAndFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "utadis_io_test";
  std::filesystem::remove_all(dir);
  io::write_file((dir / "sub" / "t.csv").string(), kTableCsv);
  io::write_file((dir / "sub" / "t.assignments.csv").string(), kAssignmentsCsv);
  const io::Dataset d = io::load_dataset((dir / "sub" / "t.csv").string());
  EXPECT_EQ(d.examples.size(), 2u);
  try {
    io::load_dataset((dir / "missing.json").string());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(e.file().find("missing.json"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST(Io, ModelJsonRoundTrip) {
  const auto& ref = fixtures::green_reference();
  const SortingModel back = io::parse_model_json(io::model_to_json(ref));
  ASSERT_EQ(back.marginals.size(), ref.marginals.size());
  for (std::size_t j = 0; j < ref.marginals.size(); ++j) {
    EXPECT_EQ(back.marginals[j].criterion_id, ref.marginals[j].criterion_id);
    EXPECT_EQ(back.marginals[j].breakpoints, ref.marginals[j].breakpoints);
    EXPECT_EQ(back.marginals[j].values, ref.marginals[j].values);
  }
  EXPECT_EQ(back.thresholds, ref.thresholds);
  EXPECT_THROW(io::parse_model_json(R"({"marginals": [{"criterion": "g", "breakpoints": [0],
                                                       "values": [0]}], "thresholds": []})"),
               ParseError);
}

TEST(Io, ProcedureResultJson) {
  ProcedureResult r;
  r.id = ProcedureId::APOI;
  r.model = fixtures::green_reference();
  r.diagnostics["kappa"] = -1.5;
  r.fallback = true;
  const std::string text = io::procedure_result_to_json(r);
  EXPECT_NE(text.find("\"APOI\""), std::string::npos);
  EXPECT_NE(text.find("\"kappa\""), std::string::npos);
  EXPECT_NE(text.find("\"marginals\""), std::string::npos);
  EXPECT_NE(text.find("\"fallback\": true"), std::string::npos);
}

TEST(Io, CsvWriters) {
  const auto& d = fixtures::green_cities();
  const Acceptabilities acc = acceptabilities_from_assignments(
      {assign_all(fixtures::green_reference(), d.table)}, 3, 30);
  std::ostringstream cai, pw, asg;
  io::write_cai_csv(cai, acc, d.table);
  io::write_pairwise_csv(pw, acc.apwi, d.table);
  io::write_assignments_csv(asg, fixtures::green_reference(), d);
  EXPECT_EQ(cai.str().substr(0, cai.str().find('\n')), "alternative,C1,C2,C3");
  EXPECT_EQ(cai.str().substr(cai.str().find('\n') + 1, 9), "a1,0,0,1\n");
  EXPECT_EQ(pw.str().rfind("alternative,a1,a2,", 0), 0u);
  EXPECT_EQ(asg.str().rfind("alternative,value,class,example\n", 0), 0u);
  const std::string rows = asg.str();
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 31);
}

TEST(Io, RunSpec) {
  const SuiteSpec s = io::parse_run_spec(
      R"({"grid": {"p": [2], "m": [3], "gamma": [2], "R": [3]}, "instances_per_cell": 2,
          "samples": 500, "procedures": ["cai", "ACUTADIS"], "seed": 9, "workers": 2, "M": 50})");
  EXPECT_EQ(s.p, (std::vector<int>{2}));
  EXPECT_EQ(s.instances_per_cell, 2u);
  EXPECT_EQ(s.samples, 500u);
  EXPECT_EQ(s.procedures, (std::vector<ProcedureId>{ProcedureId::CAI, ProcedureId::ACUTADIS}));
  EXPECT_EQ(s.seed, 9u);
  EXPECT_EQ(s.workers, 2u);
  EXPECT_DOUBLE_EQ(s.params.big_m, 50.0);
  EXPECT_EQ(io::parse_run_spec(R"({"procedures": ["all"]})").procedures.size(), 16u);
  EXPECT_THROW(io::parse_run_spec(R"({"procedure": ["cai"]})"), ParseError);
  EXPECT_THROW(io::parse_run_spec(R"({"procedures": ["bogus"]})"), ParseError);
  EXPECT_THROW(io::parse_run_spec(R"({"samples": -3})"), ParseError);
  EXPECT_NO_THROW(io::load_run_spec(fixtures::data_path("desk_suite.json")));
}

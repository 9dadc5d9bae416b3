#include "utadis/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "text.hpp"
#include "utadis/errors.hpp"

namespace utadis::io {

using nlohmann::json;

namespace {

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

json parse_json(std::string_view text, const std::string& file) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const int line = e.byte > 0 ? line_of(text, e.byte - 1) : 0;
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(file, line, what);
  }
}

template <class F>
auto field(const json& obj, const std::string& key, const std::string& file, const std::string& where,
           F convert) -> decltype(convert(obj)) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(file, 0, where + ": missing field '" + key + "'");
  }
  try {
    return convert(obj.at(key));
  } catch (const json::exception&) {
    throw ParseError(file, 0, where + ": field '" + key + "' has the wrong type");
  }
}

double as_double(const json& j) {
  if (!j.is_number()) throw json::type_error::create(302, "number expected", &j);
  return j.get<double>();
}

int as_int(const json& j) {
  if (!j.is_number_integer()) throw json::type_error::create(302, "integer expected", &j);
  return j.get<int>();
}

std::string as_string(const json& j) { return j.get<std::string>(); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }
  return out;
}

struct CsvRow {
  int line;
  std::vector<std::string> cells;
};

std::vector<CsvRow> read_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back({n, split_csv_line(line)});
  }
  return rows;
}

double parse_number(const std::string& s, const std::string& file, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(file, line, "'" + s + "' is not a number");
}

int parse_integer(const std::string& s, const std::string& file, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(file, line, "'" + s + "' is not an integer");
}

json model_json(const SortingModel& model) {
  json marginals = json::array();
  for (const auto& mf : model.marginals) {
    marginals.push_back({{"criterion", mf.criterion_id},
                        {"breakpoints", mf.breakpoints},
                        {"values", mf.values}});
  }
  return {{"marginals", marginals}, {"thresholds", model.thresholds}};
}

}  // namespace

std::vector<std::size_t> Dataset::non_reference() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < table.alternative_count(); ++a) {
    if (!examples.class_of(a)) out.push_back(a);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ConfigurationError("cannot write '" + path + "'");
}

Dataset parse_dataset_json(std::string_view text, const std::string& file) {
  const json root = parse_json(text, file);
  if (!root.is_object()) throw ParseError(file, 1, "dataset must be a JSON object");
  const json& crit = field(root, "criteria", file, "dataset", [](const json& j) { return j; });
  const json& alts = field(root, "alternatives", file, "dataset", [](const json& j) { return j; });
  if (!crit.is_array() || !alts.is_array()) {
    throw ParseError(file, 0, "dataset: 'criteria' and 'alternatives' must be arrays");
  }
  std::vector<Criterion> criteria;
  for (std::size_t j = 0; j < crit.size(); ++j) {
    const std::string where = "criteria[" + std::to_string(j) + "]";
    Criterion c;
    c.id = field(crit[j], "id", file, where, as_string);
    c.scale_min = field(crit[j], "min", file, where, as_double);
    c.scale_max = field(crit[j], "max", file, where, as_double);
    c.char_point_count = field(crit[j], "char_points", file, where, as_int);
    if (crit[j].contains("name")) c.name = field(crit[j], "name", file, where, as_string);
    criteria.push_back(std::move(c));
  }
  std::vector<Alternative> alternatives;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    const std::string where = "alternatives[" + std::to_string(i) + "]";
    Alternative a;
    a.id = field(alts[i], "id", file, where, as_string);
    a.performances = field(alts[i], "performances", file, where, [](const json& j) {
      std::vector<double> v;
      for (const json& x : j.get<std::vector<json>>()) v.push_back(as_double(x));
      return v;
    });
    if (alts[i].contains("name")) a.name = field(alts[i], "name", file, where, as_string);
    alternatives.push_back(std::move(a));
  }
  const int classes = field(root, "classes", file, "dataset", as_int);
  std::vector<std::pair<std::string, int>> assignments;
  const json& asg = field(root, "assignments", file, "dataset", [](const json& j) { return j; });
  if (!asg.is_object()) throw ParseError(file, 0, "dataset: 'assignments' must be an object");
  for (const auto& [id, cls] : asg.items()) {
    if (!cls.is_number_integer()) {
      throw ParseError(file, 0, "assignments: class of '" + id + "' must be an integer");
    }
    assignments.emplace_back(id, cls.get<int>());
  }
  try {
    Dataset d;
    d.table = PerformanceTable(std::move(criteria), std::move(alternatives), classes);
    d.examples = AssignmentExamples::from_ids(d.table, assignments);
    return d;
  } catch (const DomainError& e) {
    throw ParseError(file, 0, e.what());
  } catch (const ConfigurationError& e) {
    throw ParseError(file, 0, e.what());
  }
}

Dataset parse_dataset_csv(std::string_view table_csv, std::string_view assignments_csv,
                          const std::string& table_file, const std::string& assignments_file) {
  const auto rows = read_csv(table_csv);
  if (rows.empty()) throw ParseError(table_file, 1, "empty performance table");
  const auto& header = rows.front().cells;
  if (header.empty() || header[0] != "id") {
    throw ParseError(table_file, rows.front().line, "first header column must be 'id'");
  }
  const bool named = header.size() > 1 && header[1] == "name";
  const std::size_t first = named ? 2 : 1;
  if (header.size() <= first) throw ParseError(table_file, rows.front().line, "no criterion columns");
  std::vector<Criterion> criteria;
  for (std::size_t k = first; k < header.size(); ++k) criteria.push_back({header[k], 0.0, 1.0, 2, ""});

  std::vector<Alternative> alternatives;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != header.size()) {
      throw ParseError(table_file, row.line,
                       "expected " + std::to_string(header.size()) + " columns, found " +
                           std::to_string(row.cells.size()));
    }
    const std::string& key = row.cells[0];
    if (!key.empty() && key[0] == '@') {
      for (std::size_t k = first; k < header.size(); ++k) {
        Criterion& c = criteria[k - first];
        if (key == "@min") c.scale_min = parse_number(row.cells[k], table_file, row.line);
        else if (key == "@max") c.scale_max = parse_number(row.cells[k], table_file, row.line);
        else if (key == "@char_points") c.char_point_count = parse_integer(row.cells[k], table_file, row.line);
        else throw ParseError(table_file, row.line, "unknown meta row '" + key + "'");
      }
      continue;
    }
    Alternative a;
    a.id = key;
    if (named) a.name = row.cells[1];
    for (std::size_t k = first; k < header.size(); ++k) {
      a.performances.push_back(parse_number(row.cells[k], table_file, row.line));
    }
    alternatives.push_back(std::move(a));
  }

  const auto arows = read_csv(assignments_csv);
  if (arows.empty() || arows.front().cells.size() < 2 || arows.front().cells[0] != "alternative" ||
      arows.front().cells[1] != "class") {
    throw ParseError(assignments_file, arows.empty() ? 1 : arows.front().line,
                     "header must be 'alternative,class'");
  }
  int classes = 0;
  int max_class = 0;
  std::vector<std::pair<std::string, int>> assignments;
  for (std::size_t r = 1; r < arows.size(); ++r) {
    const auto& row = arows[r];
    if (row.cells.size() != 2) throw ParseError(assignments_file, row.line, "expected 2 columns");
    const int v = parse_integer(row.cells[1], assignments_file, row.line);
    if (row.cells[0] == "@classes") {
      classes = v;
      continue;
    }
    assignments.emplace_back(row.cells[0], v);
    max_class = std::max(max_class, v);
  }
  if (classes == 0) classes = max_class;
  try {
    Dataset d;
    d.table = PerformanceTable(std::move(criteria), std::move(alternatives), classes);
    d.examples = AssignmentExamples::from_ids(d.table, assignments);
    return d;
  } catch (const Error& e) {
    throw ParseError(table_file, 0, e.what());
  }
}

Dataset load_dataset(const std::string& path, const std::string& assignments_path) {
  const std::filesystem::path p(path);
  if (p.extension() == ".csv") {
    std::string side = assignments_path;
    if (side.empty()) {
      side = (p.parent_path() / (p.stem().string() + ".assignments.csv")).string();
    }
    return parse_dataset_csv(read_file(path), read_file(side), path, side);
  }
  return parse_dataset_json(read_file(path), path);
}

std::string dataset_to_json(const Dataset& data) {
  json crit = json::array(), alts = json::array(), asg = json::object();
  for (const Criterion& c : data.table.criteria()) {
    json o{{"id", c.id}, {"min", c.scale_min}, {"max", c.scale_max}, {"char_points", c.char_point_count}};
    if (!c.name.empty()) o["name"] = c.name;
    crit.push_back(o);
  }
  for (const Alternative& a : data.table.alternatives()) {
    json o{{"id", a.id}, {"performances", a.performances}};
    if (!a.name.empty()) o["name"] = a.name;
    alts.push_back(o);
  }
  for (const auto& e : data.examples.items()) asg[data.table.alternative(e.alternative).id] = e.class_index;
  return json{{"criteria", crit}, {"alternatives", alts}, {"classes", data.table.class_count()},
              {"assignments", asg}}
             .dump(2) +
         "\n";
}

SortingModel parse_model_json(std::string_view text, const std::string& file) {
  const json root = parse_json(text, file);
  SortingModel m;
  const json& marg = field(root, "marginals", file, "model", [](const json& j) { return j; });
  if (!marg.is_array()) throw ParseError(file, 0, "model: 'marginals' must be an array");
  auto numbers = [](const json& j) {
    std::vector<double> v;
    for (const json& x : j.get<std::vector<json>>()) v.push_back(as_double(x));
    return v;
  };
  for (std::size_t j = 0; j < marg.size(); ++j) {
    const std::string where = "marginals[" + std::to_string(j) + "]";
    MarginalFunction mf;
    mf.criterion_id = field(marg[j], "criterion", file, where, as_string);
    mf.breakpoints = field(marg[j], "breakpoints", file, where, numbers);
    mf.values = field(marg[j], "values", file, where, numbers);
    if (mf.breakpoints.size() != mf.values.size() || mf.breakpoints.size() < 2) {
      throw ParseError(file, 0, where + ": breakpoints and values must have equal length >= 2");
    }
    m.marginals.push_back(std::move(mf));
  }
  m.thresholds = field(root, "thresholds", file, "model", numbers);
  return m;
}

SortingModel load_model(const std::string& path) { return parse_model_json(read_file(path), path); }

std::string model_to_json(const SortingModel& model) { return model_json(model).dump(2) + "\n"; }

std::string procedure_result_to_json(const ProcedureResult& result) {
  json diag = json::object();
  for (const auto& [k, v] : result.diagnostics) diag[k] = v;
  json o{{"procedure", std::string(procedure_name(result.id))},
         {"model", model_json(result.model)},
         {"diagnostics", diag},
         {"fallback", result.fallback}};
  if (!result.note.empty()) o["note"] = result.note;
  return o.dump(2) + "\n";
}

void write_assignments_csv(std::ostream& out, const SortingModel& model, const Dataset& data) {
  out << "alternative,value,class,example\n";
  for (std::size_t a = 0; a < data.table.alternative_count(); ++a) {
    const Alternative& alt = data.table.alternative(a);
    const auto ex = data.examples.class_of(a);
    out << text::csv_field(alt.id) << ',' << text::number(comprehensive_value(model, alt)) << ','
        << assign(model, alt) << ',' << (ex ? std::to_string(*ex) : std::string()) << '\n';
  }
}

void write_cai_csv(std::ostream& out, const Acceptabilities& acc, const PerformanceTable& table) {
  out << "alternative";
  for (int l = 1; l <= acc.class_count(); ++l) out << ",C" << l;
  out << '\n';
  for (std::size_t a = 0; a < acc.alternative_count(); ++a) {
    out << text::csv_field(table.alternative(a).id);
    for (int l = 0; l < acc.class_count(); ++l) {
      out << ',' << text::number(acc.cai(static_cast<Eigen::Index>(a), l));
    }
    out << '\n';
  }
}

void write_pairwise_csv(std::ostream& out, const Eigen::MatrixXd& values, const PerformanceTable& table) {
  out << "alternative";
  for (const Alternative& a : table.alternatives()) out << ',' << text::csv_field(a.id);
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out << text::csv_field(table.alternative(static_cast<std::size_t>(i)).id);
    for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << text::number(values(i, j));
    out << '\n';
  }
}

void write_relations_csv(std::ostream& out, const NecessaryRelations& rel, const PerformanceTable& table) {
  out << "a,b,weak,strict,equal\n";
  for (std::size_t a = 0; a < rel.size(); ++a) {
    for (std::size_t b = 0; b < rel.size(); ++b) {
      if (a == b) continue;
      out << text::csv_field(table.alternative(a).id) << ',' << text::csv_field(table.alternative(b).id)
          << ',' << rel.weak(a, b) << ',' << rel.strict(a, b) << ',' << rel.equal(a, b) << '\n';
    }
  }
}

void write_measures_csv(std::ostream& out, const std::vector<std::pair<std::string, MeasureReport>>& rows) {
  out << "model";
  for (const auto& n : measure_names()) out << ',' << n;
  out << '\n';
  for (const auto& [name, r] : rows) {
    out << text::csv_field(name);
    for (const auto& n : measure_names()) out << ',' << text::number(measure_value(r, n));
    out << '\n';
  }
}

SuiteSpec parse_run_spec(std::string_view text, const std::string& file) {
  const json root = parse_json(text, file);
  if (!root.is_object()) throw ParseError(file, 1, "run-spec must be a JSON object");
  static const std::vector<std::string> known{"grid", "instances_per_cell", "samples", "procedures",
                                              "seed", "epsilon", "mu", "M", "solver", "workers"};
  for (const auto& [k, v] : root.items()) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw ParseError(file, 0, "run-spec: unknown field '" + k + "'");
    }
  }
  SuiteSpec s;
  auto ints = [](const json& j) {
    std::vector<int> v;
    for (const json& x : j.get<std::vector<json>>()) v.push_back(as_int(x));
    return v;
  };
  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (g.contains("p")) s.p = field(g, "p", file, "grid", ints);
    if (g.contains("m")) s.m = field(g, "m", file, "grid", ints);
    if (g.contains("gamma")) s.gamma = field(g, "gamma", file, "grid", ints);
    if (g.contains("R")) s.R = field(g, "R", file, "grid", ints);
  }
  auto count = [](const json& j) {
    if (!j.is_number_unsigned()) throw json::type_error::create(302, "count expected", &j);
    return j.get<std::size_t>();
  };
  if (root.contains("instances_per_cell")) {
    s.instances_per_cell = field(root, "instances_per_cell", file, "run-spec", count);
  }
  if (root.contains("samples")) s.samples = field(root, "samples", file, "run-spec", count);
  if (root.contains("seed")) {
    s.seed = field(root, "seed", file, "run-spec", [](const json& j) {
      if (!j.is_number_unsigned()) throw json::type_error::create(302, "seed expected", &j);
      return j.get<std::uint64_t>();
    });
  }
  if (root.contains("epsilon")) s.epsilon = field(root, "epsilon", file, "run-spec", as_double);
  if (root.contains("mu")) s.params.mu = field(root, "mu", file, "run-spec", as_double);
  if (root.contains("M")) s.params.big_m = field(root, "M", file, "run-spec", as_double);
  if (root.contains("solver")) s.solver = field(root, "solver", file, "run-spec", as_string);
  if (root.contains("workers")) {
    s.workers = static_cast<unsigned>(field(root, "workers", file, "run-spec", count));
  }
  if (root.contains("procedures")) {
    const auto names = field(root, "procedures", file, "run-spec",
                             [](const json& j) { return j.get<std::vector<std::string>>(); });
    s.procedures.clear();
    for (const std::string& n : names) {
      if (n == "all") {
        s.procedures = all_procedures();
        break;
      }
      const auto id = parse_procedure(n);
      if (!id) {
        throw ParseError(file, 0, "run-spec: unknown procedure '" + n + "'; valid: " + valid_procedure_names());
      }
      s.procedures.push_back(*id);
    }
  }
  return s;
}

SuiteSpec load_run_spec(const std::string& path) { return parse_run_spec(read_file(path), path); }

}  // namespace utadis::io

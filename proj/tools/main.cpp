#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "utadis/errors.hpp"
#include "utadis/experiment.hpp"
#include "utadis/io.hpp"
#include "utadis/measures.hpp"
#include "utadis/polytope.hpp"
#include "utadis/procedures.hpp"
#include "utadis/robust.hpp"
#include "utadis/sampler.hpp"

using namespace utadis;

namespace {

struct Options {
  std::string data;
  std::string assignments;
  std::string out = "out";
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  double eps = kDefaultEpsilon;
  double mu = 1e-6;
  double big_m = 100.0;
  std::string procedure;
  std::vector<std::string> procedures;
  std::string against;
  std::vector<std::string> models;
  std::string spec;
  unsigned workers = 0;
};

void save(const std::string& dir, const std::string& name, const std::string& content) {
  const std::string path = (std::filesystem::path(dir) / name).string();
  io::write_file(path, content);
  std::cerr << "wrote " << path << '\n';
}

template <class F>
std::string render(F&& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

std::vector<ProcedureId> parse_ids(const std::vector<std::string>& names) {
  std::vector<ProcedureId> ids;
  for (const std::string& n : names) {
    if (n == "all") return all_procedures();
    const auto id = parse_procedure(n);
    if (!id) throw CLI::ValidationError("--procedure", "unknown procedure '" + n + "'; valid ids: " + valid_procedure_names() + ", all");
    ids.push_back(*id);
  }
  return ids;
}

struct Analysis {
  io::Dataset data;
  std::optional<CompatibleSet> cs;
  std::unique_ptr<mp::Solver> solver;
  std::optional<ModelSample> sample;
  std::optional<Acceptabilities> acc;
  std::optional<NecessaryRelations> rel;

  explicit Analysis(const Options& o) : data(io::load_dataset(o.data, o.assignments)), solver(mp::make_solver()) {
    cs.emplace(data.table, data.examples, o.eps);
  }
  const ModelSample& need_sample(const Options& o) {
    if (!sample) sample = har_sample(*cs, o.samples, o.seed, *solver);
    return *sample;
  }
  const Acceptabilities& need_acc(const Options& o) {
    if (!acc) acc = compute_acceptabilities(need_sample(o), *cs);
    return *acc;
  }
  const NecessaryRelations& need_rel(const Options& o) {
    if (!rel) rel = compute_necessary_relations(*cs, *solver, sample ? &*sample : nullptr);
    return *rel;
  }
  void require_compatible() {
    if (!check_compatibility(*cs, *solver)) {
      throw InconsistencyError("assignment examples admit no compatible sorting model");
    }
  }
};

int run_check(const Options& o) {
  Analysis a(o);
  if (check_compatibility(*a.cs, *a.solver)) {
    const ChebyshevCenter c = chebyshev_center(*a.cs, *a.solver);
    std::cout << "compatible\n"
              << "alternatives " << a.data.table.alternative_count() << ", examples "
              << a.data.examples.size() << ", classes " << a.data.table.class_count()
              << ", chebyshev radius " << c.radius << '\n';
    return 0;
  }
  std::cout << "incompatible\n";
  return 2;
}

ProcedureResult solve_one(Analysis& a, ProcedureId id, const Options& o) {
  SelectionContext ctx;
  ctx.cs = &*a.cs;
  ctx.solver = a.solver.get();
  ctx.params.mu = o.mu;
  ctx.params.big_m = o.big_m;
  if (needs_sample(id)) ctx.sample = &a.need_sample(o);
  if (needs_acceptabilities(id)) ctx.acceptabilities = &a.need_acc(o);
  if (needs_relations(id)) {
    a.need_sample(o);
    ctx.relations = &a.need_rel(o);
  }
  return select_representative(id, ctx);
}

int run_solve(const Options& o) {
  const ProcedureId id = parse_ids({o.procedure}).at(0);
  Analysis a(o);
  a.require_compatible();
  const ProcedureResult r = solve_one(a, id, o);
  save(o.out, "model.json", io::procedure_result_to_json(r));
  save(o.out, "assignments.csv", render([&](std::ostream& os) { io::write_assignments_csv(os, r.model, a.data); }));
  std::cout << io::procedure_result_to_json(r);
  return 0;
}

int run_acceptabilities(const Options& o) {
  Analysis a(o);
  a.require_compatible();
  const Acceptabilities& acc = a.need_acc(o);
  const auto& t = a.data.table;
  save(o.out, "cai.csv", render([&](std::ostream& os) { io::write_cai_csv(os, acc, t); }));
  save(o.out, "apwi.csv", render([&](std::ostream& os) { io::write_pairwise_csv(os, acc.apwi, t); }));
  save(o.out, "apei.csv", render([&](std::ostream& os) { io::write_pairwise_csv(os, acc.apei, t); }));
  return 0;
}

int run_robust(const Options& o) {
  Analysis a(o);
  a.require_compatible();
  NecessaryStats st;
  a.rel = compute_necessary_relations(*a.cs, *a.solver, nullptr, &st);
  save(o.out, "relations.csv", render([&](std::ostream& os) { io::write_relations_csv(os, *a.rel, a.data.table); }));
  std::cout << "pairs " << st.pairs << ", decided by shortcut " << st.by_shortcut << ", by transitivity "
            << st.by_transitivity << ", by LP " << st.by_lp << " (" << st.lp_solves << " LPs)\n";
  return 0;
}

int run_measures(const Options& o) {
  Analysis a(o);
  a.require_compatible();
  const SortingModel reference = io::load_model(o.against);
  const auto test = a.data.non_reference();
  const Acceptabilities& acc = a.need_acc(o);
  const SortingModel cent = centroid(*a.sample, *a.cs).model;
  std::vector<std::pair<std::string, MeasureReport>> rows;
  for (const std::string& path : o.models) {
    rows.emplace_back(path, measure(io::load_model(path), reference, cent, a.data.table, acc, test));
  }
  if (o.models.empty() || !o.procedures.empty()) {
    for (ProcedureId id : parse_ids(o.procedures.empty() ? std::vector<std::string>{"all"} : o.procedures)) {
      if (id == ProcedureId::MSCVF) {
        bool ok = true;
        for (const auto& c : a.data.table.criteria()) ok = ok && c.char_point_count >= 3;
        if (!ok) continue;
      }
      const ProcedureResult r = solve_one(a, id, o);
      rows.emplace_back(std::string(procedure_name(id)), measure(r.model, reference, cent, a.data.table, acc, test));
    }
  }
  rows.emplace_back("reference", measure(reference, reference, cent, a.data.table, acc, test));
  const std::string csv = render([&](std::ostream& os) { io::write_measures_csv(os, rows); });
  save(o.out, "measures.csv", csv);
  std::cout << csv;
  return 0;
}

int run_experiment(const Options& o) {
  SuiteSpec suite = io::load_run_spec(o.spec);
  if (o.workers > 0) suite.workers = o.workers;
  const ResultTable table = run_suite(suite, [](std::size_t done, std::size_t total) {
    std::cerr << "\rinstances " << done << "/" << total << std::flush;
    if (done == total) std::cerr << '\n';
  });
  save(o.out, "results.csv", render([&](std::ostream& os) { write_results_csv(os, table); }));
  save(o.out, "timings.csv", render([&](std::ostream& os) { write_timings_csv(os, table); }));
  save(o.out, "summary.csv", render([&](std::ostream& os) { write_summary_csv(os, table); }));
  for (const std::string& m : measure_names()) {
    save(o.out, "table_" + m + ".csv", render([&](std::ostream& os) { write_measure_table_csv(os, table, m); }));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UTADIS sorting models: compatibility, robustness, acceptabilities and representative models"};
  app.require_subcommand(1);
  Options o;

  auto add_data = [&](CLI::App* cmd) {
    cmd->add_option("--data", o.data, "dataset JSON, or performance CSV with a sidecar")->required();
    cmd->add_option("--assignments", o.assignments, "assignments CSV for a CSV dataset");
    cmd->add_option("--eps", o.eps, "strict-inequality margin epsilon")->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", o.out, "output directory"); };
  auto add_sampling = [&](CLI::App* cmd) {
    cmd->add_option("--samples", o.samples, "hit-and-run sample size")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "random seed");
  };
  auto add_milp = [&](CLI::App* cmd) {
    cmd->add_option("--mu", o.mu, "smoothing constant of the acceptability logarithms")->check(CLI::PositiveNumber);
    cmd->add_option("--M", o.big_m, "big-M constant")->check(CLI::PositiveNumber);
  };

  CLI::App* check = app.add_subcommand("check", "report whether the assignment examples are compatible");
  add_data(check);

  CLI::App* solve = app.add_subcommand("solve", "select a representative model");
  add_data(solve);
  add_out(solve);
  add_sampling(solve);
  add_milp(solve);
  solve->add_option("--procedure", o.procedure, "procedure id: " + valid_procedure_names())->required();

  CLI::App* accept = app.add_subcommand("acceptabilities", "estimate CAI, APWI and APEI by sampling");
  add_data(accept);
  add_out(accept);
  add_sampling(accept);

  CLI::App* robust = app.add_subcommand("robust", "compute the necessary relations");
  add_data(robust);
  add_out(robust);

  CLI::App* meas = app.add_subcommand("measures", "compare models with a reference model");
  add_data(meas);
  add_out(meas);
  add_sampling(meas);
  add_milp(meas);
  meas->add_option("--against", o.against, "reference model JSON")->required();
  meas->add_option("--model", o.models, "model JSON to evaluate (repeatable)");
  meas->add_option("--procedure", o.procedures, "procedures to run and evaluate (default: all)");

  CLI::App* exp = app.add_subcommand("experiment", "run a synthetic comparison suite");
  exp->add_option("--spec", o.spec, "run-spec JSON")->required();
  add_out(exp);
  exp->add_option("--workers", o.workers, "parallel workers (overrides the run-spec)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*check) return run_check(o);
    if (*solve) return run_solve(o);
    if (*accept) return run_acceptabilities(o);
    if (*robust) return run_robust(o);
    if (*meas) return run_measures(o);
    if (*exp) return run_experiment(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InconsistencyError& e) {
    std::cerr << "incompatible: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

#include "utadis/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "text.hpp"
#include "utadis/errors.hpp"
#include "utadis/polytope.hpp"
#include "utadis/random.hpp"
#include "utadis/robust.hpp"
#include "utadis/sampler.hpp"

namespace utadis {

namespace {

constexpr int kMaxAttempts = 10;

struct Draw {
  std::vector<std::vector<double>> pool1, pool2;
  SortingModel model;
};

std::vector<std::vector<double>> draw_pool(Rng& rng, std::size_t size, int m) {
  std::vector<std::vector<double>> pool(size, std::vector<double>(static_cast<std::size_t>(m)));
  for (auto& a : pool) {
    for (double& v : a) v = rng.uniform();
  }
  return pool;
}

SortingModel draw_value_function(Rng& rng, int m, int gamma) {
  std::vector<double> cuts(static_cast<std::size_t>(m - 1));
  for (double& c : cuts) c = rng.uniform();
  std::sort(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), 0.0);
  cuts.push_back(1.0);
  SortingModel model;
  Criterion c;
  c.char_point_count = gamma;
  const std::vector<double> beta = characteristic_points(c);
  for (int j = 0; j < m; ++j) {
    const double w = cuts[j + 1] - cuts[j];
    std::vector<double> shape(static_cast<std::size_t>(gamma - 2));
    for (double& s : shape) s = rng.uniform();
    std::sort(shape.begin(), shape.end());
    MarginalFunction mf;
    mf.criterion_id = "g" + std::to_string(j + 1);
    mf.breakpoints = beta;
    mf.values.push_back(0.0);
    for (double s : shape) mf.values.push_back(s * w);
    mf.values.push_back(w);
    model.marginals.push_back(std::move(mf));
  }
  // Absorb round-off so that the maxima sum to exactly one.
  double total = 0.0;
  for (const auto& mf : model.marginals) total += mf.values.back();
  model.marginals.back().values.back() += 1.0 - total;
  return model;
}

std::vector<std::size_t> cumulative_counts(int p, std::size_t pool) {
  const std::vector<double> share = class_proportions(p);
  std::vector<std::size_t> out;
  double acc = 0.0;
  for (int l = 0; l + 1 < p; ++l) {
    acc += share[l];
    out.push_back(static_cast<std::size_t>(std::llround(acc * static_cast<double>(pool))));
  }
  return out;
}

std::string dimension_value(const InstanceSpec& s, const std::string& dim) {
  if (dim == "p") return std::to_string(s.p);
  if (dim == "m") return std::to_string(s.m);
  if (dim == "gamma") return std::to_string(s.gamma);
  if (dim == "R") return std::to_string(s.R);
  return "all";
}

const std::vector<std::string> kDimensions{"all", "p", "m", "gamma", "R"};

struct Stat {
  std::size_t n = 0;
  double sum = 0.0, sq = 0.0;
  void add(double v) {
    ++n;
    sum += v;
    sq += v * v;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : std::nan(""); }
  double std() const {
    if (n < 2) return n ? 0.0 : std::nan("");
    const double mu = mean();
    return std::sqrt(std::max(0.0, (sq - static_cast<double>(n) * mu * mu) / static_cast<double>(n - 1)));
  }
};

struct Group {
  std::size_t rows = 0, errors = 0;
  std::map<std::string, Stat> stats;
};

// (procedure, dimension, value) -> group, procedures in canonical order.
using Groups = std::map<std::tuple<int, std::string, std::string>, Group>;

int dim_order(const std::string& d) {
  return static_cast<int>(std::find(kDimensions.begin(), kDimensions.end(), d) - kDimensions.begin());
}

Groups aggregate(const ResultTable& table) {
  Groups g;
  for (const ResultRow& r : table.rows) {
    for (const std::string& dim : kDimensions) {
      Group& grp = g[{static_cast<int>(r.procedure), dim, dimension_value(r.spec, dim)}];
      ++grp.rows;
      if (!r.ok) {
        ++grp.errors;
        continue;
      }
      for (const std::string& name : measure_names()) grp.stats[name].add(measure_value(r.measures, name));
    }
  }
  return g;
}

std::vector<std::pair<std::string, std::string>> columns_of(const Groups& g) {
  std::vector<std::pair<std::string, std::string>> cols;
  for (const auto& [key, grp] : g) {
    std::pair<std::string, std::string> c{std::get<1>(key), std::get<2>(key)};
    if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
  }
  std::stable_sort(cols.begin(), cols.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return dim_order(a.first) < dim_order(b.first);
    return std::stoi(a.second == "all" ? "0" : a.second) < std::stoi(b.second == "all" ? "0" : b.second);
  });
  return cols;
}

}  // namespace

std::vector<double> class_proportions(int p) {
  switch (p) {
    case 2: return {0.5, 0.5};
    case 3: return {0.3, 0.4, 0.3};
    case 4: return {0.2, 0.3, 0.3, 0.2};
    case 5: return {0.15, 0.2, 0.3, 0.2, 0.15};
    default: break;
  }
  if (p < 2) throw ConfigurationError("an instance needs at least two classes");
  return std::vector<double>(static_cast<std::size_t>(p), 1.0 / p);
}

Instance generate_instance(const InstanceSpec& spec) {
  if (spec.p < 2 || spec.m < 1 || spec.gamma < 2 || spec.R < 1 || spec.test_per_class < 1 ||
      spec.pool_size < 2) {
    throw ConfigurationError("instance spec needs p >= 2, m >= 1, gamma >= 2, R >= 1");
  }
  const auto p = static_cast<std::size_t>(spec.p);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(attempt == 0 ? spec.seed : derive_seed(spec.seed, static_cast<std::uint64_t>(attempt)));
    const auto pool1 = draw_pool(rng, spec.pool_size, spec.m);
    const auto pool2 = draw_pool(rng, spec.pool_size, spec.m);
    SortingModel model = draw_value_function(rng, spec.m, spec.gamma);

    std::vector<Criterion> criteria;
    for (int j = 0; j < spec.m; ++j) {
      criteria.push_back({"g" + std::to_string(j + 1), 0.0, 1.0, spec.gamma, ""});
    }
    auto value = [&](const std::vector<double>& g) {
      return comprehensive_value(model, Alternative{"", g, ""});
    };
    std::vector<double> u1(pool1.size());
    for (std::size_t i = 0; i < pool1.size(); ++i) u1[i] = value(pool1[i]);
    std::vector<double> sorted = u1;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t c : cumulative_counts(spec.p, spec.pool_size)) {
      model.thresholds.push_back(0.5 * (sorted[c - 1] + sorted[c]));
    }

    auto members = [&](const std::vector<std::vector<double>>& pool) {
      std::vector<std::vector<std::size_t>> by_class(p);
      for (std::size_t i = 0; i < pool.size(); ++i) {
        const double u = value(pool[i]);
        const int l = assign_value(model.thresholds, u);
        // Keep an epsilon margin below the next threshold.
        if (l < spec.p && model.thresholds[l - 1] - u < kDefaultEpsilon) continue;
        by_class[l - 1].push_back(i);
      }
      return by_class;
    };
    auto m1 = members(pool1), m2 = members(pool2);
    bool enough = true;
    for (std::size_t l = 0; l < p; ++l) {
      enough = enough && m1[l].size() >= static_cast<std::size_t>(spec.R) &&
               m2[l].size() >= static_cast<std::size_t>(spec.test_per_class);
    }
    if (!enough) continue;

    std::vector<Alternative> alts;
    std::vector<AssignmentExample> examples;
    Instance inst;
    inst.spec = spec;
    inst.attempts = attempt + 1;
    for (std::size_t l = 0; l < p; ++l) {
      rng.shuffle(std::span<std::size_t>(m1[l]));
      for (int r = 0; r < spec.R; ++r) {
        examples.push_back({alts.size(), static_cast<int>(l + 1)});
        alts.push_back({"r" + std::to_string(alts.size() + 1), pool1[m1[l][r]], ""});
        inst.reference_classes.push_back(static_cast<int>(l + 1));
      }
    }
    for (std::size_t l = 0; l < p; ++l) {
      rng.shuffle(std::span<std::size_t>(m2[l]));
      for (int r = 0; r < spec.test_per_class; ++r) {
        inst.test.push_back(alts.size());
        alts.push_back({"t" + std::to_string(inst.test.size()), pool2[m2[l][r]], ""});
        inst.reference_classes.push_back(static_cast<int>(l + 1));
      }
    }
    inst.table = PerformanceTable(std::move(criteria), std::move(alts), spec.p);
    inst.examples = AssignmentExamples(inst.table, std::move(examples));
    inst.reference = std::move(model);
    return inst;
  }
  throw InconsistencyError("could not draw an instance with enough alternatives per class in " +
                           std::to_string(kMaxAttempts) + " attempts");
}

std::vector<InstanceSpec> suite_instances(const SuiteSpec& suite) {
  std::vector<InstanceSpec> out;
  std::uint64_t cell = 0;
  for (int p : suite.p) {
    for (int m : suite.m) {
      for (int g : suite.gamma) {
        for (int r : suite.R) {
          for (std::size_t k = 0; k < suite.instances_per_cell; ++k) {
            InstanceSpec s;
            s.p = p;
            s.m = m;
            s.gamma = g;
            s.R = r;
            s.seed = derive_seed(suite.seed, cell * 1000003ULL + k);
            out.push_back(s);
          }
          ++cell;
        }
      }
    }
  }
  return out;
}

std::vector<ResultRow> run_instance(const InstanceSpec& spec, std::size_t index,
                                    const SuiteSpec& suite, mp::Solver& solver) {
  using clock = std::chrono::steady_clock;
  std::vector<ProcedureId> procs;
  for (ProcedureId id : suite.procedures) {
    if (id == ProcedureId::MSCVF && spec.gamma < 3) continue;
    procs.push_back(id);
  }
  std::vector<ResultRow> rows;
  for (ProcedureId id : procs) {
    ResultRow r;
    r.spec = spec;
    r.instance = index;
    r.procedure = id;
    rows.push_back(r);
  }
  auto fail_all = [&](const std::string& what) {
    for (ResultRow& r : rows) r.error = what;
    return rows;
  };

  std::optional<Instance> inst;
  std::optional<CompatibleSet> cs;
  ModelSample sample;
  Acceptabilities acc;
  std::optional<NecessaryRelations> rel;
  std::optional<SortingModel> cent;
  try {
    inst = generate_instance(spec);
    cs.emplace(inst->table, inst->examples, suite.epsilon);
    sample = har_sample(*cs, suite.samples, derive_seed(spec.seed, 0x5a3d1e), solver);
    acc = compute_acceptabilities(sample, *cs);
    rel = compute_necessary_relations(*cs, solver, &sample);
    cent = centroid(sample, *cs).model;
  } catch (const Error& e) {
    return fail_all(std::string("instance setup: ") + e.what());
  }

  SelectionContext ctx;
  ctx.cs = &*cs;
  ctx.solver = &solver;
  ctx.acceptabilities = &acc;
  ctx.relations = &*rel;
  ctx.sample = &sample;
  ctx.params = suite.params;
  for (ResultRow& r : rows) {
    const auto start = clock::now();
    try {
      const ProcedureResult res = select_representative(r.procedure, ctx);
      r.fallback = res.fallback;
      r.measures = measure(res.model, inst->reference, *cent, inst->table, acc, inst->test);
      r.ok = true;
    } catch (const Error& e) {
      r.error = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
  }
  return rows;
}

ResultTable run_suite(const SuiteSpec& suite, const ProgressFn& progress) {
  if (suite.p.empty() || suite.m.empty() || suite.gamma.empty() || suite.R.empty() ||
      suite.instances_per_cell == 0) {
    throw ConfigurationError("the experiment grid is empty");
  }
  const std::vector<InstanceSpec> specs = suite_instances(suite);
  std::vector<std::vector<ResultRow>> slots(specs.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex mu;
  auto worker = [&] {
    auto solver = mp::make_solver(suite.solver);
    for (;;) {
      const std::size_t k = next++;
      if (k >= specs.size()) return;
      slots[k] = run_instance(specs[k], k % suite.instances_per_cell, suite, *solver);
      std::lock_guard<std::mutex> lock(mu);
      ++done;
      if (progress) progress(done, specs.size());
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(suite.workers, static_cast<unsigned>(specs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < n; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  ResultTable table;
  for (auto& s : slots) {
    for (auto& r : s) table.rows.push_back(std::move(r));
  }
  return table;
}

const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names{
      "accuracy",           "mcai_abs",           "mcai_max",     "mcai_rel",
      "delta_marginal_ref", "delta_marginal_cent", "delta_cv_ref", "delta_th_ref"};
  return names;
}

double measure_value(const MeasureReport& r, const std::string& name) {
  if (name == "accuracy") return r.accuracy;
  if (name == "mcai_abs") return r.mcai_abs;
  if (name == "mcai_max") return r.mcai_max;
  if (name == "mcai_rel") return r.mcai_rel;
  if (name == "delta_marginal_ref") return r.delta_marginal_ref;
  if (name == "delta_marginal_cent") return r.delta_marginal_cent;
  if (name == "delta_cv_ref") return r.delta_cv_ref;
  if (name == "delta_th_ref") return r.delta_th_ref;
  throw ConfigurationError("unknown measure '" + name + "'");
}

void write_results_csv(std::ostream& out, const ResultTable& table) {
  out << "p,m,gamma,R,instance,seed,procedure,status,fallback";
  for (const auto& n : measure_names()) out << ',' << n;
  out << ",error\n";
  for (const ResultRow& r : table.rows) {
    out << r.spec.p << ',' << r.spec.m << ',' << r.spec.gamma << ',' << r.spec.R << ','
        << r.instance << ',' << r.spec.seed << ',' << procedure_name(r.procedure) << ','
        << (r.ok ? "ok" : "error") << ',' << (r.fallback ? 1 : 0);
    for (const auto& n : measure_names()) {
      out << ',' << (r.ok ? text::number(measure_value(r.measures, n)) : std::string());
    }
    out << ',' << text::csv_field(r.error) << '\n';
  }
}

void write_timings_csv(std::ostream& out, const ResultTable& table) {
  out << "p,m,gamma,R,instance,procedure,wall_seconds\n";
  for (const ResultRow& r : table.rows) {
    out << r.spec.p << ',' << r.spec.m << ',' << r.spec.gamma << ',' << r.spec.R << ','
        << r.instance << ',' << procedure_name(r.procedure) << ',' << text::number(r.wall_seconds, 6)
        << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ResultTable& table) {
  const Groups g = aggregate(table);
  out << "procedure,dimension,value,rows,errors";
  for (const auto& n : measure_names()) out << ",mean_" << n << ",std_" << n;
  out << '\n';
  std::vector<std::pair<std::string, std::string>> cols = columns_of(g);
  for (ProcedureId id : all_procedures()) {
    for (const auto& [dim, val] : cols) {
      const auto it = g.find({static_cast<int>(id), dim, val});
      if (it == g.end()) continue;
      const Group& grp = it->second;
      out << procedure_name(id) << ',' << dim << ',' << val << ',' << grp.rows << ',' << grp.errors;
      for (const auto& n : measure_names()) {
        const auto s = grp.stats.find(n);
        if (s == grp.stats.end()) {
          out << ",,";
        } else {
          out << ',' << text::number(s->second.mean()) << ',' << text::number(s->second.std());
        }
      }
      out << '\n';
    }
  }
}

void write_measure_table_csv(std::ostream& out, const ResultTable& table, const std::string& measure) {
  measure_value(MeasureReport{}, measure);
  const Groups g = aggregate(table);
  const auto cols = columns_of(g);
  out << "procedure";
  for (const auto& [dim, val] : cols) {
    const std::string label = dim == "all" ? "all" : dim + "=" + val;
    out << ',' << label << ',' << label << "_std";
  }
  out << '\n';
  for (ProcedureId id : all_procedures()) {
    bool any = false;
    for (const auto& [dim, val] : cols) any = any || g.count({static_cast<int>(id), dim, val});
    if (!any) continue;
    out << procedure_name(id);
    for (const auto& [dim, val] : cols) {
      const auto it = g.find({static_cast<int>(id), dim, val});
      const Stat* s = nullptr;
      if (it != g.end()) {
        const auto f = it->second.stats.find(measure);
        if (f != it->second.stats.end()) s = &f->second;
      }
      if (s) out << ',' << text::number(s->mean(), 6) << ',' << text::number(s->std(), 6);
      else out << ",,";
    }
    out << '\n';
  }
}

}  // namespace utadis

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "stats.hpp"
#include "utadis/errors.hpp"
#include "utadis/experiment.hpp"
#include "utadis/io.hpp"
#include "utadis/measures.hpp"
#include "utadis/procedures.hpp"

using namespace utadis;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t) {
  return std::chrono::duration<double>(clock_type::now() - t).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back((ok ? "ok " : "MISS ") + what);
  }
};

int failures = 0;

void report(int id, const std::string& title, const Verdict& v, double secs) {
  if (!v.pass) ++failures;
  std::printf("criterion %d: %s  %s (%.1f s)\n", id, v.pass ? "PASS" : "FAIL", title.c_str(), secs);
  for (const auto& n : v.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

std::vector<std::string> misclassified(const SortingModel& m) {
  const auto& d = fixtures::green_cities();
  const auto gold = fixtures::published_classes();
  const auto got = assign_all(m, d.table);
  std::vector<std::string> out;
  for (std::size_t a : d.non_reference()) {
    if (got[a] != gold[a]) out.push_back(d.table.alternative(a).id);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s.empty() ? "none" : s;
}

struct Study {
  const io::Dataset& data = fixtures::green_cities();
  CompatibleSet cs{data.table, data.examples};
  std::unique_ptr<mp::Solver> solver = mp::make_solver("highs");
  ModelSample sample;
  Acceptabilities acc;
  NecessaryRelations rel;
  bool sampled = false;

  SelectionContext context() {
    SelectionContext ctx;
    ctx.cs = &cs;
    ctx.solver = solver.get();
    ctx.acceptabilities = sampled ? &acc : nullptr;
    ctx.relations = &rel;
    ctx.sample = sampled ? &sample : nullptr;
    return ctx;
  }
};

void criterion1() {
  const auto start = clock_type::now();
  Verdict v;
  const auto& d = fixtures::green_cities();
  const auto& ref = fixtures::green_reference();
  const auto u = comprehensive_values(ref, d.table);
  const auto cls = assign_all(ref, d.table);
  const auto gold = fixtures::published_classes();
  double worst = 0.0;
  int wrong = 0;
  for (std::size_t i = 0; i < published::rows.size(); ++i) {
    worst = std::max(worst, std::abs(u[i] - published::rows[i].value));
    wrong += cls[i] != gold[i];
  }
  v.check(worst <= 1e-4, "max |U - published U| = " + fmt("%.2e", worst) + " (tol 1e-4)");
  v.check(wrong == 0, std::to_string(wrong) + " reference assignments differ");
  v.check(reproduces(ref, d.table, d.examples), "reference model reproduces the examples");
  const double secs = seconds_since(start);
  v.check(secs < 1.0, "runtime " + fmt("%.3f", secs) + " s (< 1 s)");
  report(1, "golden study, deterministic parts", v, secs);
}

void criterion2(Study& s) {
  const auto start = clock_type::now();
  Verdict v;
  const auto test_size = s.data.non_reference().size();
  auto acc_of = [&](const SortingModel& m) {
    return std::to_string(test_size - misclassified(m).size()) + "/" + std::to_string(test_size);
  };

  const auto mp2 = utadismp(2, s.cs, *s.solver);
  const auto mp3 = utadismp(3, s.cs, *s.solver);
  v.check(assign_all(mp2.model, s.data.table) == assign_all(mp3.model, s.data.table),
          "UTADISMP2 and UTADISMP3 assign identically");
  v.check(std::abs(mp2.diagnostics.at("objective") - mp3.diagnostics.at("objective")) <= 1e-9,
          "UTADISMP2/3 objectives " + fmt("%.6f", mp2.diagnostics.at("objective")) + " / " +
              fmt("%.6f", mp3.diagnostics.at("objective")));
  v.check(misclassified(mp2.model).size() == 1,
          "UTADISMP2 accuracy " + acc_of(mp2.model) + " (want 20/21), misclassified " +
              join(misclassified(mp2.model)));
  v.check(misclassified(mp3.model).size() == 1, "UTADISMP3 accuracy " + acc_of(mp3.model) + " (want 20/21)");

  const auto cheb = chebyshev(s.cs, *s.solver);
  v.check(misclassified(cheb.model).size() == 4, "CHEBYSHEV accuracy " + acc_of(cheb.model) + " (want 17/21)");

  s.rel = compute_necessary_relations(s.cs, *s.solver);
  const auto iter = robust_exact(RobustVariant::iter, s.cs, s.rel, *s.solver);
  v.check(misclassified(iter.model).size() == 6,
          "ROBUST-ITER misclassifies " + std::to_string(misclassified(iter.model).size()) +
              " (want 6): " + join(misclassified(iter.model)) + ", omega* = " +
              fmt("%.5f", iter.diagnostics.at("omega")));

  const auto msc = mscvf(s.cs, *s.solver);
  v.check(std::abs(msc.diagnostics.at("phi")) <= 1e-9, "MSCVF phi* = " + fmt("%.2e", msc.diagnostics.at("phi")));

  const auto mn = sum_scores(false, s.cs, *s.solver);
  const double u2 = mn.model.marginals[1].values.back(), u4 = mn.model.marginals[3].values.back();
  v.check(std::abs(u2 - 0.6122) <= 1e-2 && std::abs(u4 - 0.3878) <= 1e-2,
          "MIN-SVF u2(10) = " + fmt("%.4f", u2) + ", u4(10) = " + fmt("%.4f", u4) + " (0.6122, 0.3878 +-1e-2)");
  const double secs = seconds_since(start);
  v.check(secs < 30.0, "runtime " + fmt("%.2f", secs) + " s (< 30 s)");
  report(2, "golden study, procedures", v, secs);
}

void criterion3(Study& s) {
  const auto start = clock_type::now();
  Verdict v;
  s.sample = har_sample(s.cs, 10000, 7, *s.solver);
  s.acc = compute_acceptabilities(s.sample, s.cs);
  s.sampled = true;

  double worst = 0.0;
  std::string worst_at;
  int outside = 0;
  for (std::size_t i = 0; i < 30; ++i) {
    for (int l = 0; l < 3; ++l) {
      const double dev = std::abs(s.acc.cai(static_cast<Eigen::Index>(i), l) -
                                  published::rows[i].cai[static_cast<std::size_t>(l)]);
      outside += dev > 0.03;
      if (dev > worst) {
        worst = dev;
        worst_at = std::string(published::rows[i].id) + "/C" + std::to_string(l + 1);
      }
    }
  }
  v.check(outside == 0, "CAI' entries within 0.03 of the published values: " + std::to_string(90 - outside) +
                            "/90, worst " + fmt("%.3f", worst) + " at " + worst_at);
  const auto a10 = *s.data.table.find_alternative("a10"), a9 = *s.data.table.find_alternative("a9");
  const double apwi = s.acc.apwi(static_cast<Eigen::Index>(a10), static_cast<Eigen::Index>(a9));
  v.check(std::abs(apwi - 0.124) <= 0.03, "APWI'(a10, a9) = " + fmt("%.4f", apwi) + " (0.124 +-0.03)");
  const auto test = s.data.non_reference();
  const McaiValues ref = mcai(fixtures::green_reference(), s.data.table, s.acc, test);
  v.check(std::abs(ref.max - 0.9656) <= 0.02, "MCAI_max = " + fmt("%.4f", ref.max) + " (0.9656 +-0.02)");
  v.check(std::abs(ref.rel + 0.0809) <= 0.02,
          "reference MCAI_rel = " + fmt("%.4f", ref.rel) + " (-0.0809 +-0.02)");
  const double secs = seconds_since(start);
  v.check(secs < 120.0, "runtime " + fmt("%.2f", secs) + " s (< 2 min)");
  report(3, "stochastic reproduction", v, secs);
}

struct Desk {
  ResultTable table;
  double seconds = 0.0;
};

double mean_of(const std::vector<const ResultRow*>& rows, const std::function<double(const ResultRow&)>& f) {
  double s = 0.0;
  for (const auto* r : rows) s += f(*r);
  return rows.empty() ? std::nan("") : s / static_cast<double>(rows.size());
}

void criterion4(Study& s, const Desk& desk) {
  Verdict v;
  const auto test = s.data.non_reference();
  const auto cai = stochastic_milp(StochasticVariant::cai, s.cs, s.acc, *s.solver);
  const double rel = mcai(cai.model, s.data.table, s.acc, test).rel;
  v.check(rel >= -1e-3, "study CAI MCAI_rel = " + fmt("%.2e", rel));
  int total = 0, good = 0;
  for (const auto& r : desk.table.rows) {
    if (r.procedure != ProcedureId::CAI) continue;
    ++total;
    good += r.ok && r.measures.mcai_rel >= -1e-3;
  }
  const double share = total ? static_cast<double>(good) / total : 0.0;
  v.check(total == 160 && share >= 0.95, "desk CAI MCAI_rel >= -1e-3 on " + std::to_string(good) + "/" +
                                             std::to_string(total) + " instances (>= 95%)");
  v.check(desk.seconds < 1800.0, "desk suite runtime " + fmt("%.1f", desk.seconds) + " s (< 30 min)");
  report(4, "robust assignment rule", v, desk.seconds);
}

void criterion5(const Desk& desk) {
  const auto start = clock_type::now();
  Verdict v;
  std::map<ProcedureId, std::vector<const ResultRow*>> by;
  for (const auto& r : desk.table.rows) {
    if (r.ok) by[r.procedure].push_back(&r);
  }
  auto acc = [](const ResultRow& r) { return r.measures.accuracy; };
  auto subset = [&](ProcedureId id, const std::function<bool(const InstanceSpec&)>& keep) {
    std::vector<const ResultRow*> out;
    for (const auto* r : by[id]) {
      if (keep(r->spec)) out.push_back(r);
    }
    return out;
  };

  const double ac = mean_of(by[ProcedureId::ACUTADIS], acc);
  const double mx = mean_of(by[ProcedureId::MAX_SVF], acc);
  const double mn = mean_of(by[ProcedureId::MIN_SVF], acc);
  v.check(ac - std::max(mx, mn) >= 0.05, "(a) ACUTADIS " + fmt("%.4f", ac) + " vs MAX-SVF " + fmt("%.4f", mx) +
                                             ", MIN-SVF " + fmt("%.4f", mn));

  std::vector<std::string> r_bad, g_bad, g_skip;
  for (ProcedureId id : all_procedures()) {
    const double r3 = mean_of(subset(id, [](const auto& s) { return s.R == 3; }), acc);
    const double r5 = mean_of(subset(id, [](const auto& s) { return s.R == 5; }), acc);
    if (!(r5 >= r3)) r_bad.emplace_back(procedure_name(id));
    const auto g2 = subset(id, [](const auto& s) { return s.gamma == 2; });
    const auto g4 = subset(id, [](const auto& s) { return s.gamma == 4; });
    if (g2.empty()) {
      g_skip.emplace_back(procedure_name(id));
      continue;
    }
    if (!(mean_of(g4, acc) <= mean_of(g2, acc))) g_bad.emplace_back(procedure_name(id));
  }
  v.check(r_bad.empty(), "(b) accuracy at R=5 >= R=3; violations: " + join(r_bad));

  std::string gaps;
  bool close = true;
  for (ProcedureId id : {ProcedureId::CAI, ProcedureId::APOI, ProcedureId::COMB, ProcedureId::CENTROID}) {
    const double abs = mean_of(by[id], [](const auto& r) { return r.measures.mcai_abs; });
    const double max = mean_of(by[id], [](const auto& r) { return r.measures.mcai_max; });
    close = close && std::abs(max - abs) <= 0.01;
    gaps += std::string(gaps.empty() ? "" : ", ") + std::string(procedure_name(id)) + " " + fmt("%.5f", max - abs);
  }
  v.check(close, "(c) mcai_max - mcai_abs: " + gaps);
  v.check(g_bad.empty(), "(d) accuracy at gamma=4 <= gamma=2; violations: " + join(g_bad) +
                             " (not applicable at gamma=2: " + join(g_skip) + ")");
  report(5, "desk-scale trends", v, seconds_since(start));
}

void criterion6(Study& s, const Desk& desk) {
  const auto start = clock_type::now();
  Verdict v;

  int runs = 0, compatible = 0;
  std::vector<std::string> broken;
  for (ProcedureId id : all_procedures()) {
    ++runs;
    try {
      const auto r = select_representative(id, s.context());
      if (reproduces(r.model, s.data.table, s.data.examples)) ++compatible;
      else broken.emplace_back(procedure_name(id));
    } catch (const Error& e) {
      broken.push_back(std::string(procedure_name(id)) + " (" + e.what() + ")");
    }
  }
  int desk_ok = 0;
  for (const auto& r : desk.table.rows) {
    desk_ok += r.ok;
    if (!r.ok) broken.push_back(std::string(procedure_name(r.procedure)) + " desk: " + r.error);
  }
  v.check(broken.empty(), "universal compatibility: study " + std::to_string(compatible) + "/" +
                              std::to_string(runs) + ", desk " + std::to_string(desk_ok) + "/" +
                              std::to_string(desk.table.rows.size()) + " runs; failures: " + join(broken));

  double worst = 0.0;
  const auto n = static_cast<Eigen::Index>(s.acc.alternative_count());
  for (Eigen::Index a = 0; a < n; ++a) {
    worst = std::max(worst, std::abs(s.acc.cai.row(a).sum() - 1.0));
    for (Eigen::Index b = 0; b < n; ++b) {
      if (a == b) continue;
      worst = std::max(worst, std::abs(s.acc.apwi(a, b) + s.acc.apwi(b, a) + s.acc.apei(a, b) - 1.0));
      worst = std::max(worst, std::abs(s.acc.apei(a, b) - s.acc.apei(b, a)));
    }
  }
  v.check(worst <= 1e-9, "row sums and APWI/APEI partition, max error " + fmt("%.1e", worst));

  std::size_t pairs = 0, violated = 0;
  for (std::size_t a = 0; a < s.rel.size(); ++a) {
    for (std::size_t b = 0; b < s.rel.size(); ++b) {
      if (!s.rel.weak(a, b)) continue;
      ++pairs;
      violated += s.acc.apoi(a, b) != 1.0;
    }
  }
  v.check(violated == 0, "necessary weak => APOI' = 1 on " + std::to_string(pairs) + " pairs, " +
                             std::to_string(violated) + " violations");

  const auto simplex = fixtures::unit_table({{0.5, 0.5, 0.5}}, 2);
  const AssignmentExamples none;
  const CompatibleSet cs(simplex, none);
  const ModelSample sm = har_sample(cs, 40000, 3, *s.solver);
  const std::size_t u1 = cs.max_index(0), u2 = cs.max_index(1), t = cs.threshold_index(1);
  struct Stat {
    const char* name;
    std::function<double(const std::vector<double>&)> f;
    double truth;
  };
  const std::vector<Stat> checks{
      {"E u1", [&](const auto& x) { return x[u1]; }, 1.0 / 3.0},
      {"E u1^2", [&](const auto& x) { return x[u1] * x[u1]; }, 1.0 / 6.0},
      {"P(u1 < 1/2)", [&](const auto& x) { return x[u1] < 0.5 ? 1.0 : 0.0; }, 0.75},
      {"E u1 u2", [&](const auto& x) { return x[u1] * x[u2]; }, 1.0 / 12.0},
      {"E t", [&](const auto& x) { return x[t]; }, 0.5},
  };
  double worst_z = 0.0;
  for (const auto& c : checks) {
    std::vector<double> xs;
    for (const auto& x : sm.points) xs.push_back(c.f(x));
    const auto e = stats::batch_mean(xs);
    worst_z = std::max(worst_z, std::abs(e.mean - c.truth) / e.se);
  }
  v.check(worst_z <= 3.0, "simplex uniformity, worst |z| = " + fmt("%.2f", worst_z) + " over 5 moments (<= 3 SE)");

  const bool same_sample = har_sample(s.cs, 500, 11, *s.solver).points == har_sample(s.cs, 500, 11, *s.solver).points;
  SuiteSpec small;
  small.p = {2, 3};
  small.m = {2};
  small.gamma = {2, 3};
  small.R = {2};
  small.instances_per_cell = 1;
  small.samples = 300;
  small.seed = 31;
  auto csv = [&](unsigned workers) {
    small.workers = workers;
    std::ostringstream os;
    write_results_csv(os, run_suite(small));
    return os.str();
  };
  const std::string first = csv(1);
  v.check(same_sample && first == csv(1) && first == csv(4),
          "seed determinism: sampler reruns identical, suite CSV byte-identical across reruns and worker counts");
  report(6, "property suites", v, seconds_since(start));
}

void criterion7() {
  const auto start = clock_type::now();
  Verdict v;
  auto highs = mp::make_solver("highs");
  mp::BruteForceSolver brute;
  const std::map<ProcedureId, std::vector<std::string>> objectives{
      {ProcedureId::UTADISMP1, {"objective"}},
      {ProcedureId::UTADISMP2, {"objective"}},
      {ProcedureId::UTADISMP3, {"objective"}},
      {ProcedureId::UTADIS_JLS, {"u1_max", "u1_min", "u2_max", "u2_min"}},
      {ProcedureId::CHEBYSHEV, {"r"}},
      {ProcedureId::MAX_SVF, {"objective"}},
      {ProcedureId::MIN_SVF, {"objective"}},
      {ProcedureId::REPDIS, {"omega", "omega_sum"}},
      {ProcedureId::CAI, {"kappa", "xi"}},
      {ProcedureId::APOI, {"kappa", "xi"}},
      {ProcedureId::COMB, {"kappa", "xi"}},
      {ProcedureId::ROBUST_ITER, {"omega", "lambda"}},
      {ProcedureId::ROBUST_COMP, {"iota"}},
  };
  double worst = 0.0;
  int compared = 0, errors = 0;
  std::string where;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto tiny = fixtures::tiny_instance(derive_seed(2718, k));
    const CompatibleSet cs(tiny.table, tiny.examples);
    const ModelSample sample = har_sample(cs, 2000, k, *highs);
    const Acceptabilities acc = compute_acceptabilities(sample, cs);
    const NecessaryRelations rel = compute_necessary_relations(cs, *highs, &sample);
    if (compute_necessary_relations(cs, brute).matrix() != rel.matrix()) {
      ++errors;
      where = "necessary relations of instance " + std::to_string(k);
    }
    for (const auto& [id, keys] : objectives) {
      SelectionContext ctx;
      ctx.cs = &cs;
      ctx.acceptabilities = &acc;
      ctx.relations = &rel;
      ctx.sample = &sample;
      try {
        ctx.solver = highs.get();
        const auto a = select_representative(id, ctx);
        ctx.solver = &brute;
        const auto b = select_representative(id, ctx);
        for (const auto& key : keys) {
          const double d = std::abs(a.diagnostics.at(key) - b.diagnostics.at(key));
          ++compared;
          if (d > worst) {
            worst = d;
            where = std::string(procedure_name(id)) + " " + key + " on instance " + std::to_string(k);
          }
        }
      } catch (const Error& e) {
        ++errors;
        where = std::string(procedure_name(id)) + " on instance " + std::to_string(k) + ": " + e.what();
      }
    }
  }
  v.check(errors == 0 && worst <= 1e-6, std::to_string(compared) + " objective values over 50 instances and " +
                                            std::to_string(objectives.size()) + " procedures, max |diff| " +
                                            fmt("%.2e", worst) + " (tol 1e-6), " + std::to_string(errors) +
                                            " errors" + (where.empty() ? "" : "; worst at " + where));
  report(7, "oracle equivalence with the brute-force solver", v, seconds_since(start));
}

}  // namespace

int main() {
  Study study;
  criterion1();
  criterion2(study);
  criterion3(study);

  Desk desk;
  const auto start = clock_type::now();
  const SuiteSpec suite = io::load_run_spec(fixtures::data_path("desk_suite.json"));
  desk.table = run_suite(suite);
  desk.seconds = seconds_since(start);
  criterion4(study, desk);
  criterion5(desk);
  criterion6(study, desk);
  criterion7();

  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

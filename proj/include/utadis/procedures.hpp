#pragma once

// The sixteen representative-model selection procedures.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "utadis/core.hpp"
#include "utadis/mathprog.hpp"
#include "utadis/polytope.hpp"
#include "utadis/robust.hpp"
#include "utadis/sampler.hpp"

namespace utadis {

enum class ProcedureId {
  UTADISMP1,
  UTADISMP2,
  UTADISMP3,
  UTADIS_JLS,
  CHEBYSHEV,
  MAX_SVF,
  MIN_SVF,
  MSCVF,
  ACUTADIS,
  CENTROID,
  REPDIS,
  CAI,
  APOI,
  COMB,
  ROBUST_ITER,
  ROBUST_COMP,
};

const std::vector<ProcedureId>& all_procedures();
/// Display name, e.g. "UTADIS-JLS".
std::string_view procedure_name(ProcedureId id);
/// Case-insensitive; '-' and '_' are interchangeable.
std::optional<ProcedureId> parse_procedure(std::string_view text);
std::string valid_procedure_names();

bool needs_sample(ProcedureId id);
bool needs_acceptabilities(ProcedureId id);
bool needs_relations(ProcedureId id);

struct NewtonOptions {
  double gradient_tolerance = 1e-8;
  int max_iterations = 200;
  double backtrack = 0.5;
};

struct ProcedureParams {
  double mu = 1e-6;
  double big_m = 100.0;
  /// Slack allowed when a first-stage optimum is imposed on a second stage.
  double stage_tolerance = 1e-6;
  NewtonOptions newton;
};

struct ProcedureResult {
  ProcedureId id = ProcedureId::UTADISMP1;
  SortingModel model;
  /// Objective diagnostics: delta, rho, phi, r, kappa, xi, omega, iota, lambda, ...
  std::map<std::string, double> diagnostics;
  /// Set when the procedure's objective was vacuous and an arbitrary
  /// compatible model was returned.
  bool fallback = false;
  std::string note;
};

ProcedureResult utadismp(int variant, const CompatibleSet& cs, mp::Solver& solver);
ProcedureResult mscvf(const CompatibleSet& cs, mp::Solver& solver);
ProcedureResult sum_scores(bool maximize, const CompatibleSet& cs, mp::Solver& solver);
ProcedureResult jls(const CompatibleSet& cs, mp::Solver& solver);
ProcedureResult chebyshev(const CompatibleSet& cs, mp::Solver& solver);
ProcedureResult acutadis(const CompatibleSet& cs, mp::Solver& solver,
                         const NewtonOptions& options = {});
ProcedureResult centroid(const ModelSample& sample, const CompatibleSet& cs);
ProcedureResult repdis(const CompatibleSet& cs, const Acceptabilities& acc, mp::Solver& solver,
                       const ProcedureParams& params = {});

enum class StochasticVariant { cai, apoi, comb };
ProcedureResult stochastic_milp(StochasticVariant variant, const CompatibleSet& cs,
                                const Acceptabilities& acc, mp::Solver& solver,
                                const ProcedureParams& params = {});

enum class RobustVariant { iter, comp };
ProcedureResult robust_exact(RobustVariant variant, const CompatibleSet& cs,
                             const NecessaryRelations& rel, mp::Solver& solver,
                             const ProcedureParams& params = {});

struct SelectionContext {
  const CompatibleSet* cs = nullptr;
  mp::Solver* solver = nullptr;
  const Acceptabilities* acceptabilities = nullptr;
  const NecessaryRelations* relations = nullptr;
  const ModelSample* sample = nullptr;
  ProcedureParams params;
};

/// Runs one procedure. Throws ConfigurationError when the context lacks an
/// input the procedure needs. The returned model reproduces every example.
ProcedureResult select_representative(ProcedureId id, const SelectionContext& ctx);

}  // namespace utadis

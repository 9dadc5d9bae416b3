#pragma once

// Hit-and-run sampling of compatible models and the stochastic
// acceptability indices estimated from a sample.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "utadis/core.hpp"
#include "utadis/mathprog.hpp"
#include "utadis/polytope.hpp"

namespace utadis {

struct HarOptions {
  std::size_t burn_in = 1000;
  std::size_t thinning = 0;  ///< 0: dimension of the reduced space
  double min_chord = 1e-12;
  double min_radius = 1e-10;
};

/// Sampled models as model vectors of the originating CompatibleSet.
struct ModelSample {
  std::vector<std::vector<double>> points;
  std::uint64_t seed = 0;

  std::size_t count() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  std::vector<SortingModel> models(const CompatibleSet& cs) const;
};

/// Affine parameterization x = origin + basis * z of the equality rows, with
/// the inequality rows rewritten as rows * z >= rhs.
struct ReducedPolytope {
  Eigen::VectorXd origin;
  Eigen::MatrixXd basis;
  Eigen::MatrixXd rows;
  Eigen::VectorXd rhs;
  /// The CompatibleSet row behind each reduced row.
  std::vector<const ModelRow*> sources;

  static ReducedPolytope from(const CompatibleSet& cs);
  std::size_t dimension() const { return static_cast<std::size_t>(basis.cols()); }
  Eigen::VectorXd lift(const Eigen::VectorXd& z) const { return origin + basis * z; }
};

/// Chebyshev center of the reduced polytope (every row scaled by its norm).
struct InteriorPoint {
  Eigen::VectorXd z;
  double radius = 0.0;
};
InteriorPoint reduced_center(const ReducedPolytope& poly, mp::Solver& solver);

/// `count` approximately uniform compatible models. Throws
/// DegenerateInteriorError when the set has no interior.
ModelSample har_sample(const CompatibleSet& cs, std::size_t count, std::uint64_t seed,
                       mp::Solver& solver, const HarOptions& options = {});

struct Acceptabilities {
  Eigen::MatrixXd cai;   ///< n x p, column l-1 for class l
  Eigen::MatrixXd apwi;  ///< n x n
  Eigen::MatrixXd apei;  ///< n x n
  std::size_t sample_count = 0;

  std::size_t alternative_count() const { return static_cast<std::size_t>(cai.rows()); }
  int class_count() const { return static_cast<int>(cai.cols()); }
  double apoi(std::size_t a, std::size_t b) const { return apwi(a, b) + apei(a, b); }
  /// Class with the largest CAI', lowest class on ties.
  int argmax_class(std::size_t a) const;
};

/// Acceptabilities from per-model class assignments (models x alternatives).
Acceptabilities acceptabilities_from_assignments(const std::vector<std::vector<int>>& classes,
                                                 int class_count, std::size_t alternative_count);

Acceptabilities compute_acceptabilities(const ModelSample& sample, const CompatibleSet& cs);
Acceptabilities compute_acceptabilities(std::span<const SortingModel> models,
                                        const PerformanceTable& table);

inline double apoi(const Acceptabilities& acc, std::size_t a, std::size_t b) {
  return acc.apoi(a, b);
}

}  // namespace utadis

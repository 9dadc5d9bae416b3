#pragma once

// Necessary assignment-based weak preference over all compatible models.

#include <cstddef>
#include <utility>
#include <vector>

#include "utadis/mathprog.hpp"
#include "utadis/polytope.hpp"
#include "utadis/sampler.hpp"

namespace utadis {

/// True iff no compatible model puts b in a strictly better class than a.
bool necessary_weak(const CompatibleSet& cs, std::size_t a, std::size_t b, mp::Solver& solver);

class NecessaryRelations {
 public:
  NecessaryRelations() = default;
  explicit NecessaryRelations(std::vector<std::vector<char>> weak);

  std::size_t size() const noexcept { return weak_.size(); }
  bool weak(std::size_t a, std::size_t b) const { return weak_.at(a).at(b) != 0; }
  bool strict(std::size_t a, std::size_t b) const { return weak(a, b) && !weak(b, a); }
  bool equal(std::size_t a, std::size_t b) const { return weak(a, b) && weak(b, a); }

  /// Ordered pairs (a, b) with a strictly necessarily preferred to b.
  std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;
  /// Unordered pairs {c, d}, c < d, necessarily in the same class.
  std::vector<std::pair<std::size_t, std::size_t>> equal_pairs() const;

  const std::vector<std::vector<char>>& matrix() const noexcept { return weak_; }

 private:
  std::vector<std::vector<char>> weak_;
};

struct NecessaryStats {
  std::size_t pairs = 0;
  std::size_t by_witness = 0;
  std::size_t by_shortcut = 0;
  std::size_t by_transitivity = 0;
  std::size_t by_lp = 0;
  std::size_t lp_solves = 0;
};

/// Relation over every pair of table alternatives. A sample, when given,
/// refutes pairs through witness models before any LP is solved.
NecessaryRelations compute_necessary_relations(const CompatibleSet& cs, mp::Solver& solver,
                                               const ModelSample* witnesses = nullptr,
                                               NecessaryStats* stats = nullptr);

}  // namespace utadis

#pragma once

#include "wbary/measure.hpp"

namespace wbary {

struct CouplingEntry {
  std::size_t i;  // source atom index
  std::size_t j;  // target atom index
  double mass;
};

/// Sparse transport plan between two discrete measures. Row sums match the
/// source weights and column sums the target weights within the marginal
/// tolerance; the stored cost matches the recomputed squared-distance cost.
class Coupling {
 public:
  Coupling(DiscreteMeasure source, DiscreteMeasure target, std::vector<CouplingEntry> entries,
           double cost);

  const DiscreteMeasure& source() const { return source_; }
  const DiscreteMeasure& target() const { return target_; }
  const std::vector<CouplingEntry>& entries() const { return entries_; }
  double cost() const { return cost_; }

 private:
  DiscreteMeasure source_;
  DiscreteMeasure target_;
  std::vector<CouplingEntry> entries_;
  double cost_;
};

/// Exactly optimal quadratic-cost transport plan. Deterministic: the simplex
/// pivot picks the lowest-index entering arc; equal-count uniform-weight
/// inputs route to an assignment solver.
Coupling solve_ot(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Square root of the optimal transport cost.
double w2_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Recomputes the coupling cost from its entries, independent of the stored
/// value.
double coupling_cost(const Coupling& c);

namespace detail {
// Minimum-cost perfect matching of a square cost matrix; returns the column
// assigned to each row.
std::vector<int> solve_assignment(const Mat& cost);
}  // namespace detail

}  // namespace wbary

#pragma once

#include "wbary/wbarycenter.hpp"

namespace wbary {

/// Finite isometry group with uniform (Haar) weights. Built from generators
/// by closure expansion; the identity is always element 0.
class IsometryGroup {
 public:
  static IsometryGroup from_generators(const Space& space, std::vector<Isometry> generators,
                                       std::size_t max_elements = 256);
  static IsometryGroup trivial(const Space& space);
  // Cyclic rotation group of order k about the origin of the euclidean plane.
  static IsometryGroup planar_rotations(const Space& space, int k);

  const Space& space() const { return space_; }
  std::size_t size() const { return elements_.size(); }
  const Isometry& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Isometry>& elements() const { return elements_; }
  double haar_weight() const { return 1.0 / static_cast<double>(elements_.size()); }

 private:
  IsometryGroup(Space space, std::vector<Isometry> elements)
      : space_(std::move(space)), elements_(std::move(elements)) {}
  Space space_;
  std::vector<Isometry> elements_;
};

/// The orbit of a measure under the group, with Haar weights.
MeasureEnsemble orbit_ensemble(const IsometryGroup& group, const DiscreteMeasure& m);

/// Barycenter of the orbit ensemble: the nearest G-invariant measure in the
/// transport metric. Multistarted over the orbit entries and their mixture;
/// non-invariance of the winner is reported as a warning, not an error.
EnsembleBarycenterResult w2_projection(const IsometryGroup& group, const DiscreteMeasure& m);

/// Group-averaged measure (mixture of the orbit): the density-level
/// projection; exactly G-invariant in canonical form.
DiscreteMeasure l2_projection(const IsometryGroup& group, const DiscreteMeasure& m);

struct SandwichReport {
  double var_w;    // variance of the transport projection
  double var_mu;   // variance of the measure itself
  double var_l2;   // variance of the group average
  bool left_holds;    // var_w <= var_mu + 1e-7
  bool right_holds;   // var_mu <= var_l2 + 1e-7
  bool left_asserted; // the left inequality is only guaranteed on NPC spaces
  std::vector<std::string> warnings;
};

/// Computes the three variances and evaluates both comparison inequalities.
SandwichReport sandwich_report(const IsometryGroup& group, const DiscreteMeasure& m);

}  // namespace wbary

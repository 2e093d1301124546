#pragma once

#include "wbary/transport.hpp"

namespace wbary {

/// One tangent vector per atom of a measure.
class VectorField {
 public:
  VectorField(DiscreteMeasure base, std::vector<TangentVector> vectors);

  const DiscreteMeasure& base() const { return base_; }
  const TangentVector& at(std::size_t i) const { return vectors_[i]; }
  std::size_t size() const { return vectors_.size(); }

  static VectorField zero(const DiscreteMeasure& m);
  // V(x_i) = log(x_i, coupled target); requires an assignment-type coupling
  // (each source atom coupled to exactly one target atom).
  static VectorField from_assignment_coupling(const Coupling& c, TieBreak tie = TieBreak::error);

 private:
  DiscreteMeasure base_;
  std::vector<TangentVector> vectors_;
};

enum class PathKind { displacement, quasi_geodesic, linear };

std::string to_string(PathKind kind);

/// Measures indexed by an increasing grid in [0, 1] with endpoints present.
struct MeasurePath {
  std::vector<double> grid;
  std::vector<DiscreteMeasure> measures;
  PathKind kind;
};

std::vector<double> uniform_grid(int points = 11);

/// Each coupling entry (i, j, m) contributes the point at parameter t of the
/// geodesic from source atom i to target atom j, carrying mass m.
DiscreteMeasure displacement_interpolant(const Coupling& c, double t,
                                         TieBreak tie = TieBreak::error);

MeasurePath displacement_path(const Coupling& c, const std::vector<double>& grid,
                              TieBreak tie = TieBreak::error);

/// Pushforward of the base measure under x -> exp_x(t V(x)) at each grid t.
MeasurePath quasi_geodesic(const DiscreteMeasure& mu, const VectorField& field,
                           const std::vector<double>& grid);

/// Linear interpolation path (1-t) mu + t nu on the same grid.
MeasurePath linear_path(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        const std::vector<double>& grid);

struct ConvexityReport {
  bool convex;
  double worst_violation;  // most negative second difference (signed)
  double location;         // grid t at the worst interior point
};

/// Second-difference convexity check of values sampled on a uniform grid.
ConvexityReport convexity_certificate(const std::vector<double>& values,
                                      double tolerance = tol().convexity, double t0 = 0.0,
                                      double t1 = 1.0);

}  // namespace wbary

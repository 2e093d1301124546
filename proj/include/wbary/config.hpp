#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wbary {

/// Central numeric configuration. Every tolerance used by the library lives
/// here so that tests and the CLI agree on one set of defaults.
struct Tolerances {
  // Point / tangent constraints (embedding norms, tangency, weight sums).
  double point_constraint = 1e-12;
  // Input weights may deviate from sum 1 by this much before an explicit
  // renormalize flag is required.
  double weight_input_slack = 1e-6;
  // Atoms closer than this merge during canonicalization.
  double atom_merge = 1e-9;
  // Isometry representation checks (orthogonality / Lorentz condition).
  double isometry_orthogonality = 1e-8;
  // Distance preservation under isometries (property-tested).
  double isometry_distance = 1e-10;
  // exp(log(p,q)) == q and |log(p,q)| == d(p,q).
  double log_roundtrip = 1e-10;
  // Coupling marginals and stored-cost consistency.
  double marginal = 1e-9;
  double cost_consistency = 1e-9;
  // Convexity certificate: second differences must be >= -convexity.
  double convexity = 1e-8;
  // Karcher descent stopping residual and iteration cap.
  double karcher_residual = 1e-10;
  int karcher_max_iterations = 10000;
  // Fixed-point barycenter stopping rule.
  double barycenter_tol = 1e-9;
  int barycenter_max_iterations = 500;
  // Brute-force mean search: points per closed geodesic, refinement floor.
  int grid_per_closed_geodesic = 720;
  double grid_refine_step_min = 1e-9;
  // Two grid minima within this value gap but farther apart than the
  // separation are reported as multiple minima.
  double mean_multiplicity_value = 1e-6;
  double mean_multiplicity_separation = 1e-3;
  // Soft cap on atom counts; operations take an explicit override.
  std::size_t max_atoms = 10000;
};

inline const Tolerances& tol() {
  static const Tolerances t;
  return t;
}

/// Two points live on different spaces (or an operation mixed spaces).
class SpaceMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The minimizing geodesic is not unique and no tie-break was requested.
class CutLocusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A glued-space geodesic crosses the gluing point without branch data.
class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wbary

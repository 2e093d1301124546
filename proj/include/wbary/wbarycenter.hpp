#pragma once

#include "wbary/frechet.hpp"

namespace wbary {

/// Output of the free-support fixed-point iteration. The candidate's support
/// size is fixed by the initializer; the objective history is non-increasing.
struct EnsembleBarycenterResult {
  DiscreteMeasure measure;
  double objective;
  int iterations;
  std::vector<double> history;
  double zero_sum_residual;
  std::vector<std::string> warnings;
};

/// sum_i lambda_i W_2^2(mu_i, nu) via exact transport.
double barycenter_objective(const MeasureEnsemble& ensemble, const DiscreteMeasure& nu);

/// Fixed-point iteration: couple the candidate to every ensemble measure,
/// move each candidate atom to the weighted mean of its coupled targets,
/// stop when the objective decrease drops below the tolerance. The result is
/// a stationary candidate, not a certified global optimum.
EnsembleBarycenterResult w2_barycenter(const MeasureEnsemble& ensemble,
                                       const DiscreteMeasure& init,
                                       int max_iterations = tol().barycenter_max_iterations,
                                       double stop_tol = tol().barycenter_tol);

/// Default initializer: the ensemble entry with the largest weight (first on
/// ties).
EnsembleBarycenterResult w2_barycenter(const MeasureEnsemble& ensemble);

/// Stationarity certificate: max over candidate atoms of the norm of the
/// lambda-weighted sum of mean log-displacements toward each measure's
/// coupled targets. Recomputed from scratch.
double zero_sum_residual(const DiscreteMeasure& candidate, const MeasureEnsemble& ensemble);

struct JensenReport {
  double var_barycenter;
  double mean_variance;    // sum_i lambda_i var(mu_i)
  double linear_variance;  // var of the mixture
  double jensen_gap;       // mean_variance - var_barycenter
  double linear_gap;       // linear_variance - var_barycenter
  bool npc_jensen_holds;     // var_barycenter <= mean_variance + 1e-7
  bool linear_jensen_holds;  // mean_variance <= linear_variance + 1e-7
};

/// Compares the barycenter's variance with the mean variance and the linear
/// barycenter's variance.
JensenReport jensen_gap(const MeasureEnsemble& ensemble, const EnsembleBarycenterResult& result);

}  // namespace wbary

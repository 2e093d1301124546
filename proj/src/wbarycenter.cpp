#include "wbary/wbarycenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wbary {

namespace {

struct WeightedTarget {
  Point point;
  double weight;
};

// Weighted mean of a target cloud, warm-started at the current atom. Closed
// form on euclidean charts, Karcher fixed point elsewhere.
Point weighted_mean(const Space& space, const std::vector<WeightedTarget>& targets,
                    const Point& start) {
  double total = 0.0;
  for (const auto& t : targets) total += t.weight;
  if (space.kind() == SpaceKind::euclidean) {
    Vec sum = Vec::Zero(space.dim());
    for (const auto& t : targets) sum += t.weight * t.point.chart();
    return Point(space, sum / total);
  }
  Point y = start;
  for (int iter = 0; iter < 1000; ++iter) {
    Vec g;
    bool first = true;
    for (const auto& t : targets) {
      const TangentVector v = log_map(y, t.point);
      if (first) {
        g = (t.weight / total) * v.components();
        first = false;
      } else {
        g += (t.weight / total) * v.components();
      }
    }
    TangentVector step(y, std::move(g));
    if (step.norm() <= 1e-11) return y;
    y = exp_map(step);
  }
  throw ConvergenceError("target-mean iteration did not converge");
}

}  // namespace

double barycenter_objective(const MeasureEnsemble& ensemble, const DiscreteMeasure& nu) {
  if (ensemble.space() != nu.space())
    throw SpaceMismatchError("objective arguments live on different spaces");
  double value = 0.0;
  for (const auto& entry : ensemble.entries()) {
    const double w2 = w2_distance(entry.measure, nu);
    value += entry.weight * w2 * w2;
  }
  return value;
}

EnsembleBarycenterResult w2_barycenter(const MeasureEnsemble& ensemble,
                                       const DiscreteMeasure& init, int max_iterations,
                                       double stop_tol) {
  if (ensemble.space() != init.space())
    throw SpaceMismatchError("initializer lives on a different space");
  DiscreteMeasure candidate = init;
  double objective = barycenter_objective(ensemble, candidate);
  std::vector<double> history{objective};
  int iterations = 0;

  for (; iterations < max_iterations; ++iterations) {
    std::vector<std::vector<WeightedTarget>> targets(candidate.size());
    for (const auto& entry : ensemble.entries()) {
      const Coupling coupling = solve_ot(candidate, entry.measure);
      for (const auto& e : coupling.entries())
        targets[e.i].push_back({coupling.target().atom(e.j), entry.weight * e.mass});
    }
    std::vector<Point> moved;
    moved.reserve(candidate.size());
    for (std::size_t l = 0; l < candidate.size(); ++l)
      moved.push_back(weighted_mean(candidate.space(), targets[l], candidate.atom(l)));
    DiscreteMeasure next(candidate.space(), std::move(moved), candidate.weights(), false, true);
    const double next_objective = barycenter_objective(ensemble, next);
    if (next_objective > objective) break;  // keep the monotone history
    const double decrease = objective - next_objective;
    candidate = std::move(next);
    objective = next_objective;
    history.push_back(objective);
    if (decrease < stop_tol) {
      ++iterations;
      break;
    }
  }

  double residual = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> warnings;
  try {
    residual = zero_sum_residual(candidate, ensemble);
  } catch (const CutLocusError& err) {
    warnings.push_back(std::string("zero-sum residual undefined: ") + err.what());
  }
  return {std::move(candidate), objective, iterations, std::move(history), residual,
          std::move(warnings)};
}

EnsembleBarycenterResult w2_barycenter(const MeasureEnsemble& ensemble) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < ensemble.size(); ++i)
    if (ensemble.entry(i).weight > ensemble.entry(best).weight) best = i;
  return w2_barycenter(ensemble, ensemble.entry(best).measure);
}

double zero_sum_residual(const DiscreteMeasure& candidate, const MeasureEnsemble& ensemble) {
  double worst = 0.0;
  std::vector<Vec> sums(candidate.size());
  std::vector<bool> seen(candidate.size(), false);
  for (const auto& entry : ensemble.entries()) {
    const Coupling coupling = solve_ot(candidate, entry.measure);
    std::vector<Vec> mean_log(candidate.size());
    std::vector<bool> started(candidate.size(), false);
    for (const auto& e : coupling.entries()) {
      const TangentVector v = log_map(candidate.atom(e.i), coupling.target().atom(e.j));
      const Vec scaled = (e.mass / candidate.weight(e.i)) * v.components();
      if (!started[e.i]) {
        mean_log[e.i] = scaled;
        started[e.i] = true;
      } else {
        mean_log[e.i] += scaled;
      }
    }
    for (std::size_t l = 0; l < candidate.size(); ++l) {
      if (!started[l]) continue;
      if (!seen[l]) {
        sums[l] = entry.weight * mean_log[l];
        seen[l] = true;
      } else {
        sums[l] += entry.weight * mean_log[l];
      }
    }
  }
  for (std::size_t l = 0; l < candidate.size(); ++l) {
    if (!seen[l]) continue;
    worst = std::max(worst, TangentVector(candidate.atom(l), sums[l]).norm());
  }
  return worst;
}

JensenReport jensen_gap(const MeasureEnsemble& ensemble, const EnsembleBarycenterResult& result) {
  JensenReport report{};
  report.var_barycenter = variance(result.measure);
  report.mean_variance = 0.0;
  for (const auto& entry : ensemble.entries())
    report.mean_variance += entry.weight * variance(entry.measure);
  report.linear_variance = variance(mixture(ensemble));
  report.jensen_gap = report.mean_variance - report.var_barycenter;
  report.linear_gap = report.linear_variance - report.var_barycenter;
  report.npc_jensen_holds = report.var_barycenter <= report.mean_variance + 1e-7;
  report.linear_jensen_holds = report.mean_variance <= report.linear_variance + 1e-7;
  return report;
}

}  // namespace wbary

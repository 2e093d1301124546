#include "wbary/symmetry.hpp"

#include <cmath>
#include <sstream>

namespace wbary {

IsometryGroup IsometryGroup::from_generators(const Space& space,
                                             std::vector<Isometry> generators,
                                             std::size_t max_elements) {
  const double eq_tol = 1e-9;
  std::vector<Isometry> elements{Isometry::identity(space)};
  auto known = [&](const Isometry& g) {
    for (const Isometry& e : elements)
      if (e.approx_equal(g, eq_tol)) return true;
    return false;
  };
  for (const Isometry& g : generators) {
    if (g.space() != space) throw SpaceMismatchError("generator lives on a different space");
    if (!known(g)) elements.push_back(g);
  }
  // Closure under products (inverses follow in a finite closed set).
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = elements.size();
    for (std::size_t a = 0; a < count && !grew; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        Isometry product = elements[a].compose(elements[b]);
        if (!known(product)) {
          if (elements.size() >= max_elements)
            throw std::invalid_argument(
                "group closure exceeded the expansion bound; generators may not span a finite "
                "group");
          elements.push_back(std::move(product));
          grew = true;
          break;
        }
      }
    }
  }
  return IsometryGroup(space, std::move(elements));
}

IsometryGroup IsometryGroup::trivial(const Space& space) {
  return IsometryGroup(space, {Isometry::identity(space)});
}

IsometryGroup IsometryGroup::planar_rotations(const Space& space, int k) {
  if (space.kind() != SpaceKind::euclidean || space.dim() != 2)
    throw std::invalid_argument("planar rotations need the euclidean plane");
  if (k < 1) throw std::invalid_argument("rotation order must be positive");
  const double angle = 2.0 * 3.14159265358979323846 / k;
  Mat rot(2, 2);
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return from_generators(space, {Isometry::euclidean(space, rot, Vec::Zero(2))},
                         static_cast<std::size_t>(k) + 1);
}

MeasureEnsemble orbit_ensemble(const IsometryGroup& group, const DiscreteMeasure& m) {
  if (group.space() != m.space()) throw SpaceMismatchError("group acts on a different space");
  std::vector<MeasureEnsemble::Entry> entries;
  entries.reserve(group.size());
  for (const Isometry& g : group.elements())
    entries.push_back({group.haar_weight(), pushforward(g, m)});
  return MeasureEnsemble(std::move(entries));
}

EnsembleBarycenterResult w2_projection(const IsometryGroup& group, const DiscreteMeasure& m) {
  const MeasureEnsemble orbit = orbit_ensemble(group, m);

  // Orbit barycenters often need orbit-structured supports, which no single
  // orbit entry can seed; the mixture can. Multistart and keep the best
  // objective.
  EnsembleBarycenterResult best = w2_barycenter(orbit, orbit.entry(0).measure);
  for (std::size_t i = 1; i < orbit.size(); ++i) {
    EnsembleBarycenterResult run = w2_barycenter(orbit, orbit.entry(i).measure);
    if (run.objective < best.objective) best = std::move(run);
  }
  if (group.size() > 1) {
    EnsembleBarycenterResult run = w2_barycenter(orbit, mixture(orbit));
    if (run.objective < best.objective) best = std::move(run);
  }

  // Degenerate couplings let the fixed point drift off the invariant set.
  // Group-averaging repairs that for free: the squared transport cost is
  // jointly convex under linear interpolation and the objective is
  // G-invariant, so the averaged candidate can only improve.
  if (group.size() > 1) {
    const DiscreteMeasure averaged = mixture(orbit_ensemble(group, best.measure));
    const double averaged_objective = barycenter_objective(orbit, averaged);
    if (averaged_objective <= best.objective + 1e-12) {
      best.measure = averaged;
      best.objective = averaged_objective;
      if (!best.history.empty() && averaged_objective < best.history.back())
        best.history.push_back(averaged_objective);
      try {
        best.zero_sum_residual = zero_sum_residual(best.measure, orbit);
      } catch (const CutLocusError&) {
        best.zero_sum_residual = std::numeric_limits<double>::quiet_NaN();
      }
    } else {
      best.warnings.push_back("group averaging did not improve the objective; kept the raw fixed point");
    }
  }

  for (std::size_t i = 0; i < group.size(); ++i) {
    const DiscreteMeasure image = pushforward(group.element(i), best.measure);
    if (!approx_equal(image, best.measure, tol().atom_merge, 1e-9)) {
      std::ostringstream msg;
      msg << "projection is not invariant under group element " << i;
      best.warnings.push_back(msg.str());
    }
  }
  return best;
}

DiscreteMeasure l2_projection(const IsometryGroup& group, const DiscreteMeasure& m) {
  return mixture(orbit_ensemble(group, m));
}

SandwichReport sandwich_report(const IsometryGroup& group, const DiscreteMeasure& m) {
  SandwichReport report{};
  EnsembleBarycenterResult projection = w2_projection(group, m);
  report.var_w = variance(projection.measure);
  report.var_mu = variance(m);
  report.var_l2 = variance(l2_projection(group, m));
  report.left_holds = report.var_w <= report.var_mu + 1e-7;
  report.right_holds = report.var_mu <= report.var_l2 + 1e-7;
  report.left_asserted = m.space().is_npc();
  report.warnings = std::move(projection.warnings);
  return report;
}

}  // namespace wbary

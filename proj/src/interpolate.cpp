#include "wbary/interpolate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wbary {

VectorField::VectorField(DiscreteMeasure base, std::vector<TangentVector> vectors)
    : base_(std::move(base)), vectors_(std::move(vectors)) {
  if (vectors_.size() != base_.size())
    throw std::invalid_argument("vector field must assign one vector per atom");
  for (std::size_t i = 0; i < vectors_.size(); ++i)
    if (distance(vectors_[i].base(), base_.atom(i)) > 1e-9)
      throw std::invalid_argument("vector field base points must coincide with the atoms");
}

VectorField VectorField::zero(const DiscreteMeasure& m) {
  std::vector<TangentVector> vs;
  vs.reserve(m.size());
  for (const Point& p : m.atoms()) {
    Vec zero;
    if (m.space().kind() == SpaceKind::balloon_string && p.tag() == Component::string)
      zero = Vec::Zero(1);
    else
      zero = Vec::Zero(m.space().chart_size());
    vs.emplace_back(p, std::move(zero));
  }
  return VectorField(m, std::move(vs));
}

VectorField VectorField::from_assignment_coupling(const Coupling& c, TieBreak tie) {
  std::vector<int> target(c.source().size(), -1);
  for (const auto& e : c.entries()) {
    if (target[e.i] != -1)
      throw std::invalid_argument("coupling splits mass; not assignment-type");
    target[e.i] = static_cast<int>(e.j);
  }
  std::vector<TangentVector> vs;
  vs.reserve(c.source().size());
  for (std::size_t i = 0; i < c.source().size(); ++i) {
    if (target[i] < 0) throw std::invalid_argument("coupling leaves an atom unmatched");
    vs.push_back(log_map(c.source().atom(i), c.target().atom(static_cast<std::size_t>(target[i])), tie));
  }
  return VectorField(c.source(), std::move(vs));
}

std::string to_string(PathKind kind) {
  switch (kind) {
    case PathKind::displacement: return "displacement";
    case PathKind::quasi_geodesic: return "quasi-geodesic";
    case PathKind::linear: return "linear";
  }
  return "?";
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
  g.front() = 0.0;
  g.back() = 1.0;
  return g;
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 2 || grid.front() != 0.0 || grid.back() != 1.0)
    throw std::invalid_argument("grid must increase from 0 to 1");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw std::invalid_argument("grid must be strictly increasing");
}

}  // namespace

DiscreteMeasure displacement_interpolant(const Coupling& c, double t, TieBreak tie) {
  if (t == 0.0) return c.source();
  if (t == 1.0) return c.target();
  std::vector<Point> atoms;
  std::vector<double> weights;
  atoms.reserve(c.entries().size());
  for (const auto& e : c.entries()) {
    atoms.push_back(geodesic_point(c.source().atom(e.i), c.target().atom(e.j), t, tie));
    weights.push_back(e.mass);
  }
  return DiscreteMeasure(c.source().space(), std::move(atoms), std::move(weights), false, true);
}

MeasurePath displacement_path(const Coupling& c, const std::vector<double>& grid, TieBreak tie) {
  check_grid(grid);
  MeasurePath path{grid, {}, PathKind::displacement};
  path.measures.reserve(grid.size());
  for (double t : grid) path.measures.push_back(displacement_interpolant(c, t, tie));
  return path;
}

MeasurePath quasi_geodesic(const DiscreteMeasure& mu, const VectorField& field,
                           const std::vector<double>& grid) {
  check_grid(grid);
  if (!approx_equal(field.base(), mu, tol().atom_merge))
    throw std::invalid_argument("field is not defined on the measure's atoms");
  MeasurePath path{grid, {}, PathKind::quasi_geodesic};
  for (double t : grid) {
    std::vector<Point> atoms;
    atoms.reserve(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) atoms.push_back(exp_map(field.at(i).scaled(t)));
    path.measures.emplace_back(mu.space(), std::move(atoms), mu.weights(), false, true);
  }
  return path;
}

MeasurePath linear_path(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        const std::vector<double>& grid) {
  check_grid(grid);
  if (mu.space() != nu.space()) throw SpaceMismatchError("linear path endpoints differ in space");
  MeasurePath path{grid, {}, PathKind::linear};
  for (double t : grid) {
    if (t == 0.0) {
      path.measures.push_back(mu);
      continue;
    }
    if (t == 1.0) {
      path.measures.push_back(nu);
      continue;
    }
    path.measures.push_back(mixture(MeasureEnsemble({{1.0 - t, mu}, {t, nu}})));
  }
  return path;
}

ConvexityReport convexity_certificate(const std::vector<double>& values, double tolerance,
                                      double t0, double t1) {
  if (values.size() < 3)
    throw std::invalid_argument("convexity certificate needs at least three grid values");
  const double h = (t1 - t0) / static_cast<double>(values.size() - 1);
  ConvexityReport report{true, std::numeric_limits<double>::infinity(), t0};
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double second = values[i + 1] - 2.0 * values[i] + values[i - 1];
    if (second < report.worst_violation) {
      report.worst_violation = second;
      report.location = t0 + h * static_cast<double>(i);
    }
  }
  report.convex = report.worst_violation >= -tolerance;
  return report;
}

}  // namespace wbary

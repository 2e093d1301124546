#pragma once

#include "wbary/interpolate.hpp"

namespace wbary {

enum class MeanMethod { gradient, grid };

std::string to_string(MeanMethod m);

/// A certified point barycenter: the minimizing point, the attained value
/// (the variance), and how it was found.
struct BarycenterResult {
  Point point;
  double value;
  MeanMethod method;
  int iterations;
  double residual;  // |sum_i w_i log(point, x_i)|; NaN when some log is undefined
  bool multiple_minima = false;
};

/// The variance objective evaluated at a candidate point.
double variance_at(const DiscreteMeasure& m, const Point& y);

/// Global minimizer of y -> sum_i w_i d^2(x_i, y). Karcher gradient descent
/// on the uniquely-minimized spaces (euclidean, hyperbolic); brute-force grid
/// with local refinement elsewhere. Reports multiple minima when two grid
/// minima agree in value but are far apart.
BarycenterResult frechet_mean(const DiscreteMeasure& m);

/// Minimum value of the variance objective.
double variance(const DiscreteMeasure& m);

/// Derivative at t = 0 of t -> W_2^2(delta_{gamma0}, mu_t) along the
/// quasi-geodesic generated by the field: -2 sum_i w_i <log(x_i, gamma0), V(x_i)>.
/// Requires gamma0 to be a barycenter of m (residual <= 1e-8).
double first_variation(const DiscreteMeasure& m, const VectorField& field, const Point& gamma0);

}  // namespace wbary

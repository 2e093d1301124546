#include "wbary/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace wbary {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp1(double x) { return std::min(1.0, std::max(-1.0, x)); }

double mean_tangent_norm(const DiscreteMeasure& m, const Point& y, Vec* out) {
  Vec sum;
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const TangentVector v = log_map(y, m.atom(i));
    if (first) {
      sum = m.weight(i) * v.components();
      first = false;
    } else {
      sum += m.weight(i) * v.components();
    }
  }
  if (out) *out = sum;
  TangentVector total(y, sum);
  return total.norm();
}

double residual_or_nan(const DiscreteMeasure& m, const Point& y) {
  try {
    return mean_tangent_norm(m, y, nullptr);
  } catch (const CutLocusError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::size_t lowest_cost_atom(const DiscreteMeasure& m) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double v = variance_at(m, m.atom(i));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

BarycenterResult karcher_descent(const DiscreteMeasure& m) {
  Point y = m.atom(lowest_cost_atom(m));
  Vec grad;
  double residual = 0.0;
  int iterations = 0;
  for (; iterations < tol().karcher_max_iterations; ++iterations) {
    residual = mean_tangent_norm(m, y, &grad);
    if (residual <= tol().karcher_residual) break;
    y = exp_map(TangentVector(y, 0.5 * grad));
  }
  if (residual > tol().karcher_residual)
    throw ConvergenceError("karcher descent did not reach the residual tolerance");
  return {y, variance_at(m, y), MeanMethod::gradient, iterations, residual, false};
}

// --- grid searches -------------------------------------------------------

struct GridCandidate {
  Point point;
  double value;
};

// Compass search over a chart parameterization. Probes +-h along each
// coordinate, moves to the best improvement, halves the steps otherwise.
std::pair<Point, double> refine(const DiscreteMeasure& m,
                                const std::function<Point(const Vec&)>& build, Vec params,
                                Vec steps, int* rounds_out) {
  Point best = build(params);
  double best_value = variance_at(m, best);
  int rounds = 0;
  while (steps.maxCoeff() > tol().grid_refine_step_min && rounds < 10000) {
    ++rounds;
    bool improved = false;
    Vec best_params = params;
    for (Eigen::Index d = 0; d < params.size(); ++d) {
      for (double dir : {1.0, -1.0}) {
        Vec probe = params;
        probe(d) += dir * steps(d);
        Point candidate = build(probe);
        const double value = variance_at(m, candidate);
        if (value < best_value) {
          best_value = value;
          best = candidate;
          best_params = probe;
          improved = true;
        }
      }
    }
    if (improved)
      params = best_params;
    else
      steps *= 0.5;
  }
  if (rounds_out) *rounds_out = rounds;
  return {best, best_value};
}

Vec graticule_embedding(double colat, double lon, double radius) {
  const double sc = std::sin(colat);
  Vec v(3);
  v << radius * sc * std::cos(lon), radius * sc * std::sin(lon), radius * std::cos(colat);
  return v;
}

// Raw graticule scan for the round sphere. Returns the best cell and any
// well-separated near-minimal cells (multistart seeds / multiplicity report).
void sphere_scan(const DiscreteMeasure& m, std::vector<GridCandidate>& seeds,
                 bool* multiple) {
  const Space& sp = m.space();
  const double r = sp.radius();
  const int nlon = tol().grid_per_closed_geodesic;
  const int nlat = nlon / 2;
  const std::size_t n = m.size();
  std::vector<double> ax(n), ay(n), az(n), w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec& a = m.atom(k).chart();
    ax[k] = a(0) / r;
    ay[k] = a(1) / r;
    az[k] = a(2) / r;
    w[k] = m.weight(k);
  }
  std::vector<double> lon_cos(nlon), lon_sin(nlon);
  for (int j = 0; j < nlon; ++j) {
    lon_cos[j] = std::cos(2.0 * kPi * j / nlon);
    lon_sin[j] = std::sin(2.0 * kPi * j / nlon);
  }

  std::vector<std::pair<double, std::pair<int, int>>> cells;  // (value, (i, j))
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= nlat; ++i) {
    const double colat = kPi * i / nlat;
    const double sc = std::sin(colat), cc = std::cos(colat);
    const int jmax = (i == 0 || i == nlat) ? 1 : nlon;
    for (int j = 0; j < jmax; ++j) {
      const double yx = sc * lon_cos[j], yy = sc * lon_sin[j], yz = cc;
      double f = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double theta = std::acos(clamp1(yx * ax[k] + yy * ay[k] + yz * az[k]));
        f += w[k] * theta * theta;
      }
      f *= r * r;
      if (f < best + tol().mean_multiplicity_value) {
        cells.push_back({f, {i, j}});
        if (f < best) best = f;
      }
    }
  }

  // Keep the minimum plus well-separated near-minima.
  std::sort(cells.begin(), cells.end());
  *multiple = false;
  for (const auto& [value, cell] : cells) {
    if (value > best + tol().mean_multiplicity_value) break;
    Point p(sp, graticule_embedding(kPi * cell.first / nlat, 2.0 * kPi * cell.second / nlon, r));
    bool separated = true;
    for (const auto& s : seeds)
      if (distance(s.point, p) <= tol().mean_multiplicity_separation) {
        separated = false;
        break;
      }
    if (separated) {
      if (!seeds.empty()) *multiple = true;
      seeds.push_back({p, value});
      if (seeds.size() >= 6) break;
    }
  }
}

BarycenterResult sphere_mean(const DiscreteMeasure& m) {
  const Space& sp = m.space();
  const double r = sp.radius();
  const int nlon = tol().grid_per_closed_geodesic;
  std::vector<GridCandidate> seeds;
  bool multiple = false;
  sphere_scan(m, seeds, &multiple);

  auto build = [&](const Vec& params) {
    return Point::sphere_embedding(sp, graticule_embedding(params(0), params(1), r));
  };
  Point best_point = seeds.front().point;
  double best_value = std::numeric_limits<double>::infinity();
  int rounds_total = 0;
  for (const auto& seed : seeds) {
    // Recover graticule parameters from the seed embedding.
    const Vec& e = seed.point.chart();
    Vec params(2);
    params << std::acos(clamp1(e(2) / r)), std::atan2(e(1), e(0));
    Vec steps(2);
    steps << kPi / (nlon / 2), 2.0 * kPi / nlon;
    int rounds = 0;
    auto [point, value] = refine(m, build, params, steps, &rounds);
    rounds_total += rounds;
    if (value < best_value || (value == best_value && chart_less(point, best_point))) {
      best_value = value;
      best_point = point;
    }
  }
  return {best_point, best_value, MeanMethod::grid, rounds_total, residual_or_nan(m, best_point),
          multiple};
}

BarycenterResult cylinder_mean(const DiscreteMeasure& m) {
  const Space& sp = m.space();
  const double c = sp.circumference();
  const int ngrid = tol().grid_per_closed_geodesic;
  // The metric is a product: the axial coordinate of any minimizer is the
  // weighted mean; only the circle factor needs a search.
  double axial = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) axial += m.weight(i) * m.atom(i).chart()(0);

  auto angular_value = [&](double theta) {
    double f = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double raw = std::abs(theta - m.atom(i).chart()(1));
      const double d = std::min(raw, c - raw);
      f += m.weight(i) * d * d;
    }
    return f;
  };

  double best_theta = 0.0, best_f = std::numeric_limits<double>::infinity();
  bool multiple = false;
  std::vector<double> near;
  for (int j = 0; j < ngrid; ++j) {
    const double theta = c * j / ngrid;
    const double f = angular_value(theta);
    if (f < best_f) {
      best_f = f;
      best_theta = theta;
    }
  }
  for (int j = 0; j < ngrid; ++j) {
    const double theta = c * j / ngrid;
    const double raw = std::abs(theta - best_theta);
    const double sep = std::min(raw, c - raw);
    if (angular_value(theta) <= best_f + tol().mean_multiplicity_value &&
        sep > tol().mean_multiplicity_separation)
      multiple = true;
  }

  auto build = [&](const Vec& params) {
    Vec chart(2);
    chart << params(0), params(1);
    return Point(sp, std::move(chart));
  };
  Vec params(2);
  params << axial, best_theta;
  Vec steps(2);
  steps << 0.0, c / ngrid;  // axial already exact
  int rounds = 0;
  auto [point, value] = refine(m, build, params, steps, &rounds);
  return {point, value, MeanMethod::grid, rounds, residual_or_nan(m, point), multiple};
}

BarycenterResult balloon_mean(const DiscreteMeasure& m) {
  const Space& sp = m.space();
  const double r = sp.radius();
  const double len = sp.string_length();
  const int nlon = tol().grid_per_closed_geodesic;
  const int nlat = nlon / 2;
  const double spacing = sp.circumference() / nlon;

  // Sphere-component graticule plus string subdivision at matching spacing.
  std::vector<GridCandidate> cells;
  for (int i = 0; i <= nlat; ++i) {
    const double colat = kPi * i / nlat;
    const int jmax = (i == 0 || i == nlat) ? 1 : nlon;
    for (int j = 0; j < jmax; ++j) {
      Point p(sp, Component::sphere, graticule_embedding(colat, 2.0 * kPi * j / nlon, r));
      cells.push_back({p, variance_at(m, p)});
    }
  }
  const int nstring = static_cast<int>(std::ceil(len / spacing));
  for (int k = 0; k <= nstring; ++k) {
    Vec s(1);
    s << std::min(len, k * spacing);
    Point p(sp, Component::string, std::move(s));
    cells.push_back({p, variance_at(m, p)});
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& cell : cells) best = std::min(best, cell.value);
  std::sort(cells.begin(), cells.end(), [](const GridCandidate& a, const GridCandidate& b) {
    return a.value < b.value;
  });
  std::vector<GridCandidate> seeds;
  bool multiple = false;
  for (const auto& cell : cells) {
    if (cell.value > best + tol().mean_multiplicity_value) break;
    bool separated = true;
    for (const auto& s : seeds)
      if (distance(s.point, cell.point) <= tol().mean_multiplicity_separation) {
        separated = false;
        break;
      }
    if (separated) {
      if (!seeds.empty()) multiple = true;
      seeds.push_back(cell);
      if (seeds.size() >= 6) break;
    }
  }

  Point best_point = seeds.front().point;
  double best_value = std::numeric_limits<double>::infinity();
  int rounds_total = 0;
  for (const auto& seed : seeds) {
    Point refined = seed.point;
    double value = seed.value;
    int rounds = 0;
    if (seed.point.tag() == Component::string) {
      auto build = [&](const Vec& params) {
        Vec s(1);
        s << std::min(len, std::max(0.0, params(0)));
        return Point(sp, Component::string, std::move(s));
      };
      Vec params(1), steps(1);
      params << seed.point.chart()(0);
      steps << spacing;
      std::tie(refined, value) = refine(m, build, params, steps, &rounds);
    } else {
      auto build = [&](const Vec& params) {
        return Point::balloon_sphere_embedding(
            sp, graticule_embedding(params(0), params(1), r));
      };
      const Vec& e = seed.point.chart();
      Vec params(2), steps(2);
      params << std::acos(clamp1(e(2) / r)), std::atan2(e(1), e(0));
      steps << kPi / nlat, 2.0 * kPi / nlon;
      std::tie(refined, value) = refine(m, build, params, steps, &rounds);
    }
    rounds_total += rounds;
    if (value < best_value || (value == best_value && chart_less(refined, best_point))) {
      best_value = value;
      best_point = refined;
    }
  }
  return {best_point, best_value, MeanMethod::grid, rounds_total,
          residual_or_nan(m, best_point), multiple};
}

}  // namespace

std::string to_string(MeanMethod m) {
  return m == MeanMethod::gradient ? "gradient" : "grid";
}

double variance_at(const DiscreteMeasure& m, const Point& y) {
  double f = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double d = distance(m.atom(i), y);
    f += m.weight(i) * d * d;
  }
  return f;
}

BarycenterResult frechet_mean(const DiscreteMeasure& m) {
  if (m.size() == 1)
    return {m.atom(0), 0.0, MeanMethod::gradient, 0, 0.0, false};
  switch (m.space().kind()) {
    case SpaceKind::euclidean:
    case SpaceKind::hyperbolic: return karcher_descent(m);
    case SpaceKind::sphere: return sphere_mean(m);
    case SpaceKind::flat_cylinder: return cylinder_mean(m);
    case SpaceKind::balloon_string: return balloon_mean(m);
  }
  throw std::invalid_argument("unknown space kind");
}

double variance(const DiscreteMeasure& m) { return frechet_mean(m).value; }

double first_variation(const DiscreteMeasure& m, const VectorField& field, const Point& gamma0) {
  if (!approx_equal(field.base(), m, tol().atom_merge))
    throw std::invalid_argument("field is not defined on the measure's atoms");
  const double residual = mean_tangent_norm(m, gamma0, nullptr);
  if (!(residual <= 1e-8))
    throw std::invalid_argument("gamma0 is not a barycenter of the measure");
  double sum = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    sum += m.weight(i) * inner(log_map(m.atom(i), gamma0), field.at(i));
  return -2.0 * sum;
}

}  // namespace wbary

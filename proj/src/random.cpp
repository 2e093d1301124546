#include "wbary/random.hpp"

#include <cmath>

namespace wbary {

namespace {

constexpr double kPi = 3.14159265358979323846;

Point random_point(const Space& space, double extent, Rng& rng) {
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      Vec x(space.dim());
      for (int k = 0; k < space.dim(); ++k) x(k) = rng.uniform(-extent, extent);
      return Point(space, std::move(x));
    }
    case SpaceKind::sphere: {
      // Tangent square at the north pole, pushed out by exp.
      Vec v = Vec::Zero(space.dim() + 1);
      for (int k = 0; k < space.dim(); ++k) v(k) = rng.uniform(-extent, extent);
      return exp_map(TangentVector(sphere_pole(space, true), std::move(v)));
    }
    case SpaceKind::hyperbolic: {
      Vec origin = Vec::Zero(space.dim() + 1);
      origin(0) = space.curvature_scale();
      Vec v = Vec::Zero(space.dim() + 1);
      for (int k = 1; k <= space.dim(); ++k) v(k) = rng.uniform(-extent, extent);
      return exp_map(TangentVector(Point(space, std::move(origin)), std::move(v)));
    }
    case SpaceKind::flat_cylinder: {
      Vec x(2);
      x << rng.uniform(-extent, extent), rng.uniform(0.0, space.circumference());
      return Point(space, std::move(x));
    }
    case SpaceKind::balloon_string: {
      if (rng.uniform() < 0.5) {
        const double colat = rng.uniform(0.0, kPi);
        const double lon = rng.uniform(0.0, 2.0 * kPi);
        Vec e(3);
        const double r = space.radius();
        e << r * std::sin(colat) * std::cos(lon), r * std::sin(colat) * std::sin(lon),
            r * std::cos(colat);
        return Point(space, Component::sphere, std::move(e));
      }
      Vec s(1);
      s << rng.uniform(0.0, space.string_length());
      return Point(space, Component::string, std::move(s));
    }
  }
  throw std::invalid_argument("unknown space kind");
}

Vec tangent_projection(const Point& p, Vec raw) {
  const Space& sp = p.space();
  switch (sp.kind()) {
    case SpaceKind::sphere: {
      const Vec unit = p.chart() / sp.radius();
      return raw - raw.dot(unit) * unit;
    }
    case SpaceKind::hyperbolic: {
      const double s2 = sp.curvature_scale() * sp.curvature_scale();
      return raw + (detail::minkowski(raw, p.chart()) / s2) * p.chart();
    }
    case SpaceKind::balloon_string: {
      if (p.tag() == Component::string) return raw;
      const Vec unit = p.chart() / sp.radius();
      return raw - raw.dot(unit) * unit;
    }
    default: return raw;
  }
}

}  // namespace

DiscreteMeasure random_measure(const Space& space, int atoms, double extent, Rng& rng) {
  if (atoms < 1) throw std::invalid_argument("need at least one atom");
  std::vector<Point> points;
  points.reserve(atoms);
  for (int i = 0; i < atoms; ++i) points.push_back(random_point(space, extent, rng));
  std::vector<double> weights(atoms);
  double sum = 0.0;
  for (double& w : weights) {
    w = rng.exponential() + rng.exponential();  // symmetric Dirichlet(2)
    sum += w;
  }
  for (double& w : weights) w /= sum;
  return DiscreteMeasure(space, std::move(points), std::move(weights), true);
}

VectorField random_vector_field(const DiscreteMeasure& m, double max_norm, Rng& rng) {
  std::vector<TangentVector> vs;
  vs.reserve(m.size());
  for (const Point& p : m.atoms()) {
    const int size = (m.space().kind() == SpaceKind::balloon_string &&
                      p.tag() == Component::string)
                         ? 1
                         : m.space().chart_size();
    Vec raw(size);
    Vec projected;
    double norm = 0.0;
    do {
      for (int k = 0; k < size; ++k) raw(k) = rng.uniform(-1.0, 1.0);
      projected = tangent_projection(p, raw);
      TangentVector probe(p, projected);
      norm = probe.norm();
    } while (norm < 1e-6);
    const double magnitude = rng.uniform(0.0, max_norm);
    vs.emplace_back(p, projected * (magnitude / norm));
  }
  return VectorField(m, std::move(vs));
}

namespace {

Mat random_orthogonal(int n, Rng& rng) {
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

}  // namespace

Isometry random_isometry(const Space& space, Rng& rng) {
  switch (space.kind()) {
    case SpaceKind::euclidean: {
      Mat q = random_orthogonal(space.dim(), rng);
      Vec t(space.dim());
      for (int k = 0; k < space.dim(); ++k) t(k) = rng.uniform(-1.0, 1.0);
      return Isometry::euclidean(space, std::move(q), std::move(t));
    }
    case SpaceKind::sphere:
      return Isometry::sphere_rotation(space, random_orthogonal(space.dim() + 1, rng));
    case SpaceKind::hyperbolic: {
      const int n = space.dim() + 1;
      Mat rot = Mat::Identity(n, n);
      rot.block(1, 1, space.dim(), space.dim()) = random_orthogonal(space.dim(), rng);
      const double a = rng.uniform(-1.0, 1.0);
      Mat boost = Mat::Identity(n, n);
      boost(0, 0) = std::cosh(a);
      boost(0, 1) = std::sinh(a);
      boost(1, 0) = std::sinh(a);
      boost(1, 1) = std::cosh(a);
      return Isometry::lorentz(space, boost * rot);
    }
    case SpaceKind::flat_cylinder:
      return Isometry::cylinder(space, rng.uniform() < 0.5, rng.uniform(-1.0, 1.0),
                                rng.uniform() < 0.5,
                                rng.uniform(0.0, space.circumference()));
    case SpaceKind::balloon_string: {
      const double angle = rng.uniform(0.0, 2.0 * kPi);
      Mat rot = Mat::Identity(3, 3);
      rot(0, 0) = std::cos(angle);
      rot(0, 1) = -std::sin(angle);
      rot(1, 0) = std::sin(angle);
      rot(1, 1) = std::cos(angle);
      if (rng.uniform() < 0.5) {
        Mat reflect = Mat::Identity(3, 3);
        reflect(0, 0) = -1.0;
        rot = rot * reflect;
      }
      return Isometry::balloon_rotation(space, std::move(rot));
    }
  }
  throw std::invalid_argument("unknown space kind");
}

}  // namespace wbary

#include "wbary/geometry.hpp"

#include <cmath>
#include <sstream>

namespace wbary {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

void require_same_space(const Point& p, const Point& q) {
  if (p.space() != q.space())
    throw SpaceMismatchError("points live on different spaces: " + p.space().description() +
                             " vs " + q.space().description());
}

double orthogonality_defect(const Mat& m) {
  return (m.transpose() * m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

Mat minkowski_metric(int n) {
  Mat j = Mat::Identity(n, n);
  j(0, 0) = -1.0;
  return j;
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean: return "euclidean";
    case SpaceKind::sphere: return "sphere";
    case SpaceKind::hyperbolic: return "hyperbolic";
    case SpaceKind::flat_cylinder: return "flat_cylinder";
    case SpaceKind::balloon_string: return "balloon_string";
  }
  return "?";
}

std::string to_string(Component c) {
  switch (c) {
    case Component::none: return "";
    case Component::sphere: return "sphere";
    case Component::string: return "string";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Space

Space Space::euclidean(int dim) {
  require(dim >= 1, "euclidean dim must be >= 1");
  return Space(SpaceKind::euclidean, dim, 0.0, 0.0);
}

Space Space::sphere(int dim, double circumference) {
  require(dim >= 1, "sphere dim must be >= 1");
  require(circumference > 0.0, "sphere circumference must be positive");
  return Space(SpaceKind::sphere, dim, circumference, 0.0);
}

Space Space::hyperbolic(int dim, double curvature_scale) {
  require(dim >= 1, "hyperbolic dim must be >= 1");
  require(curvature_scale > 0.0, "curvature scale must be positive");
  return Space(SpaceKind::hyperbolic, dim, curvature_scale, 0.0);
}

Space Space::flat_cylinder(double circumference) {
  require(circumference > 0.0, "cylinder circumference must be positive");
  return Space(SpaceKind::flat_cylinder, 2, circumference, 0.0);
}

Space Space::balloon_string(double circumference, double string_length) {
  require(circumference > 0.0, "balloon circumference must be positive");
  require(string_length > 0.0, "string length must be positive");
  return Space(SpaceKind::balloon_string, 2, circumference, string_length);
}

double Space::circumference() const {
  require(kind_ == SpaceKind::sphere || kind_ == SpaceKind::flat_cylinder ||
              kind_ == SpaceKind::balloon_string,
          "space has no circumference");
  return a_;
}

double Space::curvature_scale() const {
  require(kind_ == SpaceKind::hyperbolic, "space has no curvature scale");
  return a_;
}

double Space::string_length() const {
  require(kind_ == SpaceKind::balloon_string, "space has no string");
  return b_;
}

double Space::radius() const { return circumference() / (2.0 * kPi); }

int Space::chart_size() const {
  switch (kind_) {
    case SpaceKind::euclidean: return dim_;
    case SpaceKind::sphere: return dim_ + 1;
    case SpaceKind::hyperbolic: return dim_ + 1;
    case SpaceKind::flat_cylinder: return 2;
    case SpaceKind::balloon_string: return 3;
  }
  return 0;
}

bool Space::operator==(const Space& other) const {
  return kind_ == other.kind_ && dim_ == other.dim_ && a_ == other.a_ && b_ == other.b_;
}

std::string Space::description() const {
  std::ostringstream out;
  out << to_string(kind_) << "(dim=" << dim_;
  switch (kind_) {
    case SpaceKind::sphere:
    case SpaceKind::flat_cylinder: out << ", c=" << a_; break;
    case SpaceKind::hyperbolic: out << ", scale=" << a_; break;
    case SpaceKind::balloon_string: out << ", c=" << a_ << ", string=" << b_; break;
    default: break;
  }
  out << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// Point

Vec south_pole_embedding(const Space& space) {
  Vec s = Vec::Zero(space.chart_size());
  s(s.size() - 1) = -space.radius();
  return s;
}

Point sphere_pole(const Space& space, bool north) {
  Vec s = Vec::Zero(space.chart_size());
  s(s.size() - 1) = north ? space.radius() : -space.radius();
  if (space.kind() == SpaceKind::balloon_string)
    return Point(space, Component::sphere, std::move(s));
  return Point(space, std::move(s));
}

Point::Point(Space space, Vec chart) : Point(std::move(space), Component::none, std::move(chart)) {}

Point::Point(Space space, Component tag, Vec chart)
    : space_(std::move(space)), tag_(tag), chart_(std::move(chart)) {
  const double eps = tol().point_constraint;
  switch (space_.kind()) {
    case SpaceKind::euclidean:
      require(tag_ == Component::none, "euclidean points carry no component tag");
      require(chart_.size() == space_.dim(), "euclidean chart size mismatch");
      break;
    case SpaceKind::sphere: {
      require(tag_ == Component::none, "sphere points carry no component tag");
      require(chart_.size() == space_.dim() + 1, "sphere chart size mismatch");
      require(std::abs(chart_.norm() - space_.radius()) <= eps,
              "sphere embedding norm differs from radius");
      break;
    }
    case SpaceKind::hyperbolic: {
      require(tag_ == Component::none, "hyperbolic points carry no component tag");
      require(chart_.size() == space_.dim() + 1, "hyperboloid chart size mismatch");
      const double s2 = space_.curvature_scale() * space_.curvature_scale();
      require(std::abs(detail::minkowski(chart_, chart_) + s2) <= eps * std::max(1.0, s2),
              "hyperboloid constraint violated");
      require(chart_(0) > 0.0, "hyperboloid point must lie on the upper sheet");
      break;
    }
    case SpaceKind::flat_cylinder: {
      require(tag_ == Component::none, "cylinder points carry no component tag");
      require(chart_.size() == 2, "cylinder chart size mismatch");
      chart_(1) = detail::wrap_angle(chart_(1), space_.circumference());
      break;
    }
    case SpaceKind::balloon_string: {
      if (tag_ == Component::sphere) {
        require(chart_.size() == 3, "balloon sphere chart size mismatch");
        require(std::abs(chart_.norm() - space_.radius()) <= eps,
                "balloon sphere embedding norm differs from radius");
        // The gluing point is canonically represented on the string.
        if ((chart_ - south_pole_embedding(space_)).norm() <= eps) {
          tag_ = Component::string;
          chart_ = Vec::Zero(1);
        }
      } else if (tag_ == Component::string) {
        require(chart_.size() == 1, "string chart size mismatch");
        const double len = space_.string_length();
        require(chart_(0) >= -eps && chart_(0) <= len + eps, "string coordinate out of range");
        chart_(0) = std::min(std::max(chart_(0), 0.0), len);
      } else {
        throw std::invalid_argument("balloon_string points need a component tag");
      }
      break;
    }
  }
}

double Point::string_coordinate() const {
  require(tag_ == Component::string, "not a string-component point");
  return chart_(0);
}

Point Point::sphere_embedding(const Space& space, Vec v) {
  require(v.norm() > 0.0, "cannot normalize a zero embedding vector");
  v *= space.radius() / v.norm();
  return Point(space, std::move(v));
}

Point Point::hyperboloid_embedding(const Space& space, Vec v) {
  const double q = detail::minkowski(v, v);
  require(q < 0.0 && v(0) > 0.0, "not a timelike upper-sheet vector");
  v *= space.curvature_scale() / std::sqrt(-q);
  return Point(space, std::move(v));
}

Point Point::balloon_sphere_embedding(const Space& space, Vec v) {
  require(v.norm() > 0.0, "cannot normalize a zero embedding vector");
  v *= space.radius() / v.norm();
  return Point(space, Component::sphere, std::move(v));
}

// ---------------------------------------------------------------------------
// TangentVector

TangentVector::TangentVector(Point base, Vec components)
    : base_(std::move(base)), components_(std::move(components)) {
  const double eps = tol().point_constraint;
  const Space& sp = base_.space();
  switch (sp.kind()) {
    case SpaceKind::euclidean:
      require(components_.size() == sp.dim(), "tangent size mismatch");
      break;
    case SpaceKind::sphere: {
      require(components_.size() == sp.dim() + 1, "tangent size mismatch");
      const double defect = std::abs(base_.chart().dot(components_)) / sp.radius();
      require(defect <= eps * std::max(1.0, components_.norm()), "vector not tangent to sphere");
      break;
    }
    case SpaceKind::hyperbolic: {
      require(components_.size() == sp.dim() + 1, "tangent size mismatch");
      const double defect =
          std::abs(detail::minkowski(base_.chart(), components_)) / sp.curvature_scale();
      require(defect <= eps * std::max(1.0, components_.norm()),
              "vector not tangent to hyperboloid");
      break;
    }
    case SpaceKind::flat_cylinder:
      require(components_.size() == 2, "tangent size mismatch");
      break;
    case SpaceKind::balloon_string:
      if (base_.tag() == Component::sphere) {
        require(components_.size() == 3, "tangent size mismatch");
        const double defect = std::abs(base_.chart().dot(components_)) / sp.radius();
        require(defect <= eps * std::max(1.0, components_.norm()),
                "vector not tangent to balloon sphere");
      } else {
        require(components_.size() == 1, "string tangent must be scalar");
      }
      break;
  }
}

double TangentVector::norm() const {
  if (base_.space().kind() == SpaceKind::hyperbolic)
    return std::sqrt(std::max(0.0, detail::minkowski(components_, components_)));
  return components_.norm();
}

TangentVector TangentVector::scaled(double factor) const {
  TangentVector v(base_, components_ * factor);
  v.cross_to_string_ = cross_to_string_;
  v.sphere_branch_ = sphere_branch_;
  return v;
}

TangentVector TangentVector::crossing_to_string(Point base, Vec components) {
  require(base.space().kind() == SpaceKind::balloon_string && base.tag() == Component::sphere,
          "crossing tangents start on the balloon sphere");
  TangentVector v(std::move(base), std::move(components));
  v.cross_to_string_ = true;
  return v;
}

TangentVector TangentVector::with_sphere_branch(Point base, Vec components, Vec branch) {
  require(base.space().kind() == SpaceKind::balloon_string && base.tag() == Component::string,
          "sphere branches attach to string-based tangents");
  require(branch.size() == 3, "branch must be an embedding-chart vector");
  require(std::abs(branch.norm() - 1.0) <= 1e-9, "branch must be a unit vector");
  TangentVector v(std::move(base), std::move(components));
  v.sphere_branch_ = std::move(branch);
  return v;
}

double inner(const TangentVector& u, const TangentVector& v) {
  if (u.base().space() != v.base().space())
    throw SpaceMismatchError("tangent vectors on different spaces");
  if (u.base().tag() != v.base().tag() || distance(u.base(), v.base()) > 1e-9)
    throw std::invalid_argument("tangent vectors anchored at different points");
  if (u.base().space().kind() == SpaceKind::hyperbolic)
    return detail::minkowski(u.components(), v.components());
  return u.components().dot(v.components());
}

// ---------------------------------------------------------------------------
// Isometry

Isometry Isometry::identity(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::euclidean:
      return euclidean(space, Mat::Identity(space.dim(), space.dim()), Vec::Zero(space.dim()));
    case SpaceKind::sphere:
      return sphere_rotation(space, Mat::Identity(space.dim() + 1, space.dim() + 1));
    case SpaceKind::hyperbolic:
      return lorentz(space, Mat::Identity(space.dim() + 1, space.dim() + 1));
    case SpaceKind::flat_cylinder: return cylinder(space, false, 0.0, false, 0.0);
    case SpaceKind::balloon_string: return balloon_rotation(space, Mat::Identity(3, 3));
  }
  throw std::invalid_argument("unknown space kind");
}

Isometry Isometry::euclidean(const Space& space, Mat linear, Vec translation) {
  require(space.kind() == SpaceKind::euclidean, "space is not euclidean");
  require(linear.rows() == space.dim() && linear.cols() == space.dim(),
          "linear part has wrong shape");
  require(translation.size() == space.dim(), "translation has wrong size");
  require(orthogonality_defect(linear) <= tol().isometry_orthogonality,
          "linear part is not orthogonal");
  return Isometry(space, std::move(linear), std::move(translation));
}

Isometry Isometry::sphere_rotation(const Space& space, Mat linear) {
  require(space.kind() == SpaceKind::sphere, "space is not a sphere");
  require(linear.rows() == space.dim() + 1 && linear.cols() == space.dim() + 1,
          "rotation has wrong shape");
  require(orthogonality_defect(linear) <= tol().isometry_orthogonality,
          "rotation is not orthogonal");
  return Isometry(space, std::move(linear), Vec());
}

Isometry Isometry::lorentz(const Space& space, Mat linear) {
  require(space.kind() == SpaceKind::hyperbolic, "space is not hyperbolic");
  const int n = space.dim() + 1;
  require(linear.rows() == n && linear.cols() == n, "matrix has wrong shape");
  const Mat j = minkowski_metric(n);
  const double defect = (linear.transpose() * j * linear - j).cwiseAbs().maxCoeff();
  require(defect <= tol().isometry_orthogonality, "matrix is not Lorentz-orthogonal");
  require(linear(0, 0) > 0.0, "matrix is not orthochronous");
  return Isometry(space, std::move(linear), Vec());
}

Isometry Isometry::cylinder(const Space& space, bool axial_reflect, double axial_shift,
                            bool angular_reflect, double angular_shift) {
  require(space.kind() == SpaceKind::flat_cylinder, "space is not a cylinder");
  Mat linear = Mat::Identity(2, 2);
  linear(0, 0) = axial_reflect ? -1.0 : 1.0;
  linear(1, 1) = angular_reflect ? -1.0 : 1.0;
  Vec t(2);
  t << axial_shift, detail::wrap_angle(angular_shift, space.circumference());
  return Isometry(space, std::move(linear), std::move(t));
}

Isometry Isometry::balloon_rotation(const Space& space, Mat linear) {
  require(space.kind() == SpaceKind::balloon_string, "space is not a balloon");
  require(linear.rows() == 3 && linear.cols() == 3, "rotation has wrong shape");
  require(orthogonality_defect(linear) <= tol().isometry_orthogonality,
          "rotation is not orthogonal");
  const Vec south = south_pole_embedding(space);
  require((linear * south - south).cwiseAbs().maxCoeff() <=
              tol().isometry_orthogonality * space.radius(),
          "rotation must fix the gluing point");
  return Isometry(space, std::move(linear), Vec());
}

Point Isometry::apply(const Point& p) const {
  if (p.space() != space_) throw SpaceMismatchError("isometry applied across spaces");
  switch (space_.kind()) {
    case SpaceKind::euclidean: return Point(space_, linear_ * p.chart() + translation_);
    case SpaceKind::sphere: return Point::sphere_embedding(space_, linear_ * p.chart());
    case SpaceKind::hyperbolic: return Point::hyperboloid_embedding(space_, linear_ * p.chart());
    case SpaceKind::flat_cylinder: {
      Vec w = linear_ * p.chart() + translation_;
      return Point(space_, std::move(w));
    }
    case SpaceKind::balloon_string:
      if (p.tag() == Component::string) return p;
      return Point::balloon_sphere_embedding(space_, linear_ * p.chart());
  }
  throw std::invalid_argument("unknown space kind");
}

Isometry Isometry::compose(const Isometry& other) const {
  if (space_ != other.space_) throw SpaceMismatchError("composing isometries across spaces");
  switch (space_.kind()) {
    case SpaceKind::euclidean:
      return Isometry(space_, linear_ * other.linear_, linear_ * other.translation_ + translation_);
    case SpaceKind::flat_cylinder: {
      Vec t = linear_ * other.translation_ + translation_;
      t(1) = detail::wrap_angle(t(1), space_.circumference());
      return Isometry(space_, linear_ * other.linear_, std::move(t));
    }
    default: return Isometry(space_, linear_ * other.linear_, Vec());
  }
}

Isometry Isometry::inverse() const {
  switch (space_.kind()) {
    case SpaceKind::euclidean:
      return Isometry(space_, linear_.transpose(), -(linear_.transpose() * translation_));
    case SpaceKind::hyperbolic: {
      const Mat j = minkowski_metric(static_cast<int>(linear_.rows()));
      return Isometry(space_, j * linear_.transpose() * j, Vec());
    }
    case SpaceKind::flat_cylinder: {
      // linear is diag(+-1), its own inverse.
      Vec t = -(linear_ * translation_);
      t(1) = detail::wrap_angle(t(1), space_.circumference());
      return Isometry(space_, linear_, std::move(t));
    }
    default: return Isometry(space_, linear_.transpose(), Vec());
  }
}

bool Isometry::approx_equal(const Isometry& other, double tolerance) const {
  if (space_ != other.space_) return false;
  if ((linear_ - other.linear_).cwiseAbs().maxCoeff() > tolerance) return false;
  if (translation_.size() != other.translation_.size()) return false;
  if (translation_.size() == 0) return true;
  Vec d = translation_ - other.translation_;
  if (space_.kind() == SpaceKind::flat_cylinder) {
    const double c = space_.circumference();
    double a = std::abs(detail::wrap_angle(d(1), c));
    d(1) = std::min(a, c - a);
  }
  return d.cwiseAbs().maxCoeff() <= tolerance;
}

// ---------------------------------------------------------------------------
// detail helpers

namespace detail {

double wrap_angle(double theta, double c) {
  double w = theta - c * std::floor(theta / c);
  if (w >= c) w -= c;  // guards against rounding at the seam
  if (w < 0.0) w = 0.0;
  return w;
}

std::pair<double, bool> short_angular_difference(double a, double b, double c) {
  const double half = c / 2.0;
  double d = wrap_angle(b - a, c);
  if (std::abs(d - half) <= 1e-15 * std::max(1.0, c)) return {half, true};
  if (d > half) d -= c;
  return {d, false};
}

double sphere_angle(const Vec& unit_p, const Vec& unit_q) {
  const double c = unit_p.dot(unit_q);
  const Vec w = unit_p - c * unit_q;
  return std::atan2(w.norm(), c);
}

double minkowski(const Vec& x, const Vec& y) {
  double s = -x(0) * y(0);
  for (Eigen::Index i = 1; i < x.size(); ++i) s += x(i) * y(i);
  return s;
}

Vec lexicographic_tangent(const Vec& unit_p) {
  for (Eigen::Index k = 0; k < unit_p.size(); ++k) {
    Vec v = Vec::Zero(unit_p.size());
    v(k) = 1.0;
    v -= unit_p(k) * unit_p;
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
  throw std::logic_error("no tangent direction found");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// distance

namespace {

double balloon_sphere_angle_to_south(const Space& space, const Point& p) {
  const Vec s = south_pole_embedding(space) / space.radius();
  return detail::sphere_angle(p.chart() / space.radius(), s);
}

}  // namespace

double distance(const Point& p, const Point& q) {
  require_same_space(p, q);
  const Space& sp = p.space();
  switch (sp.kind()) {
    case SpaceKind::euclidean: return (p.chart() - q.chart()).norm();
    case SpaceKind::sphere: {
      const double r = sp.radius();
      return r * detail::sphere_angle(p.chart() / r, q.chart() / r);
    }
    case SpaceKind::hyperbolic: {
      // Chordal form: <x-y, x-y> = 4 s^2 sinh^2(d / 2s). Unlike acosh of the
      // Minkowski product, it keeps full precision for nearby points.
      const double s = sp.curvature_scale();
      const Vec diff = p.chart() - q.chart();
      const double chord2 = std::max(0.0, detail::minkowski(diff, diff));
      return 2.0 * s * std::asinh(std::sqrt(chord2) / (2.0 * s));
    }
    case SpaceKind::flat_cylinder: {
      const double da = p.chart()(0) - q.chart()(0);
      const double raw = std::abs(p.chart()(1) - q.chart()(1));
      const double dth = std::min(raw, sp.circumference() - raw);
      return std::hypot(da, dth);
    }
    case SpaceKind::balloon_string: {
      const double r = sp.radius();
      if (p.tag() == Component::sphere && q.tag() == Component::sphere)
        return r * detail::sphere_angle(p.chart() / r, q.chart() / r);
      if (p.tag() == Component::string && q.tag() == Component::string)
        return std::abs(p.chart()(0) - q.chart()(0));
      const Point& sphere_pt = p.tag() == Component::sphere ? p : q;
      const Point& string_pt = p.tag() == Component::sphere ? q : p;
      return r * balloon_sphere_angle_to_south(sp, sphere_pt) + string_pt.chart()(0);
    }
  }
  throw std::invalid_argument("unknown space kind");
}

// ---------------------------------------------------------------------------
// exp

namespace {

Vec great_circle_at(const Vec& base, const Vec& unit_dir, double radius, double angle) {
  return std::cos(angle) * base + std::sin(angle) * radius * unit_dir;
}

Point balloon_exp(const TangentVector& v) {
  const Space& sp = v.base().space();
  const double r = sp.radius();
  const double eps = tol().point_constraint;
  if (v.base().tag() == Component::string) {
    const double target = v.base().chart()(0) + v.components()(0);
    if (target >= -eps) {
      if (target > sp.string_length() + eps)
        throw std::invalid_argument("geodesic runs off the free end of the string");
      Vec s(1);
      s << std::min(std::max(target, 0.0), sp.string_length());
      return Point(sp, Component::string, std::move(s));
    }
    if (!v.sphere_branch())
      throw BranchError(
          "geodesic crosses the gluing point onto the sphere: an explicit meridian tangent is "
          "required");
    const double angle = -target / r;
    const Vec south = south_pole_embedding(sp);
    return Point::balloon_sphere_embedding(
        sp, great_circle_at(south, *v.sphere_branch(), r, angle));
  }
  // Sphere-component base.
  const double speed = v.components().norm();
  if (speed == 0.0) return v.base();
  const Vec dir = v.components() / speed;
  const double angle = speed / r;
  if (!v.crosses_to_string())
    return Point::balloon_sphere_embedding(sp, great_circle_at(v.base().chart(), dir, r, angle));
  // Follow the great circle to the gluing point, then continue on the string.
  const Vec south = south_pole_embedding(sp);
  const double cs = v.base().chart().dot(south) / (r * r);
  const double ss = dir.dot(south) / r;
  double hit = std::atan2(ss, cs);
  if (hit <= 0.0) hit += 2.0 * kPi;
  const Vec predicted = great_circle_at(v.base().chart(), dir, r, hit);
  if ((predicted - south).norm() > 1e-9 * std::max(1.0, r))
    throw BranchError("crossing tangent does not reach the gluing point");
  if (angle <= hit + eps / r)
    return Point::balloon_sphere_embedding(sp, great_circle_at(v.base().chart(), dir, r, angle));
  const double leftover = r * (angle - hit);
  if (leftover > sp.string_length() + eps)
    throw std::invalid_argument("geodesic runs off the free end of the string");
  Vec s(1);
  s << std::min(leftover, sp.string_length());
  return Point(sp, Component::string, std::move(s));
}

}  // namespace

Point exp_map(const TangentVector& v) {
  const Space& sp = v.base().space();
  switch (sp.kind()) {
    case SpaceKind::euclidean: return Point(sp, v.base().chart() + v.components());
    case SpaceKind::sphere: {
      const double speed = v.components().norm();
      if (speed == 0.0) return v.base();
      const double r = sp.radius();
      return Point::sphere_embedding(
          sp, great_circle_at(v.base().chart(), v.components() / speed, r, speed / r));
    }
    case SpaceKind::hyperbolic: {
      const double rnorm = v.norm();
      if (rnorm == 0.0) return v.base();
      const double s = sp.curvature_scale();
      const Vec dir = v.components() / rnorm;
      Vec out = std::cosh(rnorm / s) * v.base().chart() + s * std::sinh(rnorm / s) * dir;
      return Point::hyperboloid_embedding(sp, std::move(out));
    }
    case SpaceKind::flat_cylinder: {
      Vec w = v.base().chart() + v.components();
      return Point(sp, std::move(w));
    }
    case SpaceKind::balloon_string: return balloon_exp(v);
  }
  throw std::invalid_argument("unknown space kind");
}

// ---------------------------------------------------------------------------
// log

namespace {

// Sphere-chart log. `radius` scales the metric; antipodal pairs either throw
// or take the lexicographically largest direction.
Vec chart_sphere_log(const Vec& p, const Vec& q, double radius, TieBreak tie,
                     const char* what) {
  const Vec up = p / radius;
  const Vec uq = q / radius;
  const double c = up.dot(uq);
  Vec w = uq - c * up;
  const double sn = w.norm();
  if (sn <= 1e-13) {
    if (c > 0.0) return Vec::Zero(p.size());
    if (tie == TieBreak::error)
      throw CutLocusError(std::string(what) + ": antipodal points, minimizing geodesic not unique");
    return kPi * radius * detail::lexicographic_tangent(up);
  }
  const double theta = std::atan2(sn, c);
  return (radius * theta / sn) * w;
}

TangentVector balloon_log(const Point& p, const Point& q, TieBreak tie) {
  const Space& sp = p.space();
  const double r = sp.radius();
  if (p.tag() == Component::sphere && q.tag() == Component::sphere)
    return TangentVector(p, chart_sphere_log(p.chart(), q.chart(), r, tie, "balloon log"));
  if (p.tag() == Component::string && q.tag() == Component::string) {
    Vec v(1);
    v << q.chart()(0) - p.chart()(0);
    return TangentVector(p, std::move(v));
  }
  const Vec south = south_pole_embedding(sp);
  if (p.tag() == Component::sphere) {
    // Through the gluing point onto the string.
    const double d = r * balloon_sphere_angle_to_south(sp, p) + q.chart()(0);
    Vec dir = chart_sphere_log(p.chart(), south, r, tie, "balloon log");
    const double n = dir.norm();
    if (n == 0.0) throw std::logic_error("gluing point must be string-represented");
    return TangentVector::crossing_to_string(p, (d / n) * dir);
  }
  // String base entering the sphere: remember which meridian carries on.
  const double angle = balloon_sphere_angle_to_south(sp, q);
  const double d = p.chart()(0) + r * angle;
  Vec meridian;
  const Vec us = south / r;
  const Vec uq = q.chart() / r;
  Vec w = uq - us.dot(uq) * us;
  const double sn = w.norm();
  if (sn <= 1e-13) {
    // q is the north pole: every meridian is minimizing.
    if (tie == TieBreak::error)
      throw CutLocusError("balloon log: north pole from the string, meridian not unique");
    meridian = detail::lexicographic_tangent(us);
  } else {
    meridian = w / sn;
  }
  Vec v(1);
  v << -d;
  return TangentVector::with_sphere_branch(p, std::move(v), std::move(meridian));
}

}  // namespace

TangentVector log_map(const Point& p, const Point& q, TieBreak tie) {
  require_same_space(p, q);
  const Space& sp = p.space();
  switch (sp.kind()) {
    case SpaceKind::euclidean: return TangentVector(p, q.chart() - p.chart());
    case SpaceKind::sphere:
      return TangentVector(p, chart_sphere_log(p.chart(), q.chart(), sp.radius(), tie, "log"));
    case SpaceKind::hyperbolic: {
      const double s = sp.curvature_scale();
      const double c = -detail::minkowski(p.chart(), q.chart()) / (s * s);
      const double d = distance(p, q);
      if (d == 0.0) return TangentVector(p, Vec::Zero(p.chart().size()));
      Vec w = q.chart() - c * p.chart();
      const double wn = std::sqrt(std::max(0.0, detail::minkowski(w, w)));
      if (wn == 0.0) return TangentVector(p, Vec::Zero(p.chart().size()));
      return TangentVector(p, (d / wn) * w);
    }
    case SpaceKind::flat_cylinder: {
      const auto [dth, tied] = detail::short_angular_difference(p.chart()(1), q.chart()(1),
                                                                sp.circumference());
      double angular = dth;
      if (tied) {
        if (tie == TieBreak::error)
          throw CutLocusError("cylinder log: antipodal angular separation, geodesic not unique");
        angular = sp.circumference() / 2.0;  // lexicographically larger choice
      }
      Vec v(2);
      v << q.chart()(0) - p.chart()(0), angular;
      return TangentVector(p, std::move(v));
    }
    case SpaceKind::balloon_string: return balloon_log(p, q, tie);
  }
  throw std::invalid_argument("unknown space kind");
}

Point geodesic_point(const Point& p, const Point& q, double t, TieBreak tie) {
  require(t >= 0.0 && t <= 1.0, "geodesic parameter must lie in [0, 1]");
  if (t == 0.0) return p;
  if (t == 1.0) return q;
  return exp_map(log_map(p, q, tie).scaled(t));
}

}  // namespace wbary

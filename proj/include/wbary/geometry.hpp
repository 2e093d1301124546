#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "wbary/config.hpp"

namespace wbary {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class SpaceKind { euclidean, sphere, hyperbolic, flat_cylinder, balloon_string };

std::string to_string(SpaceKind kind);

/// Model geometry descriptor: kind plus shape parameters. Immutable value
/// type; all geometry operations take the points' space from the points.
class Space {
 public:
  static Space euclidean(int dim);
  // Round sphere of the given circumference (radius = circumference / 2pi).
  static Space sphere(int dim, double circumference);
  // Hyperboloid model; curvature_scale s gives sectional curvature -1/s^2.
  static Space hyperbolic(int dim, double curvature_scale = 1.0);
  // R x S^1 with circle of total length `circumference`; intrinsic dim 2.
  static Space flat_cylinder(double circumference);
  // Round 2-sphere of the given circumference with a segment of length
  // `string_length` glued to its south pole. Geodesic metric space, dim 2.
  static Space balloon_string(double circumference, double string_length);

  SpaceKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double circumference() const;
  double curvature_scale() const;
  double string_length() const;
  double radius() const;  // sphere / balloon_string sphere component

  // Length of the coordinate vector of a point (sphere component for
  // balloon_string).
  int chart_size() const;
  bool is_npc() const {
    return kind_ == SpaceKind::euclidean || kind_ == SpaceKind::hyperbolic;
  }

  bool operator==(const Space& other) const;
  bool operator!=(const Space& other) const { return !(*this == other); }
  std::string description() const;

 private:
  Space(SpaceKind kind, int dim, double a, double b) : kind_(kind), dim_(dim), a_(a), b_(b) {}
  SpaceKind kind_;
  int dim_;
  double a_ = 0.0;  // circumference / curvature scale
  double b_ = 0.0;  // string length
};

/// Component tag for points of glued spaces.
enum class Component { none = 0, sphere = 1, string = 2 };

std::string to_string(Component c);

/// A point of a Space in its chart coordinates:
///   euclidean      R^dim
///   sphere         embedding vector in R^{dim+1}, norm = radius
///   hyperbolic     hyperboloid embedding in R^{dim,1}, first coord timelike
///   flat_cylinder  (axial, angle), angle reduced mod circumference
///   balloon_string sphere component: embedding in R^3; string component:
///                  arclength from the gluing point in [0, string_length].
///                  The gluing point is canonically the string point 0.
class Point {
 public:
  Point(Space space, Vec chart);
  Point(Space space, Component tag, Vec chart);

  const Space& space() const { return space_; }
  Component tag() const { return tag_; }
  const Vec& chart() const { return chart_; }
  double string_coordinate() const;  // balloon_string string component only

  bool on_sphere_component() const { return tag_ != Component::string; }

  // Renormalizing constructors for values produced by chart arithmetic.
  static Point sphere_embedding(const Space& space, Vec v);
  static Point hyperboloid_embedding(const Space& space, Vec v);
  static Point balloon_sphere_embedding(const Space& space, Vec v);

 private:
  Space space_;
  Component tag_;
  Vec chart_;
};

// South pole of a sphere or of a balloon's sphere component: the embedding
// point (0, ..., 0, -radius). For balloon_string this is the gluing point and
// is canonically represented as the string point 0.
Point sphere_pole(const Space& space, bool north);
Vec south_pole_embedding(const Space& space);

/// Deterministic selection rule when the minimizing geodesic is not unique.
enum class TieBreak {
  error,          // raise CutLocusError
  lexicographic,  // initial velocity lexicographically largest in chart coords
};

/// A tangent vector anchored at a point. Components use the chart of the
/// base point's component (ambient and orthogonality-constrained for sphere
/// and hyperboloid charts). For balloon_string geodesics that cross the
/// gluing point the vector carries the branch taken on the far side.
class TangentVector {
 public:
  TangentVector(Point base, Vec components);

  const Point& base() const { return base_; }
  const Vec& components() const { return components_; }
  double norm() const;
  TangentVector scaled(double factor) const;

  // balloon_string, sphere-component base: continue onto the string when the
  // great circle reaches the gluing point.
  bool crosses_to_string() const { return cross_to_string_; }
  // balloon_string, string-component base: unit meridian tangent at the
  // gluing point used when the geodesic enters the sphere.
  const std::optional<Vec>& sphere_branch() const { return sphere_branch_; }

  static TangentVector crossing_to_string(Point base, Vec components);
  static TangentVector with_sphere_branch(Point base, Vec components, Vec branch);

 private:
  Point base_;
  Vec components_;
  bool cross_to_string_ = false;
  std::optional<Vec> sphere_branch_;
};

/// Riemannian inner product of two tangent vectors at the same base point.
double inner(const TangentVector& u, const TangentVector& v);

/// Distance-preserving map of a Space:
///   euclidean      orthogonal matrix + translation
///   sphere         orthogonal matrix on the embedding
///   hyperbolic     Lorentz orthochronous matrix
///   flat_cylinder  axial shift/reflection and angular shift/reflection
///   balloon_string sphere rotations fixing the gluing point
class Isometry {
 public:
  static Isometry identity(const Space& space);
  static Isometry euclidean(const Space& space, Mat linear, Vec translation);
  static Isometry sphere_rotation(const Space& space, Mat linear);
  static Isometry lorentz(const Space& space, Mat linear);
  static Isometry cylinder(const Space& space, bool axial_reflect, double axial_shift,
                           bool angular_reflect, double angular_shift);
  static Isometry balloon_rotation(const Space& space, Mat linear);

  const Space& space() const { return space_; }
  const Mat& linear() const { return linear_; }
  const Vec& translation() const { return translation_; }

  Point apply(const Point& p) const;
  Isometry compose(const Isometry& other) const;  // this after other
  Isometry inverse() const;
  bool approx_equal(const Isometry& other, double tolerance) const;

 private:
  Isometry(Space space, Mat linear, Vec translation)
      : space_(std::move(space)), linear_(std::move(linear)), translation_(std::move(translation)) {}
  Space space_;
  Mat linear_;      // cylinder: diag(+-1, +-1)
  Vec translation_; // cylinder: (axial shift, angular shift); empty elsewhere except euclidean
};

// Geodesic distance of the model geometry. Cylinder minimizes over the
// angular winding; balloon_string cross-component distances sum through the
// gluing point.
double distance(const Point& p, const Point& q);

// Endpoint of the unit-time geodesic with initial velocity v.
Point exp_map(const TangentVector& v);

// Initial velocity of the minimizing geodesic from p to q. Satisfies
// exp_map(log_map(p, q)) == q and |log_map(p, q)| == distance(p, q).
TangentVector log_map(const Point& p, const Point& q, TieBreak tie = TieBreak::error);

// Point at parameter t in [0, 1] along the minimizing geodesic from p to q.
Point geodesic_point(const Point& p, const Point& q, double t, TieBreak tie = TieBreak::error);

namespace detail {
// Wrap an angular coordinate into [0, c).
double wrap_angle(double theta, double c);
// Signed shortest angular difference from a to b on a circle of length c;
// |result| == c/2 reports a tie via the bool.
std::pair<double, bool> short_angular_difference(double a, double b, double c);
// Angle between two sphere embedding vectors (radius-normalized inputs).
double sphere_angle(const Vec& unit_p, const Vec& unit_q);
// Minkowski form <x, y> = -x0 y0 + sum_i xi yi.
double minkowski(const Vec& x, const Vec& y);
// Lexicographically largest unit vector orthogonal to unit_p (sphere chart).
Vec lexicographic_tangent(const Vec& unit_p);
}  // namespace detail

}  // namespace wbary

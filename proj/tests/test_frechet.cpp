#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wbary/frechet.hpp"
#include "wbary/random.hpp"

using namespace wbary;

namespace {

constexpr double kPi = 3.14159265358979323846;

Point r2(double x, double y) {
  Vec v(2);
  v << x, y;
  return Point(Space::euclidean(2), std::move(v));
}

DiscreteMeasure uniform_equator(const Space& sphere, int n) {
  const double r = sphere.radius();
  std::vector<Point> atoms;
  for (int j = 0; j < n; ++j) {
    Vec e(3);
    e << r * std::cos(2.0 * kPi * j / n), r * std::sin(2.0 * kPi * j / n), 0.0;
    atoms.emplace_back(sphere, std::move(e));
  }
  return DiscreteMeasure(sphere, std::move(atoms), std::vector<double>(n, 1.0 / n));
}

}  // namespace

TEST_CASE("a dirac has zero variance") {
  const DiscreteMeasure m = DiscreteMeasure::dirac(r2(0.3, -0.7));
  const BarycenterResult res = frechet_mean(m);
  CHECK(res.value == 0.0);
  CHECK(distance(res.point, m.atom(0)) == 0.0);
}

TEST_CASE("two equal atoms give a quarter of the squared distance") {
  const DiscreteMeasure m(Space::euclidean(2), {r2(0, 0), r2(2, 0)}, {0.5, 0.5});
  const BarycenterResult res = frechet_mean(m);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(distance(res.point, r2(1, 0)) < 1e-10);
  CHECK(res.method == MeanMethod::gradient);
  CHECK(res.residual <= 1e-10);
}

TEST_CASE("the uniform equator on the circumference-2 sphere has variance 1/4") {
  const Space sphere = Space::sphere(2, 2.0);
  const DiscreteMeasure equator = uniform_equator(sphere, 360);
  const BarycenterResult res = frechet_mean(equator);
  CHECK(res.method == MeanMethod::grid);
  CHECK(std::abs(res.value - 0.25) < 1e-3);
  // Both poles minimize; the report must flag the tie.
  CHECK(res.multiple_minima);
  // Independent coarse-grid oracle.
  const double oracle = oracles::sphere_grid_variance(equator, 90);
  CHECK(res.value <= oracle + 1e-6);
}

TEST_CASE("the balloon endpoint measures center on the gluing point") {
  const Space b = Space::balloon_string(1.0, 1.0);
  const double eps = 0.1;
  const Point north = sphere_pole(b, true);
  Vec v(3);
  v << eps, 0.0, 0.0;
  const Point x0 = exp_map(TangentVector(north, v));
  Vec sy(1);
  sy << 0.5 - eps;
  const Point y(b, Component::string, sy);
  const DiscreteMeasure mu0(b, {y, x0}, {0.5, 0.5});
  const BarycenterResult res = frechet_mean(mu0);
  CHECK(std::abs(res.value - 0.16) < 1e-12);
  CHECK(res.point.tag() == Component::string);
  CHECK(res.point.string_coordinate() < 1e-9);
}

TEST_CASE("two hyperbolic atoms meet at the geodesic midpoint") {
  const Space h2 = Space::hyperbolic(2);
  Rng rng(51);
  const Point a = random_measure(h2, 1, 1.0, rng).atom(0);
  const Point c = random_measure(h2, 1, 1.0, rng).atom(0);
  const DiscreteMeasure m(h2, {a, c}, {0.5, 0.5});
  const BarycenterResult res = frechet_mean(m);
  // Oracle: the midpoint of the connecting geodesic.
  CHECK(distance(res.point, geodesic_point(a, c, 0.5)) < 1e-9);
  const double d = distance(a, c);
  CHECK(res.value == doctest::Approx(d * d / 4.0).epsilon(1e-10));
}

TEST_CASE("cylinder means use the exact axial mean and the circle scan") {
  const Space cyl = Space::flat_cylinder(1.0);
  Rng rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const DiscreteMeasure m = random_measure(cyl, rng.uniform_int(2, 8), 0.8, rng);
    const BarycenterResult res = frechet_mean(m);
    double axial = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) axial += m.weight(i) * m.atom(i).chart()(0);
    CHECK(res.point.chart()(0) == doctest::Approx(axial).epsilon(1e-12));
    CHECK(res.value <= oracles::cylinder_grid_variance(m, 1440) + 1e-6);
  }
}

TEST_CASE("variance is invariant under isometries") {
  for (const Space& sp : {Space::euclidean(2), Space::hyperbolic(2), Space::flat_cylinder(1.0),
                          Space::sphere(2, 2.0)}) {
    CAPTURE(sp.description());
    Rng rng(55);
    for (int trial = 0; trial < 3; ++trial) {
      const DiscreteMeasure m = random_measure(sp, 4, 0.6, rng);
      const Isometry g = random_isometry(sp, rng);
      CHECK(std::abs(variance(pushforward(g, m)) - variance(m)) < 1e-9);
    }
  }
}

TEST_CASE("variance roots are lipschitz along the transport metric") {
  const Space plane = Space::euclidean(2);
  Rng rng(57);
  for (int trial = 0; trial < 10; ++trial) {
    const DiscreteMeasure mu = random_measure(plane, rng.uniform_int(2, 8), 1.0, rng);
    const DiscreteMeasure nu = random_measure(plane, rng.uniform_int(2, 8), 1.0, rng);
    CHECK(std::abs(std::sqrt(variance(mu)) - std::sqrt(variance(nu))) <=
          w2_distance(mu, nu) + 1e-8);
  }
}

TEST_CASE("variance profiles along NPC paths pass the certificate") {
  for (const Space& sp : {Space::euclidean(2), Space::hyperbolic(2)}) {
    CAPTURE(sp.description());
    Rng rng(59);
    const DiscreteMeasure mu = random_measure(sp, 6, 0.9, rng);
    const DiscreteMeasure nu = random_measure(sp, 5, 0.9, rng);
    const MeasurePath path = displacement_path(solve_ot(mu, nu), uniform_grid(11));
    std::vector<double> values;
    for (const DiscreteMeasure& m : path.measures) values.push_back(variance(m));
    CHECK(convexity_certificate(values).convex);
  }
}

TEST_CASE("gradient descent reports its residual and iteration count") {
  const Space h2 = Space::hyperbolic(2);
  Rng rng(61);
  const DiscreteMeasure m = random_measure(h2, 10, 1.0, rng);
  const BarycenterResult res = frechet_mean(m);
  CHECK(res.residual <= 1e-10);
  CHECK(res.iterations > 0);
  CHECK(res.iterations < tol().karcher_max_iterations);
  CHECK(res.value == doctest::Approx(variance_at(m, res.point)).epsilon(1e-14));
}

TEST_CASE("first variation vanishes for zero fields and symmetric pushes") {
  const Space line = Space::euclidean(1);
  Vec a(1), b(1);
  a << -1.0;
  b << 1.0;
  const DiscreteMeasure m(line, {Point(line, a), Point(line, b)}, {0.5, 0.5});
  const Point mean = frechet_mean(m).point;

  CHECK(first_variation(m, VectorField::zero(m), mean) == doctest::Approx(0.0));

  Vec ones(1);
  ones << 1.0;
  const VectorField push(m, {TangentVector(m.atom(0), ones), TangentVector(m.atom(1), ones)});
  CHECK(first_variation(m, push, mean) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("first variation matches central finite differences") {
  for (const Space& sp : {Space::hyperbolic(2), Space::euclidean(2)}) {
    CAPTURE(sp.description());
    Rng rng(63);
    for (int trial = 0; trial < 8; ++trial) {
      const DiscreteMeasure m = random_measure(sp, rng.uniform_int(3, 8), 0.8, rng);
      const VectorField field = random_vector_field(m, 0.6, rng);
      const Point mean = frechet_mean(m).point;
      const double analytic = first_variation(m, field, mean);
      const auto objective = [&](double t) {
        double value = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) {
          const Point moved = exp_map(field.at(i).scaled(t));
          const double d = distance(mean, moved);
          value += m.weight(i) * d * d;
        }
        return value;
      };
      const double numeric = oracles::central_difference(objective, 1e-4);
      const double scale = std::max(1.0, std::abs(analytic));
      CHECK(std::abs(analytic - numeric) / scale < 1e-5);
    }
  }
}

TEST_CASE("first variation rejects non-barycenters") {
  const Space plane = Space::euclidean(2);
  const DiscreteMeasure m(plane, {r2(0, 0), r2(2, 0)}, {0.5, 0.5});
  CHECK_THROWS_AS(first_variation(m, VectorField::zero(m), r2(0, 0)), std::invalid_argument);
}

TEST_CASE("sphere means agree with the independent grid oracle") {
  const Space sphere = Space::sphere(2, 2.0);
  Rng rng(65);
  for (int trial = 0; trial < 3; ++trial) {
    const DiscreteMeasure m = random_measure(sphere, 5, 0.5, rng);
    const BarycenterResult res = frechet_mean(m);
    CHECK(res.value <= oracles::sphere_grid_variance(m, 72) + 1e-6);
  }
}

#include <cmath>

#include "doctest.h"
#include "wbary/random.hpp"
#include "wbary/symmetry.hpp"

using namespace wbary;

namespace {

Point r1(double x) {
  Vec v(1);
  v << x;
  return Point(Space::euclidean(1), std::move(v));
}

Point r2(double x, double y) {
  Vec v(2);
  v << x, y;
  return Point(Space::euclidean(2), std::move(v));
}

IsometryGroup line_reflection() {
  const Space line = Space::euclidean(1);
  Mat reflect(1, 1);
  reflect << -1.0;
  return IsometryGroup::from_generators(line,
                                        {Isometry::euclidean(line, reflect, Vec::Zero(1))});
}

}  // namespace

TEST_CASE("group closure contains the identity, inverses, and products") {
  const Space plane = Space::euclidean(2);
  const IsometryGroup z4 = IsometryGroup::planar_rotations(plane, 4);
  CHECK(z4.size() == 4);
  CHECK(z4.haar_weight() == doctest::Approx(0.25));
  for (std::size_t a = 0; a < z4.size(); ++a) {
    bool inverse_found = false;
    for (std::size_t b = 0; b < z4.size(); ++b) {
      const Isometry product = z4.element(a).compose(z4.element(b));
      bool product_found = false;
      for (std::size_t c = 0; c < z4.size(); ++c)
        product_found = product_found || product.approx_equal(z4.element(c), 1e-9);
      CHECK(product_found);
      if (product.approx_equal(Isometry::identity(plane), 1e-9)) inverse_found = true;
    }
    CHECK(inverse_found);
  }
}

TEST_CASE("closure expansion beyond the bound is rejected") {
  const Space plane = Space::euclidean(2);
  Mat rot(2, 2);
  const double angle = 0.1;  // irrational multiple of a turn: no finite closure
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  CHECK_THROWS_AS(IsometryGroup::from_generators(
                      plane, {Isometry::euclidean(plane, rot, Vec::Zero(2))}, 16),
                  std::invalid_argument);
}

TEST_CASE("trivial groups orbit to the single-entry ensemble") {
  const Space plane = Space::euclidean(2);
  Rng rng(91);
  const DiscreteMeasure m = random_measure(plane, 5, 1.0, rng);
  const MeasureEnsemble orbit = orbit_ensemble(IsometryGroup::trivial(plane), m);
  CHECK(orbit.size() == 1);
  CHECK(approx_equal(orbit.entry(0).measure, m, 1e-12));
}

TEST_CASE("the line reflection orbit doubles the measure") {
  const Space line = Space::euclidean(1);
  const DiscreteMeasure m(line, {r1(0), r1(1)}, {0.5, 0.5});
  const MeasureEnsemble orbit = orbit_ensemble(line_reflection(), m);
  REQUIRE(orbit.size() == 2);
  CHECK(orbit.entry(0).weight == doctest::Approx(0.5));
  // One entry is the original, the other its mirror image.
  const bool first_is_original = approx_equal(orbit.entry(0).measure, m, 1e-12);
  const DiscreteMeasure mirrored(line, {r1(0), r1(-1)}, {0.5, 0.5});
  CHECK(approx_equal(first_is_original ? orbit.entry(1).measure : orbit.entry(0).measure,
                     mirrored, 1e-12));
}

TEST_CASE("a quarter-turn orbit of a dirac spreads over the axis points") {
  const Space plane = Space::euclidean(2);
  const MeasureEnsemble orbit =
      orbit_ensemble(IsometryGroup::planar_rotations(plane, 4), DiscreteMeasure::dirac(r2(1, 0)));
  REQUIRE(orbit.size() == 4);
  const DiscreteMeasure mix = mixture(orbit);
  CHECK(mix.size() == 4);
  for (std::size_t i = 0; i < mix.size(); ++i) {
    CHECK(mix.weight(i) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(mix.atom(i).chart().norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("the reflection projection centers the two-atom measure") {
  const Space line = Space::euclidean(1);
  const DiscreteMeasure m(line, {r1(0), r1(1)}, {0.5, 0.5});
  const EnsembleBarycenterResult projection = w2_projection(line_reflection(), m);
  // Oracle: brute force over symmetric two-atom candidates [-a, a].
  const DiscreteMeasure expected(line, {r1(-0.5), r1(0.5)}, {0.5, 0.5});
  CHECK(w2_distance(projection.measure, expected) < 1e-9);
  CHECK(projection.warnings.empty());
  CHECK(variance(projection.measure) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("trivial groups project to the measure itself") {
  const Space plane = Space::euclidean(2);
  Rng rng(93);
  const DiscreteMeasure m = random_measure(plane, 4, 1.0, rng);
  const EnsembleBarycenterResult projection =
      w2_projection(IsometryGroup::trivial(plane), m);
  CHECK(w2_distance(projection.measure, m) < 1e-10);
  const DiscreteMeasure averaged = l2_projection(IsometryGroup::trivial(plane), m);
  CHECK(approx_equal(averaged, m, 1e-12));
}

TEST_CASE("the antipodal projection of a dirac is the origin") {
  const Space plane = Space::euclidean(2);
  const IsometryGroup z2 = IsometryGroup::planar_rotations(plane, 2);
  const EnsembleBarycenterResult projection =
      w2_projection(z2, DiscreteMeasure::dirac(r2(1, 0)));
  REQUIRE(projection.measure.size() == 1);
  // Oracle: midpoint of the orbit diracs.
  CHECK(projection.measure.atom(0).chart().norm() < 1e-9);
}

TEST_CASE("group averaging matches the hand-computed reflection example") {
  const Space line = Space::euclidean(1);
  const DiscreteMeasure m(line, {r1(0), r1(1)}, {0.5, 0.5});
  const DiscreteMeasure averaged = l2_projection(line_reflection(), m);
  REQUIRE(averaged.size() == 3);
  CHECK(averaged.weight(1) == doctest::Approx(0.5));   // atom 0 in the middle
  CHECK(variance(averaged) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("group averaging the quarter-turn dirac yields unit variance") {
  const Space plane = Space::euclidean(2);
  const DiscreteMeasure averaged = l2_projection(IsometryGroup::planar_rotations(plane, 4),
                                                 DiscreteMeasure::dirac(r2(1, 0)));
  // Oracle: the mean sits at the origin by symmetry, every atom at radius 1.
  CHECK(variance(averaged) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("group averaging is idempotent") {
  const Space plane = Space::euclidean(2);
  Rng rng(95);
  const IsometryGroup z3 = IsometryGroup::planar_rotations(plane, 3);
  const DiscreteMeasure m = random_measure(plane, 4, 1.0, rng);
  const DiscreteMeasure once = l2_projection(z3, m);
  const DiscreteMeasure twice = l2_projection(z3, once);
  CHECK(approx_equal(once, twice, 1e-9));
}

TEST_CASE("transport projections are invariant in canonical form") {
  const Space plane = Space::euclidean(2);
  Rng rng(97);
  const IsometryGroup z4 = IsometryGroup::planar_rotations(plane, 4);
  const DiscreteMeasure m = random_measure(plane, 3, 1.0, rng);
  const EnsembleBarycenterResult projection = w2_projection(z4, m);
  CHECK(projection.warnings.empty());
  for (const Isometry& g : z4.elements())
    CHECK(approx_equal(pushforward(g, projection.measure), projection.measure,
                       tol().atom_merge));
}

TEST_CASE("orbit variance equals the original variance") {
  const Space plane = Space::euclidean(2);
  Rng rng(99);
  const IsometryGroup z6 = IsometryGroup::planar_rotations(plane, 6);
  const DiscreteMeasure m = random_measure(plane, 5, 1.0, rng);
  const double base = variance(m);
  for (const Isometry& g : z6.elements())
    CHECK(std::abs(variance(pushforward(g, m)) - base) < 1e-9);
}

TEST_CASE("the sandwich report orders the three variances") {
  const Space line = Space::euclidean(1);
  const DiscreteMeasure m(line, {r1(0), r1(1)}, {0.5, 0.5});
  const SandwichReport report = sandwich_report(line_reflection(), m);
  CHECK(report.var_w == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(report.var_mu == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(report.var_l2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.left_holds);
  CHECK(report.right_holds);
  CHECK(report.left_asserted);
}

TEST_CASE("sandwich inequalities hold for random disk measures") {
  const Space plane = Space::euclidean(2);
  const IsometryGroup z6 = IsometryGroup::planar_rotations(plane, 6);
  Rng rng(101);
  for (int trial = 0; trial < 3; ++trial) {
    const DiscreteMeasure m = random_measure(plane, 10, 1.0, rng);
    const SandwichReport report = sandwich_report(z6, m);
    CHECK(report.left_holds);
    CHECK(report.right_holds);
  }
}

TEST_CASE("the projection is the nearest invariant measure") {
  const Space plane = Space::euclidean(2);
  const IsometryGroup z3 = IsometryGroup::planar_rotations(plane, 3);
  Rng rng(103);
  const DiscreteMeasure m = random_measure(plane, 3, 0.8, rng);
  const EnsembleBarycenterResult projection = w2_projection(z3, m);
  const double base = w2_distance(projection.measure, m);
  for (int trial = 0; trial < 20; ++trial) {
    // Invariant competitors by construction: group averages of random measures.
    const DiscreteMeasure competitor =
        l2_projection(z3, random_measure(plane, rng.uniform_int(1, 4), 1.0, rng));
    CHECK(w2_distance(competitor, m) * w2_distance(competitor, m) >= base * base - 1e-6);
  }
}

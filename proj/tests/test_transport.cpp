#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wbary/random.hpp"
#include "wbary/transport.hpp"

using namespace wbary;

namespace {

Point r1(double x) {
  Vec v(1);
  v << x;
  return Point(Space::euclidean(1), std::move(v));
}

}  // namespace

TEST_CASE("self-transport is free") {
  const Space plane = Space::euclidean(2);
  Rng rng(2);
  const DiscreteMeasure m = random_measure(plane, 6, 1.0, rng);
  const Coupling c = solve_ot(m, m);
  CHECK(c.cost() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(w2_distance(m, m) < 1e-9);
}

TEST_CASE("dirac-to-dirac transport pays the squared distance") {
  const Space plane = Space::euclidean(2);
  Vec a(2), b(2);
  a << 0, 0;
  b << 3, 4;
  const Coupling c =
      solve_ot(DiscreteMeasure::dirac(Point(plane, a)), DiscreteMeasure::dirac(Point(plane, b)));
  CHECK(c.entries().size() == 1);
  CHECK(c.entries()[0].mass == doctest::Approx(1.0));
  CHECK(c.cost() == doctest::Approx(25.0).epsilon(1e-14));
}

TEST_CASE("the two-atom line example pairs across") {
  // Oracle: brute force over the two assignment vertices.
  const Space line = Space::euclidean(1);
  const DiscreteMeasure mu(line, {r1(0), r1(1)}, {0.5, 0.5});
  const DiscreteMeasure nu(line, {r1(0), r1(-1)}, {0.5, 0.5});
  const double identity_pairing = 0.5 * 0.0 + 0.5 * 4.0;  // atoms sorted: (-1,0) vs (0,1)
  const double crossed_pairing = 0.5 * 1.0 + 0.5 * 1.0;
  const double oracle = std::min(identity_pairing, crossed_pairing);
  const Coupling c = solve_ot(mu, nu);
  CHECK(c.cost() == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(c.cost() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w2_distance(mu, nu) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coupling cost recomputation matches the stored cost") {
  const Space plane = Space::euclidean(2);
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const DiscreteMeasure mu = random_measure(plane, rng.uniform_int(1, 8), 1.0, rng);
    const DiscreteMeasure nu = random_measure(plane, rng.uniform_int(1, 8), 1.0, rng);
    const Coupling c = solve_ot(mu, nu);
    CHECK(std::abs(coupling_cost(c) - c.cost()) < 1e-9);
  }
}

TEST_CASE("solver matches exhaustive vertex enumeration on small instances") {
  Rng rng(6);
  const std::vector<Space> spaces{Space::euclidean(2), Space::hyperbolic(2),
                                  Space::sphere(2, 2.0)};
  for (int trial = 0; trial < 60; ++trial) {
    const Space& sp = spaces[trial % spaces.size()];
    CAPTURE(sp.description());
    const int denominator = 8;
    const int m_atoms = rng.uniform_int(2, 6);
    const int n_atoms = rng.uniform_int(2, 6);
    std::vector<int> mu_counts, nu_counts;
    const DiscreteMeasure mu =
        oracles::rational_measure(sp, m_atoms, denominator, 0.8, rng, &mu_counts);
    const DiscreteMeasure nu =
        oracles::rational_measure(sp, n_atoms, denominator, 0.8, rng, &nu_counts);
    const double oracle = oracles::enumerate_ot_cost(mu, nu, mu_counts, nu_counts, denominator);
    const Coupling c = solve_ot(mu, nu);
    CHECK(c.cost() == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(c.cost() <= oracle + 1e-9);
  }
}

TEST_CASE("transport distances satisfy the triangle inequality") {
  for (const Space& sp : {Space::euclidean(2), Space::hyperbolic(2), Space::flat_cylinder(1.0)}) {
    CAPTURE(sp.description());
    Rng rng(8);
    for (int trial = 0; trial < 12; ++trial) {
      const DiscreteMeasure a = random_measure(sp, rng.uniform_int(2, 6), 0.8, rng);
      const DiscreteMeasure b = random_measure(sp, rng.uniform_int(2, 6), 0.8, rng);
      const DiscreteMeasure c = random_measure(sp, rng.uniform_int(2, 6), 0.8, rng);
      CHECK(w2_distance(a, c) <= w2_distance(a, b) + w2_distance(b, c) + 1e-8);
    }
  }
}

TEST_CASE("transport cost is isometry invariant") {
  for (const Space& sp : {Space::euclidean(2), Space::sphere(2, 2.0), Space::hyperbolic(2)}) {
    CAPTURE(sp.description());
    Rng rng(10);
    for (int trial = 0; trial < 10; ++trial) {
      const DiscreteMeasure mu = random_measure(sp, rng.uniform_int(2, 7), 0.7, rng);
      const DiscreteMeasure nu = random_measure(sp, rng.uniform_int(2, 7), 0.7, rng);
      const Isometry g = random_isometry(sp, rng);
      CHECK(std::abs(w2_distance(pushforward(g, mu), pushforward(g, nu)) -
                     w2_distance(mu, nu)) < 1e-9);
    }
  }
}

TEST_CASE("couplings conserve their marginals") {
  const Space plane = Space::euclidean(2);
  Rng rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    const DiscreteMeasure mu = random_measure(plane, rng.uniform_int(2, 9), 1.0, rng);
    const DiscreteMeasure nu = random_measure(plane, rng.uniform_int(2, 9), 1.0, rng);
    const Coupling c = solve_ot(mu, nu);
    std::vector<double> row(mu.size(), 0.0), col(nu.size(), 0.0);
    for (const auto& e : c.entries()) {
      CHECK(e.mass > 0.0);
      row[e.i] += e.mass;
      col[e.j] += e.mass;
    }
    for (std::size_t i = 0; i < mu.size(); ++i) CHECK(std::abs(row[i] - mu.weight(i)) < 1e-9);
    for (std::size_t j = 0; j < nu.size(); ++j) CHECK(std::abs(col[j] - nu.weight(j)) < 1e-9);
  }
}

TEST_CASE("uniform equal-count instances take the assignment fast path and stay optimal") {
  const Space plane = Space::euclidean(2);
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(2, 6);
    std::vector<Point> a, b;
    for (int i = 0; i < n; ++i) {
      a.push_back(random_measure(plane, 1, 1.0, rng).atom(0));
      b.push_back(random_measure(plane, 1, 1.0, rng).atom(0));
    }
    const DiscreteMeasure mu(plane, a, std::vector<double>(n, 1.0 / n));
    const DiscreteMeasure nu(plane, b, std::vector<double>(n, 1.0 / n));
    if (mu.size() != static_cast<std::size_t>(n) || nu.size() != static_cast<std::size_t>(n))
      continue;  // merged atoms leave the fast path; nothing to compare
    std::vector<int> counts(n, 1);
    const double oracle = oracles::enumerate_ot_cost(mu, nu, counts, counts, n);
    CHECK(solve_ot(mu, nu).cost() == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("deterministic re-solves give identical plans") {
  const Space plane = Space::euclidean(2);
  Rng rng(16);
  const DiscreteMeasure mu = random_measure(plane, 7, 1.0, rng);
  const DiscreteMeasure nu = random_measure(plane, 5, 1.0, rng);
  const Coupling c1 = solve_ot(mu, nu);
  const Coupling c2 = solve_ot(mu, nu);
  REQUIRE(c1.entries().size() == c2.entries().size());
  for (std::size_t k = 0; k < c1.entries().size(); ++k) {
    CHECK(c1.entries()[k].i == c2.entries()[k].i);
    CHECK(c1.entries()[k].j == c2.entries()[k].j);
    CHECK(c1.entries()[k].mass == c2.entries()[k].mass);
  }
}

TEST_CASE("mismatched spaces are rejected") {
  Rng rng(18);
  const DiscreteMeasure a = random_measure(Space::euclidean(2), 3, 1.0, rng);
  const DiscreteMeasure b = random_measure(Space::euclidean(3), 3, 1.0, rng);
  CHECK_THROWS_AS(solve_ot(a, b), SpaceMismatchError);
}

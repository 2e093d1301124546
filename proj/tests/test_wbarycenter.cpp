#include <cmath>

#include "doctest.h"
#include "wbary/random.hpp"
#include "wbary/wbarycenter.hpp"

using namespace wbary;

namespace {

Point r1(double x) {
  Vec v(1);
  v << x;
  return Point(Space::euclidean(1), std::move(v));
}

}  // namespace

TEST_CASE("the objective vanishes on the ensemble's own measure") {
  const Space plane = Space::euclidean(2);
  Rng rng(71);
  const DiscreteMeasure m = random_measure(plane, 5, 1.0, rng);
  const MeasureEnsemble ens({{1.0, m}});
  CHECK(barycenter_objective(ens, m) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("pole ensembles on the circumference-2 sphere cost 1/4 at the equator") {
  const Space sphere = Space::sphere(2, 2.0);
  const MeasureEnsemble poles({{0.5, DiscreteMeasure::dirac(sphere_pole(sphere, true))},
                               {0.5, DiscreteMeasure::dirac(sphere_pole(sphere, false))}});
  Vec eq(3);
  eq << sphere.radius(), 0.0, 0.0;
  CHECK(barycenter_objective(poles, DiscreteMeasure::dirac(Point(sphere, eq))) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("single-measure ensembles return their measure at objective zero") {
  const Space plane = Space::euclidean(2);
  Rng rng(73);
  const DiscreteMeasure m = random_measure(plane, 6, 1.0, rng);
  const EnsembleBarycenterResult res = w2_barycenter(MeasureEnsemble({{1.0, m}}));
  CHECK(approx_equal(res.measure, m, 1e-10));
  CHECK(res.objective == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.zero_sum_residual <= 1e-9);
}

TEST_CASE("two diracs on the line meet in the middle") {
  const Space line = Space::euclidean(1);
  const MeasureEnsemble ens({{0.5, DiscreteMeasure::dirac(r1(0))},
                             {0.5, DiscreteMeasure::dirac(r1(2))}});
  const EnsembleBarycenterResult res = w2_barycenter(ens, ens.entry(0).measure);
  REQUIRE(res.measure.size() == 1);
  CHECK(res.measure.atom(0).chart()(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.zero_sum_residual <= 1e-9);

  // Oracle: brute force over candidate dirac positions.
  double best = std::numeric_limits<double>::infinity();
  for (int k = -40; k <= 40; ++k) {
    const double y = k * 0.05;
    best = std::min(best, barycenter_objective(ens, DiscreteMeasure::dirac(r1(y))));
  }
  CHECK(res.objective <= best + 1e-9);
}

TEST_CASE("barycenters commute with translations") {
  const Space plane = Space::euclidean(2);
  Rng rng(75);
  const DiscreteMeasure m = random_measure(plane, 4, 1.0, rng);
  Vec shift(2);
  shift << 2.0, 0.0;
  const Isometry tau = Isometry::euclidean(plane, Mat::Identity(2, 2), shift);
  const MeasureEnsemble ens({{0.5, m}, {0.5, pushforward(tau, m)}});
  const EnsembleBarycenterResult res = w2_barycenter(ens, ens.entry(0).measure);

  // Oracle: translation equivariance pins the optimum at the half shift.
  Vec half(2);
  half << 1.0, 0.0;
  const DiscreteMeasure expected =
      pushforward(Isometry::euclidean(plane, Mat::Identity(2, 2), half), m);
  CHECK(w2_distance(res.measure, expected) < 1e-8);
  CHECK(res.objective <= barycenter_objective(ens, expected) + 1e-9);
}

TEST_CASE("objective histories never increase") {
  for (const Space& sp : {Space::euclidean(2), Space::hyperbolic(2)}) {
    CAPTURE(sp.description());
    Rng rng(77);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<MeasureEnsemble::Entry> entries;
      const int k = rng.uniform_int(2, 4);
      for (int i = 0; i < k; ++i)
        entries.push_back({1.0 / k, random_measure(sp, rng.uniform_int(2, 6), 0.8, rng)});
      const MeasureEnsemble ens(std::move(entries));
      const EnsembleBarycenterResult res = w2_barycenter(ens);
      for (std::size_t i = 1; i < res.history.size(); ++i)
        CHECK(res.history[i] <= res.history[i - 1] + 1e-15);
      CHECK(res.objective == doctest::Approx(barycenter_objective(ens, res.measure))
                                 .epsilon(1e-8));
    }
  }
}

TEST_CASE("stationarity residuals are small after convergence on the hyperbolic plane") {
  const Space h2 = Space::hyperbolic(2);
  Rng rng(79);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<MeasureEnsemble::Entry> entries;
    for (int i = 0; i < 3; ++i)
      entries.push_back({1.0 / 3, random_measure(h2, rng.uniform_int(2, 6), 0.8, rng)});
    const MeasureEnsemble ens(std::move(entries));
    EnsembleBarycenterResult best = w2_barycenter(ens, ens.entry(0).measure);
    for (std::size_t i = 1; i < ens.size(); ++i) {
      EnsembleBarycenterResult run = w2_barycenter(ens, ens.entry(i).measure);
      if (run.objective < best.objective) best = std::move(run);
    }
    CHECK(best.zero_sum_residual <= 1e-6);
  }
}

TEST_CASE("a barycenter is the fixed point of its own half-inclusion") {
  const Space plane = Space::euclidean(2);
  Rng rng(81);
  std::vector<MeasureEnsemble::Entry> entries;
  for (int i = 0; i < 3; ++i)
    entries.push_back({1.0 / 3, random_measure(plane, 4, 0.8, rng)});
  const MeasureEnsemble ens(std::move(entries));
  const EnsembleBarycenterResult bary = w2_barycenter(ens);

  std::vector<MeasureEnsemble::Entry> augmented{{0.5, bary.measure}};
  for (const auto& e : ens.entries()) augmented.push_back({0.5 * e.weight, e.measure});
  const MeasureEnsemble half_included(std::move(augmented));
  const EnsembleBarycenterResult rerun = w2_barycenter(half_included, bary.measure);
  CHECK(rerun.iterations <= 2);
  CHECK(w2_distance(rerun.measure, bary.measure) < 1e-7);
}

TEST_CASE("jensen reports collapse for singleton ensembles") {
  const Space plane = Space::euclidean(2);
  Rng rng(83);
  const DiscreteMeasure m = random_measure(plane, 5, 1.0, rng);
  const MeasureEnsemble ens({{1.0, m}});
  const EnsembleBarycenterResult res = w2_barycenter(ens);
  const JensenReport report = jensen_gap(ens, res);
  CHECK(report.var_barycenter == doctest::Approx(report.mean_variance).epsilon(1e-9));
  CHECK(report.mean_variance == doctest::Approx(report.linear_variance).epsilon(1e-9));
  CHECK(report.npc_jensen_holds);
  CHECK(report.linear_jensen_holds);
}

TEST_CASE("the two-dirac line ensemble separates all three variances") {
  const Space line = Space::euclidean(1);
  const MeasureEnsemble ens({{0.5, DiscreteMeasure::dirac(r1(0))},
                             {0.5, DiscreteMeasure::dirac(r1(2))}});
  const EnsembleBarycenterResult res = w2_barycenter(ens, ens.entry(0).measure);
  const JensenReport report = jensen_gap(ens, res);
  CHECK(report.var_barycenter == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(report.mean_variance == doctest::Approx(0.0).epsilon(1e-15));
  // Oracle: direct variance of (1/2)[delta_0 + delta_2].
  CHECK(report.linear_variance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.npc_jensen_holds);
  CHECK(report.linear_jensen_holds);
}

TEST_CASE("npc jensen inequalities hold on converged random ensembles") {
  for (const Space& sp : {Space::euclidean(2), Space::hyperbolic(2)}) {
    CAPTURE(sp.description());
    Rng rng(85);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<MeasureEnsemble::Entry> entries;
      const int k = rng.uniform_int(2, 4);
      for (int i = 0; i < k; ++i)
        entries.push_back({1.0 / k, random_measure(sp, rng.uniform_int(2, 6), 0.8, rng)});
      const MeasureEnsemble ens(std::move(entries));
      EnsembleBarycenterResult best = w2_barycenter(ens, ens.entry(0).measure);
      for (std::size_t i = 1; i < ens.size(); ++i) {
        EnsembleBarycenterResult run = w2_barycenter(ens, ens.entry(i).measure);
        if (run.objective < best.objective) best = std::move(run);
      }
      if (!(best.zero_sum_residual <= 1e-6)) continue;
      const JensenReport report = jensen_gap(ens, best);
      CHECK(report.npc_jensen_holds);
      CHECK(report.linear_jensen_holds);
      CHECK(report.var_barycenter <= report.linear_variance + 1e-7);
    }
  }
}

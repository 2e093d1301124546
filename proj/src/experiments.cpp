#include "wbary/experiments.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "wbary/symmetry.hpp"
#include "wbary/wbarycenter.hpp"

namespace wbary {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::vector<double> variance_profile(const MeasurePath& path) {
  std::vector<double> values;
  values.reserve(path.measures.size());
  for (const DiscreteMeasure& m : path.measures) values.push_back(variance(m));
  return values;
}

std::string check_to_string(Check c) {
  switch (c) {
    case Check::close: return "close";
    case Check::at_least: return "at_least";
    case Check::at_most: return "at_most";
  }
  return "?";
}

}  // namespace

Assertion check_close(std::string name, double computed, double expected, double tolerance,
                      std::string provenance) {
  const bool pass = std::isfinite(computed) && std::abs(computed - expected) <= tolerance;
  return {std::move(name), Check::close, computed, expected, tolerance, std::move(provenance),
          pass};
}

Assertion check_at_least(std::string name, double computed, double threshold,
                         std::string provenance) {
  const bool pass = std::isfinite(computed) && computed >= threshold;
  return {std::move(name), Check::at_least, computed, threshold, 0.0, std::move(provenance), pass};
}

Assertion check_at_most(std::string name, double computed, double threshold,
                        std::string provenance) {
  const bool pass = std::isfinite(computed) && computed <= threshold;
  return {std::move(name), Check::at_most, computed, threshold, 0.0, std::move(provenance), pass};
}

bool ExperimentReport::pass() const {
  for (const Assertion& a : assertions)
    if (!a.pass) return false;
  return true;
}

Json to_json(const ExperimentReport& report) {
  Json assertions = Json::array();
  for (const Assertion& a : report.assertions)
    assertions.push_back(Json{{"name", a.name},
                              {"check", check_to_string(a.check)},
                              {"computed", a.computed},
                              {"expected", a.expected},
                              {"tolerance", a.tolerance},
                              {"provenance", a.provenance},
                              {"pass", a.pass}});
  return Json{{"name", report.name},       {"space", report.space},
              {"parameters", report.parameters}, {"quantities", report.quantities},
              {"assertions", assertions},  {"pass", report.pass()},
              {"runtime_seconds", report.runtime_seconds}};
}

std::string report_fingerprint(const ExperimentReport& report) {
  Json j = to_json(report);
  j.erase("runtime_seconds");
  return j.dump();
}

std::string render_table(const ExperimentReport& report) {
  std::ostringstream out;
  out << "== " << report.name << " (" << report.space << ") ==\n";
  for (const Assertion& a : report.assertions) {
    out << "  [" << (a.pass ? "PASS" : "FAIL") << "] " << a.name << ": " << std::setprecision(12)
        << a.computed;
    switch (a.check) {
      case Check::close:
        out << " == " << a.expected << " (tol " << a.tolerance << ")";
        break;
      case Check::at_least: out << " >= " << a.expected; break;
      case Check::at_most: out << " <= " << a.expected; break;
    }
    out << "  [" << a.provenance << "]\n";
  }
  out << "  " << (report.pass() ? "PASS" : "FAIL") << " in " << std::setprecision(3)
      << report.runtime_seconds << " s\n";
  return out.str();
}

// ---------------------------------------------------------------------------

ExperimentReport run_sphere_example() {
  Stopwatch watch;
  ExperimentReport report;
  report.name = "sphere-example";
  const Space sphere = Space::sphere(2, 2.0);
  report.space = sphere.description();
  report.parameters = Json{{"equator_atoms", 360}};

  const Point north = sphere_pole(sphere, true);
  const Point south = sphere_pole(sphere, false);
  const MeasureEnsemble poles({{0.5, DiscreteMeasure::dirac(north)},
                               {0.5, DiscreteMeasure::dirac(south)}});

  const double r = sphere.radius();
  Vec equator_point(3);
  equator_point << r, 0.0, 0.0;
  const DiscreteMeasure equator_dirac = DiscreteMeasure::dirac(Point(sphere, equator_point));

  const int n = 360;
  std::vector<Point> atoms;
  std::vector<double> weights(n, 1.0 / n);
  for (int j = 0; j < n; ++j) {
    Vec e(3);
    e << r * std::cos(2.0 * kPi * j / n), r * std::sin(2.0 * kPi * j / n), 0.0;
    atoms.emplace_back(sphere, std::move(e));
  }
  const DiscreteMeasure uniform_equator(sphere, std::move(atoms), std::move(weights));

  const double objective_dirac = barycenter_objective(poles, equator_dirac);
  const double objective_equator = barycenter_objective(poles, uniform_equator);
  const double var_equator = variance(uniform_equator);
  const double mean_var = 0.5 * variance(poles.entry(0).measure) +
                          0.5 * variance(poles.entry(1).measure);

  report.quantities = Json{{"objective_equator_dirac", objective_dirac},
                           {"objective_uniform_equator", objective_equator},
                           {"var_uniform_equator", var_equator},
                           {"mean_variance", mean_var}};
  report.assertions = {
      check_close("objective at an equator dirac", objective_dirac, 0.25, 1e-6, "closed form"),
      check_close("objective at the uniform equator", objective_equator, 0.25, 1e-6,
                  "closed form"),
      check_close("variance of the uniform equator", var_equator, 0.25, 1e-3, "grid search"),
      check_close("mean variance of the ensemble", mean_var, 0.0, 0.0, "dirac variance"),
      check_at_least("barycenter variance minus mean variance", var_equator - mean_var, 0.2,
                     "positive-curvature gap"),
  };
  report.runtime_seconds = watch.seconds();
  return report;
}

ExperimentReport run_balloon_example(double eps) {
  if (!(eps > 0.0 && eps < 0.25))
    throw std::invalid_argument("balloon offset must lie in (0, 1/4)");
  Stopwatch watch;
  ExperimentReport report;
  report.name = "balloon-on-a-string";
  const Space balloon = Space::balloon_string(1.0, 1.0);
  report.space = balloon.description();
  report.parameters = Json{{"eps", eps}};

  const Point north = sphere_pole(balloon, true);
  Vec v(3);
  v << eps, 0.0, 0.0;
  const Point x0 = exp_map(TangentVector(north, v));
  const Point x1 = exp_map(TangentVector(north, -v));
  Vec sy(1);
  sy << 0.5 - eps;
  const Point y(balloon, Component::string, std::move(sy));

  const DiscreteMeasure mu0(balloon, {y, x0}, {0.5, 0.5});
  const DiscreteMeasure mu1(balloon, {y, x1}, {0.5, 0.5});
  const DiscreteMeasure linear_mid = mixture(MeasureEnsemble({{0.5, mu0}, {0.5, mu1}}));
  const Coupling coupling = solve_ot(mu0, mu1);
  const DiscreteMeasure displacement_mid = displacement_interpolant(coupling, 0.5);
  const DiscreteMeasure expected_mid(balloon, {y, north}, {0.5, 0.5});

  const double var0 = variance(mu0);
  const double var1 = variance(mu1);
  const double var_linear = variance(linear_mid);
  const double var_displacement = variance(displacement_mid);
  const double mid_defect = w2_distance(displacement_mid, expected_mid);

  const double endpoint_var = (0.5 - eps) * (0.5 - eps);
  const double displaced_var = (1.0 - eps) * (1.0 - eps) / 4.0;

  report.quantities = Json{{"var_mu0", var0},
                           {"var_mu1", var1},
                           {"var_linear_mid", var_linear},
                           {"var_displacement_mid", var_displacement},
                           {"mid_defect", mid_defect}};
  report.assertions = {
      check_close("variance of mu0", var0, endpoint_var, 1e-12, "closed form"),
      check_close("variance of mu1", var1, endpoint_var, 1e-12, "closed form"),
      check_close("variance of the mixture midpoint", var_linear, endpoint_var, 1e-12,
                  "closed form"),
      check_close("variance of the displacement midpoint", var_displacement, displaced_var, 1e-12,
                  "closed form"),
      check_at_most("distance of the midpoint from [y + north]/2", mid_defect, 1e-9,
                    "construction"),
      check_close("comparison gap", var_displacement - var_linear,
                  eps / 2.0 - 0.75 * eps * eps, 1e-12, "closed form"),
      check_at_least("mixture beats displacement by", var_displacement - var_linear, 1e-7,
                     "comparison reversal"),
  };
  report.runtime_seconds = watch.seconds();
  return report;
}

ExperimentReport run_cylinder_counterexample(double circumference, double delta) {
  if (!(delta > 0.0 && delta < circumference / 4.0))
    throw std::invalid_argument("cylinder offset must lie in (0, c/4)");
  Stopwatch watch;
  ExperimentReport report;
  report.name = "cylinder-counterexample";
  const Space cyl = Space::flat_cylinder(circumference);
  report.space = cyl.description();
  report.parameters = Json{{"circumference", circumference}, {"delta", delta}};

  auto cyl_point = [&](double axial, double angle) {
    Vec chart(2);
    chart << axial, angle;
    return Point(cyl, std::move(chart));
  };
  const Point x = cyl_point(0.0, 0.0);
  const Point y = cyl_point(0.0, circumference / 2.0);
  const Point a0 = cyl_point(0.0, delta);
  const Point a1 = cyl_point(0.0, -delta);

  const DiscreteMeasure mu0(cyl, {y, a0}, {0.5, 0.5});
  const DiscreteMeasure mu1(cyl, {y, a1}, {0.5, 0.5});
  const Coupling coupling = solve_ot(mu0, mu1);
  const DiscreteMeasure mid = displacement_interpolant(coupling, 0.5);
  const DiscreteMeasure expected_mid(cyl, {y, x}, {0.5, 0.5});

  const double var_mid = variance(mid);
  const double var0 = variance(mu0);
  const double var1 = variance(mu1);
  const double gap = var_mid - 0.5 * (var0 + var1);

  const double half = circumference / 2.0;
  const double expected_gap =
      circumference * circumference / 16.0 - (half - delta) * (half - delta) / 4.0;

  // The two-sided probe around the cut locus: moving both ways from x toward
  // the angular antipode shortens on both sides.
  Vec vv(2);
  vv << 0.0, delta;
  const Point fwd = exp_map(TangentVector(x, vv));
  const Point bwd = exp_map(TangentVector(x, -vv));
  const double dxy = distance(x, y);
  const double display = distance(fwd, y) * distance(fwd, y) +
                         distance(bwd, y) * distance(bwd, y) - 2.0 * dxy * dxy;
  const double expected_display =
      2.0 * (half - delta) * (half - delta) - 2.0 * half * half;

  const MeasurePath path = displacement_path(coupling, uniform_grid(11));
  const ConvexityReport cert = convexity_certificate(variance_profile(path));

  report.quantities = Json{{"var_mid", var_mid},
                           {"var_mu0", var0},
                           {"var_mu1", var1},
                           {"gap", gap},
                           {"cut_locus_display", display},
                           {"worst_second_difference", cert.worst_violation},
                           {"violation_location", cert.location}};
  report.assertions = {
      check_at_most("midpoint distance from [y + x]/2", w2_distance(mid, expected_mid), 1e-9,
                    "construction"),
      check_close("variance at the midpoint", var_mid,
                  circumference * circumference / 16.0, 1e-10, "closed form"),
      check_close("variance at the endpoints", 0.5 * (var0 + var1),
                  (half - delta) * (half - delta) / 4.0, 1e-10, "closed form"),
      check_close("convexity gap", gap, expected_gap, 1e-10, "closed form"),
      check_close("cut-locus two-sided probe", display, expected_display, 1e-10, "closed form"),
      check_at_most("probe sign", display, -1e-12, "strictly negative"),
      check_at_most("worst second difference", cert.worst_violation, -1e-4,
                    "certificate on the path"),
  };
  report.runtime_seconds = watch.seconds();
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct FourPoints {
  Point x0, x1, y0, y1;
};

// Mirror-symmetric configuration on the circumference-2 sphere: two points
// at colatitudes pi/2 -+ alpha on each of the longitudes -+phi.
FourPoints sphere_configuration(const Space& sphere, double alpha, double phi) {
  const double r = sphere.radius();
  auto at = [&](double colat, double lon) {
    Vec e(3);
    e << r * std::sin(colat) * std::cos(lon), r * std::sin(colat) * std::sin(lon),
        r * std::cos(colat);
    return Point(sphere, std::move(e));
  };
  return {at(kPi / 2.0 - alpha, -phi), at(kPi / 2.0 + alpha, -phi),
          at(kPi / 2.0 - alpha, phi), at(kPi / 2.0 + alpha, phi)};
}

// The analogous configuration from tangent offsets (+-u, +-a) at a base
// point; used verbatim on the flat and hyperbolic controls.
FourPoints tangent_configuration(const Space& space, double u, double a) {
  Point base = [&] {
    if (space.kind() == SpaceKind::euclidean) return Point(space, Vec::Zero(2));
    Vec origin = Vec::Zero(3);
    origin(0) = space.curvature_scale();
    return Point(space, std::move(origin));
  }();
  auto shoot = [&](double c1, double c2) {
    Vec v;
    if (space.kind() == SpaceKind::euclidean) {
      v = Vec(2);
      v << c1, c2;
    } else {
      v = Vec(3);
      v << 0.0, c1, c2;
    }
    return exp_map(TangentVector(base, std::move(v)));
  };
  return {shoot(-u, a), shoot(-u, -a), shoot(u, a), shoot(u, -a)};
}

struct ConfigurationCheck {
  double epsilon;          // common endpoint separation
  double symmetry_defect;  // |d(x0,x1) - d(y0,y1)|
  double pairing_defect;   // d00^2 + d11^2 - d01^2 - d10^2 (<= 0 keeps identity pairing)
  double max_separation;   // max over grid t of the interpolant separation
  double max_violation;    // max over grid t of var - linear bound (certified)
};

// Variance of a two-atom equal-weight measure on a geodesic space.
double var_two_point(double separation) { return separation * separation / 4.0; }

ConfigurationCheck check_configuration(const FourPoints& pts, bool certify_variance) {
  ConfigurationCheck out{};
  const double dx = distance(pts.x0, pts.x1);
  const double dy = distance(pts.y0, pts.y1);
  out.epsilon = dx;
  out.symmetry_defect = std::abs(dx - dy);
  const double d00 = distance(pts.x0, pts.y0);
  const double d11 = distance(pts.x1, pts.y1);
  const double d01 = distance(pts.x0, pts.y1);
  const double d10 = distance(pts.x1, pts.y0);
  out.pairing_defect = d00 * d00 + d11 * d11 - d01 * d01 - d10 * d10;

  const Space& space = pts.x0.space();
  const DiscreteMeasure mu0(space, {pts.x0, pts.x1}, {0.5, 0.5});
  const DiscreteMeasure mu1(space, {pts.y0, pts.y1}, {0.5, 0.5});
  const Coupling coupling = solve_ot(mu0, mu1);
  const std::vector<double> grid = uniform_grid(11);
  const MeasurePath path = displacement_path(coupling, grid);

  const double var0 = var_two_point(dx);
  const double var1 = var_two_point(dy);
  out.max_separation = 0.0;
  out.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const DiscreteMeasure& m = path.measures[k];
    double sep = 0.0;
    if (m.size() == 2) sep = distance(m.atom(0), m.atom(1));
    out.max_separation = std::max(out.max_separation, sep);
    const double value = certify_variance ? variance(m) : var_two_point(sep);
    const double bound = (1.0 - grid[k]) * var0 + grid[k] * var1;
    out.max_violation = std::max(out.max_violation, value - bound);
  }
  return out;
}

}  // namespace

ExperimentReport run_positive_curvature_counterexample(std::uint64_t seed) {
  Stopwatch watch;
  ExperimentReport report;
  report.name = "positive-curvature-violation";
  const Space sphere = Space::sphere(2, 2.0);
  report.space = sphere.description();

  const double target_eps = 0.1;
  const double alpha = target_eps / (2.0 * sphere.radius());
  Rng rng(seed);

  // Seeded scan over longitude offsets; screen cheaply, certify the winner.
  std::vector<double> tried;
  double found_phi = -1.0;
  ConfigurationCheck found{};
  for (int attempt = 0; attempt < 64 && found_phi < 0.0; ++attempt) {
    const double phi = rng.uniform(0.05 * kPi, 0.45 * kPi);
    tried.push_back(phi);
    const ConfigurationCheck quick =
        check_configuration(sphere_configuration(sphere, alpha, phi), false);
    if (quick.symmetry_defect <= 1e-12 && quick.pairing_defect <= 1e-12 &&
        quick.max_separation > quick.epsilon && quick.max_violation > 1e-4) {
      const ConfigurationCheck certified =
          check_configuration(sphere_configuration(sphere, alpha, phi), true);
      if (certified.max_violation > 1e-4) {
        found_phi = phi;
        found = certified;
      }
    }
  }
  report.parameters = Json{{"seed", seed},
                           {"target_eps", target_eps},
                           {"configurations_tried", tried.size()},
                           {"phi", found_phi}};

  // Identical offsets realized on the flat and hyperbolic controls.
  double control_worst_r2 = -std::numeric_limits<double>::infinity();
  double control_worst_h2 = -std::numeric_limits<double>::infinity();
  const Space plane = Space::euclidean(2);
  const Space hplane = Space::hyperbolic(2);
  for (double phi : tried) {
    const double u = sphere.radius() * phi;
    const ConfigurationCheck r2 =
        check_configuration(tangent_configuration(plane, u, target_eps / 2.0), true);
    const ConfigurationCheck h2 =
        check_configuration(tangent_configuration(hplane, u, target_eps / 2.0), true);
    control_worst_r2 = std::max(control_worst_r2, r2.max_violation);
    control_worst_h2 = std::max(control_worst_h2, h2.max_violation);
  }

  report.quantities = Json{{"epsilon", found.epsilon},
                           {"max_separation", found.max_separation},
                           {"max_violation", found.max_violation},
                           {"pairing_defect", found.pairing_defect},
                           {"control_worst_r2", control_worst_r2},
                           {"control_worst_h2", control_worst_h2}};
  report.assertions = {
      check_at_least("configuration found (phi)", found_phi, 0.0, "seeded search"),
      check_close("endpoint separations agree", found.symmetry_defect, 0.0, 1e-12,
                  "mirror symmetry"),
      check_at_most("identity pairing is optimal", found.pairing_defect, 1e-12, "construction"),
      check_at_least("interpolant spreads beyond the endpoints",
                     found.max_separation - found.epsilon, 1e-6, "grid scan"),
      check_at_least("variance convexity violation", found.max_violation, 1e-4, "grid search"),
      check_at_most("flat control violation", control_worst_r2, 1e-7, "control batch"),
      check_at_most("hyperbolic control violation", control_worst_h2, 1e-7, "control batch"),
  };
  report.runtime_seconds = watch.seconds();
  return report;
}

ExperimentReport run_convexity_suite(const Space& space, int trials, std::uint64_t seed) {
  if (!space.is_npc()) throw std::invalid_argument("convexity suite needs an NPC space");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  Stopwatch watch;
  ExperimentReport report;
  report.name = "npc-convexity-suite";
  report.space = space.description();
  report.parameters = Json{{"trials", trials}, {"seed", seed}};

  Rng rng(seed);
  const std::vector<double> grid = uniform_grid(11);
  double worst_displacement = std::numeric_limits<double>::infinity();
  double worst_quasi = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    const DiscreteMeasure mu = random_measure(space, rng.uniform_int(2, 20), 1.0, rng);
    const DiscreteMeasure nu = random_measure(space, rng.uniform_int(2, 20), 1.0, rng);
    const Coupling coupling = solve_ot(mu, nu);
    const MeasurePath path = displacement_path(coupling, grid);
    const ConvexityReport cert = convexity_certificate(variance_profile(path), 1e-7);
    worst_displacement = std::min(worst_displacement, cert.worst_violation);

    const VectorField field = random_vector_field(mu, 0.8, rng);
    const MeasurePath qpath = quasi_geodesic(mu, field, grid);
    const ConvexityReport qcert = convexity_certificate(variance_profile(qpath), 1e-7);
    worst_quasi = std::min(worst_quasi, qcert.worst_violation);
  }

  report.quantities = Json{{"worst_displacement_second_difference", worst_displacement},
                           {"worst_quasi_geodesic_second_difference", worst_quasi}};
  report.assertions = {
      check_at_least("displacement paths stay convex", worst_displacement, -1e-7,
                     "certificate batch"),
      check_at_least("quasi-geodesic paths stay convex", worst_quasi, -1e-7,
                     "certificate batch"),
  };
  report.runtime_seconds = watch.seconds();
  return report;
}

ExperimentReport run_jensen_suite(const Space& space, int ensembles, std::uint64_t seed) {
  if (ensembles < 1) throw std::invalid_argument("need at least one ensemble");
  Stopwatch watch;
  ExperimentReport report;
  report.name = "barycenter-jensen-suite";
  report.space = space.description();
  report.parameters = Json{{"ensembles", ensembles}, {"seed", seed}};

  Rng rng(seed);
  const bool npc = space.is_npc();
  int converged = 0;
  double worst_jensen = std::numeric_limits<double>::infinity();
  double worst_linear_vs_bar = std::numeric_limits<double>::infinity();
  double worst_linear_vs_mean = std::numeric_limits<double>::infinity();

  for (int e = 0; e < ensembles; ++e) {
    const int k = rng.uniform_int(2, 5);
    std::vector<MeasureEnsemble::Entry> entries;
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      const double w = rng.exponential() + rng.exponential();
      entries.push_back({w, random_measure(space, rng.uniform_int(2, 10), 1.0, rng)});
      sum += w;
    }
    for (auto& entry : entries) entry.weight /= sum;
    const MeasureEnsemble ensemble(std::move(entries));

    double mean_var = 0.0;
    for (const auto& entry : ensemble.entries())
      mean_var += entry.weight * variance(entry.measure);
    const double linear_var = variance(mixture(ensemble));
    worst_linear_vs_mean = std::min(worst_linear_vs_mean, linear_var - mean_var);

    if (!npc) continue;
    EnsembleBarycenterResult best = w2_barycenter(ensemble, ensemble.entry(0).measure);
    for (std::size_t i = 1; i < ensemble.size(); ++i) {
      EnsembleBarycenterResult run = w2_barycenter(ensemble, ensemble.entry(i).measure);
      if (run.objective < best.objective) best = std::move(run);
    }
    if (!(best.zero_sum_residual <= 1e-6)) continue;
    ++converged;
    const double var_bar = variance(best.measure);
    worst_jensen = std::min(worst_jensen, mean_var - var_bar);
    worst_linear_vs_bar = std::min(worst_linear_vs_bar, linear_var - var_bar);
  }

  report.quantities = Json{{"converged", converged},
                           {"worst_mean_minus_barycenter", worst_jensen},
                           {"worst_linear_minus_barycenter", worst_linear_vs_bar},
                           {"worst_linear_minus_mean", worst_linear_vs_mean}};
  report.assertions = {check_at_least("mixture variance dominates the mean variance",
                                      worst_linear_vs_mean, -1e-7, "certificate batch")};
  if (npc) {
    report.assertions.push_back(check_close("all runs reached stationarity",
                                            static_cast<double>(converged),
                                            static_cast<double>(ensembles), 0.0,
                                            "fixed-point residual"));
    report.assertions.push_back(check_at_least("barycenter variance below the mean variance",
                                               worst_jensen, -1e-7, "certificate batch"));
    report.assertions.push_back(check_at_least("barycenter variance below the mixture variance",
                                               worst_linear_vs_bar, -1e-7, "certificate batch"));
  }
  report.runtime_seconds = watch.seconds();
  return report;
}

ExperimentReport run_projection_suite(int k, int trials, std::uint64_t seed) {
  if (k != 2 && k != 3 && k != 4 && k != 6)
    throw std::invalid_argument("rotation order must be one of 2, 3, 4, 6");
  Stopwatch watch;
  ExperimentReport report;
  report.name = "projection-sandwich-k" + std::to_string(k);
  const Space plane = Space::euclidean(2);
  report.space = plane.description();
  report.parameters = Json{{"k", k}, {"trials", trials}, {"seed", seed}};

  const IsometryGroup group = IsometryGroup::planar_rotations(plane, k);
  Rng rng(seed);
  double worst_left = std::numeric_limits<double>::infinity();
  double worst_right = std::numeric_limits<double>::infinity();
  int invariance_failures = 0;

  for (int trial = 0; trial < trials; ++trial) {
    const int n = rng.uniform_int(1, 8);
    std::vector<Point> atoms;
    std::vector<double> weights;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double x, y;
      do {
        x = rng.uniform(-1.0, 1.0);
        y = rng.uniform(-1.0, 1.0);
      } while (x * x + y * y > 1.0);
      Vec chart(2);
      chart << x, y;
      atoms.emplace_back(plane, std::move(chart));
      const double w = rng.exponential() + rng.exponential();
      weights.push_back(w);
      sum += w;
    }
    for (double& w : weights) w /= sum;
    const DiscreteMeasure mu(plane, std::move(atoms), std::move(weights), true);

    const SandwichReport sandwich = sandwich_report(group, mu);
    worst_left = std::min(worst_left, sandwich.var_mu - sandwich.var_w);
    worst_right = std::min(worst_right, sandwich.var_l2 - sandwich.var_mu);
    if (!sandwich.warnings.empty()) ++invariance_failures;
  }

  // Exact reference: the reflection group on the line.
  const Space line = Space::euclidean(1);
  Mat reflect(1, 1);
  reflect << -1.0;
  const IsometryGroup mirror = IsometryGroup::from_generators(
      line, {Isometry::euclidean(line, reflect, Vec::Zero(1))});
  Vec zero(1), one(1);
  zero << 0.0;
  one << 1.0;
  const DiscreteMeasure two_atoms(line, {Point(line, zero), Point(line, one)}, {0.5, 0.5});
  const SandwichReport exact = sandwich_report(mirror, two_atoms);

  report.quantities = Json{{"worst_left_margin", worst_left},
                           {"worst_right_margin", worst_right},
                           {"invariance_failures", invariance_failures},
                           {"reflection_case",
                            Json{{"var_w", exact.var_w},
                                 {"var_mu", exact.var_mu},
                                 {"var_l2", exact.var_l2}}}};
  report.assertions = {
      check_at_least("projection does not increase variance", worst_left, -1e-7,
                     "certificate batch"),
      check_at_least("group average does not decrease variance", worst_right, -1e-7,
                     "certificate batch"),
      check_close("projections stay invariant", invariance_failures, 0.0, 0.0,
                  "canonical-form check"),
      check_close("reflection case: projected variance", exact.var_w, 0.25, 1e-12, "by hand"),
      check_close("reflection case: input variance", exact.var_mu, 0.25, 1e-12, "by hand"),
      check_close("reflection case: averaged variance", exact.var_l2, 0.5, 1e-12, "by hand"),
  };
  report.runtime_seconds = watch.seconds();
  return report;
}

std::vector<ExperimentReport> run_full_verification(std::uint64_t seed) {
  std::vector<ExperimentReport> reports;
  reports.push_back(run_sphere_example());
  reports.push_back(run_balloon_example(0.1));
  reports.push_back(run_cylinder_counterexample(1.0, 0.1));
  reports.push_back(run_positive_curvature_counterexample(seed));
  reports.push_back(run_convexity_suite(Space::euclidean(2), 100, seed));
  reports.push_back(run_convexity_suite(Space::hyperbolic(2), 100, seed + 1));
  reports.push_back(run_jensen_suite(Space::euclidean(2), 50, seed + 2));
  reports.push_back(run_jensen_suite(Space::hyperbolic(2), 50, seed + 3));
  reports.push_back(run_jensen_suite(Space::sphere(2, 2.0), 50, seed + 4));
  for (int k : {2, 3, 4, 6}) reports.push_back(run_projection_suite(k, 50, seed + k));
  return reports;
}

}  // namespace wbary

#pragma once

#include <cstdint>

#include "wbary/random.hpp"
#include "wbary/serialization.hpp"

namespace wbary {

enum class Check { close, at_least, at_most };

/// One checked quantity: a computed value against an expected value or
/// threshold, with the provenance of the expectation.
struct Assertion {
  std::string name;
  Check check;
  double computed;
  double expected;
  double tolerance;  // only used by Check::close
  std::string provenance;
  bool pass;
};

Assertion check_close(std::string name, double computed, double expected, double tolerance,
                      std::string provenance);
Assertion check_at_least(std::string name, double computed, double threshold,
                         std::string provenance);
Assertion check_at_most(std::string name, double computed, double threshold,
                        std::string provenance);

struct ExperimentReport {
  std::string name;
  std::string space;
  Json parameters;
  Json quantities;
  std::vector<Assertion> assertions;
  double runtime_seconds = 0.0;

  bool pass() const;
};

Json to_json(const ExperimentReport& report);
// JSON dump without the runtime field; identical runs give identical strings.
std::string report_fingerprint(const ExperimentReport& report);
std::string render_table(const ExperimentReport& report);

/// Two Dirac measures at opposite poles of the circumference-2 sphere: the
/// uniform equator measure ties every equator Dirac as a barycenter, its
/// variance is 1/4, and the mean variance of the ensemble is 0.
ExperimentReport run_sphere_example();

/// Sphere of circumference 1 with a unit segment glued to its south pole.
/// The mid-path displacement measure has strictly larger variance than the
/// mixture, reversing the flat-space comparison.
ExperimentReport run_balloon_example(double eps);

/// Flat cylinder: displacement interpolation through the angular cut locus
/// makes the variance strictly concave at the midpoint.
ExperimentReport run_cylinder_counterexample(double circumference, double delta);

/// Seeded search for a four-point configuration on the circumference-2
/// sphere whose displacement path violates convexity of the variance; the
/// same configurations on the plane and hyperbolic plane do not.
ExperimentReport run_positive_curvature_counterexample(std::uint64_t seed = 7);

/// Random displacement and quasi-geodesic paths on a nonpositively curved
/// space; every variance profile must pass the convexity certificate.
ExperimentReport run_convexity_suite(const Space& space, int trials, std::uint64_t seed);

/// Random ensembles: barycenter variance vs mean variance vs mixture
/// variance. On NPC spaces all three comparisons are asserted; elsewhere only
/// the curvature-free mixture bound.
ExperimentReport run_jensen_suite(const Space& space, int ensembles, std::uint64_t seed);

/// Cyclic rotation groups on the plane: variance sandwich between the
/// transport projection and the group average, plus the exact reflection
/// case on the line.
ExperimentReport run_projection_suite(int k, int trials, std::uint64_t seed);

/// Everything above with default parameters.
std::vector<ExperimentReport> run_full_verification(std::uint64_t seed);

}  // namespace wbary

#pragma once

// Test-only oracles, kept independent of the library's solution paths.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "wbary/frechet.hpp"
#include "wbary/random.hpp"
#include "wbary/transport.hpp"

namespace oracles {

// Exhaustive minimum over all vertex couplings of a rational-weight
// transport instance: expand each atom into unit masses of 1/denominator and
// enumerate every distinct assignment of the expanded atoms.
inline double enumerate_ot_cost(const wbary::DiscreteMeasure& mu, const wbary::DiscreteMeasure& nu,
                                const std::vector<int>& mu_counts,
                                const std::vector<int>& nu_counts, int denominator) {
  std::vector<int> src, tgt;
  for (std::size_t i = 0; i < mu_counts.size(); ++i)
    for (int c = 0; c < mu_counts[i]; ++c) src.push_back(static_cast<int>(i));
  for (std::size_t j = 0; j < nu_counts.size(); ++j)
    for (int c = 0; c < nu_counts[j]; ++c) tgt.push_back(static_cast<int>(j));

  std::vector<std::vector<double>> cost(mu.size(), std::vector<double>(nu.size()));
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double d = wbary::distance(mu.atom(i), nu.atom(j));
      cost[i][j] = d * d;
    }

  std::sort(tgt.begin(), tgt.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t p = 0; p < src.size(); ++p) total += cost[src[p]][tgt[p]];
    best = std::min(best, total / denominator);
  } while (std::next_permutation(tgt.begin(), tgt.end()));
  return best;
}

// Random rational-weight instance: counts sum to the denominator.
inline wbary::DiscreteMeasure rational_measure(const wbary::Space& space, int atoms,
                                               int denominator, double extent, wbary::Rng& rng,
                                               std::vector<int>* counts_out) {
  std::vector<int> counts(atoms, 1);
  for (int extra = atoms; extra < denominator; ++extra)
    counts[rng.uniform_int(0, atoms - 1)] += 1;
  const wbary::DiscreteMeasure raw = wbary::random_measure(space, atoms, extent, rng);
  std::vector<double> weights;
  for (int c : counts) weights.push_back(static_cast<double>(c) / denominator);
  *counts_out = counts;
  return wbary::DiscreteMeasure(space, raw.atoms(), weights);
}

// Central difference of a scalar function.
template <typename F>
double central_difference(F&& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

// Independent coarse-grid minimum of the variance objective on a sphere.
inline double sphere_grid_variance(const wbary::DiscreteMeasure& m, int steps) {
  const double pi = 3.14159265358979323846;
  const double r = m.space().radius();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double colat = pi * i / steps;
    for (int j = 0; j < 2 * steps; ++j) {
      const double lon = pi * j / steps;
      wbary::Vec e(3);
      e << r * std::sin(colat) * std::cos(lon), r * std::sin(colat) * std::sin(lon),
          r * std::cos(colat);
      best = std::min(best, wbary::variance_at(m, wbary::Point(m.space(), e)));
    }
  }
  return best;
}

// Independent circle scan for the cylinder (axial part is a plain mean).
inline double cylinder_grid_variance(const wbary::DiscreteMeasure& m, int steps) {
  double axial = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) axial += m.weight(i) * m.atom(i).chart()(0);
  const double c = m.space().circumference();
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < steps; ++j) {
    wbary::Vec chart(2);
    chart << axial, c * j / steps;
    best = std::min(best, wbary::variance_at(m, wbary::Point(m.space(), chart)));
  }
  return best;
}

}  // namespace oracles

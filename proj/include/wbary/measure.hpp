#pragma once

#include <vector>

#include "wbary/geometry.hpp"

namespace wbary {

/// Finitely supported probability measure in canonical form: atoms sorted
/// lexicographically by (component tag, chart coordinates), duplicates within
/// the merge tolerance combined, weights positive and summing to 1.
class DiscreteMeasure {
 public:
  DiscreteMeasure(Space space, std::vector<Point> atoms, std::vector<double> weights,
                  bool renormalize = false, bool allow_large = false);

  const Space& space() const { return space_; }
  std::size_t size() const { return atoms_.size(); }
  const Point& atom(std::size_t i) const { return atoms_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Point>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

  static DiscreteMeasure dirac(Point p);

 private:
  Space space_;
  std::vector<Point> atoms_;
  std::vector<double> weights_;
};

/// Rebuilds the canonical form; `renormalize` permits weight sums away from 1
/// beyond the input slack.
DiscreteMeasure canonicalize(const DiscreteMeasure& m, bool renormalize = false);

/// Atoms mapped by the isometry, weights unchanged.
DiscreteMeasure pushforward(const Isometry& g, const DiscreteMeasure& m);

/// Canonical-form equality within the atom tolerance.
bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double atom_tol,
                  double weight_tol = 1e-9);

/// Lexicographic order used by the canonical form.
bool chart_less(const Point& a, const Point& b);

/// Discrete measure on the space of measures: weighted list of measures on a
/// common Space.
class MeasureEnsemble {
 public:
  struct Entry {
    double weight;
    DiscreteMeasure measure;
  };

  explicit MeasureEnsemble(std::vector<Entry> entries, bool renormalize = false);

  const Space& space() const { return space_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& entry(std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  Space space_;
  std::vector<Entry> entries_;
};

/// The mixture measure: atom union weighted by ensemble weights, canonical.
DiscreteMeasure mixture(const MeasureEnsemble& ensemble);

}  // namespace wbary

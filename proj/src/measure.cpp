#include "wbary/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wbary {

bool chart_less(const Point& a, const Point& b) {
  if (a.tag() != b.tag()) return static_cast<int>(a.tag()) < static_cast<int>(b.tag());
  const Vec& u = a.chart();
  const Vec& v = b.chart();
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (u(k) < v(k)) return true;
    if (u(k) > v(k)) return false;
  }
  return false;
}

DiscreteMeasure::DiscreteMeasure(Space space, std::vector<Point> atoms,
                                 std::vector<double> weights, bool renormalize, bool allow_large)
    : space_(std::move(space)) {
  if (atoms.empty()) throw std::invalid_argument("measure needs at least one atom");
  if (atoms.size() != weights.size())
    throw std::invalid_argument("atom and weight counts differ");
  if (!allow_large && atoms.size() > tol().max_atoms)
    throw std::invalid_argument("atom count exceeds the soft limit; pass allow_large to override");
  for (const Point& p : atoms)
    if (p.space() != space_) throw SpaceMismatchError("atom lives on a different space");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("measure weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol().weight_input_slack && !renormalize)
    throw std::invalid_argument("weights do not sum to 1; pass renormalize to rescale");

  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return chart_less(atoms[i], atoms[j]); });

  // Merge clusters of atoms within the merge tolerance. The sort key bounds
  // the first-coordinate gap, so only a window needs pairwise checks.
  const double merge = tol().atom_merge;
  const double window = 100.0 * merge;
  std::vector<std::size_t> parent(order.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < order.size(); ++a) {
    const Point& pa = atoms[order[a]];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const Point& pb = atoms[order[b]];
      if (pa.tag() != pb.tag()) break;
      if (pb.chart()(0) - pa.chart()(0) > window) break;
      if (distance(pa, pb) <= merge) {
        std::size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }

  for (std::size_t a = 0; a < order.size(); ++a) {
    if (find(a) == a) {
      atoms_.push_back(atoms[order[a]]);
      weights_.push_back(0.0);
    }
  }
  std::vector<std::size_t> slot(order.size());
  std::size_t next = 0;
  for (std::size_t a = 0; a < order.size(); ++a)
    if (find(a) == a) slot[a] = next++;
  for (std::size_t a = 0; a < order.size(); ++a)
    weights_[slot[find(a)]] += weights[order[a]];

  double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  for (double& w : weights_) w /= total;
}

DiscreteMeasure DiscreteMeasure::dirac(Point p) {
  Space sp = p.space();
  return DiscreteMeasure(std::move(sp), {std::move(p)}, {1.0});
}

DiscreteMeasure canonicalize(const DiscreteMeasure& m, bool renormalize) {
  return DiscreteMeasure(m.space(), m.atoms(), m.weights(), renormalize);
}

DiscreteMeasure pushforward(const Isometry& g, const DiscreteMeasure& m) {
  if (g.space() != m.space()) throw SpaceMismatchError("isometry and measure spaces differ");
  std::vector<Point> atoms;
  atoms.reserve(m.size());
  for (const Point& p : m.atoms()) atoms.push_back(g.apply(p));
  return DiscreteMeasure(m.space(), std::move(atoms), m.weights(), false, true);
}

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double atom_tol,
                  double weight_tol) {
  if (a.space() != b.space() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (distance(a.atom(i), b.atom(i)) > atom_tol) return false;
    if (std::abs(a.weight(i) - b.weight(i)) > weight_tol) return false;
  }
  return true;
}

MeasureEnsemble::MeasureEnsemble(std::vector<Entry> entries, bool renormalize)
    : space_(entries.empty() ? Space::euclidean(1) : entries.front().measure.space()),
      entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("ensemble needs at least one entry");
  double sum = 0.0;
  for (const Entry& e : entries_) {
    if (!(e.weight > 0.0)) throw std::invalid_argument("ensemble weights must be positive");
    if (e.measure.space() != space_)
      throw SpaceMismatchError("ensemble measures live on different spaces");
    sum += e.weight;
  }
  if (std::abs(sum - 1.0) > tol().weight_input_slack && !renormalize)
    throw std::invalid_argument("ensemble weights do not sum to 1");
  for (Entry& e : entries_) e.weight /= sum;
}

DiscreteMeasure mixture(const MeasureEnsemble& ensemble) {
  std::vector<Point> atoms;
  std::vector<double> weights;
  for (const auto& e : ensemble.entries()) {
    for (std::size_t i = 0; i < e.measure.size(); ++i) {
      atoms.push_back(e.measure.atom(i));
      weights.push_back(e.weight * e.measure.weight(i));
    }
  }
  return DiscreteMeasure(ensemble.space(), std::move(atoms), std::move(weights), false, true);
}

}  // namespace wbary

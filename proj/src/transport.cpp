#include "wbary/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wbary {

namespace {

double entry_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                  const std::vector<CouplingEntry>& entries) {
  double c = 0.0;
  for (const auto& e : entries) {
    const double d = distance(mu.atom(e.i), nu.atom(e.j));
    c += e.mass * d * d;
  }
  return c;
}

Mat cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  Mat c(mu.size(), nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double d = distance(mu.atom(i), nu.atom(j));
      c(i, j) = d * d;
    }
  return c;
}

bool uniform_weights(const DiscreteMeasure& m) {
  const double w = 1.0 / static_cast<double>(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (std::abs(m.weight(i) - w) > 1e-12) return false;
  return true;
}

// Transportation simplex on the bipartite graph. Sources are nodes
// 0..m-1, sinks m..m+n-1; the basis is a spanning tree of m+n-1 arcs.
class TransportSimplex {
 public:
  TransportSimplex(const Mat& cost, const std::vector<double>& supply,
                   const std::vector<double>& demand)
      : cost_(cost), m_(supply.size()), n_(demand.size()) {
    northwest_corner(supply, demand);
  }

  std::vector<CouplingEntry> solve() {
    const double enter_tol = 1e-12 * (1.0 + cost_.cwiseAbs().maxCoeff());
    const std::size_t max_pivots = 200 * (m_ + n_) * (m_ + n_) + 10000;
    for (std::size_t pivot = 0;; ++pivot) {
      if (pivot > max_pivots)
        throw std::runtime_error("transport simplex exceeded its pivot budget");
      compute_potentials();
      const int entering = lowest_index_entering(enter_tol);
      if (entering < 0) break;
      pivot_on(static_cast<std::size_t>(entering) / n_, static_cast<std::size_t>(entering) % n_);
    }
    std::vector<CouplingEntry> out;
    for (const Arc& a : basis_)
      if (a.mass > 0.0) out.push_back({a.i, a.j, a.mass});
    return out;
  }

 private:
  struct Arc {
    std::size_t i, j;
    double mass;
  };

  void northwest_corner(const std::vector<double>& supply, const std::vector<double>& demand) {
    std::size_t i = 0, j = 0;
    double rema = supply[0], remb = demand[0];
    while (true) {
      const double t = std::min(rema, remb);
      basis_.push_back({i, j, t});
      rema -= t;
      remb -= t;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (rema == 0.0 && i < m_ - 1) {
        ++i;
        rema = supply[i];
      } else if (j < n_ - 1) {
        ++j;
        remb = demand[j];
      } else {
        ++i;
        rema = supply[i];
      }
    }
  }

  void build_adjacency(std::vector<std::vector<std::size_t>>& adj) const {
    adj.assign(m_ + n_, {});
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      adj[basis_[k].i].push_back(k);
      adj[m_ + basis_[k].j].push_back(k);
    }
  }

  void compute_potentials() {
    u_.assign(m_, 0.0);
    v_.assign(n_, 0.0);
    std::vector<std::vector<std::size_t>> adj;
    build_adjacency(adj);
    std::vector<char> seen(m_ + n_, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t k : adj[node]) {
        const Arc& a = basis_[k];
        const std::size_t other = (node == a.i) ? m_ + a.j : a.i;
        if (seen[other]) continue;
        seen[other] = 1;
        if (other >= m_)
          v_[other - m_] = cost_(a.i, a.j) - u_[a.i];
        else
          u_[other] = cost_(a.i, a.j) - v_[a.j];
        stack.push_back(other);
      }
    }
  }

  int lowest_index_entering(double enter_tol) const {
    std::vector<char> basic(m_ * n_, 0);
    for (const Arc& a : basis_) basic[a.i * n_ + a.j] = 1;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!basic[i * n_ + j] && cost_(i, j) - u_[i] - v_[j] < -enter_tol)
          return static_cast<int>(i * n_ + j);
    return -1;
  }

  void pivot_on(std::size_t ei, std::size_t ej) {
    // Path from source ei to sink ej through the basis tree; together with
    // the entering arc it forms the unique pivot cycle.
    std::vector<std::vector<std::size_t>> adj;
    build_adjacency(adj);
    const std::size_t start = ei, goal = m_ + ej;
    std::vector<int> parent_arc(m_ + n_, -1);
    std::vector<int> parent_node(m_ + n_, -1);
    std::vector<char> seen(m_ + n_, 0);
    std::vector<std::size_t> queue{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t node = queue[head];
      if (node == goal) break;
      for (std::size_t k : adj[node]) {
        const Arc& a = basis_[k];
        const std::size_t other = (node == a.i) ? m_ + a.j : a.i;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_arc[other] = static_cast<int>(k);
        parent_node[other] = static_cast<int>(node);
        queue.push_back(other);
      }
    }
    if (!seen[goal]) throw std::logic_error("basis lost connectivity");

    // Walk back from the sink: arcs alternate -, +, -, ... in cycle order.
    std::vector<std::size_t> path;
    for (std::size_t node = goal; node != start;
         node = static_cast<std::size_t>(parent_node[node]))
      path.push_back(static_cast<std::size_t>(parent_arc[node]));

    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = basis_.size();
    for (std::size_t k = 0; k < path.size(); k += 2) {
      if (basis_[path[k]].mass < theta) {
        theta = basis_[path[k]].mass;
        leaving = path[k];
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k)
      basis_[path[k]].mass += (k % 2 == 0) ? -theta : theta;
    basis_[leaving] = {ei, ej, theta};
  }

  const Mat& cost_;
  std::size_t m_, n_;
  std::vector<Arc> basis_;
  std::vector<double> u_, v_;
};

}  // namespace

namespace detail {

std::vector<int> solve_assignment(const Mat& cost) {
  const int n = static_cast<int>(cost.rows());
  // Shortest augmenting paths with dual potentials, O(n^3).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> rowsol(n, -1);
  for (int j = 1; j <= n; ++j)
    if (match[j] != 0) rowsol[match[j] - 1] = j - 1;
  return rowsol;
}

}  // namespace detail

Coupling::Coupling(DiscreteMeasure source, DiscreteMeasure target,
                   std::vector<CouplingEntry> entries, double cost)
    : source_(std::move(source)), target_(std::move(target)), entries_(std::move(entries)),
      cost_(cost) {
  if (source_.space() != target_.space())
    throw SpaceMismatchError("coupling endpoints live on different spaces");
  std::vector<double> row(source_.size(), 0.0), col(target_.size(), 0.0);
  for (const auto& e : entries_) {
    if (e.i >= source_.size() || e.j >= target_.size())
      throw std::invalid_argument("coupling entry index out of range");
    if (!(e.mass > 0.0)) throw std::invalid_argument("coupling masses must be positive");
    row[e.i] += e.mass;
    col[e.j] += e.mass;
  }
  for (std::size_t i = 0; i < source_.size(); ++i)
    if (std::abs(row[i] - source_.weight(i)) > tol().marginal)
      throw std::invalid_argument("coupling row sums differ from source weights");
  for (std::size_t j = 0; j < target_.size(); ++j)
    if (std::abs(col[j] - target_.weight(j)) > tol().marginal)
      throw std::invalid_argument("coupling column sums differ from target weights");
  if (std::abs(entry_cost(source_, target_, entries_) - cost_) > tol().cost_consistency)
    throw std::invalid_argument("stored coupling cost is inconsistent");
}

Coupling solve_ot(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.space() != nu.space()) throw SpaceMismatchError("transport endpoints differ in space");

  std::vector<CouplingEntry> entries;
  if (mu.size() == 1) {
    for (std::size_t j = 0; j < nu.size(); ++j) entries.push_back({0, j, nu.weight(j)});
  } else if (nu.size() == 1) {
    for (std::size_t i = 0; i < mu.size(); ++i) entries.push_back({i, 0, mu.weight(i)});
  } else if (mu.size() == nu.size() && uniform_weights(mu) && uniform_weights(nu)) {
    const Mat c = cost_matrix(mu, nu);
    const std::vector<int> rowsol = detail::solve_assignment(c);
    const double w = 1.0 / static_cast<double>(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i)
      entries.push_back({i, static_cast<std::size_t>(rowsol[i]), w});
  } else {
    const Mat c = cost_matrix(mu, nu);
    TransportSimplex simplex(c, mu.weights(), nu.weights());
    entries = simplex.solve();
  }
  const double cost = entry_cost(mu, nu, entries);
  return Coupling(mu, nu, std::move(entries), cost);
}

double w2_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return std::sqrt(std::max(0.0, solve_ot(mu, nu).cost()));
}

double coupling_cost(const Coupling& c) {
  return entry_cost(c.source(), c.target(), c.entries());
}

}  // namespace wbary

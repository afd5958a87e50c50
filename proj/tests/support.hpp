#pragma once

// Instance builders and brute-force reference implementations shared by the
// unit and acceptance tests. Everything here is deliberately naive.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "dhtsp/solver.hpp"

namespace dhtsp::testing {

using Matrix = std::vector<std::vector<double>>;

inline CostMatrix to_matrix(const Matrix& rows) {
  CostMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

inline Instance make_instance(const Matrix& c1, const Matrix& c2) {
  Instance inst;
  inst.n_targets = c1.size() - 1;
  inst.cost1 = to_matrix(c1);
  inst.cost2 = to_matrix(c2);
  return inst;
}

// One target; vehicle 1 pays c1 per depot leg, vehicle 2 pays c2.
inline Instance single_target(double c1, double c2) {
  return make_instance({{0, c1}, {c1, 0}}, {{0, c2}, {c2, 0}});
}

inline std::vector<std::vector<double>> floyd_warshall(std::vector<std::vector<double>> d) {
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

// Shortest-path metrics of a random complete graph over d1, d2 and the
// targets. Vehicle 2's edge weights are vehicle 1's scaled by random factors
// >= 1, so dominance holds on every target pair. Small integer weights make
// ties common.
inline Instance graph_metric(std::size_t n, std::uint64_t seed, int max_weight = 10) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::uniform_int_distribution<int> factor(1, 3);
  const std::size_t points = n + 2;  // 0 = d1, 1 = d2, 2.. = targets
  std::vector<std::vector<double>> w1(points, std::vector<double>(points, 0.0));
  auto w2 = w1;
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t j = i + 1; j < points; ++j) {
      w1[i][j] = w1[j][i] = weight(rng);
      w2[i][j] = w2[j][i] = w1[i][j] * factor(rng);
    }
  }
  const auto d1 = floyd_warshall(w1);
  const auto d2 = floyd_warshall(w2);
  auto project = [&](const std::vector<std::vector<double>>& d, std::size_t depot) {
    CostMatrix m(n + 1);
    auto point = [&](std::size_t idx) { return idx == 0 ? depot : idx + 1; };
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) m(i, j) = d[point(i)][point(j)];
    }
    return m;
  };
  Instance inst;
  inst.n_targets = n;
  inst.cost1 = project(d1, 0);
  inst.cost2 = project(d2, 1);
  return inst;
}

// Integer costs: ceilings of Euclidean distances on an integer grid, vehicle
// 2 scaled by an integer factor k. Ceiling preserves the triangle inequality.
inline Instance integer_euclidean(std::size_t n, int k, std::uint64_t seed, int box = 50) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, box);
  std::vector<std::array<int, 2>> pts(n + 2);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  auto dist = [&](std::size_t a, std::size_t b) {
    return std::hypot(double(pts[a][0] - pts[b][0]), double(pts[a][1] - pts[b][1]));
  };
  Instance inst;
  inst.n_targets = n;
  inst.cost1 = CostMatrix(n + 1);
  inst.cost2 = CostMatrix(n + 1);
  auto point = [](std::size_t idx, std::size_t depot) { return idx == 0 ? depot : idx + 1; };
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (i == j) continue;
      inst.cost1(i, j) = std::ceil(dist(point(i, 0), point(j, 0)) - 1e-12);
      inst.cost2(i, j) = std::ceil(k * dist(point(i, 1), point(j, 1)) - 1e-12);
    }
  }
  return inst;
}

// --- reference optimum: every split, every visiting order -----------------

inline double tour_cost(const CostMatrix& c, const std::vector<int>& order) {
  if (order.empty()) return 0.0;
  double total = c(0, order.front()) + c(order.back(), 0);
  for (std::size_t k = 1; k < order.size(); ++k) total += c(order[k - 1], order[k]);
  return total;
}

inline double best_order(const CostMatrix& c, std::vector<int> targets) {
  std::sort(targets.begin(), targets.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, tour_cost(c, targets));
  } while (std::next_permutation(targets.begin(), targets.end()));
  return targets.empty() ? 0.0 : best;
}

inline double brute_force_optimum(const Instance& inst) {
  const std::size_t n = inst.n_targets;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> a;
    std::vector<int> b;
    for (std::size_t k = 0; k < n; ++k) (mask >> k & 1 ? b : a).push_back(static_cast<int>(k + 1));
    best = std::min(best, best_order(inst.cost1, a) + best_order(inst.cost2, b));
  }
  return best;
}

// --- reference tour: Euler circuit of the doubled tree, then shortcut ------

struct EulerTour {
  std::vector<int> circuit;   // closed walk, every tree edge twice
  std::vector<int> shortcut;  // first visits, closed at root
  double cost = 0.0;
};

inline EulerTour euler_shortcut(const std::vector<Edge>& edges, int root, const CostMatrix& cost) {
  const std::size_t dim = cost.dim();
  // Edge list of the doubled multigraph.
  std::vector<std::pair<int, int>> arcs;
  std::vector<std::vector<int>> incident(dim);
  for (const Edge& e : edges) {
    for (int copy = 0; copy < 2; ++copy) {
      incident[e.u].push_back(static_cast<int>(arcs.size()));
      incident[e.v].push_back(static_cast<int>(arcs.size()));
      arcs.emplace_back(e.u, e.v);
    }
  }
  std::vector<char> used(arcs.size(), 0);
  std::vector<std::size_t> next(dim, 0);
  std::vector<int> stack{root};
  EulerTour out;
  while (!stack.empty()) {
    const int v = stack.back();
    auto& k = next[v];
    while (k < incident[v].size() && used[incident[v][k]]) ++k;
    if (k == incident[v].size()) {
      out.circuit.push_back(v);
      stack.pop_back();
      continue;
    }
    const int a = incident[v][k];
    used[a] = 1;
    stack.push_back(arcs[a].first == v ? arcs[a].second : arcs[a].first);
  }
  std::vector<char> seen(dim, 0);
  for (int v : out.circuit) {
    if (!seen[v]) {
      seen[v] = 1;
      out.shortcut.push_back(v);
    }
  }
  if (out.shortcut.size() > 1) out.shortcut.push_back(root);
  for (std::size_t k = 1; k < out.shortcut.size(); ++k) out.cost += cost(out.shortcut[k - 1], out.shortcut[k]);
  return out;
}

// --- literal dual checks ---------------------------------------------------

template <class T>
bool literally_laminar(const DualFamily<T>& family) {
  std::vector<std::set<int>> sets;
  for (const auto& r : family.records) sets.emplace_back(r.vertices.begin(), r.vertices.end());
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      std::vector<int> common;
      std::set_intersection(sets[a].begin(), sets[a].end(), sets[b].begin(), sets[b].end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      const bool nested = common.size() == sets[a].size() || common.size() == sets[b].size();
      if (!nested) return false;
    }
  }
  return true;
}

// Number of (forest, edge) pairs where the crossing dual mass exceeds the
// edge cost by more than tol.
template <class T>
std::size_t literal_edge_violations(const DualHistory<T>& history, const Instance& inst, const T& tol) {
  std::size_t count = 0;
  const int dim = static_cast<int>(inst.n_targets + 1);
  for (Forest f : {Forest::First, Forest::Second}) {
    const auto& cost = f == Forest::First ? inst.cost1 : inst.cost2;
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        T mass(0);
        for (const auto& r : history.family(f).records) {
          if (r.has_depot) continue;
          const bool hi = std::binary_search(r.vertices.begin(), r.vertices.end(), i);
          const bool hj = std::binary_search(r.vertices.begin(), r.vertices.end(), j);
          if (hi != hj) mass += r.y;
        }
        if (mass > Numeric<T>::from_double(cost(i, j)) + tol) ++count;
      }
    }
  }
  return count;
}

// --- pruning properties ----------------------------------------------------

// Vertices left without root after deleting `skip` from the edge list.
inline std::vector<int> cut_off(const std::vector<Edge>& edges, std::size_t skip, int root, std::size_t dim) {
  std::vector<std::vector<int>> adj(dim);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (k == skip) continue;
    adj[edges[k].u].push_back(edges[k].v);
    adj[edges[k].v].push_back(edges[k].u);
  }
  std::vector<char> seen(dim, 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<int> lost;
  for (const Edge& e : edges) {
    for (int v : {e.u, e.v}) {
      if (!seen[v] && std::find(lost.begin(), lost.end(), v) == lost.end()) lost.push_back(v);
    }
  }
  std::sort(lost.begin(), lost.end());
  return lost;
}

// Both declared properties of the vehicle-1 tree, given the vertices that
// stay connected to d1.
template <class T>
bool pruning_properties_hold(const GrowthState<T>& state, const std::vector<char>& connected) {
  const auto& labels = state.labels();
  for (int v = 1; v < static_cast<int>(state.n_vertices()); ++v) {
    const int l = state.label_of(v);
    if (l < 0) {
      if (!connected[v]) return false;
      continue;
    }
    if (!connected[v]) continue;
    // Every vertex whose own label contains this vertex's label stays too.
    for (int u = 1; u < static_cast<int>(state.n_vertices()); ++u) {
      const int lu = state.label_of(u);
      if (lu < 0 || connected[u]) continue;
      const auto& outer = labels[lu];
      const auto& inner = labels[l];
      if (std::includes(outer.begin(), outer.end(), inner.begin(), inner.end())) return false;
    }
  }
  return true;
}

}  // namespace dhtsp::testing

#include "dhtsp/tour.hpp"

#include <algorithm>

namespace dhtsp {

template <class T>
Tour<T> tree_to_tour(std::span<const Edge> edges, int root, const CostMatrix& cost) {
  const int dim = static_cast<int>(cost.dim());
  if (root < 0 || root >= dim) throw TreeError("root out of range");
  std::vector<std::vector<int>> adj(dim);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= dim || e.u >= e.v) throw TreeError("malformed edge");
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  Tour<T> tour;
  std::vector<char> seen(dim, 0);
  // Iterative DFS; each frame is (vertex, parent, next neighbour position).
  struct Frame {
    int v;
    int parent;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, -1, 0}};
  seen[root] = 1;
  tour.sequence.push_back(root);
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == adj[top.v].size()) {
      stack.pop_back();
      continue;
    }
    const int w = adj[top.v][top.next++];
    if (w == top.parent) continue;
    if (seen[w]) throw TreeError("edge set contains a cycle");
    seen[w] = 1;
    tour.sequence.push_back(w);
    stack.push_back({w, top.v, 0});
  }
  if (tour.sequence.size() != edges.size() + 1) throw TreeError("edge set is not connected to the root");

  if (tour.sequence.size() > 1) tour.sequence.push_back(root);
  for (std::size_t k = 1; k < tour.sequence.size(); ++k) {
    tour.cost += Numeric<T>::from_double(cost(tour.sequence[k - 1], tour.sequence[k]));
  }
  return tour;
}

template <class T>
TourPair<T> build_tours(const HsfSolution<T>& hsf, const Instance& instance) {
  return TourPair<T>{tree_to_tour<T>(hsf.edges1, 0, instance.cost1), tree_to_tour<T>(hsf.edges2, 0, instance.cost2)};
}

template Tour<double> tree_to_tour<double>(std::span<const Edge>, int, const CostMatrix&);
template Tour<Rational> tree_to_tour<Rational>(std::span<const Edge>, int, const CostMatrix&);
template TourPair<double> build_tours<double>(const HsfSolution<double>&, const Instance&);
template TourPair<Rational> build_tours<Rational>(const HsfSolution<Rational>&, const Instance&);

}  // namespace dhtsp

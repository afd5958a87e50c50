#include "dhtsp/prune.hpp"

#include <algorithm>
#include <numeric>

namespace dhtsp {

namespace {

using Adjacency = std::vector<std::vector<int>>;

Adjacency adjacency(std::size_t dim, const std::vector<Edge>& edges) {
  Adjacency adj(dim);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

// Vertices reachable from root using only vertices with allowed[v].
std::vector<char> reach(const Adjacency& adj, int root, const std::vector<char>& allowed) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w] && allowed[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// For every label, the next (later, strictly larger) label containing it.
std::vector<int> enclosing_labels(const std::vector<std::vector<int>>& labels, std::size_t dim) {
  std::vector<std::vector<int>> chain(dim);
  for (std::size_t l = 0; l < labels.size(); ++l) {
    for (int v : labels[l]) chain[v].push_back(static_cast<int>(l));
  }
  std::vector<int> up(labels.size(), -1);
  for (std::size_t l = 0; l < labels.size(); ++l) {
    const auto& c = chain[labels[l].front()];
    auto it = std::upper_bound(c.begin(), c.end(), static_cast<int>(l));
    if (it != c.end()) up[l] = *it;
  }
  return up;
}

}  // namespace

template <class T>
std::vector<std::vector<int>> vehicle2_blocks(const GrowthState<T>& state, const std::vector<int>& targets2) {
  const auto& labels = state.labels();
  const std::size_t dim = state.n_vertices();
  std::vector<char> in_x(dim, 0);
  for (int v : targets2) in_x[v] = 1;
  std::vector<char> inside(labels.size(), 0);
  for (std::size_t l = 0; l < labels.size(); ++l) {
    inside[l] = std::all_of(labels[l].begin(), labels[l].end(), [&](int v) { return in_x[v] != 0; });
  }
  const auto up = enclosing_labels(labels, dim);
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(dim, -1);
  for (std::size_t l = 0; l < labels.size(); ++l) {
    if (!inside[l] || (up[l] >= 0 && inside[up[l]])) continue;
    for (int v : labels[l]) {
      if (block_of[v] >= 0) throw InvariantViolation("maximal labels inside X overlap");
      block_of[v] = static_cast<int>(blocks.size());
    }
    blocks.push_back(labels[l]);
  }
  for (int v : targets2) {
    if (block_of[v] < 0) throw InvariantViolation("target " + std::to_string(v) + " in X is not covered by a label");
  }
  return blocks;
}

template <class T>
HsfSolution<T> prune(const GrowthState<T>& state, const Instance& instance) {
  if (state.active_count(Forest::First) != 0) throw std::invalid_argument("prune needs a finished growth run");
  const std::size_t dim = state.n_vertices();
  const auto& labels = state.labels();

  const Adjacency adj1 = adjacency(dim, state.edges(Forest::First));
  std::vector<char> kept = reach(adj1, 0, std::vector<char>(dim, 1));
  for (std::size_t v = 1; v < dim; ++v) {
    if (!kept[v] && state.label_of(static_cast<int>(v)) < 0) {
      throw InvariantViolation("unmarked target " + std::to_string(v) + " is not connected to d1");
    }
  }

  // Edges of the current tree crossing the boundary of label l.
  std::vector<int> stamp(dim, -1);
  auto crossing = [&](std::size_t l) {
    for (int v : labels[l]) stamp[v] = static_cast<int>(l);
    int count = 0;
    bool any = false;
    for (int v : labels[l]) {
      if (!kept[v]) continue;
      any = true;
      for (int w : adj1[v]) {
        if (kept[w] && stamp[w] != static_cast<int>(l)) ++count;
      }
    }
    for (int v : labels[l]) stamp[v] = -1;
    return any ? count : -1;
  };

  // Drop whole label sets that hang off the tree by a single edge, innermost
  // first, until nothing changes.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t l = 0; l < labels.size(); ++l) {
      if (crossing(l) != 1) continue;
      for (int v : labels[l]) kept[v] = 0;
      changed = true;
    }
  }

  HsfSolution<T> out;
  for (const Edge& e : state.edges(Forest::First)) {
    if (kept[e.u] && kept[e.v]) {
      out.edges1.push_back(e);
      out.cost1 += Numeric<T>::from_double(instance.cost1(e.u, e.v));
    }
  }
  std::vector<char> in_tree2(dim, 0);
  in_tree2[0] = 1;
  for (std::size_t v = 1; v < dim; ++v) {
    if (kept[v]) {
      out.targets1.push_back(static_cast<int>(v));
    } else {
      out.targets2.push_back(static_cast<int>(v));
      in_tree2[v] = 1;
    }
  }
  for (const Edge& e : state.edges(Forest::Second)) {
    if (in_tree2[e.u] && in_tree2[e.v]) {
      out.edges2.push_back(e);
      out.cost2 += Numeric<T>::from_double(instance.cost2(e.u, e.v));
    }
  }

  // Both sides must be trees spanning exactly their vertex sets.
  if (out.edges1.size() != out.targets1.size()) throw InvariantViolation("pruned F1 is not a tree");
  if (out.edges2.size() != out.targets2.size()) throw InvariantViolation("pruned F2 is not a tree");
  const auto reach1 = reach(adjacency(dim, out.edges1), 0, kept);
  for (int v : out.targets1) {
    if (!reach1[v]) throw InvariantViolation("target " + std::to_string(v) + " detached from d1 after pruning");
  }
  const Adjacency adj2 = adjacency(dim, out.edges2);
  const auto reach2 = reach(adj2, 0, in_tree2);
  for (int v : out.targets2) {
    if (!reach2[v]) throw InvariantViolation("target " + std::to_string(v) + " in X not connected to d2 in F2");
  }

  // Closure: a kept vertex labelled C forces every vertex labelled C' >= C.
  const auto up = enclosing_labels(labels, dim);
  std::vector<char> holder_kept(labels.size(), 0);
  std::vector<char> all_holders_kept(labels.size(), 1);
  for (std::size_t v = 1; v < dim; ++v) {
    const int l = state.label_of(static_cast<int>(v));
    if (l < 0) continue;
    if (kept[v]) {
      holder_kept[l] = 1;
    } else {
      all_holders_kept[l] = 0;
    }
  }
  for (std::size_t l = 0; l < labels.size(); ++l) {
    if (!holder_kept[l]) continue;
    for (int s = static_cast<int>(l); s >= 0; s = up[s]) {
      if (!all_holders_kept[s]) throw InvariantViolation("pruning broke label closure");
    }
  }

  // No label set remaining in F1' may be a leaf of the contracted tree.
  for (std::size_t l = 0; l < labels.size(); ++l) {
    const int c = crossing(l);
    if (c >= 0 && c < 2) throw InvariantViolation("deactivated set is a leaf of the pruned tree");
  }

  // Each piece of F2' - d2 stays inside one maximal label block of X.
  const auto blocks = vehicle2_blocks(state, out.targets2);
  std::vector<int> block_of(dim, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int v : blocks[b]) block_of[v] = static_cast<int>(b);
  }
  for (const Edge& e : out.edges2) {
    if (e.u != 0 && block_of[e.u] != block_of[e.v]) {
      throw InvariantViolation("F2' edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                               ") joins two label blocks");
    }
  }
  return out;
}

template HsfSolution<double> prune<double>(const GrowthState<double>&, const Instance&);
template HsfSolution<Rational> prune<Rational>(const GrowthState<Rational>&, const Instance&);
template std::vector<std::vector<int>> vehicle2_blocks<double>(const GrowthState<double>&, const std::vector<int>&);
template std::vector<std::vector<int>> vehicle2_blocks<Rational>(const GrowthState<Rational>&,
                                                                 const std::vector<int>&);

}  // namespace dhtsp

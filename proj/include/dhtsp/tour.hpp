#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "dhtsp/prune.hpp"

namespace dhtsp {

class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
struct Tour {
  std::vector<int> sequence;  // starts and ends at the root; [root] when empty
  T cost{0};
};

template <class T>
struct TourPair {
  Tour<T> tour1;
  Tour<T> tour2;

  T total() const { return tour1.cost + tour2.cost; }
};

/// Preorder walk of the tree from root, children in ascending index, closed
/// back to the root: the shortcut of the doubled tree's Euler circuit.
/// Throws TreeError on a cycle or an edge not connected to root.
template <class T>
Tour<T> tree_to_tour(std::span<const Edge> edges, int root, const CostMatrix& cost);

template <class T>
TourPair<T> build_tours(const HsfSolution<T>& hsf, const Instance& instance);

}  // namespace dhtsp

#pragma once

#include <vector>

#include "dhtsp/components.hpp"

namespace dhtsp {

/// Heterogeneous spanning forest: a tree on {d1} + (T \ X) and a tree on
/// {d2} + X, where X is the set of targets handed to vehicle 2.
template <class T>
struct HsfSolution {
  std::vector<Edge> edges1;  // forest-1 matrix indices
  std::vector<Edge> edges2;  // forest-2 matrix indices
  std::vector<int> targets1; // targets spanned by edges1 (matrix indices, sorted)
  std::vector<int> targets2; // X
  T cost1{0};
  T cost2{0};

  T cost() const { return cost1 + cost2; }
};

/// Strong pruning of the terminal forests. Requires a finished growth run
/// (no active forest-1 component); throws InvariantViolation if the
/// feasibility or degree properties fail.
template <class T>
HsfSolution<T> prune(const GrowthState<T>& state, const Instance& instance);

/// Vertices of X grouped by the maximal deactivation labels contained in X.
template <class T>
std::vector<std::vector<int>> vehicle2_blocks(const GrowthState<T>& state, const std::vector<int>& targets2);

}  // namespace dhtsp

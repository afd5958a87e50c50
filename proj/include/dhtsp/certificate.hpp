#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dhtsp/components.hpp"
#include "dhtsp/tour.hpp"

namespace dhtsp {

/// A dual constraint that does not hold. `slack` is rhs - lhs (negative).
struct DualViolation {
  std::string constraint;  // "edge-1", "edge-2", "bound", "laminar", "hsf-vs-dual", "shortcut"
  std::vector<int> where;
  double slack = 0.0;
  std::string detail;
};

/// Edge constraints: for every edge e of E_i, the Y_i mass of sets it
/// crosses is at most cost_i(e).
template <class T>
std::vector<DualViolation> check_edge_constraints(const DualHistory<T>& history, const Instance& instance,
                                                  const T& tol = Numeric<T>::certificate());

/// Bound constraints restricted to the sets of both laminar families:
/// sum of Y1 over S inside U is at most the sum of Y2 over S inside U.
template <class T>
std::vector<DualViolation> check_bound_constraints(const DualHistory<T>& history,
                                                   const T& tol = Numeric<T>::certificate());

/// Structural check: every merged record is the disjoint union of the two
/// records it came from and each record is consumed at most once, which
/// makes each family laminar.
template <class T>
std::vector<DualViolation> check_laminar(const DualHistory<T>& history);

/// 2 * sum of Y1 over all records.
template <class T>
T dual_objective(const DualHistory<T>& history);

template <class T>
struct Certificate {
  T dual_objective{0};
  T hsf_cost{0};
  T tour_cost{0};
  bool feasible = true;
  std::vector<DualViolation> violations;
  std::optional<double> ratio_vs_dual;  // tour_cost / dual_objective
};

/// Full per-run certificate: dual feasibility, the inequality
/// hsf <= 2 sum Y1, and tour <= 2 hsf.
template <class T>
Certificate<T> certify(const DualHistory<T>& history, const Instance& instance, const HsfSolution<T>& hsf,
                       const TourPair<T>& tours);

}  // namespace dhtsp

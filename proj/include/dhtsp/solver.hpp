#pragma once

#include <optional>

#include "dhtsp/certificate.hpp"
#include "dhtsp/growth.hpp"
#include "dhtsp/json_util.hpp"
#include "dhtsp/oracle.hpp"
#include "dhtsp/prune.hpp"
#include "dhtsp/tour.hpp"

namespace dhtsp {

struct SolveOptions {
  GrowthOptions growth;
  bool certificate = true;
};

template <class T>
struct SolveResult {
  TourPair<T> tours;
  HsfSolution<T> hsf;
  DualHistory<T> history;
  T dual_objective{0};
  std::optional<Certificate<T>> certificate;
  std::vector<IterationEvent> events;
  std::size_t iterations = 0;
  double wall_time_s = 0.0;  // growth + pruning + tours

  T total() const { return tours.total(); }
  std::optional<double> ratio_vs_dual() const;
  bool feasible() const { return !certificate || certificate->feasible; }
};

/// Growth, pruning, tour construction and (optionally) the certificate.
/// Does not validate the instance; throws InvariantViolation on an
/// internal failure.
template <class T>
SolveResult<T> solve(const Instance& instance, const SolveOptions& options = {});

/// Result document with keys total, cost1, cost2, tour1, tour2, hsf_cost,
/// dual_objective, ratio_vs_dual, iterations, feasible.
template <class T>
ordered_json to_json(const SolveResult<T>& result);

template <class T>
ordered_json to_json(const ExactSolution<T>& solution);

ordered_json to_json(const ValidationReport& report);

}  // namespace dhtsp

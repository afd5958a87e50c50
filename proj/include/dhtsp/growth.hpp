#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dhtsp/components.hpp"

namespace dhtsp {

enum class GrowthCase { E1, E2, E3 };

const char* case_name(GrowthCase c);

/// One main-loop iteration. Epsilons are reported as doubles whatever the
/// arithmetic; nullopt stands for an undefined (+infinity) candidate.
struct IterationEvent {
  std::size_t iter = 0;  // 1-based
  std::optional<double> eps1;
  std::optional<double> eps2;
  std::optional<double> eps3;
  double eps_min = 0.0;
  GrowthCase taken = GrowthCase::E1;
  Edge edge;                     // E1/E2
  Forest forest = Forest::First; // E1/E2
  std::vector<int> deactivated;  // E3: vertex set of the deactivated component

  bool operator==(const IterationEvent&) const = default;
};

/// One JSONL line for the trace sink (no trailing newline).
std::string trace_line(const IterationEvent& event);

template <class T>
struct EdgeCandidate {
  T value;
  Edge edge;
};

template <class T>
struct ComponentCandidate {
  T value;
  ComponentId component;
};

/// Minimum over edges between distinct components with at least one active
/// side of (cost - p(i) - p(j)) / (active(Cx) + active(Cy)). Full scan;
/// ties go to the lexicographically smallest edge.
template <class T>
std::optional<EdgeCandidate<T>> epsilon1(const GrowthState<T>& state, const Instance& instance);
template <class T>
std::optional<EdgeCandidate<T>> epsilon2(const GrowthState<T>& state, const Instance& instance);
/// Minimum of Bound(C) - w(C) over active childless forest-1 components.
template <class T>
std::optional<ComponentCandidate<T>> epsilon3(const GrowthState<T>& state);

enum class ScanMode {
  // Cached min-slack edge per component pair with per-row minima.
  Incremental,
  // Fresh scan of every edge each iteration.
  Full,
};

struct GrowthOptions {
  ScanMode scan = ScanMode::Incremental;
  // Run the nesting / link / w<=Bound / dual-feasibility checks after every
  // iteration. The dual-feasibility part is O(|T|^2) per iteration.
  bool check_invariants = false;
  std::function<void(const IterationEvent&)> sink;
};

template <class T>
struct GrowthRun {
  GrowthState<T> state;
  std::vector<IterationEvent> events;
};

/// Main primal-dual loop: grows duals until every forest-1 component is
/// inactive. Throws InvariantViolation if an internal check fails.
template <class T>
GrowthRun<T> run_growth(const Instance& instance, const GrowthOptions& options = {});

}  // namespace dhtsp

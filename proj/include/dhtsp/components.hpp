#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dhtsp/instance.hpp"
#include "dhtsp/scalar.hpp"

namespace dhtsp {

enum class Forest : int { First = 1, Second = 2 };

inline int forest_index(Forest f) { return f == Forest::First ? 0 : 1; }

/// Identifier of a component ever created in one forest. Merges always mint
/// a fresh id; ids are never reused.
struct ComponentId {
  std::int32_t value = -1;

  bool valid() const { return value >= 0; }
  auto operator<=>(const ComponentId&) const = default;
};

/// Undirected edge between two vertices of one forest, stored with u < v.
/// Vertex 0 is the forest's depot, 1..n are targets.
struct Edge {
  int u = 0;
  int v = 0;

  static Edge make(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  auto operator<=>(const Edge&) const = default;
};

/// Signals a broken algorithm invariant, never a bad instance.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class T>
struct ComponentRecord {
  std::vector<int> vertices;  // sorted
  bool alive = true;          // still a member of the current partition
  bool active = false;
  bool has_depot = false;
  T y{0};  // dual value Y_i(S) accumulated on exactly this vertex set

  // Forest-1 only.
  T w{0};
  T bound{0};
  std::set<ComponentId> children;  // ids in forest 2

  // Forest-2 only. Invalid id means no parent.
  ComponentId parent;

  // Ids this component was merged from; invalid for initial singletons.
  ComponentId left;
  ComponentId right;
};

/// One forest's record of Y(S): every component ever created with its
/// accumulated dual and the two components it was merged from.
template <class T>
struct DualFamily {
  struct Record {
    std::vector<int> vertices;
    T y{0};
    bool has_depot = false;
    int left = -1;
    int right = -1;
  };
  std::vector<Record> records;  // creation order; children precede parents
};

template <class T>
struct DualHistory {
  DualFamily<T> first;
  DualFamily<T> second;

  const DualFamily<T>& family(Forest f) const { return f == Forest::First ? first : second; }
  DualFamily<T>& family(Forest f) { return f == Forest::First ? first : second; }
};

template <class T>
struct MergeOutcome {
  ComponentId merged;
  // Forest-2 components whose activity flipped to 0 as a side effect.
  std::vector<ComponentId> deactivated_children;
  // Forest-1 component that lost a child (Case 2 merge into the depot).
  ComponentId orphaned_parent;
};

/// Both forests of the primal-dual growth together with their component
/// partitions, potentials, w/Bound accounting, parent/child links and
/// vertex labels.
template <class T>
class GrowthState {
 public:
  /// Singleton components everywhere; depot components inactive.
  explicit GrowthState(const Instance& instance);

  std::size_t n_targets() const { return n_; }
  std::size_t n_vertices() const { return n_ + 1; }

  const ComponentRecord<T>& record(Forest f, ComponentId id) const;
  const std::vector<ComponentRecord<T>>& records(Forest f) const { return records_[forest_index(f)]; }

  ComponentId component_of(Forest f, int vertex) const { return comp_of_[forest_index(f)][vertex]; }
  std::vector<ComponentId> live_components(Forest f) const;

  const T& potential(Forest f, int vertex) const { return potential_[forest_index(f)][vertex]; }
  const std::vector<T>& potentials(Forest f) const { return potential_[forest_index(f)]; }

  const std::vector<Edge>& edges(Forest f) const { return edges_[forest_index(f)]; }

  /// Label index of a forest-1 vertex, or -1 when unmarked.
  int label_of(int vertex) const { return label_of_[vertex]; }
  /// Vertex sets recorded at each Case-3 deactivation, in order.
  const std::vector<std::vector<int>>& labels() const { return labels_; }

  std::size_t active_count(Forest f) const { return active_count_[forest_index(f)]; }
  std::size_t component_count(Forest f) const { return live_count_[forest_index(f)]; }

  const T& elapsed() const { return elapsed_; }
  std::size_t bumps() const { return bumps_; }

  /// Joins components a and b of forest f along edge, applying the
  /// activity, w/Bound and parent/child bookkeeping of the matching case.
  MergeOutcome<T> merge(Forest f, ComponentId a, ComponentId b, Edge edge);

  /// Raises every active component's dual by epsilon.
  void bump_duals(const T& epsilon);

  /// Case 3: deactivate a childless forest-1 component whose w reached its
  /// bound and label its unlabeled vertices with its vertex set.
  void deactivate_with_label(ComponentId c);

  /// Laminar dual families (one record per component ever created).
  DualHistory<T> history() const;

 private:
  ComponentRecord<T>& mutable_record(Forest f, ComponentId id);
  ComponentId fresh(Forest f, ComponentRecord<T> rec);
  void set_active(Forest f, ComponentId id, bool on);

  std::size_t n_ = 0;
  std::vector<ComponentRecord<T>> records_[2];
  std::vector<ComponentId> comp_of_[2];
  std::vector<T> potential_[2];
  std::vector<Edge> edges_[2];
  std::vector<int> label_of_;
  std::vector<std::vector<int>> labels_;
  std::size_t active_count_[2] = {0, 0};
  std::size_t live_count_[2] = {0, 0};
  T elapsed_{0};
  std::size_t bumps_ = 0;
};

/// Consistency checks over a growth state. Each throws
/// InvariantViolation with a description of the first failure.
template <class T>
void check_nesting(const GrowthState<T>& state);
template <class T>
void check_links(const GrowthState<T>& state);
template <class T>
void check_w_bound(const GrowthState<T>& state, const T& tol);
template <class T>
void check_live_duals(const GrowthState<T>& state, const T& tol);

}  // namespace dhtsp

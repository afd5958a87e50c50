#include "dhtsp/growth.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "dhtsp/json_util.hpp"

namespace dhtsp {

const char* case_name(GrowthCase c) {
  switch (c) {
    case GrowthCase::E1: return "E1";
    case GrowthCase::E2: return "E2";
    case GrowthCase::E3: return "E3";
  }
  return "?";
}

std::string trace_line(const IterationEvent& event) {
  ordered_json j;
  j["iter"] = event.iter;
  auto eps = ordered_json::array();
  for (const auto& e : {event.eps1, event.eps2, event.eps3}) eps.push_back(e ? json_number(*e) : ordered_json());
  j["eps"] = std::move(eps);
  j["case"] = case_name(event.taken);
  if (event.taken == GrowthCase::E3) {
    j["deactivated"] = event.deactivated;
  } else {
    j["edge"] = {event.edge.u, event.edge.v};
    j["forest"] = static_cast<int>(event.forest);
  }
  return j.dump();
}

namespace {

template <class T>
class CostTable {
 public:
  CostTable(const CostMatrix& m) : dim_(m.dim()), data_(dim_ * dim_) {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) data_[i * dim_ + j] = Numeric<T>::from_double(m(i, j));
    }
  }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * dim_ + j]; }

 private:
  std::size_t dim_;
  std::vector<T> data_;
};

template <class T>
std::optional<EdgeCandidate<T>> scan_edges(const GrowthState<T>& state, Forest f, const CostTable<T>& cost) {
  std::optional<EdgeCandidate<T>> best;
  const int dim = static_cast<int>(state.n_vertices());
  const auto& p = state.potentials(f);
  for (int i = 0; i < dim; ++i) {
    const ComponentId ci = state.component_of(f, i);
    const int ai = state.record(f, ci).active ? 1 : 0;
    for (int j = i + 1; j < dim; ++j) {
      const ComponentId cj = state.component_of(f, j);
      if (ci == cj) continue;
      const int active = ai + (state.record(f, cj).active ? 1 : 0);
      if (active == 0) continue;
      T value = (cost(i, j) - p[i] - p[j]) / T(active);
      if (!best || value < best->value) best = EdgeCandidate<T>{std::move(value), Edge{i, j}};
    }
  }
  return best;
}

/// Per-forest cache of the min-slack edge between every pair of current
/// components. All edges between two fixed components lose slack at the
/// same rate, so the best edge of a pair only changes when one side is
/// merged; the absolute time tau + slack / (a_x + a_y) at which the pair
/// becomes tight only changes when one side merges or flips activity.
template <class T>
class PairIndex {
 public:
  PairIndex(const GrowthState<T>& state, Forest f, const CostTable<T>& cost)
      : state_(state), forest_(f), cost_(cost), dim_(static_cast<int>(state.n_vertices())) {
    const std::size_t cells = static_cast<std::size_t>(dim_) * dim_;
    best_u_.resize(cells);
    best_v_.resize(cells);
    slot_of_.assign(2 * dim_, -1);
    comp_at_.resize(dim_);
    row_.resize(dim_);
    for (int s = 0; s < dim_; ++s) {
      comp_at_[s] = state.component_of(f, s);
      slot_of_[comp_at_[s].value] = s;
      for (int t = 0; t < dim_; ++t) set_best(s, t, Edge::make(s, t));
    }
    for (int s = 0; s < dim_; ++s) recompute_row(s);
  }

  std::optional<EdgeCandidate<T>> minimum() const {
    const Entry* best = nullptr;
    for (int s = 0; s < dim_; ++s) {
      if (!comp_at_[s].valid() || !row_[s].key) continue;
      if (!best || better(row_[s], *best)) best = &row_[s];
    }
    if (!best) return std::nullopt;
    // Fresh value from the current potentials rather than tau* - tau.
    const Edge e = best->edge;
    const auto& p = state_.potentials(forest_);
    const int active = activity(slot_of_vertex(e.u)) + activity(slot_of_vertex(e.v));
    return EdgeCandidate<T>{(cost_(e.u, e.v) - p[e.u] - p[e.v]) / T(active), e};
  }

  void on_merge(ComponentId a, ComponentId b, ComponentId merged) {
    int keep = slot_of_[a.value];
    int gone = slot_of_[b.value];
    if (gone < keep) std::swap(keep, gone);
    for (int t = 0; t < dim_; ++t) {
      if (t == keep || t == gone || !comp_at_[t].valid()) continue;
      const Edge x = best(keep, t);
      const Edge y = best(gone, t);
      const T sx = slack(x);
      const T sy = slack(y);
      const Edge pick = (sy < sx || (sy == sx && y < x)) ? y : x;
      set_best(keep, t, pick);
      set_best(t, keep, pick);
    }
    comp_at_[gone] = ComponentId{};
    row_[gone] = Entry{};
    comp_at_[keep] = merged;
    slot_of_[merged.value] = keep;
    refresh(keep, gone);
  }

  void on_activity(ComponentId c) { refresh(slot_of_[c.value], -1); }

 private:
  struct Entry {
    std::optional<T> key;  // absolute tightness time
    Edge edge;
    int arg = -1;
  };

  static bool better(const Entry& a, const Entry& b) {
    if (!a.key) return false;
    if (!b.key) return true;
    if (*a.key != *b.key) return *a.key < *b.key;
    return a.edge < b.edge;
  }

  Edge best(int s, int t) const {
    const std::size_t k = static_cast<std::size_t>(s) * dim_ + t;
    return Edge{best_u_[k], best_v_[k]};
  }
  void set_best(int s, int t, Edge e) {
    const std::size_t k = static_cast<std::size_t>(s) * dim_ + t;
    best_u_[k] = e.u;
    best_v_[k] = e.v;
  }

  int slot_of_vertex(int v) const { return slot_of_[state_.component_of(forest_, v).value]; }
  int activity(int slot) const { return state_.record(forest_, comp_at_[slot]).active ? 1 : 0; }

  T slack(Edge e) const {
    const auto& p = state_.potentials(forest_);
    return cost_(e.u, e.v) - p[e.u] - p[e.v];
  }

  Entry entry(int s, int t) const {
    Entry out;
    out.arg = t;
    out.edge = best(s, t);
    const int active = activity(s) + activity(t);
    if (active > 0) out.key = state_.elapsed() + slack(out.edge) / T(active);
    return out;
  }

  void recompute_row(int s) {
    Entry row;
    for (int t = 0; t < dim_; ++t) {
      if (t == s || !comp_at_[t].valid()) continue;
      Entry e = entry(s, t);
      if (!row.key || better(e, row)) row = std::move(e);
    }
    row_[s] = std::move(row);
  }

  void refresh(int s, int gone) {
    recompute_row(s);
    for (int t = 0; t < dim_; ++t) {
      if (t == s || !comp_at_[t].valid()) continue;
      if (row_[t].arg == s || (gone >= 0 && row_[t].arg == gone) || row_[t].arg < 0) {
        recompute_row(t);
        continue;
      }
      Entry e = entry(t, s);
      if (better(e, row_[t])) row_[t] = std::move(e);
    }
  }

  const GrowthState<T>& state_;
  Forest forest_;
  const CostTable<T>& cost_;
  int dim_;
  std::vector<std::int32_t> best_u_;
  std::vector<std::int32_t> best_v_;
  std::vector<int> slot_of_;           // component id -> slot
  std::vector<ComponentId> comp_at_;   // slot -> live component (invalid when free)
  std::vector<Entry> row_;
};

template <class T>
std::optional<T> value_of(const std::optional<EdgeCandidate<T>>& c) {
  return c ? std::optional<T>(c->value) : std::nullopt;
}

template <class T>
std::optional<double> reported(const std::optional<T>& v) {
  return v ? std::optional<double>(Numeric<T>::to_double(*v)) : std::nullopt;
}

// a <= b + tol with nullopt as +infinity.
template <class T>
bool at_most(const std::optional<T>& a, const std::optional<T>& b, const T& tol) {
  if (!a) return false;
  if (!b) return true;
  return *a <= *b + tol;
}

template <class T>
void check_edge_feasibility(const GrowthState<T>& state, const CostTable<T>& cost1, const CostTable<T>& cost2,
                            const T& tol) {
  const int dim = static_cast<int>(state.n_vertices());
  for (Forest f : {Forest::First, Forest::Second}) {
    const auto& p = state.potentials(f);
    const auto& cost = f == Forest::First ? cost1 : cost2;
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        if (state.component_of(f, i) == state.component_of(f, j)) continue;
        if (p[i] + p[j] > cost(i, j) + tol) {
          throw InvariantViolation("dual edge constraint violated on (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") in forest " + std::to_string(static_cast<int>(f)));
        }
      }
    }
  }
}

}  // namespace

template <class T>
std::optional<EdgeCandidate<T>> epsilon1(const GrowthState<T>& state, const Instance& instance) {
  return scan_edges(state, Forest::First, CostTable<T>(instance.cost1));
}

template <class T>
std::optional<EdgeCandidate<T>> epsilon2(const GrowthState<T>& state, const Instance& instance) {
  return scan_edges(state, Forest::Second, CostTable<T>(instance.cost2));
}

template <class T>
std::optional<ComponentCandidate<T>> epsilon3(const GrowthState<T>& state) {
  std::optional<ComponentCandidate<T>> best;
  const auto& recs = state.records(Forest::First);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    if (!r.alive || !r.active || !r.children.empty()) continue;
    T value = r.bound - r.w;
    if (!best || value < best->value) {
      best = ComponentCandidate<T>{std::move(value), ComponentId{static_cast<std::int32_t>(i)}};
    }
  }
  return best;
}

template <class T>
GrowthRun<T> run_growth(const Instance& instance, const GrowthOptions& options) {
  GrowthRun<T> out{GrowthState<T>(instance), {}};
  auto& state = out.state;
  const CostTable<T> cost1(instance.cost1);
  const CostTable<T> cost2(instance.cost2);
  const T tol = Numeric<T>::tight();
  const std::size_t max_iter = 3 * instance.n_targets + 2;

  std::optional<PairIndex<T>> index1;
  std::optional<PairIndex<T>> index2;
  if (options.scan == ScanMode::Incremental && instance.n_targets > 0) {
    index1.emplace(state, Forest::First, cost1);
    index2.emplace(state, Forest::Second, cost2);
  }

  auto clamp = [](std::optional<T> v) {
    if constexpr (!Numeric<T>::exact) {
      if (v && *v < T(0)) v = T(0);
    }
    return v;
  };

  if (options.check_invariants) {
    check_nesting(state);
    check_links(state);
  }

  std::size_t iter = 0;
  while (state.active_count(Forest::First) > 0) {
    ++iter;
    if (iter > max_iter) throw InvariantViolation("iteration bound 3|T|+2 exceeded");

    const auto c1 = index1 ? index1->minimum() : scan_edges(state, Forest::First, cost1);
    const auto c2 = index2 ? index2->minimum() : scan_edges(state, Forest::Second, cost2);
    const auto c3 = epsilon3(state);
    const std::optional<T> e1 = clamp(value_of(c1));
    const std::optional<T> e2 = clamp(value_of(c2));
    const std::optional<T> e3 = clamp(c3 ? std::optional<T>(c3->value) : std::nullopt);

    GrowthCase taken;
    std::optional<T> min23 = e2;
    if (e3 && (!min23 || *e3 < *min23)) min23 = e3;
    if (at_most(e1, min23, tol)) {
      taken = GrowthCase::E1;
    } else if (at_most(e2, e3, tol)) {
      taken = GrowthCase::E2;
    } else if (e3) {
      taken = GrowthCase::E3;
    } else {
      throw InvariantViolation("no candidate while forest-1 components are active");
    }
    T eps_min = e1 ? *e1 : *min23;
    if (min23 && *min23 < eps_min) eps_min = *min23;

    const std::size_t potential_before = state.component_count(Forest::First) +
                                         state.active_count(Forest::First) +
                                         state.component_count(Forest::Second);

    state.bump_duals(eps_min);

    IterationEvent ev;
    ev.iter = iter;
    ev.eps1 = reported(e1);
    ev.eps2 = reported(e2);
    ev.eps3 = reported(e3);
    ev.eps_min = Numeric<T>::to_double(eps_min);
    ev.taken = taken;

    if (taken == GrowthCase::E3) {
      const ComponentId c = c3->component;
      ev.deactivated = state.record(Forest::First, c).vertices;
      state.deactivate_with_label(c);
      if (index1) index1->on_activity(c);
    } else {
      const Forest f = taken == GrowthCase::E1 ? Forest::First : Forest::Second;
      const Edge e = taken == GrowthCase::E1 ? c1->edge : c2->edge;
      if (options.check_invariants) {
        const auto& cost = f == Forest::First ? cost1 : cost2;
        const T s = cost(e.u, e.v) - state.potential(f, e.u) - state.potential(f, e.v);
        const T limit = tol * T(4);
        if (s > limit || s < -limit) throw InvariantViolation("selected edge is not tight after the dual increase");
      }
      const ComponentId a = state.component_of(f, e.u);
      const ComponentId b = state.component_of(f, e.v);
      const auto merged = state.merge(f, a, b, e);
      auto& index = f == Forest::First ? index1 : index2;
      if (index) index->on_merge(a, b, merged.merged);
      if (index2) {
        for (ComponentId child : merged.deactivated_children) index2->on_activity(child);
      }
      ev.edge = e;
      ev.forest = f;
    }

    const std::size_t potential_after = state.component_count(Forest::First) +
                                        state.active_count(Forest::First) +
                                        state.component_count(Forest::Second);
    if (potential_after >= potential_before) throw InvariantViolation("termination measure did not decrease");

    if (options.check_invariants) {
      check_nesting(state);
      check_links(state);
      check_w_bound(state, tol);
      check_live_duals(state, tol);
      check_edge_feasibility(state, cost1, cost2, tol);
    }
    if (options.sink) options.sink(ev);
    out.events.push_back(std::move(ev));
  }

  if (state.active_count(Forest::Second) != 0) {
    throw InvariantViolation("forest-2 components still active after the main loop");
  }
  return out;
}

#define DHTSP_INSTANTIATE(T)                                                                              \
  template std::optional<EdgeCandidate<T>> epsilon1<T>(const GrowthState<T>&, const Instance&);           \
  template std::optional<EdgeCandidate<T>> epsilon2<T>(const GrowthState<T>&, const Instance&);           \
  template std::optional<ComponentCandidate<T>> epsilon3<T>(const GrowthState<T>&);                       \
  template GrowthRun<T> run_growth<T>(const Instance&, const GrowthOptions&);

DHTSP_INSTANTIATE(double)
DHTSP_INSTANTIATE(Rational)

#undef DHTSP_INSTANTIATE

}  // namespace dhtsp

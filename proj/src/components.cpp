#include "dhtsp/components.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace dhtsp {

namespace {

std::string describe(Forest f, ComponentId id) {
  std::ostringstream out;
  out << "component " << id.value << " of forest " << static_cast<int>(f);
  return out.str();
}

std::vector<int> merged_vertices(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

template <class T>
GrowthState<T>::GrowthState(const Instance& instance) : n_(instance.n_targets) {
  const std::size_t dim = n_ + 1;
  for (int fi = 0; fi < 2; ++fi) {
    records_[fi].reserve(2 * dim);
    comp_of_[fi].resize(dim);
    potential_[fi].assign(dim, T(0));
    for (std::size_t v = 0; v < dim; ++v) {
      ComponentRecord<T> rec;
      rec.vertices = {static_cast<int>(v)};
      rec.has_depot = v == 0;
      rec.active = v != 0;
      comp_of_[fi][v] = ComponentId{static_cast<std::int32_t>(records_[fi].size())};
      records_[fi].push_back(std::move(rec));
    }
    live_count_[fi] = dim;
    active_count_[fi] = n_;
  }
  // Singletons are created in vertex order, so {v} has id v in both forests.
  for (std::size_t v = 1; v < dim; ++v) {
    const ComponentId id{static_cast<std::int32_t>(v)};
    records_[0][v].children.insert(id);
    records_[1][v].parent = id;
  }
  label_of_.assign(dim, -1);
}

template <class T>
const ComponentRecord<T>& GrowthState<T>::record(Forest f, ComponentId id) const {
  const auto& recs = records_[forest_index(f)];
  if (!id.valid() || static_cast<std::size_t>(id.value) >= recs.size()) {
    throw std::out_of_range("unknown " + describe(f, id));
  }
  return recs[id.value];
}

template <class T>
ComponentRecord<T>& GrowthState<T>::mutable_record(Forest f, ComponentId id) {
  return const_cast<ComponentRecord<T>&>(record(f, id));
}

template <class T>
std::vector<ComponentId> GrowthState<T>::live_components(Forest f) const {
  std::vector<ComponentId> out;
  const auto& recs = records_[forest_index(f)];
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (recs[i].alive) out.push_back(ComponentId{static_cast<std::int32_t>(i)});
  }
  return out;
}

template <class T>
ComponentId GrowthState<T>::fresh(Forest f, ComponentRecord<T> rec) {
  auto& recs = records_[forest_index(f)];
  const ComponentId id{static_cast<std::int32_t>(recs.size())};
  for (int v : rec.vertices) comp_of_[forest_index(f)][v] = id;
  if (rec.active) ++active_count_[forest_index(f)];
  ++live_count_[forest_index(f)];
  recs.push_back(std::move(rec));
  return id;
}

template <class T>
void GrowthState<T>::set_active(Forest f, ComponentId id, bool on) {
  auto& rec = mutable_record(f, id);
  if (rec.active == on) return;
  rec.active = on;
  if (on) {
    ++active_count_[forest_index(f)];
  } else {
    --active_count_[forest_index(f)];
  }
}

template <class T>
MergeOutcome<T> GrowthState<T>::merge(Forest f, ComponentId a, ComponentId b, Edge edge) {
  if (a == b) throw std::invalid_argument("cannot merge " + describe(f, a) + " with itself");
  auto& ra = mutable_record(f, a);
  auto& rb = mutable_record(f, b);
  if (!ra.alive || !rb.alive) throw std::invalid_argument("stale component id in merge");
  const auto& comp = comp_of_[forest_index(f)];
  const int dim = static_cast<int>(n_vertices());
  if (edge.u < 0 || edge.v >= dim || edge.u == edge.v) throw std::invalid_argument("edge out of range");
  const bool spans = (comp[edge.u] == a && comp[edge.v] == b) || (comp[edge.u] == b && comp[edge.v] == a);
  if (!spans) throw std::invalid_argument("edge endpoints must lie one in each merged component");

  MergeOutcome<T> out;
  ComponentRecord<T> rec;
  rec.vertices = merged_vertices(ra.vertices, rb.vertices);
  rec.has_depot = ra.has_depot || rb.has_depot;
  rec.left = a;
  rec.right = b;

  set_active(f, a, false);
  set_active(f, b, false);
  ra.alive = false;
  rb.alive = false;
  live_count_[forest_index(f)] -= 2;

  if (f == Forest::First) {
    rec.w = ra.w + rb.w;
    rec.bound = ra.bound + rb.bound;
    rec.children = ra.children;
    rec.children.insert(rb.children.begin(), rb.children.end());
    rec.active = !rec.has_depot;
    const auto children = rec.children;
    const bool active = rec.active;
    out.merged = fresh(f, std::move(rec));
    for (ComponentId c : children) {
      mutable_record(Forest::Second, c).parent = out.merged;
      if (!active && record(Forest::Second, c).active) {
        set_active(Forest::Second, c, false);
        out.deactivated_children.push_back(c);
      }
    }
  } else {
    if (rec.has_depot) {
      rec.active = false;
      const ComponentId side = ra.has_depot ? b : a;
      const ComponentId parent = record(f, side).parent;
      if (!parent.valid()) throw InvariantViolation("non-depot " + describe(f, side) + " has no parent");
      out.merged = fresh(f, std::move(rec));
      mutable_record(Forest::First, parent).children.erase(side);
      out.orphaned_parent = parent;
    } else {
      if (ra.parent != rb.parent) {
        throw InvariantViolation("Case 2 merge of " + describe(f, a) + " and " + describe(f, b) +
                                 " with different parents");
      }
      const ComponentId parent = ra.parent;
      if (!parent.valid()) throw InvariantViolation("non-depot " + describe(f, a) + " has no parent");
      rec.active = true;
      rec.parent = parent;
      out.merged = fresh(f, std::move(rec));
      auto& kids = mutable_record(Forest::First, parent).children;
      kids.erase(a);
      kids.erase(b);
      kids.insert(out.merged);
    }
  }
  edges_[forest_index(f)].push_back(edge);
  return out;
}

template <class T>
void GrowthState<T>::bump_duals(const T& epsilon) {
  if (epsilon < T(0)) throw std::invalid_argument("dual increase must be non-negative");
  ++bumps_;
  if (epsilon == T(0)) return;
  for (int fi = 0; fi < 2; ++fi) {
    for (auto& rec : records_[fi]) {
      if (!rec.alive || !rec.active) continue;
      rec.y += epsilon;
      if (fi == 0) {
        rec.w += epsilon;
        rec.bound += epsilon * T(static_cast<long long>(rec.children.size()));
      }
      for (int v : rec.vertices) potential_[fi][v] += epsilon;
    }
  }
  elapsed_ += epsilon;
}

template <class T>
void GrowthState<T>::deactivate_with_label(ComponentId c) {
  auto& rec = mutable_record(Forest::First, c);
  if (!rec.alive || !rec.active) throw std::invalid_argument("only a live active component can be deactivated");
  if (!rec.children.empty()) throw std::invalid_argument("component still has children");
  const T gap = rec.bound - rec.w;
  const T tol = Numeric<T>::tight();
  if (gap > tol || gap < -tol) throw std::invalid_argument("w has not reached Bound");
  set_active(Forest::First, c, false);
  const int label = static_cast<int>(labels_.size());
  labels_.push_back(rec.vertices);
  for (int v : rec.vertices) {
    if (label_of_[v] < 0) label_of_[v] = label;
  }
}

template <class T>
DualHistory<T> GrowthState<T>::history() const {
  DualHistory<T> h;
  for (int fi = 0; fi < 2; ++fi) {
    auto& fam = fi == 0 ? h.first : h.second;
    fam.records.reserve(records_[fi].size());
    for (const auto& rec : records_[fi]) {
      typename DualFamily<T>::Record r;
      r.vertices = rec.vertices;
      r.y = rec.y;
      r.has_depot = rec.has_depot;
      r.left = rec.left.value;
      r.right = rec.right.value;
      fam.records.push_back(std::move(r));
    }
  }
  return h;
}

template <class T>
void check_nesting(const GrowthState<T>& state) {
  for (int u = 1; u < static_cast<int>(state.n_vertices()); ++u) {
    const ComponentId c1 = state.component_of(Forest::First, u);
    const ComponentId c2 = state.component_of(Forest::Second, u);
    const auto& r1 = state.record(Forest::First, c1);
    const auto& r2 = state.record(Forest::Second, c2);
    if (!r2.has_depot) {
      if (r2.parent != c1) {
        throw InvariantViolation("target " + std::to_string(u) + ": forest-2 component is not a child of its forest-1 component");
      }
      if (!std::includes(r1.vertices.begin(), r1.vertices.end(), r2.vertices.begin(), r2.vertices.end())) {
        throw InvariantViolation("target " + std::to_string(u) + ": forest-2 component not contained in forest-1 component");
      }
    }
    if (r2.active && !r1.active) {
      throw InvariantViolation("target " + std::to_string(u) + ": forest-2 component active under inactive forest-1 component");
    }
  }
}

template <class T>
void check_links(const GrowthState<T>& state) {
  for (ComponentId c : state.live_components(Forest::First)) {
    for (ComponentId child : state.record(Forest::First, c).children) {
      const auto& rc = state.record(Forest::Second, child);
      if (!rc.alive) throw InvariantViolation("dead child listed under forest-1 component " + std::to_string(c.value));
      if (rc.parent != c) throw InvariantViolation("child/parent links disagree at forest-2 component " + std::to_string(child.value));
    }
  }
  for (ComponentId c : state.live_components(Forest::Second)) {
    const auto& rc = state.record(Forest::Second, c);
    if (rc.has_depot) {
      if (rc.parent.valid()) throw InvariantViolation("depot component of forest 2 has a parent");
      continue;
    }
    if (!rc.parent.valid()) throw InvariantViolation("forest-2 component " + std::to_string(c.value) + " has no parent");
    const auto& rp = state.record(Forest::First, rc.parent);
    if (!rp.alive || !rp.children.count(c)) {
      throw InvariantViolation("forest-2 component " + std::to_string(c.value) + " missing from its parent's children");
    }
  }
}

template <class T>
void check_w_bound(const GrowthState<T>& state, const T& tol) {
  for (ComponentId c : state.live_components(Forest::First)) {
    const auto& r = state.record(Forest::First, c);
    if (r.w > r.bound + tol) {
      throw InvariantViolation("w exceeds Bound on forest-1 component " + std::to_string(c.value) + " (w=" +
                               Numeric<T>::to_string(r.w) + ", bound=" + Numeric<T>::to_string(r.bound) + ")");
    }
  }
}

template <class T>
void check_live_duals(const GrowthState<T>& state, const T& tol) {
  auto near = [&](const T& a, const T& b) { return a - b <= tol && b - a <= tol; };
  for (Forest f : {Forest::First, Forest::Second}) {
    const auto& recs = state.records(f);
    // Sum of y over each record's merge subtree; children precede parents.
    std::vector<T> subtree(recs.size(), T(0));
    std::vector<int> up(recs.size(), -1);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      subtree[i] = recs[i].y;
      if (recs[i].left.valid()) {
        subtree[i] += subtree[recs[i].left.value] + subtree[recs[i].right.value];
        up[recs[i].left.value] = static_cast<int>(i);
        up[recs[i].right.value] = static_cast<int>(i);
      }
    }
    if (f == Forest::First) {
      for (ComponentId c : state.live_components(f)) {
        if (!near(subtree[c.value], recs[c.value].w)) {
          throw InvariantViolation("sum of Y1 inside component " + std::to_string(c.value) + " differs from w");
        }
      }
    }
    for (int v = 0; v < static_cast<int>(state.n_vertices()); ++v) {
      T sum(0);
      for (int r = v; r >= 0; r = up[r]) sum += recs[r].y;
      if (!near(sum, state.potential(f, v))) {
        throw InvariantViolation("potential of vertex " + std::to_string(v) + " in forest " +
                                 std::to_string(static_cast<int>(f)) + " differs from its dual sum");
      }
    }
  }
  for (int u = 1; u < static_cast<int>(state.n_vertices()); ++u) {
    if (state.potential(Forest::First, u) + tol < state.potential(Forest::Second, u)) {
      throw InvariantViolation("p1 < p2 at target " + std::to_string(u));
    }
  }
}

#define DHTSP_INSTANTIATE(T)                                     \
  template class GrowthState<T>;                                 \
  template void check_nesting<T>(const GrowthState<T>&);          \
  template void check_links<T>(const GrowthState<T>&);           \
  template void check_w_bound<T>(const GrowthState<T>&, const T&); \
  template void check_live_duals<T>(const GrowthState<T>&, const T&);

DHTSP_INSTANTIATE(double)
DHTSP_INSTANTIATE(Rational)

#undef DHTSP_INSTANTIATE

}  // namespace dhtsp

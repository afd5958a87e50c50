#include "dhtsp/certificate.hpp"

#include <algorithm>

namespace dhtsp {

namespace {

constexpr std::size_t kMaxReported = 1000;

void report(std::vector<DualViolation>& out, DualViolation v) {
  if (out.size() < kMaxReported) out.push_back(std::move(v));
}

template <class T>
std::vector<int> parents_of(const DualFamily<T>& fam) {
  std::vector<int> up(fam.records.size(), -1);
  for (std::size_t r = 0; r < fam.records.size(); ++r) {
    const auto& rec = fam.records[r];
    if (rec.left >= 0) up[rec.left] = static_cast<int>(r);
    if (rec.right >= 0) up[rec.right] = static_cast<int>(r);
  }
  return up;
}

template <class T>
void check_family_edges(const DualFamily<T>& fam, const CostMatrix& cost, const char* name, const T& tol,
                        std::vector<DualViolation>& out) {
  const std::size_t dim = cost.dim();
  const auto up = parents_of(fam);
  const std::size_t count = fam.records.size();

  // Mass of all records on the path from r to its root.
  std::vector<T> cum(count, T(0));
  for (std::size_t k = count; k-- > 0;) cum[k] = fam.records[k].y + (up[k] >= 0 ? cum[up[k]] : T(0));

  std::vector<T> pot(dim, T(0));
  for (std::size_t r = 0; r < count; ++r) {
    const auto& rec = fam.records[r];
    if (rec.left < 0 && rec.vertices.size() == 1 && static_cast<std::size_t>(rec.vertices[0]) < dim) {
      pot[rec.vertices[0]] = cum[r];
    }
  }
  // Mass of sets containing both ends: the path above their lowest common
  // record, which is the merge that first joined them.
  std::vector<T> common(dim * dim, T(0));
  for (std::size_t r = 0; r < count; ++r) {
    const auto& rec = fam.records[r];
    if (rec.left < 0) continue;
    for (int i : fam.records[rec.left].vertices) {
      for (int j : fam.records[rec.right].vertices) {
        common[static_cast<std::size_t>(i) * dim + j] = cum[r];
        common[static_cast<std::size_t>(j) * dim + i] = cum[r];
      }
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      const T crossing = pot[i] + pot[j] - T(2) * common[i * dim + j];
      const T c = Numeric<T>::from_double(cost(i, j));
      if (crossing > c + tol) {
        report(out, {name, {static_cast<int>(i), static_cast<int>(j)}, Numeric<T>::to_double(c - crossing),
                     "crossing dual mass " + Numeric<T>::to_string(crossing) + " exceeds cost " +
                         Numeric<T>::to_string(c)});
      }
    }
  }
}

// Sum of y over the records of fam whose vertex set lies inside the marked
// set. Children precede parents, so containment propagates bottom-up.
template <class T>
T mass_inside(const DualFamily<T>& fam, const std::vector<char>& marked, std::vector<char>& contained) {
  T sum(0);
  contained.assign(fam.records.size(), 0);
  for (std::size_t r = 0; r < fam.records.size(); ++r) {
    const auto& rec = fam.records[r];
    if (rec.left < 0) {
      contained[r] = std::all_of(rec.vertices.begin(), rec.vertices.end(),
                                 [&](int v) { return v >= 0 && static_cast<std::size_t>(v) < marked.size() && marked[v]; });
    } else {
      contained[r] = contained[rec.left] && contained[rec.right];
    }
    if (contained[r]) sum += rec.y;
  }
  return sum;
}

}  // namespace

template <class T>
std::vector<DualViolation> check_edge_constraints(const DualHistory<T>& history, const Instance& instance,
                                                  const T& tol) {
  std::vector<DualViolation> out;
  check_family_edges(history.first, instance.cost1, "edge-1", tol, out);
  check_family_edges(history.second, instance.cost2, "edge-2", tol, out);
  return out;
}

template <class T>
std::vector<DualViolation> check_bound_constraints(const DualHistory<T>& history, const T& tol) {
  std::vector<DualViolation> out;
  std::size_t dim = 0;
  for (const auto* fam : {&history.first, &history.second}) {
    for (const auto& rec : fam->records) {
      for (int v : rec.vertices) dim = std::max(dim, static_cast<std::size_t>(v) + 1);
    }
  }
  std::vector<char> marked(dim, 0);
  std::vector<char> scratch;
  for (const auto* fam : {&history.first, &history.second}) {
    for (const auto& rec : fam->records) {
      if (rec.has_depot || rec.vertices.empty()) continue;
      for (int v : rec.vertices) marked[v] = 1;
      const T y1 = mass_inside(history.first, marked, scratch);
      const T y2 = mass_inside(history.second, marked, scratch);
      for (int v : rec.vertices) marked[v] = 0;
      if (y1 > y2 + tol) {
        report(out, {"bound", rec.vertices, Numeric<T>::to_double(y2 - y1),
                     "Y1 mass " + Numeric<T>::to_string(y1) + " exceeds Y2 mass " + Numeric<T>::to_string(y2)});
      }
    }
  }
  return out;
}

template <class T>
std::vector<DualViolation> check_laminar(const DualHistory<T>& history) {
  std::vector<DualViolation> out;
  for (const auto* fam : {&history.first, &history.second}) {
    const char* name = fam == &history.first ? "laminar-1" : "laminar-2";
    std::vector<char> used(fam->records.size(), 0);
    std::vector<int> singleton_seen;
    for (std::size_t r = 0; r < fam->records.size(); ++r) {
      const auto& rec = fam->records[r];
      const int id = static_cast<int>(r);
      if (rec.left < 0 || rec.right < 0) {
        if (rec.left != rec.right || rec.vertices.size() != 1) {
          report(out, {name, {id}, 0.0, "initial record must be a single vertex"});
          continue;
        }
        const int v = rec.vertices[0];
        if (std::find(singleton_seen.begin(), singleton_seen.end(), v) != singleton_seen.end()) {
          report(out, {name, {id}, 0.0, "duplicate singleton"});
        }
        singleton_seen.push_back(v);
        continue;
      }
      if (rec.left >= id || rec.right >= id || rec.left == rec.right) {
        report(out, {name, {id}, 0.0, "merge must reference two earlier records"});
        continue;
      }
      if (used[rec.left] || used[rec.right]) report(out, {name, {id}, 0.0, "record merged twice"});
      used[rec.left] = used[rec.right] = 1;
      const auto& a = fam->records[rec.left].vertices;
      const auto& b = fam->records[rec.right].vertices;
      std::vector<int> u;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
      if (u.size() != a.size() + b.size() || u != rec.vertices) {
        report(out, {name, {id}, 0.0, "merged vertex set is not the disjoint union of its parts"});
      }
    }
  }
  return out;
}

template <class T>
T dual_objective(const DualHistory<T>& history) {
  T sum(0);
  for (const auto& rec : history.first.records) {
    if (!rec.has_depot) sum += rec.y;
  }
  return T(2) * sum;
}

template <class T>
Certificate<T> certify(const DualHistory<T>& history, const Instance& instance, const HsfSolution<T>& hsf,
                       const TourPair<T>& tours) {
  Certificate<T> cert;
  cert.dual_objective = dual_objective(history);
  cert.hsf_cost = hsf.cost();
  cert.tour_cost = tours.total();
  if (cert.dual_objective > T(0)) {
    cert.ratio_vs_dual = Numeric<T>::to_double(cert.tour_cost) / Numeric<T>::to_double(cert.dual_objective);
    if constexpr (Numeric<T>::exact) {
      cert.ratio_vs_dual = Numeric<T>::to_double(cert.tour_cost / cert.dual_objective);
    }
  }

  auto append = [&](std::vector<DualViolation> v) {
    for (auto& x : v) report(cert.violations, std::move(x));
  };
  append(check_laminar(history));
  append(check_edge_constraints(history, instance));
  append(check_bound_constraints(history));

  const T tol = Numeric<T>::certificate();
  if (cert.hsf_cost > cert.dual_objective + tol) {
    report(cert.violations, {"hsf-vs-dual", {}, Numeric<T>::to_double(cert.dual_objective - cert.hsf_cost),
                             "HSF cost exceeds 2 * sum Y1"});
  }
  if (cert.tour_cost > T(2) * cert.hsf_cost + Numeric<T>::tight()) {
    report(cert.violations, {"shortcut", {}, Numeric<T>::to_double(T(2) * cert.hsf_cost - cert.tour_cost),
                             "tour cost exceeds twice the HSF cost"});
  }
  cert.feasible = cert.violations.empty();
  return cert;
}

#define DHTSP_INSTANTIATE(T)                                                                                      \
  template std::vector<DualViolation> check_edge_constraints<T>(const DualHistory<T>&, const Instance&, const T&); \
  template std::vector<DualViolation> check_bound_constraints<T>(const DualHistory<T>&, const T&);                 \
  template std::vector<DualViolation> check_laminar<T>(const DualHistory<T>&);                                     \
  template T dual_objective<T>(const DualHistory<T>&);                                                             \
  template Certificate<T> certify<T>(const DualHistory<T>&, const Instance&, const HsfSolution<T>&,                \
                                     const TourPair<T>&);

DHTSP_INSTANTIATE(double)
DHTSP_INSTANTIATE(Rational)

#undef DHTSP_INSTANTIATE

}  // namespace dhtsp

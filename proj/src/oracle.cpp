#include "dhtsp/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>

namespace dhtsp {

namespace {

// Optimal closed tour from the depot for every subset of targets.
template <class T>
class HeldKarp {
 public:
  HeldKarp(const CostMatrix& m, std::size_t n) : n_(n), full_(std::size_t{1} << n) {
    auto c = [&](std::size_t i, std::size_t j) { return Numeric<T>::from_double(m(i, j)); };
    cost_.resize((n + 1) * (n + 1));
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) cost_[i * (n + 1) + j] = c(i, j);
    }
    path_.assign(full_ * n, std::nullopt);
    from_.assign(full_ * n, -1);
    for (std::size_t mask = 1; mask < full_; ++mask) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!(mask >> k & 1)) continue;
        const std::size_t rest = mask ^ (std::size_t{1} << k);
        auto& cell = path_[mask * n + k];
        if (rest == 0) {
          cell = at(0, k + 1);
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (!(rest >> j & 1)) continue;
          T v = *path_[rest * n + j] + at(j + 1, k + 1);
          if (!cell || v < *cell) {
            cell = std::move(v);
            from_[mask * n + k] = static_cast<int>(j);
          }
        }
      }
    }
    tour_.assign(full_, T(0));
    last_.assign(full_, -1);
    for (std::size_t mask = 1; mask < full_; ++mask) {
      std::optional<T> best;
      for (std::size_t k = 0; k < n; ++k) {
        if (!(mask >> k & 1)) continue;
        T v = *path_[mask * n + k] + at(k + 1, 0);
        if (!best || v < *best) {
          best = std::move(v);
          last_[mask] = static_cast<int>(k);
        }
      }
      tour_[mask] = *best;
    }
  }

  const T& tour_cost(std::size_t mask) const { return tour_[mask]; }

  std::vector<int> tour(std::size_t mask) const {
    std::vector<int> seq;
    int k = last_[mask];
    while (k >= 0) {
      seq.push_back(k + 1);
      const int prev = from_[mask * n_ + k];
      mask ^= std::size_t{1} << k;
      k = prev;
    }
    std::reverse(seq.begin(), seq.end());
    seq.insert(seq.begin(), 0);
    if (seq.size() > 1) seq.push_back(0);
    return seq;
  }

 private:
  const T& at(std::size_t i, std::size_t j) const { return cost_[i * (n_ + 1) + j]; }

  std::size_t n_;
  std::size_t full_;
  std::vector<T> cost_;
  std::vector<std::optional<T>> path_;
  std::vector<int> from_;
  std::vector<T> tour_;
  std::vector<int> last_;
};

template <class T>
std::uint32_t target_mask(const std::vector<int>& vertices) {
  std::uint32_t m = 0;
  for (int v : vertices) m |= 1u << (v - 1);
  return m;
}

}  // namespace

template <class T>
ExactSolution<T> solve_exact(const Instance& instance) {
  const std::size_t n = instance.n_targets;
  if (n > kOracleMaxTargets) {
    throw SizeGuardError("exact oracle supports at most " + std::to_string(kOracleMaxTargets) + " targets (got " +
                         std::to_string(n) + ")");
  }
  const HeldKarp<T> v1(instance.cost1, n);
  const HeldKarp<T> v2(instance.cost2, n);
  const std::size_t full = (std::size_t{1} << n) - 1;

  std::size_t best_mask = 0;
  std::optional<T> best;
  for (std::size_t mask = 0; mask <= full; ++mask) {
    T v = v1.tour_cost(full ^ mask) + v2.tour_cost(mask);
    if (!best || v < *best) {
      best = std::move(v);
      best_mask = mask;
    }
  }
  ExactSolution<T> out;
  out.cost = *best;
  for (std::size_t k = 0; k < n; ++k) {
    if (best_mask >> k & 1) out.assigned_to_v2.push_back(static_cast<int>(k + 1));
  }
  out.tour1 = v1.tour(full ^ best_mask);
  out.tour2 = v2.tour(best_mask);
  return out;
}

template <class T>
std::vector<DualViolation> check_dual_exhaustive(const DualHistory<T>& history, const Instance& instance,
                                                 const T& tol) {
  const std::size_t n = instance.n_targets;
  if (n > kExhaustiveDualMaxTargets) {
    throw SizeGuardError("exhaustive dual check supports at most " + std::to_string(kExhaustiveDualMaxTargets) +
                         " targets");
  }
  std::vector<std::pair<std::uint32_t, T>> sets1;
  std::vector<std::pair<std::uint32_t, T>> sets2;
  for (const auto& rec : history.first.records) {
    if (!rec.has_depot) sets1.emplace_back(target_mask<T>(rec.vertices), rec.y);
  }
  for (const auto& rec : history.second.records) {
    if (!rec.has_depot) sets2.emplace_back(target_mask<T>(rec.vertices), rec.y);
  }
  std::vector<DualViolation> out;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t u = 1; u <= full && n > 0; ++u) {
    T y1(0);
    T y2(0);
    for (const auto& [m, y] : sets1) {
      if ((m & ~u) == 0) y1 += y;
    }
    for (const auto& [m, y] : sets2) {
      if ((m & ~u) == 0) y2 += y;
    }
    if (y1 > y2 + tol) {
      std::vector<int> where;
      for (std::size_t k = 0; k < n; ++k) {
        if (u >> k & 1) where.push_back(static_cast<int>(k + 1));
      }
      out.push_back({"bound", std::move(where), Numeric<T>::to_double(y2 - y1),
                     "Y1 mass " + Numeric<T>::to_string(y1) + " exceeds Y2 mass " + Numeric<T>::to_string(y2)});
    }
  }
  return out;
}

template ExactSolution<double> solve_exact<double>(const Instance&);
template ExactSolution<Rational> solve_exact<Rational>(const Instance&);
template std::vector<DualViolation> check_dual_exhaustive<double>(const DualHistory<double>&, const Instance&,
                                                                  const double&);
template std::vector<DualViolation> check_dual_exhaustive<Rational>(const DualHistory<Rational>&, const Instance&,
                                                                    const Rational&);

}  // namespace dhtsp

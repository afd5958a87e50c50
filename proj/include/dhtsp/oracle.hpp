#pragma once

#include <stdexcept>
#include <vector>

#include "dhtsp/certificate.hpp"

namespace dhtsp {

inline constexpr std::size_t kOracleMaxTargets = 12;
inline constexpr std::size_t kExhaustiveDualMaxTargets = 10;

class SizeGuardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
struct ExactSolution {
  std::vector<int> assigned_to_v2;  // matrix indices of the targets vehicle 2 visits
  std::vector<int> tour1;           // closed tour from d1, [0] when empty
  std::vector<int> tour2;
  T cost{0};
};

/// Exact optimum by enumerating every split of the targets between the two
/// vehicles, with a Held-Karp table per vehicle. |T| <= 12.
template <class T>
ExactSolution<T> solve_exact(const Instance& instance);

/// Bound constraint over every subset U of the targets. |T| <= 10.
template <class T>
std::vector<DualViolation> check_dual_exhaustive(const DualHistory<T>& history, const Instance& instance,
                                                 const T& tol = Numeric<T>::certificate());

}  // namespace dhtsp

#pragma once

// Exhaustive counting and simple complete search at desk scale.

#include <cstdint>
#include <optional>

#include "rbcsp/core.hpp"

namespace rbcsp {

/// Assignments visited by count_all / find_super when no cap is given.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

struct CountReport {
  std::uint64_t n_solutions = 0;
  std::uint64_t n_super10 = 0;
  std::uint64_t n_super11 = 0;
  std::uint64_t enumerated = 0;
  bool capped = false;

  friend bool operator==(const CountReport&, const CountReport&) = default;
};

/// Number of assignments d^n, saturating at UINT64_MAX.
std::uint64_t assignment_space(const RBParams& params) noexcept;

/// The assignment at lexicographic rank `index` (variable 0 most significant).
Assignment assignment_at(const RBParams& params, std::uint64_t index);

/// Counts solutions and (1,0)/(1,1)-super solutions over all d^n
/// assignments. Without a cap, a space larger than the default budget is a
/// ResourceError; with a cap, only the first `cap` assignments in
/// lexicographic order are visited. The result does not depend on `workers`.
CountReport count_all(const Instance& inst, std::optional<std::uint64_t> cap = std::nullopt,
                      unsigned workers = 1);

/// Depth-first search, variables 0..n-1 and values 0..d-1 in order. A
/// constraint is checked once its highest-index variable is assigned.
std::optional<Assignment> backtrack_solve(const Instance& inst);

/// First super solution in lexicographic order.
std::optional<Assignment> find_super(const Instance& inst, SuperLevel level,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace rbcsp

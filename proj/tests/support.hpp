#pragma once

// Shared fixtures and brute-force oracles. The oracles enumerate the whole
// assignment space and compare sets with delta(); they share no code with
// the repair search or the solution table in the library.

#include <cstdint>
#include <vector>

#include "rbcsp/core.hpp"
#include "rbcsp/rng.hpp"
#include "rbcsp/search.hpp"

namespace rbcsp::testing {

// n=2, d=2, one constraint on (0,1) allowing (0,0) and (1,1).
inline Instance toy_instance() {
  auto params = explicit_params(2, 2, 2, 1, 0.5, RelationMode::exact, 2);
  return Instance(params, {Constraint({0, 1}, {0, 3})});
}

inline Instance single_constraint(std::uint32_t n, std::uint32_t d, std::vector<VarIndex> scope,
                                  std::vector<TupleCode> relation) {
  auto params = explicit_params(n, static_cast<std::uint32_t>(scope.size()), d, 1, 0.5, RelationMode::bernoulli);
  return Instance(params, {Constraint(std::move(scope), std::move(relation))});
}

// Same scopes and relations plus one more constraint.
inline Instance with_extra(const Instance& inst, Constraint extra) {
  auto params = inst.params();
  params.mode = RelationMode::bernoulli;
  params.m += 1;
  auto cs = inst.constraints();
  cs.push_back(std::move(extra));
  return Instance(params, std::move(cs), inst.seed());
}

inline std::vector<Assignment> all_assignments(const RBParams& params) {
  std::vector<Assignment> out;
  const std::uint64_t space = assignment_space(params);
  for (std::uint64_t idx = 0; idx < space; ++idx) out.push_back(assignment_at(params, idx));
  return out;
}

inline bool oracle_satisfies(const Instance& inst, const Assignment& a) {
  for (const auto& c : inst.constraints()) {
    std::vector<Value> tuple;
    for (VarIndex v : c.scope()) tuple.push_back(a[v]);
    const TupleCode code = encode_tuple(tuple, inst.params().d);
    bool found = false;
    for (TupleCode r : c.relation()) found = found || r == code;
    if (!found) return false;
  }
  return true;
}

// Every solution tau whose disagreement set with sigma is exactly {i} (or
// {i, j} for some j != i when two-variable repairs are allowed).
inline std::vector<Assignment> oracle_repairs(const Instance& inst, const Assignment& sigma, VarIndex i,
                                              SuperLevel level) {
  std::vector<Assignment> out;
  for (const auto& tau : all_assignments(inst.params())) {
    if (!oracle_satisfies(inst, tau)) continue;
    const auto diff = delta(sigma, tau);
    const bool single = diff.size() == 1 && diff[0] == i;
    const bool pair = diff.size() == 2 && (diff[0] == i || diff[1] == i);
    if (single || (level == SuperLevel::one_one && pair)) out.push_back(tau);
  }
  return out;
}

inline bool oracle_is_super(const Instance& inst, const Assignment& sigma, SuperLevel level) {
  if (!oracle_satisfies(inst, sigma)) return false;
  for (VarIndex i = 0; i < inst.params().n; ++i) {
    if (oracle_repairs(inst, sigma, i, level).empty()) return false;
  }
  return true;
}

inline CountReport oracle_counts(const Instance& inst) {
  CountReport rep;
  for (const auto& a : all_assignments(inst.params())) {
    ++rep.enumerated;
    if (!oracle_satisfies(inst, a)) continue;
    ++rep.n_solutions;
    rep.n_super11 += oracle_is_super(inst, a, SuperLevel::one_one);
    rep.n_super10 += oracle_is_super(inst, a, SuperLevel::one_zero);
  }
  return rep;
}

// Random small instance with n <= max_n, d <= max_d, k = 2, bernoulli mode
// so that relation sizes vary.
inline Instance random_small_instance(std::uint64_t seed, std::uint32_t max_n = 5, std::uint32_t max_d = 3,
                                      std::uint64_t max_m = 8) {
  SplitMix64 rng(seed);
  const auto n = static_cast<std::uint32_t>(2 + rng.below(max_n - 1));
  const auto d = static_cast<std::uint32_t>(2 + rng.below(max_d - 1));
  const std::uint64_t m = 1 + rng.below(max_m);
  const double p = 0.3 + 0.5 * rng.uniform();
  const auto params = explicit_params(n, 2, d, m, p, RelationMode::bernoulli);
  return generate(params, rng.next());
}

}  // namespace rbcsp::testing

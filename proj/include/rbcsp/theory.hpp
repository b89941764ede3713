#pragma once

// Closed-form probabilities and first-moment bounds for (1,1)-super
// solutions, evaluated in natural-log space.

#include <cstdint>
#include <span>

#include "rbcsp/core.hpp"

namespace rbcsp {

/// Critical density -alpha / ln p where the expected number of (1,1)-super
/// solutions switches from growing to vanishing.
double threshold(double alpha, double p);

/// 1 + (d-1)(k-1): the number of value patterns a repair can take on one
/// constraint containing the broken variable.
double repair_ways(std::uint32_t d, std::uint32_t k);

/// ln q^(1+(d-1)(k-1)), the log-probability that every repair way of one
/// constraint is forbidden.
double log_block_prob(double p, std::uint32_t d, std::uint32_t k);

/// Probability that a constraint containing the broken variable admits at
/// least one repair way: 1 - q^(1+(d-1)(k-1)).
double rho(double p, std::uint32_t d, std::uint32_t k);

/// ln rho, accurate when rho is within rounding of 1.
double log_rho(double p, std::uint32_t d, std::uint32_t k);

/// Probability that two repair families sharing one tuple on a constraint
/// are both satisfied: 1 - 2q^(1+(d-1)(k-1)) + q^(1+2(d-1)(k-1)).
double pair_sat_prob(double p, std::uint32_t d, std::uint32_t k);

/// (1 - rho^m_i)^(d-1): chance that no value of variable i has a repair,
/// given a solution and m_i constraints on i. `m_i` may be fractional for
/// regularised profiles.
double per_variable_failure(double p, std::uint32_t d, std::uint32_t k, double m_i);
double log_per_variable_failure(double p, std::uint32_t d, std::uint32_t k, double m_i);

/// Per-tuple inclusion probability of the generator: rel_size / d^k in
/// exact mode; in bernoulli mode p conditioned on the relation being
/// neither empty nor full.
double effective_tightness(const RBParams& params);

/// n ln d + m ln p_hat = ln E[#solutions] for the generator.
double log_expected_solutions(const RBParams& params);

struct MomentReport {
  /// n ln d + m ln p_hat.
  double log_base = 0.0;
  /// ln max(0, 1 - sum_i f_i), -inf when the bracket is nonpositive.
  double correction_lower = 0.0;
  /// ln of (lower bracket + sum_{i<j} g_ij), clamped to <= 0.
  double correction_upper = 0.0;
  double log_lower = 0.0;
  double log_upper = 0.0;
  double rho = 0.0;
  /// sum_i (1 - rho^m_i)^(d-1).
  double single_failure_sum = 0.0;
  /// sum_{i<j} (1 - rho^min(m_i, m_j))^((d-1)^2).
  double pair_failure_sum = 0.0;
  /// 1 - single + pair before any clamping; may exceed 1 or 2 at small n.
  double upper_bracket_raw = 0.0;
  /// Whether the raw upper bracket exceeds the factor-2 cap of the
  /// asymptotic argument.
  bool exceeds_factor_two = false;

  /// Plain-probability brackets on P(all variables repairable | solution).
  double lower_bracket() const;
  double upper_bracket() const;
};

/// First-moment bounds for one hypergraph, using its degree profile.
/// Throws ParamError unless sum m_i = k m.
MomentReport ey_log_bounds(const RBParams& params, const DegreeProfile& profile);

/// Same bounds with the regular profile m_i = k m / n for every variable.
MomentReport ey_log_bounds_regular(const RBParams& params);

/// Core of the above on an explicit (possibly fractional) degree list.
MomentReport ey_log_bounds_degrees(const RBParams& params, std::span<const double> degrees);

}  // namespace rbcsp

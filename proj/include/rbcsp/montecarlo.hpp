#pragma once

// Seeded simulations of the repair probabilities, the repair sandwich, the
// expected counts, and density sweeps across the threshold.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rbcsp/core.hpp"
#include "rbcsp/theory.hpp"

namespace rbcsp {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t resamples = 0;

  /// |mean - target| <= tolerance_sigmas * stderr.
  bool within(double target, double tolerance_sigmas = 3.0) const;
};

/// Binomial estimate from `successes` out of `trials`.
MCEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed);

/// Sample mean with stderr s / sqrt(trials), s the unbiased deviation.
MCEstimate sample_estimate(const std::vector<double>& samples, std::uint64_t seed);

enum class RepairLemma { single_family = 1, shared_pair = 2 };

/// Simulates one constraint around the all-zeros solution under independent
/// tuple inclusion. single_family estimates the probability that the
/// repair ways of x0 -> 1 hit the relation; shared_pair estimates the
/// probability that both the x0 -> 1 and the x1 -> 1 families are hit.
MCEstimate mc_lemma(RepairLemma which, double p, std::uint32_t d, std::uint32_t k, std::uint64_t trials,
                    std::uint64_t seed, unsigned workers = 1);

struct RepairBoundsResult {
  MCEstimate empirical;
  double lower = 0.0;
  double upper = 0.0;
  DegreeProfile profile;
  MomentReport moments;

  /// Empirical mean lies in [lower - t*stderr, upper + t*stderr].
  bool sandwiched(double tolerance_sigmas = 3.0) const;
  /// Signed distance outside the tolerance band (<= 0 when inside).
  double gap(double tolerance_sigmas = 3.0) const;
};

/// Fixes one seeded hypergraph and the all-zeros assignment, then per trial
/// draws relations conditioned on containing the all-zeros tuple and tests
/// whether every variable has a (1,1) repair. Returns the empirical
/// probability next to the brackets computed from the hypergraph's degrees.
RepairBoundsResult mc_repair_bounds(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint64_t m, double p,
                                    std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

struct ExpectedCounts {
  MCEstimate mean_solutions;
  MCEstimate mean_super11;
  MCEstimate mean_super10;
  /// Fraction of instances with at least one of each.
  MCEstimate frac_sat;
  MCEstimate frac_super11;
  MCEstimate frac_super10;
};

/// Generates `trials` instances (trial t uses a substream of `seed`) and
/// averages their exact counts.
ExpectedCounts mc_expected_counts(const RBParams& params, std::uint64_t trials, std::uint64_t seed,
                                  unsigned workers = 1);

struct SweepRow {
  double r = 0.0;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  double alpha = 0.0;
  double p = 0.0;
  std::uint64_t trials = 0;
  double frac_sat = 0.0;
  double frac_super11 = 0.0;
  double frac_super10 = 0.0;
  double mean_solutions = 0.0;
  double mean_super11 = 0.0;
  double stderr_super11 = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepOptions {
  std::uint32_t n = 8;
  std::uint32_t k = 2;
  double alpha = 0.3;
  double p = 0.5;
  double r_from = 0.3;
  double r_to = 1.3;
  std::uint32_t steps = 11;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  RelationMode mode = RelationMode::exact;
  unsigned workers = 1;
};

/// One row per grid point r_s = r_from + s (r_to - r_from) / (steps - 1).
std::vector<SweepRow> sweep(const SweepOptions& options);

/// CSV with header, LF line endings and 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace rbcsp

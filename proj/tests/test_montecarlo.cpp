#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "rbcsp/errors.hpp"
#include "rbcsp/montecarlo.hpp"
#include "rbcsp/theory.hpp"
#include "support.hpp"

using namespace rbcsp;
using namespace rbcsp::testing;

namespace {

// Exact probability, by enumerating every relation over d^k codes with the
// all-zeros code forced in, that the repair ways of x0 -> 1 (and, for the
// pair version, of x1 -> 1) hit the relation.
double enumerate_lemma(bool pair, double p, std::uint32_t d, std::uint32_t k) {
  const std::uint64_t tuples = static_cast<std::uint64_t>(std::pow(d, k));
  const std::uint64_t free_codes = tuples - 1;
  auto hits = [&](std::uint64_t mask, std::uint32_t pos) {
    for (TupleCode c = 1; c < tuples; ++c) {
      if (!(mask >> (c - 1) & 1)) continue;
      const auto t = decode_tuple(c, d, k);
      if (t[pos] != 1) continue;
      int others = 0;
      for (std::uint32_t j = 0; j < k; ++j) others += (j != pos && t[j] != 0);
      if (others <= 1) return true;
    }
    return false;
  };
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_codes); ++mask) {
    const int present = __builtin_popcountll(mask);
    const double w = std::pow(p, present) * std::pow(1 - p, double(free_codes) - present);
    if (hits(mask, 0) && (!pair || hits(mask, 1))) total += w;
  }
  return total;
}

}  // namespace

TEST(Estimates, BinomialAndSample) {
  const auto b = binomial_estimate(25, 100, 3);
  EXPECT_DOUBLE_EQ(b.mean, 0.25);
  EXPECT_DOUBLE_EQ(b.std_error, std::sqrt(0.25 * 0.75 / 100));
  EXPECT_EQ(b.seed, 3u);
  const auto s = sample_estimate({1.0, 2.0, 3.0, 4.0}, 0);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.std_error, std::sqrt(5.0 / 3.0 / 4.0));
  EXPECT_THROW(binomial_estimate(0, 0, 0), ParamError);
}

TEST(LemmaOracle, EnumerationMatchesClosedForms) {
  for (double p : {0.2, 0.5, 0.7}) {
    EXPECT_NEAR(enumerate_lemma(false, p, 2, 2), rho(p, 2, 2), 1e-12);
    EXPECT_NEAR(enumerate_lemma(false, p, 3, 2), rho(p, 3, 2), 1e-12);
    EXPECT_NEAR(enumerate_lemma(false, p, 2, 3), rho(p, 2, 3), 1e-12);
    EXPECT_NEAR(enumerate_lemma(true, p, 2, 2), pair_sat_prob(p, 2, 2), 1e-12);
    EXPECT_NEAR(enumerate_lemma(true, p, 3, 2), pair_sat_prob(p, 3, 2), 1e-12);
    EXPECT_NEAR(enumerate_lemma(true, p, 2, 3), pair_sat_prob(p, 2, 3), 1e-12);
  }
}

TEST(McLemma, ConvergesToClosedForm) {
  const auto one = mc_lemma(RepairLemma::single_family, 0.5, 3, 2, 20'000, 7);
  EXPECT_TRUE(one.within(0.875)) << one.mean << " +- " << one.std_error;
  const auto two = mc_lemma(RepairLemma::shared_pair, 0.5, 2, 2, 20'000, 7);
  EXPECT_TRUE(two.within(0.625)) << two.mean << " +- " << two.std_error;
  const auto three = mc_lemma(RepairLemma::shared_pair, 0.3, 3, 3, 20'000, 8);
  EXPECT_TRUE(three.within(pair_sat_prob(0.3, 3, 3))) << three.mean;
}

TEST(McLemma, NearCertainRepair) {
  const auto est = mc_lemma(RepairLemma::single_family, 0.999, 2, 2, 10'000, 1);
  EXPECT_GT(est.mean, 0.999);
  EXPECT_LE(est.mean, 1.0);
}

TEST(McLemma, DeterministicAcrossWorkers) {
  const auto a = mc_lemma(RepairLemma::shared_pair, 0.4, 3, 2, 5000, 99, 1);
  const auto b = mc_lemma(RepairLemma::shared_pair, 0.4, 3, 2, 5000, 99, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(McLemma, RejectsBadParameters) {
  EXPECT_THROW(mc_lemma(RepairLemma::single_family, 1.5, 2, 2, 100, 0), ParamError);
  EXPECT_THROW(mc_lemma(RepairLemma::single_family, 0.5, 1, 2, 100, 0), ParamError);
  EXPECT_THROW(mc_lemma(RepairLemma::single_family, 0.5, 2, 2, 0, 0), ParamError);
}

TEST(McRepairBounds, SingleConstraintHandCheck) {
  // One constraint on (0,1), d = 2: the event is exactly the shared-pair
  // event, so the exact probability is the 2^3-state enumeration.
  const double exact = enumerate_lemma(true, 0.5, 2, 2);
  EXPECT_DOUBLE_EQ(exact, 0.625);
  const auto res = mc_repair_bounds(2, 2, 2, 1, 0.5, 20'000, 3);
  EXPECT_NEAR(res.lower, 0.5, 1e-15);
  EXPECT_NEAR(res.upper, 0.75, 1e-15);
  EXPECT_TRUE(res.empirical.within(exact)) << res.empirical.mean;
  EXPECT_TRUE(res.sandwiched());
  EXPECT_LE(res.gap(), 0.0);
}

TEST(McRepairBounds, SmallHypergraph) {
  const auto res = mc_repair_bounds(6, 2, 2, 8, 0.5, 5000, 11);
  EXPECT_TRUE(res.sandwiched()) << res.empirical.mean << " in [" << res.lower << ", " << res.upper << "]";
  std::uint64_t total = 0;
  for (auto m_i : res.profile.degrees) total += m_i;
  EXPECT_EQ(total, 16u);
  EXPECT_GE(res.empirical.mean, 0.0);
  EXPECT_LE(res.empirical.mean, 1.0);
}

TEST(McRepairBounds, NearCertainRepair) {
  const auto res = mc_repair_bounds(4, 2, 2, 3, 0.999, 2000, 5);
  EXPECT_GT(res.empirical.mean, 0.99);
  EXPECT_GT(res.lower, 0.99);
}

TEST(McRepairBounds, DeterministicAcrossWorkers) {
  const auto a = mc_repair_bounds(5, 2, 3, 6, 0.4, 3000, 21, 1);
  const auto b = mc_repair_bounds(5, 2, 3, 6, 0.4, 3000, 21, 3);
  EXPECT_EQ(a.empirical.mean, b.empirical.mean);
  EXPECT_EQ(a.lower, b.lower);
}

TEST(McExpectedCounts, ExactIdentity) {
  // d^n (rel_size / d^k)^m = 4 * 0.5 = 2.
  const auto params = derive_params(2, 2, 0.1, 0.5, 0.5);
  ASSERT_EQ(params.d, 2u);
  ASSERT_EQ(params.m, 1u);
  ASSERT_EQ(params.rel_size, 2u);
  const auto ec = mc_expected_counts(params, 20'000, 5);
  EXPECT_NEAR(std::exp(log_expected_solutions(params)), 2.0, 1e-12);
  EXPECT_TRUE(ec.mean_solutions.within(2.0)) << ec.mean_solutions.mean;
  EXPECT_LE(ec.mean_super11.mean, ec.mean_solutions.mean);
  EXPECT_LE(ec.mean_super10.mean, ec.mean_super11.mean);
  EXPECT_EQ(ec.mean_solutions.resamples, 0u);
}

TEST(McExpectedCounts, BernoulliIdentity) {
  const auto params = derive_params(3, 2, 0.5, 1.0, 0.5, RelationMode::bernoulli);
  ASSERT_EQ(params.d, 2u);
  ASSERT_EQ(params.m, 3u);
  const auto ec = mc_expected_counts(params, 10'000, 6);
  EXPECT_TRUE(ec.mean_solutions.within(1.0)) << ec.mean_solutions.mean;
  EXPECT_GT(ec.mean_solutions.resamples, 0u);
}

TEST(McExpectedCounts, SkewedBernoulliUsesConditionedTightness) {
  // p = 0.8 on 4 tuples: resampling shifts the inclusion rate to 0.7809.
  const auto params = derive_params(3, 2, 0.5, 1.0, 0.8, RelationMode::bernoulli);
  const auto ec = mc_expected_counts(params, 20'000, 8);
  const double expected = std::exp(log_expected_solutions(params));
  EXPECT_TRUE(ec.mean_solutions.within(expected)) << ec.mean_solutions.mean << " vs " << expected;
}

TEST(McExpectedCounts, DeterministicAcrossWorkers) {
  const auto params = derive_params(6, 2, 0.5, 0.8, 0.5);
  const auto a = mc_expected_counts(params, 500, 13, 1);
  const auto b = mc_expected_counts(params, 500, 13, 4);
  EXPECT_EQ(a.mean_solutions.mean, b.mean_solutions.mean);
  EXPECT_EQ(a.mean_super11.mean, b.mean_super11.mean);
  EXPECT_EQ(a.mean_super10.std_error, b.mean_super10.std_error);
}

TEST(Sweep, RowsAndCsv) {
  SweepOptions o;
  o.n = 6;
  o.alpha = 0.3;
  o.r_from = 0.3;
  o.r_to = 1.3;
  o.steps = 3;
  o.trials = 200;
  o.seed = 4;
  const auto rows = sweep(o);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[0].r, 0.3);
  EXPECT_DOUBLE_EQ(rows[1].r, 0.8);
  EXPECT_DOUBLE_EQ(rows[2].r, 1.3);
  for (const auto& row : rows) {
    EXPECT_LE(row.frac_super10, row.frac_super11);
    EXPECT_LE(row.frac_super11, row.frac_sat);
    EXPECT_GE(row.frac_super10, 0.0);
    EXPECT_LE(row.frac_sat, 1.0);
  }
  o.workers = 3;
  EXPECT_EQ(rows, sweep(o));

  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "r,n,k,alpha,p,trials,frac_sat,frac_super11,frac_super10,mean_solutions,mean_super11,stderr_super11");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_NE(text.find("\n0.29999999999999999,6,2,0.29999999999999999,0.5,200,"), std::string::npos);
}

TEST(Sweep, LooseRegimeIsSatisfiable) {
  SweepOptions o;
  o.n = 8;
  o.alpha = 0.3;
  o.p = 0.9;
  o.r_from = 0.3;
  o.r_to = 0.3;
  o.steps = 1;
  o.trials = 300;
  o.seed = 1;
  const auto rows = sweep(o);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GT(rows[0].frac_sat, 0.95);
}

TEST(Sweep, RejectsBadGrid) {
  SweepOptions o;
  o.steps = 0;
  EXPECT_THROW(sweep(o), ParamError);
  o.steps = 2;
  o.r_from = 1.0;
  o.r_to = 0.5;
  EXPECT_THROW(sweep(o), ParamError);
}

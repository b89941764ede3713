#include "rbcsp/montecarlo.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "rbcsp/errors.hpp"
#include "rbcsp/io.hpp"
#include "rbcsp/parallel.hpp"
#include "rbcsp/rng.hpp"
#include "rbcsp/search.hpp"

namespace rbcsp {

namespace {

constexpr std::uint64_t kMaxSimulatedTuples = std::uint64_t{1} << 20;

// Relation where the all-zeros tuple is forced in and every other code is
// present independently with probability p.
std::vector<TupleCode> conditioned_relation(SplitMix64& rng, std::uint64_t tuples, double p) {
  std::vector<TupleCode> codes{0};
  for (TupleCode c = 1; c < tuples; ++c) {
    if (rng.bernoulli(p)) codes.push_back(c);
  }
  return codes;
}

// Codes of the repair ways on one constraint around the all-zeros tuple
// when the variable at `position` moves to 1: that change alone, or
// together with one other position moving to any nonzero value.
std::vector<TupleCode> repair_family(std::uint32_t d, std::uint32_t k, std::uint32_t position) {
  std::vector<TupleCode> out;
  std::vector<Value> tuple(k, 0);
  tuple[position] = 1;
  out.push_back(encode_tuple(tuple, d));
  for (std::uint32_t other = 0; other < k; ++other) {
    if (other == position) continue;
    for (Value z = 1; z < d; ++z) {
      tuple[other] = z;
      out.push_back(encode_tuple(tuple, d));
    }
    tuple[other] = 0;
  }
  return out;
}

bool family_hit(const Constraint& c, const std::vector<TupleCode>& family) {
  for (TupleCode code : family) {
    if (c.allows(code)) return true;
  }
  return false;
}

void check_trials(std::uint64_t trials) {
  if (trials < 1) throw ParamError("trials must be at least 1");
}

}  // namespace

bool MCEstimate::within(double target, double tolerance_sigmas) const {
  return std::abs(mean - target) <= tolerance_sigmas * std_error;
}

MCEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed) {
  check_trials(trials);
  MCEstimate out;
  out.trials = trials;
  out.seed = seed;
  out.mean = double(successes) / double(trials);
  out.std_error = std::sqrt(out.mean * (1.0 - out.mean) / double(trials));
  return out;
}

MCEstimate sample_estimate(const std::vector<double>& samples, std::uint64_t seed) {
  check_trials(samples.size());
  MCEstimate out;
  out.trials = samples.size();
  out.seed = seed;
  double sum = 0.0;
  for (double x : samples) sum += x;
  out.mean = sum / double(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - out.mean) * (x - out.mean);
    out.std_error = std::sqrt(ss / double(samples.size() - 1) / double(samples.size()));
  }
  return out;
}

MCEstimate mc_lemma(RepairLemma which, double p, std::uint32_t d, std::uint32_t k, std::uint64_t trials,
                    std::uint64_t seed, unsigned workers) {
  if (!(p > 0.0 && p < 1.0)) throw ParamError("p must lie in (0, 1)");
  if (d < 2 || k < 2) throw ParamError("d and k must be at least 2");
  check_trials(trials);
  const auto params = explicit_params(k, k, d, 1, p, RelationMode::bernoulli);
  const std::uint64_t tuples = params.tuple_space();
  if (tuples > kMaxSimulatedTuples) throw ResourceError("d^k too large to simulate");

  std::vector<VarIndex> scope(k);
  for (std::uint32_t j = 0; j < k; ++j) scope[j] = j;
  const auto first = repair_family(d, k, 0);
  const auto second = repair_family(d, k, 1);

  std::vector<std::uint8_t> hit(trials, 0);
  parallel_chunks(trials, workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng(mix_seed(seed, Stream::trial, t));
      const Constraint c(scope, conditioned_relation(rng, tuples, p));
      const bool ok = which == RepairLemma::single_family ? family_hit(c, first)
                                                          : family_hit(c, first) && family_hit(c, second);
      hit[t] = ok ? 1 : 0;
    }
  });
  std::uint64_t successes = 0;
  for (auto h : hit) successes += h;
  return binomial_estimate(successes, trials, seed);
}

bool RepairBoundsResult::sandwiched(double tolerance_sigmas) const { return gap(tolerance_sigmas) <= 0.0; }

double RepairBoundsResult::gap(double tolerance_sigmas) const {
  const double slack = tolerance_sigmas * empirical.std_error;
  return std::max((lower - slack) - empirical.mean, empirical.mean - (upper + slack));
}

RepairBoundsResult mc_repair_bounds(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint64_t m, double p,
                                    std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  check_trials(trials);
  const auto params = explicit_params(n, k, d, m, p, RelationMode::bernoulli);
  const std::uint64_t tuples = params.tuple_space();
  if (tuples > kMaxSimulatedTuples) throw ResourceError("d^k too large to simulate");
  // Worst-case repair candidates per trial: n variables, each with
  // (d-1) single and (d-1)(n-1)(d-1) pair candidates.
  const double candidates = double(n) * double(d) * double(n) * double(d);
  if (candidates * double(m) > 1e8) throw ResourceError("exhaustive repair checking exceeds budget");

  std::vector<std::vector<VarIndex>> scopes;
  scopes.reserve(m);
  for (std::uint64_t c = 0; c < m; ++c) {
    SplitMix64 rng(mix_seed(seed, Stream::hypergraph, c));
    scopes.push_back(random_scope(rng, n, k));
  }
  const Assignment sigma{std::vector<Value>(n, 0)};

  std::vector<std::uint8_t> hit(trials, 0);
  parallel_chunks(trials, workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng(mix_seed(seed, Stream::trial, t));
      std::vector<Constraint> constraints;
      constraints.reserve(m);
      for (const auto& scope : scopes) constraints.emplace_back(scope, conditioned_relation(rng, tuples, p));
      const Instance inst(params, std::move(constraints), seed);
      hit[t] = is_super_solution(inst, sigma, SuperLevel::one_one) ? 1 : 0;
    }
  });
  std::uint64_t successes = 0;
  for (auto h : hit) successes += h;

  RepairBoundsResult out;
  out.empirical = binomial_estimate(successes, trials, seed);
  {
    // The profile depends only on the scopes.
    std::vector<Constraint> skeleton;
    for (const auto& scope : scopes) skeleton.emplace_back(scope, std::vector<TupleCode>{0});
    out.profile = degree_profile(Instance(params, std::move(skeleton), seed));
  }
  out.moments = ey_log_bounds(params, out.profile);
  out.lower = out.moments.lower_bracket();
  out.upper = out.moments.upper_bracket();
  return out;
}

ExpectedCounts mc_expected_counts(const RBParams& params, std::uint64_t trials, std::uint64_t seed,
                                  unsigned workers) {
  check_trials(trials);
  params.validate();
  std::vector<CountReport> reports(trials);
  std::vector<std::uint64_t> resamples(trials, 0);
  parallel_chunks(trials, workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      auto generated = generate_counted(params, mix_seed(seed, Stream::trial, t));
      reports[t] = count_all(generated.instance);
      resamples[t] = generated.resamples;
    }
  });

  std::vector<double> solutions(trials), super11(trials), super10(trials);
  std::uint64_t any_sat = 0, any11 = 0, any10 = 0, total_resamples = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    solutions[t] = double(reports[t].n_solutions);
    super11[t] = double(reports[t].n_super11);
    super10[t] = double(reports[t].n_super10);
    any_sat += reports[t].n_solutions > 0;
    any11 += reports[t].n_super11 > 0;
    any10 += reports[t].n_super10 > 0;
    total_resamples += resamples[t];
  }

  ExpectedCounts out{sample_estimate(solutions, seed),     sample_estimate(super11, seed),
                     sample_estimate(super10, seed),       binomial_estimate(any_sat, trials, seed),
                     binomial_estimate(any11, trials, seed), binomial_estimate(any10, trials, seed)};
  for (auto* e : {&out.mean_solutions, &out.mean_super11, &out.mean_super10, &out.frac_sat, &out.frac_super11,
                  &out.frac_super10}) {
    e->resamples = total_resamples;
  }
  return out;
}

std::vector<SweepRow> sweep(const SweepOptions& o) {
  if (o.steps < 1) throw ParamError("steps must be at least 1");
  if (!(o.r_from > 0.0) || !(o.r_to >= o.r_from)) throw ParamError("r range must satisfy 0 < r_from <= r_to");
  std::vector<SweepRow> rows;
  rows.reserve(o.steps);
  for (std::uint32_t s = 0; s < o.steps; ++s) {
    const double r = o.steps == 1 ? o.r_from : o.r_from + (o.r_to - o.r_from) * double(s) / double(o.steps - 1);
    const auto params = derive_params(o.n, o.k, o.alpha, r, o.p, o.mode);
    ExpectedCounts counts;
    try {
      counts = mc_expected_counts(params, o.trials, mix_seed(o.seed, Stream::sweep_row, s), o.workers);
    } catch (const ResourceError& e) {
      throw ResourceError("sweep at r=" + format_real(r) + ": " + e.what());
    }
    SweepRow row;
    row.r = r;
    row.n = o.n;
    row.k = o.k;
    row.alpha = o.alpha;
    row.p = o.p;
    row.trials = o.trials;
    row.frac_sat = counts.frac_sat.mean;
    row.frac_super11 = counts.frac_super11.mean;
    row.frac_super10 = counts.frac_super10.mean;
    row.mean_solutions = counts.mean_solutions.mean;
    row.mean_super11 = counts.mean_super11.mean;
    row.stderr_super11 = counts.mean_super11.std_error;
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "r,n,k,alpha,p,trials,frac_sat,frac_super11,frac_super10,mean_solutions,mean_super11,stderr_super11\n";
  for (const auto& row : rows) {
    out << format_real(row.r) << ',' << row.n << ',' << row.k << ',' << format_real(row.alpha) << ','
        << format_real(row.p) << ',' << row.trials << ',' << format_real(row.frac_sat) << ','
        << format_real(row.frac_super11) << ',' << format_real(row.frac_super10) << ','
        << format_real(row.mean_solutions) << ',' << format_real(row.mean_super11) << ','
        << format_real(row.stderr_super11) << '\n';
  }
}

}  // namespace rbcsp

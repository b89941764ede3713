#include "rbcsp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "rbcsp/errors.hpp"

namespace rbcsp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_pdk(double p, std::uint32_t d, std::uint32_t k) {
  if (!(p > 0.0 && p < 1.0)) throw ParamError("p must lie in (0, 1)");
  if (d < 2) throw ParamError("d must be at least 2");
  if (k < 2) throw ParamError("k must be at least 2");
}

// ln(1 - e^x) for x <= 0.
double log1mexp(double x) {
  if (x == 0.0) return kNegInf;
  return x > -std::numbers::ln2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

// ln sum_i e^{x_i} with Neumaier-compensated accumulation of the scaled terms.
double log_sum_exp(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double term = std::exp(x - hi);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return hi + std::log(sum + comp);
}

}  // namespace

double threshold(double alpha, double p) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParamError("alpha must be positive");
  if (!(p > 0.0 && p < 1.0)) throw ParamError("p must lie in (0, 1)");
  return -alpha / std::log(p);
}

double repair_ways(std::uint32_t d, std::uint32_t k) {
  return 1.0 + (double(d) - 1.0) * (double(k) - 1.0);
}

double log_block_prob(double p, std::uint32_t d, std::uint32_t k) {
  check_pdk(p, d, k);
  return repair_ways(d, k) * std::log1p(-p);
}

double rho(double p, std::uint32_t d, std::uint32_t k) {
  return -std::expm1(log_block_prob(p, d, k));
}

double log_rho(double p, std::uint32_t d, std::uint32_t k) {
  return log1mexp(log_block_prob(p, d, k));
}

double pair_sat_prob(double p, std::uint32_t d, std::uint32_t k) {
  const double log_q = std::log1p(-p);
  const double single = log_block_prob(p, d, k);
  const double shared = (2.0 * repair_ways(d, k) - 1.0) * log_q;
  // (1 - a) - a + b with a = q^ways, b = q^(2 ways - 1)
  return -std::expm1(single) - std::exp(single) + std::exp(shared);
}

double log_per_variable_failure(double p, std::uint32_t d, std::uint32_t k, double m_i) {
  if (!(m_i >= 0.0)) throw ParamError("degree must be nonnegative");
  const double lr = log_rho(p, d, k);
  if (m_i == 0.0) return kNegInf;
  // ln(1 - rho^m_i); rho rounding to 1 gives ln 0 = -inf, never NaN.
  const double x = m_i * lr;
  return (double(d) - 1.0) * log1mexp(x);
}

double per_variable_failure(double p, std::uint32_t d, std::uint32_t k, double m_i) {
  return std::exp(log_per_variable_failure(p, d, k, m_i));
}

double effective_tightness(const RBParams& params) {
  const double tuples = static_cast<double>(params.tuple_space());
  if (params.mode == RelationMode::exact) return double(params.rel_size) / tuples;
  // Resampling empty and full relations conditions each inclusion.
  const double p = params.p;
  const double q = 1.0 - p;
  const double p_all = std::pow(p, tuples);
  const double q_all = std::pow(q, tuples);
  const double p_rest = std::pow(p, tuples - 1.0);
  return p * (1.0 - p_rest) / (1.0 - p_all - q_all);
}

double log_expected_solutions(const RBParams& params) {
  params.validate();
  return double(params.n) * std::log(double(params.d)) + double(params.m) * std::log(effective_tightness(params));
}

double MomentReport::lower_bracket() const { return 1.0 - single_failure_sum; }

double MomentReport::upper_bracket() const { return std::exp(correction_upper); }

MomentReport ey_log_bounds_degrees(const RBParams& params, std::span<const double> degrees) {
  params.validate();
  if (degrees.size() != params.n) throw ParamError("profile length does not match n");
  const double p = params.p;
  const std::uint32_t d = params.d;
  const std::uint32_t k = params.k;

  MomentReport out;
  out.log_base = log_expected_solutions(params);
  out.rho = rho(p, d, k);

  std::vector<double> single_terms;
  single_terms.reserve(degrees.size());
  for (double m_i : degrees) single_terms.push_back(log_per_variable_failure(p, d, k, m_i));
  const double log_single = log_sum_exp(single_terms);

  // After sorting, the t-th smallest degree is the minimum in exactly
  // (n - 1 - t) pairs.
  std::vector<double> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end());
  const double lr = log_rho(p, d, k);
  const double pair_exponent = (double(d) - 1.0) * (double(d) - 1.0);
  std::vector<double> pair_terms;
  pair_terms.reserve(sorted.size());
  for (std::size_t t = 0; t + 1 < sorted.size(); ++t) {
    const double pairs = double(sorted.size() - 1 - t);
    const double log_g = sorted[t] == 0.0 ? kNegInf : pair_exponent * log1mexp(sorted[t] * lr);
    pair_terms.push_back(log_g + std::log(pairs));
  }
  const double log_pair = log_sum_exp(pair_terms);

  out.single_failure_sum = std::exp(log_single);
  out.pair_failure_sum = std::exp(log_pair);
  out.correction_lower = out.single_failure_sum < 1.0 ? std::log1p(-out.single_failure_sum) : kNegInf;

  const double excess = out.pair_failure_sum - out.single_failure_sum;
  out.upper_bracket_raw = 1.0 + excess;
  out.correction_upper = excess > -1.0 ? std::min(std::log1p(excess), 0.0) : kNegInf;
  out.exceeds_factor_two = out.upper_bracket_raw > 2.0;

  out.log_lower = out.log_base + out.correction_lower;
  out.log_upper = out.log_base + out.correction_upper;
  return out;
}

MomentReport ey_log_bounds(const RBParams& params, const DegreeProfile& profile) {
  if (profile.degrees.size() != params.n) throw ParamError("profile length does not match n");
  const std::uint64_t total = std::accumulate(profile.degrees.begin(), profile.degrees.end(), std::uint64_t{0});
  if (total != std::uint64_t{params.k} * params.m) throw ParamError("profile degrees must sum to k*m");
  std::vector<double> degrees(profile.degrees.begin(), profile.degrees.end());
  return ey_log_bounds_degrees(params, degrees);
}

MomentReport ey_log_bounds_regular(const RBParams& params) {
  const double regular = double(params.k) * double(params.m) / double(params.n);
  std::vector<double> degrees(params.n, regular);
  return ey_log_bounds_degrees(params, degrees);
}

}  // namespace rbcsp

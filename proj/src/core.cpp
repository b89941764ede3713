#include "rbcsp/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "rbcsp/errors.hpp"
#include "rbcsp/rng.hpp"

namespace rbcsp {

namespace {

// Stored-code budget for one generated instance.
constexpr std::uint64_t kMaxStoredCodes = std::uint64_t{1} << 28;

std::uint64_t round_half_away(double x) {
  const double r = std::round(x);
  if (!(r >= 0.0) || r > 9.0e18) throw ParamError("derived size out of range: " + std::to_string(x));
  return static_cast<std::uint64_t>(r);
}

// d^k, or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> checked_power(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    result *= base;
  }
  return result;
}

void check_controls(std::uint32_t n, std::uint32_t k, double p) {
  if (n < 2) throw ParamError("n must be at least 2");
  if (k < 2 || k > n) throw ParamError("k must satisfy 2 <= k <= n");
  if (!(p > 0.0 && p < 1.0)) throw ParamError("p must lie in (0, 1)");
}

std::uint64_t default_rel_size(double p, std::uint64_t tuples) {
  const auto raw = round_half_away(p * static_cast<double>(tuples));
  return std::clamp<std::uint64_t>(raw, 1, tuples - 1);
}

std::vector<VarIndex> floyd_subset(SplitMix64& rng, std::uint32_t n, std::uint32_t k) {
  // Floyd's algorithm: uniform k-subset with exactly k draws.
  std::vector<VarIndex> scope;
  scope.reserve(k);
  for (std::uint32_t j = n - k; j < n; ++j) {
    const auto t = static_cast<VarIndex>(rng.below(std::uint64_t{j} + 1));
    if (std::find(scope.begin(), scope.end(), t) == scope.end()) {
      scope.push_back(t);
    } else {
      scope.push_back(j);
    }
  }
  std::sort(scope.begin(), scope.end());
  return scope;
}

std::vector<TupleCode> sample_exact_relation(SplitMix64& rng, std::uint64_t tuples, std::uint64_t size) {
  // Draw whichever side is smaller, then complement if needed.
  const bool complement = size > tuples / 2;
  const std::uint64_t draws = complement ? tuples - size : size;
  std::unordered_set<TupleCode> picked;
  picked.reserve(draws * 2);
  std::vector<TupleCode> order;
  order.reserve(draws);
  while (order.size() < draws) {
    const TupleCode c = rng.below(tuples);
    if (picked.insert(c).second) order.push_back(c);
  }
  std::sort(order.begin(), order.end());
  if (!complement) return order;

  std::vector<TupleCode> out;
  out.reserve(size);
  auto skip = order.begin();
  for (TupleCode c = 0; c < tuples; ++c) {
    if (skip != order.end() && *skip == c) {
      ++skip;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<TupleCode> sample_bernoulli_relation(SplitMix64& rng, std::uint64_t tuples, double p,
                                                 std::uint64_t& resamples) {
  std::vector<TupleCode> out;
  for (;;) {
    out.clear();
    for (TupleCode c = 0; c < tuples; ++c) {
      if (rng.bernoulli(p)) out.push_back(c);
    }
    if (!out.empty() && out.size() != tuples) return out;
    ++resamples;
  }
}

// Constraint indices incident to each variable.
std::vector<std::vector<std::size_t>> incidence(const Instance& inst) {
  std::vector<std::vector<std::size_t>> inc(inst.params().n);
  const auto& cs = inst.constraints();
  for (std::size_t c = 0; c < cs.size(); ++c) {
    for (VarIndex v : cs[c].scope()) inc[v].push_back(c);
  }
  return inc;
}

// Repair search around a fixed solution sigma. Only constraints touching a
// changed variable need rechecking.
class RepairSearch {
 public:
  RepairSearch(const Instance& inst, const Assignment& sigma)
      : inst_(inst), sigma_(sigma), incident_(incidence(inst)), tau_(sigma) {}

  std::optional<Assignment> find(VarIndex i, SuperLevel level) {
    const std::uint32_t d = inst_.params().d;
    const Value si = sigma_[i];
    for (Value y = 0; y < d; ++y) {
      if (y == si) continue;
      tau_.values[i] = y;
      if (local_ok(i)) return take(i);
    }
    tau_.values[i] = si;
    if (level == SuperLevel::one_zero) return std::nullopt;

    const std::uint32_t n = inst_.params().n;
    for (Value y = 0; y < d; ++y) {
      if (y == si) continue;
      tau_.values[i] = y;
      for (VarIndex j = 0; j < n; ++j) {
        if (j == i) continue;
        const Value sj = sigma_[j];
        for (Value z = 0; z < d; ++z) {
          if (z == sj) continue;
          tau_.values[j] = z;
          if (local_ok(i) && local_ok(j)) {
            Assignment out = tau_;
            tau_.values[j] = sj;
            tau_.values[i] = si;
            return out;
          }
        }
        tau_.values[j] = sj;
      }
    }
    tau_.values[i] = si;
    return std::nullopt;
  }

 private:
  bool local_ok(VarIndex v) const {
    const auto& cs = inst_.constraints();
    for (std::size_t c : incident_[v]) {
      if (!cs[c].allows(inst_.restrict_code(cs[c], tau_))) return false;
    }
    return true;
  }

  Assignment take(VarIndex i) {
    Assignment out = tau_;
    tau_.values[i] = sigma_[i];
    return out;
  }

  const Instance& inst_;
  const Assignment& sigma_;
  std::vector<std::vector<std::size_t>> incident_;
  Assignment tau_;
};

}  // namespace

std::string_view to_string(RelationMode mode) noexcept {
  return mode == RelationMode::exact ? "exact" : "bernoulli";
}

RelationMode relation_mode_from_string(std::string_view text) {
  if (text == "exact") return RelationMode::exact;
  if (text == "bernoulli") return RelationMode::bernoulli;
  throw ParamError("unknown relation mode: " + std::string(text));
}

SuperLevel super_level_from_int(int level) {
  if (level == 10) return SuperLevel::one_zero;
  if (level == 11) return SuperLevel::one_one;
  throw ParamError("super-solution level must be 10 or 11");
}

std::uint64_t RBParams::tuple_space() const {
  const auto t = checked_power(d, k);
  if (!t) throw OverflowError("d^k does not fit in 64 bits");
  return *t;
}

void RBParams::validate() const {
  check_controls(n, k, p);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParamError("alpha must be positive");
  if (!(r > 0.0) || !std::isfinite(r)) throw ParamError("r must be positive");
  if (d < 2) throw ParamError("d must be at least 2");
  if (m < 1) throw ParamError("m must be at least 1");
  const std::uint64_t tuples = tuple_space();
  if (mode == RelationMode::exact) {
    if (tuples > kMaxExactTupleSpace) {
      throw OverflowError("d^k exceeds 2^48 in exact mode; use bernoulli mode");
    }
    if (rel_size < 1 || rel_size > tuples - 1) throw ParamError("rel_size must lie in [1, d^k - 1]");
  }
}

RBParams derive_params(std::uint32_t n, std::uint32_t k, double alpha, double r, double p, RelationMode mode) {
  check_controls(n, k, p);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParamError("alpha must be positive");
  if (!(r > 0.0) || !std::isfinite(r)) throw ParamError("r must be positive");

  RBParams out;
  out.n = n;
  out.k = k;
  out.alpha = alpha;
  out.r = r;
  out.p = p;
  out.mode = mode;
  const std::uint64_t d = std::max<std::uint64_t>(2, round_half_away(std::pow(double(n), alpha)));
  if (d > std::numeric_limits<std::uint32_t>::max()) throw OverflowError("domain size too large");
  out.d = static_cast<std::uint32_t>(d);
  out.m = std::max<std::uint64_t>(1, round_half_away(r * double(n) * std::log(double(n))));

  const auto tuples = checked_power(out.d, k);
  if (!tuples) throw OverflowError("d^k does not fit in 64 bits");
  if (mode == RelationMode::exact && *tuples > kMaxExactTupleSpace) {
    throw OverflowError("d^k exceeds 2^48 in exact mode; use bernoulli mode");
  }
  out.rel_size = default_rel_size(p, *tuples);
  return out;
}

RBParams explicit_params(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint64_t m, double p,
                         RelationMode mode, std::optional<std::uint64_t> rel_size) {
  check_controls(n, k, p);
  if (d < 2) throw ParamError("d must be at least 2");
  if (m < 1) throw ParamError("m must be at least 1");
  RBParams out;
  out.n = n;
  out.k = k;
  out.p = p;
  out.d = d;
  out.m = m;
  out.mode = mode;
  out.alpha = std::log(double(d)) / std::log(double(n));
  out.r = double(m) / (double(n) * std::log(double(n)));
  const auto tuples = checked_power(d, k);
  if (!tuples) throw OverflowError("d^k does not fit in 64 bits");
  out.rel_size = rel_size ? *rel_size : default_rel_size(p, *tuples);
  out.validate();
  return out;
}

TupleCode encode_tuple(std::span<const Value> values, std::uint32_t d) {
  if (d < 2) throw ParamError("d must be at least 2");
  TupleCode code = 0;
  for (Value v : values) {
    if (v >= d) throw ParamError("tuple value out of range");
    if (code > (std::numeric_limits<TupleCode>::max() - v) / d) throw OverflowError("tuple code overflow");
    code = code * d + v;
  }
  return code;
}

std::vector<Value> decode_tuple(TupleCode code, std::uint32_t d, std::uint32_t k) {
  if (d < 2) throw ParamError("d must be at least 2");
  const auto tuples = checked_power(d, k);
  if (tuples && code >= *tuples) throw ParamError("tuple code out of range");
  std::vector<Value> out(k);
  for (std::uint32_t j = k; j-- > 0;) {
    out[j] = static_cast<Value>(code % d);
    code /= d;
  }
  return out;
}

Constraint::Constraint(std::vector<VarIndex> scope, std::vector<TupleCode> relation)
    : scope_(std::move(scope)), relation_(std::move(relation)) {
  if (scope_.empty()) throw ParamError("constraint scope is empty");
  for (std::size_t j = 1; j < scope_.size(); ++j) {
    if (scope_[j - 1] >= scope_[j]) throw ParamError("constraint scope must be strictly ascending");
  }
  std::sort(relation_.begin(), relation_.end());
  if (std::adjacent_find(relation_.begin(), relation_.end()) != relation_.end()) {
    throw ParamError("duplicate tuple code in relation");
  }
}

bool Constraint::allows(TupleCode code) const noexcept {
  return std::binary_search(relation_.begin(), relation_.end(), code);
}

bool Constraint::contains_var(VarIndex v) const noexcept {
  return std::binary_search(scope_.begin(), scope_.end(), v);
}

Instance::Instance(RBParams params, std::vector<Constraint> constraints, std::uint64_t seed)
    : params_(params), constraints_(std::move(constraints)), seed_(seed) {
  params_.validate();
  if (constraints_.size() != params_.m) throw ParamError("constraint count does not match m");
  const std::uint64_t tuples = params_.tuple_space();
  for (const auto& c : constraints_) {
    if (c.scope().size() != params_.k) throw ParamError("constraint scope size does not match k");
    if (c.scope().back() >= params_.n) throw ParamError("constraint variable out of range");
    if (!c.relation().empty() && c.relation().back() >= tuples) throw ParamError("tuple code out of range");
    if (params_.mode == RelationMode::exact && c.relation().size() != params_.rel_size) {
      throw ParamError("relation size does not match rel_size in exact mode");
    }
  }
}

void Instance::check_assignment(const Assignment& a) const {
  if (a.size() != params_.n) throw ParamError("assignment length does not match n");
  for (Value v : a.values) {
    if (v >= params_.d) throw ParamError("assignment value out of domain");
  }
}

TupleCode Instance::restrict_code(const Constraint& c, const Assignment& a) const {
  TupleCode code = 0;
  for (VarIndex v : c.scope()) code = code * params_.d + a.values[v];
  return code;
}

std::vector<VarIndex> random_scope(SplitMix64& rng, std::uint32_t n, std::uint32_t k) {
  if (k < 1 || k > n) throw ParamError("scope size must lie in [1, n]");
  return floyd_subset(rng, n, k);
}

Generated generate_counted(const RBParams& params, std::uint64_t seed) {
  params.validate();
  const std::uint64_t tuples = params.tuple_space();
  const std::uint64_t per_constraint =
      params.mode == RelationMode::exact ? params.rel_size : tuples;
  if (per_constraint > kMaxStoredCodes / params.m) {
    throw ResourceError("instance would exceed the generation budget of 2^28 tuple codes");
  }

  std::uint64_t resamples = 0;
  std::vector<Constraint> constraints;
  constraints.reserve(params.m);
  for (std::uint64_t c = 0; c < params.m; ++c) {
    SplitMix64 rng(mix_seed(seed, Stream::constraint, c));
    auto scope = random_scope(rng, params.n, params.k);
    auto relation = params.mode == RelationMode::exact
                        ? sample_exact_relation(rng, tuples, params.rel_size)
                        : sample_bernoulli_relation(rng, tuples, params.p, resamples);
    constraints.emplace_back(std::move(scope), std::move(relation));
  }
  return {Instance(params, std::move(constraints), seed), resamples};
}

Instance generate(const RBParams& params, std::uint64_t seed) {
  return generate_counted(params, seed).instance;
}

bool satisfies(const Instance& inst, const Assignment& a) {
  inst.check_assignment(a);
  for (const auto& c : inst.constraints()) {
    if (!c.allows(inst.restrict_code(c, a))) return false;
  }
  return true;
}

std::vector<VarIndex> delta(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) throw ParamError("assignments differ in length");
  std::vector<VarIndex> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) out.push_back(static_cast<VarIndex>(i));
  }
  return out;
}

std::optional<Assignment> find_repair(const Instance& inst, const Assignment& sigma, VarIndex i,
                                      SuperLevel level) {
  if (i >= inst.params().n) throw ParamError("variable index out of range");
  if (!satisfies(inst, sigma)) throw PreconditionError("repair is only defined for solutions");
  return RepairSearch(inst, sigma).find(i, level);
}

bool is_super_solution(const Instance& inst, const Assignment& sigma, SuperLevel level) {
  if (!satisfies(inst, sigma)) return false;
  RepairSearch search(inst, sigma);
  for (VarIndex i = 0; i < inst.params().n; ++i) {
    if (!search.find(i, level)) return false;
  }
  return true;
}

std::uint64_t DegreeProfile::overlap(VarIndex i, VarIndex j) const {
  if (i > j) std::swap(i, j);
  const auto it = overlaps.find({i, j});
  return it == overlaps.end() ? 0 : it->second;
}

DegreeProfile degree_profile(const Instance& inst) {
  DegreeProfile out;
  out.degrees.assign(inst.params().n, 0);
  for (const auto& c : inst.constraints()) {
    const auto& s = c.scope();
    for (std::size_t a = 0; a < s.size(); ++a) {
      ++out.degrees[s[a]];
      for (std::size_t b = a + 1; b < s.size(); ++b) ++out.overlaps[{s[a], s[b]}];
    }
  }
  return out;
}

}  // namespace rbcsp

#pragma once

// Model RB instances: parameters, constraints, generation, satisfaction and
// repair-based super-solution checks.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace rbcsp {

using VarIndex = std::uint32_t;
using Value = std::uint32_t;
using TupleCode = std::uint64_t;

enum class RelationMode { exact, bernoulli };

std::string_view to_string(RelationMode mode) noexcept;
RelationMode relation_mode_from_string(std::string_view text);

/// Which kind of super solution: (1,0) allows only the broken variable to
/// change, (1,1) allows one extra variable to change as well.
enum class SuperLevel { one_zero = 10, one_one = 11 };

SuperLevel super_level_from_int(int level);

/// Largest tuple space d^k accepted in exact mode.
inline constexpr std::uint64_t kMaxExactTupleSpace = std::uint64_t{1} << 48;

struct RBParams {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  double alpha = 0.0;
  double r = 0.0;
  double p = 0.0;
  std::uint32_t d = 0;
  std::uint64_t m = 0;
  std::uint64_t rel_size = 0;
  RelationMode mode = RelationMode::exact;

  /// d^k.
  std::uint64_t tuple_space() const;

  /// Throws ParamError / OverflowError if the invariants do not hold.
  void validate() const;

  friend bool operator==(const RBParams&, const RBParams&) = default;
};

/// Builds parameters from the model's control values, rounding half away
/// from zero: d = max(2, round(n^alpha)), m = max(1, round(r n ln n)),
/// rel_size = clamp(round(p d^k), 1, d^k - 1).
RBParams derive_params(std::uint32_t n, std::uint32_t k, double alpha, double r, double p,
                       RelationMode mode = RelationMode::exact);

/// Builds parameters with the integer sizes given directly. alpha and r are
/// back-computed as ln d / ln n and m / (n ln n); rel_size defaults to the
/// rounded p d^k.
RBParams explicit_params(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint64_t m, double p,
                         RelationMode mode = RelationMode::exact,
                         std::optional<std::uint64_t> rel_size = std::nullopt);

/// Positional code of a value tuple: sum_j values[j] * d^(k-1-j).
TupleCode encode_tuple(std::span<const Value> values, std::uint32_t d);
std::vector<Value> decode_tuple(TupleCode code, std::uint32_t d, std::uint32_t k);

class Constraint {
 public:
  /// `scope` must be strictly ascending; `relation` is sorted here and must
  /// not contain duplicates.
  Constraint(std::vector<VarIndex> scope, std::vector<TupleCode> relation);

  const std::vector<VarIndex>& scope() const noexcept { return scope_; }
  const std::vector<TupleCode>& relation() const noexcept { return relation_; }

  bool allows(TupleCode code) const noexcept;
  bool contains_var(VarIndex v) const noexcept;

  friend bool operator==(const Constraint&, const Constraint&) = default;

 private:
  std::vector<VarIndex> scope_;
  std::vector<TupleCode> relation_;
};

struct Assignment {
  std::vector<Value> values;

  std::size_t size() const noexcept { return values.size(); }
  Value operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

class Instance {
 public:
  /// Validates every constraint against `params`.
  Instance(RBParams params, std::vector<Constraint> constraints, std::uint64_t seed = 0);

  const RBParams& params() const noexcept { return params_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Throws ParamError unless `a` has length n and entries in [0, d).
  void check_assignment(const Assignment& a) const;

  /// Tuple code of `a` restricted to the scope of `c`.
  TupleCode restrict_code(const Constraint& c, const Assignment& a) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  RBParams params_;
  std::vector<Constraint> constraints_;
  std::uint64_t seed_;
};

struct Generated {
  Instance instance;
  /// Bernoulli-mode relations redrawn because they were empty or full.
  std::uint64_t resamples = 0;
};

class SplitMix64;

/// Uniform k-subset of {0..n-1}, ascending.
std::vector<VarIndex> random_scope(SplitMix64& rng, std::uint32_t n, std::uint32_t k);

/// Draws m constraints, each on a uniform k-subset of variables (with
/// replacement across constraints). Constraint i uses its own substream of
/// `seed`, so the result depends only on (params, seed).
Instance generate(const RBParams& params, std::uint64_t seed);
Generated generate_counted(const RBParams& params, std::uint64_t seed);

bool satisfies(const Instance& inst, const Assignment& a);

/// Indices where `a` and `b` disagree, ascending.
std::vector<VarIndex> delta(const Assignment& a, const Assignment& b);

/// Searches for a repair of `sigma` after variable `i` loses its value.
/// Single-variable repairs are tried first (new value ascending), then
/// two-variable repairs ordered by (new value of i, j, new value of j).
/// Throws PreconditionError if `sigma` is not a solution.
std::optional<Assignment> find_repair(const Instance& inst, const Assignment& sigma, VarIndex i,
                                      SuperLevel level);

/// True iff `sigma` is a solution and every variable has a repair.
bool is_super_solution(const Instance& inst, const Assignment& sigma, SuperLevel level);

struct DegreeProfile {
  /// m_i: constraints whose scope contains variable i, with multiplicity.
  std::vector<std::uint64_t> degrees;
  /// l_ij for i < j, only nonzero entries.
  std::map<std::pair<VarIndex, VarIndex>, std::uint64_t> overlaps;

  std::uint64_t overlap(VarIndex i, VarIndex j) const;
};

DegreeProfile degree_profile(const Instance& inst);

}  // namespace rbcsp

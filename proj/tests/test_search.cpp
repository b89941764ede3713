#include <gtest/gtest.h>

#include <algorithm>

#include "rbcsp/errors.hpp"
#include "rbcsp/search.hpp"
#include "support.hpp"

using namespace rbcsp;
using namespace rbcsp::testing;

namespace {

Instance contradictory_instance() {
  const auto params = explicit_params(2, 2, 2, 2, 0.5, RelationMode::bernoulli);
  return Instance(params, {Constraint({0, 1}, {0}), Constraint({0, 1}, {3})});
}

}  // namespace

TEST(CountAll, ToyInstance) {
  const auto rep = count_all(toy_instance());
  EXPECT_EQ(rep.n_solutions, 2u);
  EXPECT_EQ(rep.n_super10, 0u);
  EXPECT_EQ(rep.n_super11, 2u);
  EXPECT_EQ(rep.enumerated, 4u);
  EXPECT_FALSE(rep.capped);
}

TEST(CountAll, AllButOneCode) {
  // Relation {(0,0),(1,0),(1,1)}. (0,0) and (1,1) each need a two-variable
  // repair for one variable because (0,1) is forbidden; (1,0) has single
  // repairs for both.
  const auto inst = single_constraint(2, 2, {0, 1}, {0, 2, 3});
  const auto rep = count_all(inst);
  EXPECT_EQ(rep, oracle_counts(inst));
  EXPECT_EQ(rep.n_solutions, 3u);
  EXPECT_EQ(rep.n_super10, 1u);
  EXPECT_EQ(rep.n_super11, 3u);
}

TEST(CountAll, NoSolutions) {
  const auto rep = count_all(contradictory_instance());
  EXPECT_EQ(rep.n_solutions, 0u);
  EXPECT_EQ(rep.n_super10, 0u);
  EXPECT_EQ(rep.n_super11, 0u);
}

TEST(CountAll, BudgetAndCap) {
  const auto params = explicit_params(24, 2, 2, 5, 0.5);
  const auto inst = generate(params, 1);
  EXPECT_THROW(count_all(inst), ResourceError);
  const auto rep = count_all(inst, 1000);
  EXPECT_TRUE(rep.capped);
  EXPECT_EQ(rep.enumerated, 1000u);

  // A cap above d^n is not capped, and the capped path agrees with the
  // table path.
  const auto small = random_small_instance(77);
  const auto capped = count_all(small, 1'000'000);
  EXPECT_FALSE(capped.capped);
  EXPECT_EQ(capped, count_all(small));
}

TEST(CountAll, MatchesOracle) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto inst = random_small_instance(10'000 + s);
    const auto rep = count_all(inst);
    const auto expected = oracle_counts(inst);
    ASSERT_EQ(rep, expected) << "seed " << s;
    EXPECT_LE(rep.n_super10, rep.n_super11);
    EXPECT_LE(rep.n_super11, rep.n_solutions);
  }
}

TEST(CountAll, WorkersDoNotChangeResult) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto inst = generate(explicit_params(9, 2, 3, 12, 0.6), s);
    const auto one = count_all(inst, std::nullopt, 1);
    EXPECT_EQ(one, count_all(inst, std::nullopt, 3));
    EXPECT_EQ(one, count_all(inst, std::nullopt, 8));
    EXPECT_EQ(count_all(inst, 5000, 1), count_all(inst, 5000, 4));
  }
}

TEST(CountAll, PermutingConstraintsLeavesCountsUnchanged) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto inst = random_small_instance(20'000 + s);
    auto cs = inst.constraints();
    std::reverse(cs.begin(), cs.end());
    SplitMix64 rng(s);
    for (std::size_t i = cs.size(); i > 1; --i) std::swap(cs[i - 1], cs[rng.below(i)]);
    const Instance shuffled(inst.params(), cs, inst.seed());
    EXPECT_EQ(count_all(inst), count_all(shuffled));
  }
}

TEST(CountAll, MonotoneUnderConstraintAddition) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto inst = random_small_instance(30'000 + s);
    SplitMix64 rng(s + 1);
    const auto& p = inst.params();
    std::vector<TupleCode> rel;
    for (TupleCode c = 0; c < p.tuple_space(); ++c) {
      if (rng.bernoulli(0.5)) rel.push_back(c);
    }
    const auto a = count_all(inst);
    const auto b = count_all(with_extra(inst, Constraint(random_scope(rng, p.n, 2), rel)));
    EXPECT_LE(b.n_solutions, a.n_solutions);
    EXPECT_LE(b.n_super11, a.n_super11);
    EXPECT_LE(b.n_super10, a.n_super10);
  }
}

TEST(BacktrackSolve, ToyInstance) {
  const auto sol = backtrack_solve(toy_instance());
  ASSERT_TRUE(sol);
  EXPECT_EQ(*sol, (Assignment{{0, 0}}));
  EXPECT_FALSE(backtrack_solve(contradictory_instance()));
}

TEST(BacktrackSolve, FirstSolutionInLexOrder) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto inst = random_small_instance(40'000 + s);
    const auto sol = backtrack_solve(inst);
    std::optional<Assignment> first;
    for (const auto& a : all_assignments(inst.params())) {
      if (oracle_satisfies(inst, a)) {
        first = a;
        break;
      }
    }
    ASSERT_EQ(sol.has_value(), first.has_value());
    if (sol) EXPECT_EQ(*sol, *first);
  }
}

TEST(FindSuper, ToyInstance) {
  const auto inst = toy_instance();
  const auto s11 = find_super(inst, SuperLevel::one_one);
  ASSERT_TRUE(s11);
  EXPECT_EQ(*s11, (Assignment{{0, 0}}));
  EXPECT_FALSE(find_super(inst, SuperLevel::one_zero));
  EXPECT_FALSE(find_super(contradictory_instance(), SuperLevel::one_one));
  EXPECT_FALSE(find_super(contradictory_instance(), SuperLevel::one_zero));
}

TEST(FindSuper, BudgetExceeded) {
  // 2^20 assignments, none satisfying: exhausting a small budget throws.
  const auto params = explicit_params(20, 2, 2, 2, 0.5, RelationMode::bernoulli);
  const Instance inst(params, {Constraint({0, 1}, {0}), Constraint({0, 1}, {3})});
  EXPECT_THROW(find_super(inst, SuperLevel::one_one, 100), ResourceError);
}

TEST(FindSuper, AgreesWithCounts) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto inst = random_small_instance(50'000 + s);
    const auto rep = count_all(inst);
    EXPECT_EQ(find_super(inst, SuperLevel::one_one).has_value(), rep.n_super11 > 0);
    EXPECT_EQ(find_super(inst, SuperLevel::one_zero).has_value(), rep.n_super10 > 0);
  }
}

TEST(FindSuper, BinaryPathHasNoOneOneSuperSolution) {
  // d = 2 and complementary pairs: repairing the middle variable of a path
  // forces both neighbours to flip, which a (1,1) repair cannot do.
  const auto params = explicit_params(3, 2, 2, 2, 0.5, RelationMode::exact, 2);
  const Instance path(params, {Constraint({0, 1}, {0, 3}), Constraint({1, 2}, {0, 3})});
  EXPECT_EQ(count_all(path).n_super11, 0u);
  EXPECT_EQ(count_all(path).n_solutions, 2u);
  const Instance matching(params, {Constraint({0, 1}, {0, 3}), Constraint({0, 1}, {0, 3})});
  EXPECT_EQ(count_all(matching).n_super11, 4u);
}

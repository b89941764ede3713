#include "rbcsp/search.hpp"

#include <limits>
#include <string>
#include <vector>

#include "rbcsp/errors.hpp"
#include "rbcsp/parallel.hpp"

namespace rbcsp {

namespace {

struct Tally {
  std::uint64_t solutions = 0;
  std::uint64_t super10 = 0;
  std::uint64_t super11 = 0;
};

void advance(Assignment& a, std::uint32_t d) {
  for (std::size_t v = a.size(); v-- > 0;) {
    if (++a.values[v] < d) return;
    a.values[v] = 0;
  }
}

// Repair checks against a precomputed table of which ranks are solutions.
class SolutionTable {
 public:
  SolutionTable(const Instance& inst, std::uint64_t space, unsigned workers)
      : n_(inst.params().n), d_(inst.params().d), weights_(n_), is_solution_(space, 0) {
    std::uint64_t w = 1;
    for (std::size_t v = n_; v-- > 0;) {
      weights_[v] = w;
      w *= d_;
    }
    parallel_chunks(space, workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
      if (begin == end) return;
      Assignment a = assignment_at(inst.params(), begin);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        is_solution_[idx] = satisfies(inst, a) ? 1 : 0;
        advance(a, d_);
      }
    });
  }

  bool solution(std::uint64_t idx) const { return is_solution_[idx] != 0; }

  // Classifies the solution at `idx`; returns {super10, super11}.
  std::pair<bool, bool> classify(std::uint64_t idx, const Assignment& sigma) const {
    bool all_single = true;
    for (std::uint32_t i = 0; i < n_; ++i) {
      const bool single = has_single(idx, sigma, i);
      if (!single) {
        all_single = false;
        if (!has_pair(idx, sigma, i)) return {false, false};
      }
    }
    return {all_single, true};
  }

 private:
  std::uint64_t shifted(std::uint64_t idx, std::uint32_t v, Value from, Value to) const {
    return idx - std::uint64_t{from} * weights_[v] + std::uint64_t{to} * weights_[v];
  }

  bool has_single(std::uint64_t idx, const Assignment& sigma, std::uint32_t i) const {
    for (Value y = 0; y < d_; ++y) {
      if (y != sigma[i] && solution(shifted(idx, i, sigma[i], y))) return true;
    }
    return false;
  }

  bool has_pair(std::uint64_t idx, const Assignment& sigma, std::uint32_t i) const {
    for (Value y = 0; y < d_; ++y) {
      if (y == sigma[i]) continue;
      const std::uint64_t base = shifted(idx, i, sigma[i], y);
      for (std::uint32_t j = 0; j < n_; ++j) {
        if (j == i) continue;
        for (Value z = 0; z < d_; ++z) {
          if (z != sigma[j] && solution(shifted(base, j, sigma[j], z))) return true;
        }
      }
    }
    return false;
  }

  std::uint32_t n_;
  std::uint32_t d_;
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint8_t> is_solution_;
};

CountReport combine(const std::vector<Tally>& tallies, std::uint64_t enumerated, bool capped) {
  CountReport out;
  for (const auto& t : tallies) {
    out.n_solutions += t.solutions;
    out.n_super10 += t.super10;
    out.n_super11 += t.super11;
  }
  out.enumerated = enumerated;
  out.capped = capped;
  return out;
}

}  // namespace

std::uint64_t assignment_space(const RBParams& params) noexcept {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < params.n; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / params.d) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result *= params.d;
  }
  return result;
}

Assignment assignment_at(const RBParams& params, std::uint64_t index) {
  Assignment a{std::vector<Value>(params.n, 0)};
  for (std::size_t v = params.n; v-- > 0;) {
    a.values[v] = static_cast<Value>(index % params.d);
    index /= params.d;
  }
  if (index != 0) throw ParamError("assignment rank out of range");
  return a;
}

CountReport count_all(const Instance& inst, std::optional<std::uint64_t> cap, unsigned workers) {
  const std::uint64_t space = assignment_space(inst.params());
  if (!cap) {
    if (space > kDefaultEnumerationBudget) {
      throw ResourceError("d^n = " + std::to_string(space) + " exceeds the enumeration budget of " +
                          std::to_string(kDefaultEnumerationBudget) + "; pass a cap");
    }
    const SolutionTable table(inst, space, workers);
    std::vector<Tally> per_chunk(chunk_count(space, workers));
    parallel_chunks(space, workers, [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
      Tally t;
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        if (!table.solution(idx)) continue;
        ++t.solutions;
        const auto [s10, s11] = table.classify(idx, assignment_at(inst.params(), idx));
        t.super10 += s10;
        t.super11 += s11;
      }
      per_chunk[chunk] = t;
    });
    return combine(per_chunk, space, false);
  }

  const std::uint64_t visit = std::min(*cap, space);
  std::vector<Tally> per_chunk(chunk_count(visit, workers));
  parallel_chunks(visit, workers, [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
    Tally t;
    if (begin < end) {
      Assignment a = assignment_at(inst.params(), begin);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        if (satisfies(inst, a)) {
          ++t.solutions;
          if (is_super_solution(inst, a, SuperLevel::one_one)) {
            ++t.super11;
            t.super10 += is_super_solution(inst, a, SuperLevel::one_zero);
          }
        }
        advance(a, inst.params().d);
      }
    }
    per_chunk[chunk] = t;
  });
  return combine(per_chunk, visit, visit < space);
}

std::optional<Assignment> backtrack_solve(const Instance& inst) {
  const auto& params = inst.params();
  const auto& cs = inst.constraints();
  // Constraints grouped by the variable that completes their scope.
  std::vector<std::vector<std::size_t>> closing(params.n);
  for (std::size_t c = 0; c < cs.size(); ++c) closing[cs[c].scope().back()].push_back(c);

  Assignment a{std::vector<Value>(params.n, 0)};
  auto consistent = [&](VarIndex v) {
    for (std::size_t c : closing[v]) {
      if (!cs[c].allows(inst.restrict_code(cs[c], a))) return false;
    }
    return true;
  };

  // Iterative DFS; `next` holds the next value to try at each depth.
  std::vector<Value> next(params.n, 0);
  std::size_t depth = 0;
  while (true) {
    if (next[depth] >= params.d) {
      if (depth == 0) return std::nullopt;
      next[depth] = 0;
      --depth;
      continue;
    }
    a.values[depth] = next[depth]++;
    if (!consistent(static_cast<VarIndex>(depth))) continue;
    if (depth + 1 == params.n) return a;
    ++depth;
  }
}

std::optional<Assignment> find_super(const Instance& inst, SuperLevel level, std::uint64_t budget) {
  const std::uint64_t space = assignment_space(inst.params());
  Assignment a{std::vector<Value>(inst.params().n, 0)};
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    if (idx == budget) {
      throw ResourceError("find_super exceeded the enumeration budget of " + std::to_string(budget));
    }
    if (is_super_solution(inst, a, level)) return a;
    advance(a, inst.params().d);
  }
  return std::nullopt;
}

}  // namespace rbcsp

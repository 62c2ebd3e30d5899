#pragma once

#include <cstdint>
#include <string>

#include "latq/lattice.hpp"

namespace latq {

enum class Family { uniform, knapsack };

struct EnsembleSpec {
  Family family = Family::uniform;
  Index n = 4;
  Index m = 4;  // ignored for knapsack (always n+1)
  long bound = 50;
  std::uint64_t seed = 1;
  int trials = 1;
};

inline const char* family_name(Family f) {
  return f == Family::uniform ? "uniform" : "knapsack";
}

/// Entries independent uniform in [-bound, bound]; the stream advances
/// deterministically through resamples until the rows are independent.
inline Basis<Rational> gen_uniform(Index n, Index m, long bound,
                                   std::uint64_t seed) {
  if (m < n) throw DomainError("gen_uniform: need m >= n");
  if (n < 1) throw DomainError("gen_uniform: need n >= 1");
  if (bound < 0) throw DomainError("gen_uniform: bound must be >= 0");
  Xoshiro256pp rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    RationalMatrix rows(n, m);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < m; ++j)
        rows(i, j) = Rational(rng.in_range(-bound, bound));
    try {
      return make_basis(std::move(rows));
    } catch (const RankDeficient&) {
      continue;
    }
  }
  throw GenerationFailed("gen_uniform: no full-rank sample in 100 attempts");
}

/// Knapsack-style family: row i is e_i augmented with a_i in [1, bound].
/// Always full rank; det(B B^T) = 1 + sum a_i^2.
inline Basis<Rational> gen_knapsack(Index n, long bound, std::uint64_t seed) {
  if (n < 2) throw DomainError("gen_knapsack: need n >= 2");
  if (bound < 1) throw DomainError("gen_knapsack: bound must be >= 1");
  Xoshiro256pp rng(seed);
  RationalMatrix rows = RationalMatrix::Zero(n, n + 1);
  for (Index i = 0; i < n; ++i) {
    rows(i, i) = 1;
    rows(i, n) = Rational(rng.in_range(1, bound));
  }
  return Basis<Rational>{std::move(rows)};
}

/// Basis for trial `t` of an ensemble; per-trial seeds are derived so trials
/// can run in any order.
inline Basis<Rational> gen_trial(const EnsembleSpec& spec, int trial) {
  const std::uint64_t s = derive_seed(spec.seed, static_cast<std::uint64_t>(trial));
  if (spec.family == Family::knapsack)
    return gen_knapsack(spec.n, spec.bound, s);
  return gen_uniform(spec.n, spec.m >= spec.n ? spec.m : spec.n, spec.bound, s);
}

}  // namespace latq

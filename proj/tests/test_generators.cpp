#include <doctest.h>

#include "latq/bounds.hpp"
#include "latq/generators.hpp"
#include "oracles.hpp"

using namespace latq;

TEST_CASE("gen_uniform determinism and rank") {
  const auto a = gen_uniform(3, 3, 10, 42);
  const auto b = gen_uniform(3, 3, 10, 42);
  CHECK(a.rows == b.rows);
  CHECK(a.rows != gen_uniform(3, 3, 10, 43).rows);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_uniform(4, 4, 100, seed);
    CHECK(det_exact(gram(g)) != 0);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j) {
        CHECK(g.rows(i, j) <= 100);
        CHECK(g.rows(i, j) >= -100);
        CHECK(g.rows(i, j).get_den() == 1);
      }
  }
}

TEST_CASE("gen_uniform 1x1 resamples past zero") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = gen_uniform(1, 1, 1, seed);
    CHECK(abs_val(g.rows(0, 0)) == 1);
  }
}

TEST_CASE("gen_uniform argument checking") {
  CHECK_THROWS_AS(gen_uniform(3, 2, 10, 1), DomainError);  // m < n
  CHECK_THROWS_AS(gen_uniform(2, 2, 0, 1), GenerationFailed);  // all-zero draws
}

TEST_CASE("gen_knapsack shape and volume identity") {
  const auto forced = gen_knapsack(2, 1, 7);
  RationalMatrix expect(2, 3);
  expect << Rational(1), Rational(0), Rational(1), Rational(0), Rational(1),
      Rational(1);
  CHECK(forced.rows == expect);

  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 6);
    const auto g = gen_knapsack(n, 1000, seed);
    CHECK(g.n() == n);
    CHECK(g.m() == n + 1);
    Rational expect_vol(1);
    for (Index i = 0; i < n; ++i) expect_vol += g.rows(i, n) * g.rows(i, n);
    CHECK(volume_sq(g) == expect_vol);  // det(I + aa^T) = 1 + ||a||^2
    CHECK(gen_knapsack(n, 1000, seed).rows == g.rows);
  }
  CHECK_THROWS_AS(gen_knapsack(1, 10, 1), DomainError);
}

TEST_CASE("per-trial streams are independent and reproducible") {
  EnsembleSpec spec;
  spec.n = 3;
  spec.m = 3;
  spec.bound = 20;
  spec.seed = 99;
  const auto t0 = gen_trial(spec, 0);
  const auto t1 = gen_trial(spec, 1);
  CHECK(t0.rows != t1.rows);
  CHECK(gen_trial(spec, 0).rows == t0.rows);
}

TEST_CASE("generated bases pass the measure and bound suites") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto g = seed % 2 ? gen_uniform(4, 5, 50, seed)
                            : Basis<Rational>(gen_knapsack(4, 50, seed));
    const auto r = metric_report(g);
    CHECK(r.s_dual == r.s_trace);
    CHECK(r.max_route_discrepancy <= 1e-9);
    for (const auto& v : check_all_bounds(g)) {
      CAPTURE(v.name);
      CHECK(v.satisfied);
    }
  }
}

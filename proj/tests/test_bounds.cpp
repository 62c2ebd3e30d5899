#include <doctest.h>

#include "latq/bounds.hpp"
#include "latq/generators.hpp"
#include "latq/reduction.hpp"
#include "oracles.hpp"

using namespace latq;

namespace {

Basis<Rational> fixture_basis() {
  return make_basis(test::matrix_2x2(1, 0, 1, 1));
}

}  // namespace

TEST_CASE("zhang sandwich") {
  const auto id = make_basis(RationalMatrix::Identity(3, 3));
  auto [lo, hi] = check_zhang_sandwich(id);
  CHECK(lo.satisfied);
  CHECK(hi.satisfied);
  CHECK(lo.margin == 0);  // S = n
  CHECK(hi.margin == 0);  // od = 0

  auto [flo, fhi] = check_zhang_sandwich(fixture_basis());
  CHECK(flo.satisfied);
  CHECK(fhi.satisfied);
  CHECK(fhi.lhs == "4");
  CHECK(fhi.rhs == "4");  // upper bound tight: 2/(1 - 1/2)
  CHECK(fhi.margin == 0);
}

TEST_CASE("n = 2 upper bound is an identity: S * (1 - od) = 2") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto b = test::random_basis(2, 2, 50, seed);
    const Rational prod =
        seysen_dual(b) * (Rational(1) - orthogonality_defect(b));
    CHECK(prod == 2);
  }
}

TEST_CASE("zhang orthogonality-defect bound") {
  const auto vid = check_zhang_od(make_basis(RationalMatrix::Identity(4, 4)));
  CHECK(vid.satisfied);
  CHECK(vid.lhs == "0");
  CHECK(vid.rhs == "0");

  const auto v = check_zhang_od(fixture_basis());
  CHECK(v.satisfied);
  CHECK(v.lhs == "1/2");
  CHECK(v.rhs == "2/3");  // 1 - 1/(S-n+1)^(n-1) = 1 - 1/3
}

TEST_CASE("zhang product bound and min-vector bound") {
  const auto id = make_basis(RationalMatrix::Identity(5, 5));
  CHECK(check_product_bound_zhang(id).margin == 0);
  CHECK(check_min_bound(id).margin == 0);

  // (S-n+1)^(n-1) * Vol^2 = 3^1 * 1; consistent with the min-vector example
  const auto p = check_product_bound_zhang(fixture_basis());
  CHECK(p.satisfied);
  CHECK(p.lhs == "2");
  CHECK(p.rhs == "3");

  const auto mv = check_min_bound(fixture_basis());
  CHECK(mv.satisfied);
  CHECK(mv.lhs == "1");
  CHECK(mv.rhs == "3");
}

TEST_CASE("AM-GM product bound") {
  CHECK(check_amgm_product(make_basis(RationalMatrix::Identity(3, 3))).margin ==
        0);
  const auto v = check_amgm_product(fixture_basis());
  CHECK(v.satisfied);
  CHECK(v.lhs == "2");
  CHECK(v.rhs == "4");  // (S/n)^n * Vol^2 = 2^2
}

TEST_CASE("new product bound") {
  const auto v = check_new_product_bound(fixture_basis());
  CHECK(v.satisfied);
  CHECK(std::stod(v.lhs) == 2.0);
  CHECK(std::stod(v.rhs) ==
        doctest::Approx(kEUpperBound * 2.5).epsilon(1e-15));  // ~6.796

  // satisfied but far from tight at S = n
  const auto vid =
      check_new_product_bound(make_basis(RationalMatrix::Identity(6, 6)));
  CHECK(vid.satisfied);
  CHECK(vid.margin > 1.0);
}

TEST_CASE("new orthogonality-defect bound") {
  const auto v = check_new_od_bound(fixture_basis());
  CHECK(v.satisfied);
  CHECK(std::stod(v.rhs) ==
        doctest::Approx(1.0 - 0.4 / kEUpperBound).epsilon(1e-15));  // ~0.8528
  CHECK(
      check_new_od_bound(make_basis(RationalMatrix::Identity(7, 7))).satisfied);
}

TEST_CASE("every theorem bound holds on generated ensembles") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 5);
    const auto b = seed % 3 ? test::random_basis(n, n, 40, 1234 + seed)
                            : gen_knapsack(n + 1, 500, seed);
    for (const auto& v : check_all_bounds(b)) {
      CAPTURE(v.name);
      CHECK(v.satisfied);
    }
  }
}

TEST_CASE("means_of computes the three Pythagorean means") {
  const auto t = means_of({1.0, 2.0, 4.0});
  CHECK(t.a == doctest::Approx(7.0 / 3));
  CHECK(t.g == doctest::Approx(2.0));
  CHECK(t.h == doctest::Approx(12.0 / 7));
  CHECK(t.alpha == doctest::Approx(1.0 / 3));
  CHECK(t.h <= t.g);
  CHECK(t.g <= t.a);
  CHECK_THROWS_AS(means_of({1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(means_of({1.0}), DomainError);
}

TEST_CASE("hga_upper closed-form cases") {
  // constant tuple: bound collapses to the common value
  MeanTriple flat{3.5, 3.5, 3.5, 0.25};
  CHECK(hga_upper(flat) == doctest::Approx(3.5).epsilon(1e-15));

  // alpha = 1/2 collapses to sqrt(a*h); tuple (1,4) has g = 2 exactly
  const auto two = means_of({1.0, 4.0});
  CHECK(two.a == doctest::Approx(2.5));
  CHECK(two.h == doctest::Approx(1.6));
  CHECK(hga_upper(two) == doctest::Approx(2.0).epsilon(1e-12));

  const auto three = means_of({1.0, 2.0, 4.0});
  const double up = hga_upper(three);
  CHECK(up >= three.g);
  CHECK(up <= three.a);

  CHECK_THROWS_AS(hga_upper(MeanTriple{1.0, 1.2, 1.5, 0.5}), DomainError);
  CHECK_THROWS_AS(hga_upper(MeanTriple{2.0, 1.5, 1.0, 0.9}), DomainError);
  CHECK_THROWS_AS(hga_upper(MeanTriple{2.0, 1.5, 1.0, 0.0}), DomainError);
}

TEST_CASE("hga chain h <= g <= hga_upper on random tuples") {
  Xoshiro256pp rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(9));
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) {
      const double exponent = -3.0 + 6.0 * (rng.next() >> 11) * 0x1.0p-53;
      xs.push_back(std::pow(10.0, exponent));
    }
    const auto t = means_of(xs);
    const double upper = hga_upper(t);
    CHECK(t.h <= t.g * (1 + 1e-9));
    CHECK(t.g <= upper * (1 + 1e-9));
    if (n == 2)
      CHECK(upper == doctest::Approx(std::sqrt(t.a * t.h)).epsilon(1e-12));
  }
}

TEST_CASE("seysen existence bound") {
  CHECK(seysen_existence_bound(1) == 1.0);
  // n = 2: algebraically 2^6 * exp(ln(2)^2)
  const double expect = 64.0 * std::exp(std::log(2.0) * std::log(2.0));
  CHECK(seysen_existence_bound(2) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(seysen_existence_bound(2) == doctest::Approx(103.48).epsilon(1e-3));
  double prev = 0;
  for (Index n = 1; n <= 16; ++n) {
    const double v = seysen_existence_bound(n);
    CHECK(std::isfinite(v));
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(seysen_existence_bound(0), DomainError);
}

TEST_CASE("reduced-basis min-vector bounds") {
  const auto id = make_basis(RationalMatrix::Identity(5, 5));
  CHECK(check_reduced_min_bound(id, ReducedKind::kz_minkowski).satisfied);
  CHECK(check_reduced_min_bound(id, ReducedKind::lll, 0.75).satisfied);

  const auto red = lll_reduce(make_basis(test::matrix_2x2(1, 0, 10, 1)), 0.75);
  CHECK(check_reduced_min_bound(red.basis, ReducedKind::lll, 0.75).satisfied);

  // delta -> 1 recovers the classical (4/3)^((n-1)/4) constant
  const auto v1 = check_reduced_min_bound(id, ReducedKind::lll, 1.0);
  CHECK(std::stod(v1.rhs) ==
        doctest::Approx(std::pow(4.0 / 3.0, 4.0 / 4.0)).epsilon(1e-12));

  CHECK_THROWS_AS(check_reduced_min_bound(id, ReducedKind::lll, 0.25),
                  DomainError);
}

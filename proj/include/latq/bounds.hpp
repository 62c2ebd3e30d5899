#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "latq/measures.hpp"

namespace latq {

/// e rounded up in the last printed digit, so float comparisons against
/// e-scaled right-hand sides can never report a false violation.
inline constexpr double kEUpperBound = 2.718281828459046;

/// One inequality check. lhs/rhs are canonical "p/q" text when the comparison
/// was exact, 17-digit floats otherwise; lhs_value/rhs_value hold the same
/// quantities as doubles for downstream numeric use.
struct BoundVerdict {
  std::string name;
  std::string lhs;
  std::string rhs;
  double lhs_value = 0;
  double rhs_value = 0;
  bool exact = false;
  bool satisfied = false;
  double margin = 0;  // rhs - lhs
};

namespace detail {

inline BoundVerdict verdict_exact(std::string name, const Rational& lhs,
                                  const Rational& rhs) {
  BoundVerdict v;
  v.name = std::move(name);
  v.lhs = format_scalar(lhs);
  v.rhs = format_scalar(rhs);
  v.lhs_value = to_double(lhs);
  v.rhs_value = to_double(rhs);
  v.exact = true;
  v.satisfied = lhs <= rhs;
  v.margin = to_double(Rational(rhs - lhs));
  return v;
}

/// Float comparison; the right-hand side is bumped one ulp up first.
inline BoundVerdict verdict_float(std::string name, double lhs, double rhs,
                                  double tol = 0) {
  BoundVerdict v;
  v.name = std::move(name);
  v.lhs = format_scalar(lhs);
  v.rhs = format_scalar(rhs);
  v.lhs_value = lhs;
  v.rhs_value = rhs;
  v.exact = false;
  const double slack = tol * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  v.satisfied =
      lhs <= std::nextafter(rhs, std::numeric_limits<double>::infinity()) + slack;
  v.margin = rhs - lhs;
  return v;
}

template <class Scalar>
BoundVerdict verdict(std::string name, const Scalar& lhs, const Scalar& rhs,
                     double tol) {
  if constexpr (is_exact_v<Scalar>)
    return verdict_exact(std::move(name), lhs, rhs);
  else
    return verdict_float(std::move(name), lhs, rhs, tol);
}

template <class Scalar>
Scalar norm_sq_product(const MatrixX<Scalar>& g) {
  Scalar p(1);
  for (Index i = 0; i < g.rows(); ++i) p *= g(i, i);
  return p;
}

}  // namespace detail

/// n <= S(B) <= n / (1 - od(B)).
template <class Scalar>
std::pair<BoundVerdict, BoundVerdict> check_zhang_sandwich(
    const Basis<Scalar>& b, double tol = kDefaultTol) {
  const Scalar s = seysen_trace_form(b);
  const Scalar od = orthogonality_defect(b);
  const Scalar n(static_cast<long>(b.n()));
  return {detail::verdict<Scalar>("zhang_lower", n, s, tol),
          detail::verdict<Scalar>("zhang_upper", s, n / (Scalar(1) - od), tol)};
}

/// od(B) <= 1 - 1/(S - n + 1)^(n-1).
template <class Scalar>
BoundVerdict check_zhang_od(const Basis<Scalar>& b, double tol = kDefaultTol) {
  const Scalar s = seysen_trace_form(b);
  const Scalar od = orthogonality_defect(b);
  const Scalar base = s - Scalar(static_cast<long>(b.n())) + Scalar(1);
  const Scalar rhs =
      Scalar(1) - Scalar(1) / pow_int(base, static_cast<unsigned long>(b.n() - 1));
  return detail::verdict<Scalar>("zhang_od", od, rhs, tol);
}

/// prod ||b_i||^2 <= (S - n + 1)^(n-1) * Vol^2  (squared form of the product
/// display that follows the defect bound).
template <class Scalar>
BoundVerdict check_product_bound_zhang(const Basis<Scalar>& b,
                                       double tol = kDefaultTol) {
  const Scalar s = seysen_trace_form(b);
  const Scalar base = s - Scalar(static_cast<long>(b.n())) + Scalar(1);
  const Scalar rhs =
      pow_int(base, static_cast<unsigned long>(b.n() - 1)) * volume_sq(b);
  return detail::verdict<Scalar>(
      "zhang_product", detail::norm_sq_product(gram(b)), rhs, tol);
}

/// (min_i ||b_i||^2)^n <= (S - n + 1)^(n-1) * Vol^2  (2n-th power form).
template <class Scalar>
BoundVerdict check_min_bound(const Basis<Scalar>& b, double tol = kDefaultTol) {
  const MatrixX<Scalar> g = gram(b);
  Scalar min_sq = g(0, 0);
  for (Index i = 1; i < b.n(); ++i)
    if (g(i, i) < min_sq) min_sq = g(i, i);
  const Scalar s = seysen_trace_form(b);
  const Scalar base = s - Scalar(static_cast<long>(b.n())) + Scalar(1);
  const Scalar lhs = pow_int(min_sq, static_cast<unsigned long>(b.n()));
  const Scalar rhs =
      pow_int(base, static_cast<unsigned long>(b.n() - 1)) * volume_sq(b);
  return detail::verdict<Scalar>("min_vector", lhs, rhs, tol);
}

/// prod ||b_i||^2 <= (S/n)^n * Vol^2  (arithmetic-geometric mean route).
template <class Scalar>
BoundVerdict check_amgm_product(const Basis<Scalar>& b,
                                double tol = kDefaultTol) {
  const Scalar s = seysen_trace_form(b);
  const Scalar ratio = s / Scalar(static_cast<long>(b.n()));
  const Scalar rhs =
      pow_int(ratio, static_cast<unsigned long>(b.n())) * volume_sq(b);
  return detail::verdict<Scalar>(
      "amgm_product", detail::norm_sq_product(gram(b)), rhs, tol);
}

/// prod ||b_i||^2 <= e * ((S+1)/n)^(n-1) * Vol^2. The factor e forces a float
/// comparison; everything else is assembled exactly first.
template <class Scalar>
BoundVerdict check_new_product_bound(const Basis<Scalar>& b,
                                     double /*tol*/ = kDefaultTol) {
  const Scalar s = seysen_trace_form(b);
  const Scalar ratio = (s + Scalar(1)) / Scalar(static_cast<long>(b.n()));
  const Scalar scaled =
      pow_int(ratio, static_cast<unsigned long>(b.n() - 1)) * volume_sq(b);
  const double lhs = to_double(detail::norm_sq_product(gram(b)));
  const double rhs = kEUpperBound * to_double(scaled);
  return detail::verdict_float("new_product", lhs, rhs);
}

/// od(B) <= 1 - (1/e) (n/(S+1))^(n-1).
template <class Scalar>
BoundVerdict check_new_od_bound(const Basis<Scalar>& b,
                                double /*tol*/ = kDefaultTol) {
  const Scalar s = seysen_trace_form(b);
  const Scalar ratio = Scalar(static_cast<long>(b.n())) / (s + Scalar(1));
  const double rhs =
      1.0 - to_double(pow_int(ratio, static_cast<unsigned long>(b.n() - 1))) /
                kEUpperBound;
  return detail::verdict_float("new_od",
                               to_double(orthogonality_defect(b)), rhs);
}

/// Harmonic, geometric and arithmetic means of a positive tuple, with the
/// weight alpha = 1/n used by the sharpened mean inequality.
struct MeanTriple {
  double a = 0;
  double g = 0;
  double h = 0;
  double alpha = 0;
};

inline MeanTriple means_of(const std::vector<double>& xs) {
  if (xs.size() < 2) throw DomainError("means_of: need at least two values");
  MeanTriple t;
  double sum = 0, log_sum = 0, inv_sum = 0;
  for (double x : xs) {
    if (!(x > 0)) throw DomainError("means_of: values must be positive");
    sum += x;
    log_sum += std::log(x);
    inv_sum += 1.0 / x;
  }
  const double n = static_cast<double>(xs.size());
  t.a = sum / n;
  t.g = std::exp(log_sum / n);
  t.h = n / inv_sum;
  t.alpha = 1.0 / n;
  return t;
}

/// Closed-form upper bound on the geometric mean given a, h and alpha:
///   g <= ((a - h(1-2a') - R) / 2a')^a' * ((a + h(1-2a') + R) / 2(1-a'))^(1-a')
/// with R = sqrt((a-h)(a - h(1-2a')^2)) and a' = alpha. Collapses to
/// sqrt(a*h) at alpha = 1/2 and to h when the tuple is constant.
inline double hga_upper(const MeanTriple& t) {
  if (!(t.alpha > 0) || t.alpha > 0.5)
    throw DomainError("hga_upper: alpha must lie in (0, 1/2]");
  double a = t.a, h = t.h;
  if (h > a) {
    if (h > a * (1 + 1e-12)) throw DomainError("hga_upper: h exceeds a");
    h = a;  // rounding noise from the mean computations
  }
  const double w = 1 - 2 * t.alpha;
  const double disc = (a - h) * (a - h * w * w);
  const double root = std::sqrt(std::max(disc, 0.0));
  // (u - root)(u + root) = 4 alpha^2 a h with u = a - h*w, so the first
  // factor evaluates stably as 2*alpha*a*h / (u + root)
  const double f1 = 2 * t.alpha * a * h / (a - h * w + root);
  const double f2 = (a + h * w + root) / (2 * (1 - t.alpha));
  return std::pow(f1, t.alpha) * std::pow(f2, 1 - t.alpha);
}

/// Worst-case guarantee exp((2/ln2 + 1) ln^2 n + 4 ln n): some basis of any
/// n-dimensional lattice has S below this.
inline double seysen_existence_bound(Index n) {
  if (n < 1) throw DomainError("seysen_existence_bound: need n >= 1");
  const double ln_n = std::log(static_cast<double>(n));
  const double c = 2.0 / std::log(2.0) + 1.0;
  return std::exp(c * ln_n * ln_n + 4 * ln_n);
}

enum class ReducedKind { kz_minkowski, lll };

/// min_i ||b_i|| <= C * Vol^(1/n) with C = sqrt(n) for KZ/Minkowski reduced
/// bases and C = (1/(delta - 1/4))^((n-1)/4) for delta-LLL reduced bases
/// (the classical (4/3)^((n-1)/4) is the delta -> 1 limit).
template <class Scalar>
BoundVerdict check_reduced_min_bound(const Basis<Scalar>& b, ReducedKind kind,
                                     double delta = 0.75) {
  const double n = static_cast<double>(b.n());
  double c;
  if (kind == ReducedKind::kz_minkowski) {
    c = std::sqrt(n);
  } else {
    if (delta <= 0.25)
      throw DomainError("check_reduced_min_bound: delta must exceed 1/4");
    c = std::pow(1.0 / (delta - 0.25), (n - 1) / 4.0);
  }
  const MatrixX<Scalar> g = gram(b);
  double min_sq = to_double(g(0, 0));
  for (Index i = 1; i < b.n(); ++i)
    min_sq = std::min(min_sq, to_double(g(i, i)));
  const double lhs = std::sqrt(min_sq);
  const double rhs = c * std::pow(to_double(volume_sq(b)), 1.0 / (2 * n));
  return detail::verdict_float(
      kind == ReducedKind::kz_minkowski ? "kz_minkowski_min" : "lll_min", lhs,
      rhs);
}

/// The proved inequalities that hold for every full-rank basis, in report
/// order. (The reduced-basis min-vector checks need a reduction certificate
/// and are not part of this list.)
template <class Scalar>
std::vector<BoundVerdict> check_all_bounds(const Basis<Scalar>& b,
                                           double tol = kDefaultTol) {
  std::vector<BoundVerdict> out;
  auto [lower, upper] = check_zhang_sandwich(b, tol);
  out.push_back(std::move(lower));
  out.push_back(std::move(upper));
  out.push_back(check_zhang_od(b, tol));
  out.push_back(check_product_bound_zhang(b, tol));
  out.push_back(check_min_bound(b, tol));
  out.push_back(check_amgm_product(b, tol));
  out.push_back(check_new_product_bound(b, tol));
  out.push_back(check_new_od_bound(b, tol));
  return out;
}

}  // namespace latq

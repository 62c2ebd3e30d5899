#pragma once

#include <algorithm>
#include <cmath>

#include "latq/jacobi.hpp"
#include "latq/lattice.hpp"

namespace latq {

inline constexpr double kDefaultTol = 1e-9;

/// S(B) = sum_i ||b_i||^2 ||b*_i||^2 from the explicitly computed dual rows.
template <class Scalar>
Scalar seysen_dual(const Basis<Scalar>& b) {
  const auto dual = dual_basis(b);
  Scalar s(0);
  for (Index i = 0; i < b.n(); ++i)
    s += row_norm_sq(b.rows, i) * row_norm_sq(dual.rows, i);
  return s;
}

/// S(B) = tr(D^2 M^{-1}) = sum_i ||b_i||^2 (M^{-1})_ii, the Frobenius-norm
/// form ||V^{-1}||^2 evaluated without forming V (whose diagonal scaling is
/// irrational).
template <class Scalar>
Scalar seysen_trace_form(const Basis<Scalar>& b) {
  MatrixX<Scalar> g = gram(b);
  MatrixX<Scalar> ginv;
  try {
    ginv = inverse(g);
  } catch (const SingularMatrix&) {
    throw RankDeficient("seysen_trace_form: gram matrix singular");
  }
  Scalar s(0);
  for (Index i = 0; i < b.n(); ++i) s += g(i, i) * ginv(i, i);
  return s;
}

/// S(B) via cofactors of the gram matrix: sum_i ||b_i||^2 det(M^{i,i})/det M.
template <class Scalar>
Scalar seysen_cofactor(const Basis<Scalar>& b) {
  MatrixX<Scalar> g = gram(b);
  const Scalar det_g = determinant(g);
  if (!detail::volume_positive(det_g))
    throw RankDeficient("seysen_cofactor: det(B*B^T) = " +
                        format_scalar(det_g));
  if (b.n() == 1) return Scalar(1);
  Scalar s(0);
  for (Index i = 0; i < b.n(); ++i)
    s += g(i, i) * determinant(MatrixX<Scalar>(drop_row_col(g, i))) / det_g;
  return s;
}

/// S(B) = sum_i 1/sin^2 alpha_i.
template <class Scalar>
Scalar seysen_angles(const Basis<Scalar>& b) {
  if (b.n() == 1) return volume_sq(b) / row_norm_sq(b.rows, 0);
  Scalar s(0);
  for (Index i = 0; i < b.n(); ++i) s += Scalar(1) / sin_alpha_sq(b, i);
  return s;
}

/// Correlation matrix U = D^{-1} M D^{-1} with unit diagonal; entries are the
/// cosines of the pairwise row angles. Always a float matrix.
template <class Scalar>
RealMatrix correlation_matrix(const Basis<Scalar>& b) {
  MatrixX<Scalar> g = gram(b);
  if (!detail::volume_positive(determinant(g)))
    throw RankDeficient("correlation_matrix: rank-deficient basis");
  const Index n = b.n();
  RealMatrix gd = to_real(g);
  RealVector inv_norm(n);
  for (Index i = 0; i < n; ++i) inv_norm[i] = 1.0 / std::sqrt(gd(i, i));
  RealMatrix u(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j)
      u(i, j) = gd(i, j) * inv_norm[i] * inv_norm[j];
    u(i, i) = 1.0;
  }
  return u;
}

struct CorrelationSpectrum {
  RealVector eigenvalues;  // descending
  double seysen = 0;       // sum of inverse eigenvalues
};

/// Eigenvalues of U with one Rayleigh-quotient refinement through the exact
/// pencil (M, D^2): lambda_i(U) = (x^T M x)/(x^T D^2 x) for the generalized
/// eigenvector x = D^{-1} v. Jacobi already delivers accurate eigenvectors;
/// the exact quadratic forms remove the cancellation that otherwise caps the
/// relative accuracy of tiny eigenvalues at ||dU|| / lambda_min.
template <class Scalar>
CorrelationSpectrum correlation_spectrum(const Basis<Scalar>& b,
                                         double tol = 1e-12) {
  const auto eig = sym_eigen(correlation_matrix(b), tol);
  const Index n = b.n();
  RationalMatrix g(n, n);
  if constexpr (is_exact_v<Scalar>) {
    g = gram(b);
  } else {
    const RealMatrix gd = gram(b);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) g(i, j) = rational_from_double(gd(i, j));
  }
  RealVector scale(n);
  for (Index i = 0; i < n; ++i) scale[i] = std::sqrt(to_double(g(i, i)));

  std::vector<std::pair<double, Rational>> refined;
  refined.reserve(static_cast<std::size_t>(n));
  Rational s(0);
  for (Index k = 0; k < n; ++k) {
    std::vector<Rational> x(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
      x[static_cast<std::size_t>(i)] =
          rational_from_double(eig.vectors(i, k) / scale[i]);
    Rational num(0), den(0);
    for (Index i = 0; i < n; ++i) {
      den += g(i, i) * x[static_cast<std::size_t>(i)] *
             x[static_cast<std::size_t>(i)];
      for (Index j = 0; j < n; ++j)
        num += x[static_cast<std::size_t>(i)] *
               x[static_cast<std::size_t>(j)] * g(i, j);
    }
    // both forms are positive for any nonzero x; fall back on the raw value
    // only if the vector degenerated
    Rational rho;
    if (sign_of(num) > 0 && sign_of(den) > 0)
      rho = num / den;
    else
      rho = rational_from_double(eig.values[k]);
    s += Rational(1) / rho;
    refined.emplace_back(to_double(rho), rho);
  }
  std::sort(refined.begin(), refined.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  CorrelationSpectrum out;
  out.eigenvalues.resize(n);
  for (Index i = 0; i < n; ++i)
    out.eigenvalues[i] = refined[static_cast<std::size_t>(i)].first;
  out.seysen = to_double(s);
  return out;
}

/// S(B) = tr(U^{-1}) = sum_i 1/lambda_i over the eigenvalues of U.
/// The one intrinsically float route.
template <class Scalar>
double seysen_eigen(const Basis<Scalar>& b, double tol = 1e-12) {
  return correlation_spectrum(b, tol).seysen;
}

/// od(B) = 1 - det(B*B^T) / prod ||b_i||^2, in [0, 1).
template <class Scalar>
Scalar orthogonality_defect(const Basis<Scalar>& b) {
  MatrixX<Scalar> g = gram(b);
  const Scalar det_g = determinant(g);
  if (!detail::volume_positive(det_g))
    throw RankDeficient("orthogonality_defect: det(B*B^T) = " +
                        format_scalar(det_g));
  Scalar prod(1);
  for (Index i = 0; i < b.n(); ++i) prod *= g(i, i);
  return Scalar(1) - det_g / prod;
}

/// Squared Frobenius condition number of V = D^{-1} B: kappa(V)^2 = n * S(B).
/// The exact value comes from the trace route; a direct float evaluation of
/// ||V||^2 ||V^+||^2 must agree within tol.
template <class Scalar>
Scalar kappa_sq(const Basis<Scalar>& b, double tol = kDefaultTol) {
  const Scalar s = seysen_trace_form(b);
  const Scalar k2 = Scalar(static_cast<long>(b.n())) * s;

  RealMatrix rows = to_real(b.rows);
  for (Index i = 0; i < b.n(); ++i) rows.row(i) /= rows.row(i).norm();
  RealMatrix pinv;
  if (b.n() == b.m()) {
    pinv = inverse(RealMatrix(rows));
  } else {
    RealMatrix vvt = rows * rows.transpose();
    pinv = rows.transpose() * inverse(vvt);
  }
  const double direct =
      frobenius_sq(RealMatrix(rows)) * frobenius_sq(RealMatrix(pinv));
  const double expect = to_double(k2);
  // neither side can beat its own conditioning: the direct evaluation errs
  // like eps * kappa_2(V) <= eps * sqrt(n S), and in float mode the trace
  // route itself errs like eps * kappa(M)
  const double eps = std::numeric_limits<double>::epsilon();
  double cond = std::sqrt(std::max(expect, 1.0));
  if constexpr (!is_exact_v<Scalar>) {
    const RealMatrix g = gram(b);
    cond += std::sqrt(frobenius_sq(g) * frobenius_sq(RealMatrix(inverse(g))));
  }
  const double rel_tol = std::max(tol, 256 * eps * cond);
  if (std::fabs(direct - expect) > rel_tol * std::max(1.0, std::fabs(expect)))
    throw RouteMismatch("kappa_sq: float cross-check diverged from n*S");
  return k2;
}

template <class Scalar>
struct MetricReport {
  Index n = 0, m = 0;
  Scalar s_dual, s_trace, s_cofactor, s_angles;
  double s_eigen = 0;
  Scalar od, volume_sq, kappa_sq;
  RealVector eigenvalues;
  double max_route_discrepancy = 0;
  static constexpr const char* mode() { return Basis<Scalar>::mode(); }
};

namespace detail {

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
  return std::fabs(a - b) / scale;
}

}  // namespace detail

/// Computes every measure. In exact mode the four rational routes must agree
/// exactly (RouteMismatch otherwise, a bug trap) and max_route_discrepancy
/// measures only the eigen route.
template <class Scalar>
MetricReport<Scalar> metric_report(const Basis<Scalar>& b,
                                   double tol = kDefaultTol) {
  MetricReport<Scalar> r;
  r.n = b.n();
  r.m = b.m();
  r.s_dual = seysen_dual(b);
  r.s_trace = seysen_trace_form(b);
  r.s_cofactor = seysen_cofactor(b);
  r.s_angles = seysen_angles(b);
  const auto spectrum = correlation_spectrum(b);
  r.eigenvalues = spectrum.eigenvalues;
  r.s_eigen = spectrum.seysen;
  r.od = orthogonality_defect(b);
  r.volume_sq = latq::volume_sq(b);
  r.kappa_sq = latq::kappa_sq(b, tol);

  if constexpr (is_exact_v<Scalar>) {
    if (!(r.s_dual == r.s_trace && r.s_trace == r.s_cofactor &&
          r.s_cofactor == r.s_angles))
      throw RouteMismatch("metric_report: exact Seysen routes disagree");
    r.max_route_discrepancy = detail::rel_diff(to_double(r.s_dual), r.s_eigen);
  } else {
    const double vals[5] = {to_double(r.s_dual), to_double(r.s_trace),
                            to_double(r.s_cofactor), to_double(r.s_angles),
                            r.s_eigen};
    double worst = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        worst = std::max(worst, detail::rel_diff(vals[i], vals[j]));
    r.max_route_discrepancy = worst;
  }
  return r;
}

}  // namespace latq

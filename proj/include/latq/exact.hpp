#pragma once

#include <vector>

#include "latq/errors.hpp"
#include "latq/matrix.hpp"

namespace latq {

namespace detail {

/// Scale each row of m by the lcm of its denominators. Returns the integer
/// matrix (row-major) and the per-row multipliers.
struct ClearedRows {
  std::vector<Integer> entries;  // n*cols, row-major
  std::vector<Integer> row_mult;
  Index rows, cols;
  Integer& at(Index i, Index j) { return entries[i * cols + j]; }
  const Integer& at(Index i, Index j) const { return entries[i * cols + j]; }
};

inline ClearedRows clear_denominators(const RationalMatrix& m, Index extra_cols = 0) {
  ClearedRows out;
  out.rows = m.rows();
  out.cols = m.cols() + extra_cols;
  out.entries.assign(out.rows * out.cols, Integer(0));
  out.row_mult.assign(out.rows, Integer(1));
  for (Index i = 0; i < m.rows(); ++i) {
    Integer& d = out.row_mult[i];
    for (Index j = 0; j < m.cols(); ++j)
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(),
              mpq_denref(m(i, j).get_mpq_t()));
    for (Index j = 0; j < m.cols(); ++j) {
      Integer scale;
      mpz_divexact(scale.get_mpz_t(), d.get_mpz_t(),
                   mpq_denref(m(i, j).get_mpq_t()));
      out.at(i, j) = Integer(mpq_numref(m(i, j).get_mpq_t())) * scale;
    }
  }
  return out;
}

inline Integer exact_quotient(const Integer& num, const Integer& den) {
  Integer q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (r != 0)
    throw InvariantBroken("fraction-free elimination produced an inexact division");
  return q;
}

}  // namespace detail

/// Exact determinant by fraction-free (Bareiss) elimination. Denominators are
/// cleared row-wise first; pivots are chosen greatest in absolute value to
/// curb coefficient growth.
inline Rational det_exact(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("det_exact: matrix not square");
  const Index n = m.rows();
  if (n == 0) return Rational(1);  // empty product convention
  auto a = detail::clear_denominators(m);
  int sign = 1;
  Integer prev(1);
  for (Index k = 0; k < n; ++k) {
    Index p = -1;
    for (Index i = k; i < n; ++i)
      if (a.at(i, k) != 0 &&
          (p < 0 || mpz_cmpabs(a.at(i, k).get_mpz_t(),
                               a.at(p, k).get_mpz_t()) > 0))
        p = i;
    if (p < 0) return Rational(0);
    if (p != k) {
      for (Index j = 0; j < n; ++j) swap(a.at(p, j), a.at(k, j));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j)
        a.at(i, j) = detail::exact_quotient(
            a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j), prev);
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  Integer den(1);
  for (const Integer& d : a.row_mult) den *= d;
  Rational det(sign > 0 ? a.at(n - 1, n - 1) : Integer(-a.at(n - 1, n - 1)), den);
  det.canonicalize();
  return det;
}

/// Exact inverse by fraction-free Gauss-Jordan (Montante) elimination on the
/// denominator-cleared augmented system [A | I]. At completion the left block
/// is d*I and the right block d*A^{-1} with d the final pivot.
inline RationalMatrix inverse_exact(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse_exact: matrix not square");
  const Index n = m.rows();
  auto a = detail::clear_denominators(m, n);
  for (Index i = 0; i < n; ++i) a.at(i, n + i) = 1;
  Integer prev(1);
  for (Index k = 0; k < n; ++k) {
    Index p = -1;
    for (Index i = k; i < n; ++i)
      if (a.at(i, k) != 0 &&
          (p < 0 || mpz_cmpabs(a.at(i, k).get_mpz_t(),
                               a.at(p, k).get_mpz_t()) > 0))
        p = i;
    if (p < 0) throw SingularMatrix("inverse_exact: det = 0");
    if (p != k)
      for (Index j = 0; j < 2 * n; ++j) swap(a.at(p, j), a.at(k, j));
    for (Index i = 0; i < n; ++i) {
      if (i == k) continue;
      for (Index j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        a.at(i, j) = detail::exact_quotient(
            a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j), prev);
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  // M = diag(1/row_mult) * A, hence M^{-1} = (aug/d) * diag(row_mult).
  const Integer& d = a.at(n - 1, n - 1);
  RationalMatrix inv(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Rational v(a.at(i, n + j) * a.row_mult[j], d);
      v.canonicalize();
      inv(i, j) = v;
    }
  return inv;
}

template <class Scalar>
Scalar frobenius_sq(const MatrixX<Scalar>& m) {
  Scalar acc(0);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) acc += m(i, j) * m(i, j);
  return acc;
}

/// Determinant in the scalar's own arithmetic: exact elimination for
/// rationals, LU for floats.
inline Rational determinant(const RationalMatrix& m) { return det_exact(m); }
inline double determinant(const RealMatrix& m) { return m.determinant(); }

inline RationalMatrix inverse(const RationalMatrix& m) { return inverse_exact(m); }
inline RealMatrix inverse(const RealMatrix& m) {
  Eigen::PartialPivLU<RealMatrix> lu(m);
  return lu.inverse();
}

}  // namespace latq

#pragma once

#include <Eigen/Dense>

#include "latq/rational.hpp"

namespace latq {

using Index = Eigen::Index;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RationalMatrix = MatrixX<Rational>;
using RealMatrix = MatrixX<double>;
using RealVector = Eigen::VectorXd;

inline RealMatrix to_real(const RationalMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}
inline RealMatrix to_real(const RealMatrix& m) { return m; }

template <class Scalar>
Scalar row_dot(const MatrixX<Scalar>& m, Index i, Index j) {
  Scalar acc(0);
  for (Index k = 0; k < m.cols(); ++k) acc += m(i, k) * m(j, k);
  return acc;
}

template <class Scalar>
Scalar row_norm_sq(const MatrixX<Scalar>& m, Index i) {
  return row_dot(m, i, i);
}

/// Copy of m with row i removed.
template <class Scalar>
MatrixX<Scalar> drop_row(const MatrixX<Scalar>& m, Index i) {
  MatrixX<Scalar> out(m.rows() - 1, m.cols());
  out.topRows(i) = m.topRows(i);
  out.bottomRows(m.rows() - 1 - i) = m.bottomRows(m.rows() - 1 - i);
  return out;
}

/// Copy of m with row i and column i removed.
template <class Scalar>
MatrixX<Scalar> drop_row_col(const MatrixX<Scalar>& m, Index i) {
  const Index n = m.rows();
  MatrixX<Scalar> out(n - 1, n - 1);
  for (Index r = 0, ro = 0; r < n; ++r) {
    if (r == i) continue;
    for (Index c = 0, co = 0; c < n; ++c) {
      if (c == i) continue;
      out(ro, co++) = m(r, c);
    }
    ++ro;
  }
  return out;
}

}  // namespace latq

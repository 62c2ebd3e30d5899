#pragma once

#include <utility>
#include <vector>

#include "latq/errors.hpp"
#include "latq/exact.hpp"
#include "latq/rng.hpp"

namespace latq {

inline constexpr double kFloatRankTol = 1e-12;

/// Lattice basis: the n rows span the lattice, n <= m, full row rank.
/// Scalar selects the arithmetic mode (Rational = exact, double = float).
template <class Scalar>
struct Basis {
  MatrixX<Scalar> rows;
  Index n() const { return rows.rows(); }
  Index m() const { return rows.cols(); }
  static constexpr const char* mode() {
    return is_exact_v<Scalar> ? "exact" : "float";
  }
};

template <class Scalar>
MatrixX<Scalar> gram(const Basis<Scalar>& b) {
  const Index n = b.n();
  MatrixX<Scalar> g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j <= i; ++j) {
      Scalar d = row_dot(b.rows, i, j);
      g(i, j) = d;
      g(j, i) = d;
    }
  }
  return g;
}

namespace detail {

template <class Scalar>
Scalar gram_det(const MatrixX<Scalar>& rows) {
  const Index n = rows.rows();
  MatrixX<Scalar> g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j <= i; ++j) g(i, j) = g(j, i) = row_dot(rows, i, j);
  return determinant(g);
}

template <class Scalar>
bool volume_positive(const Scalar& det_g) {
  if constexpr (is_exact_v<Scalar>)
    return sign_of(det_g) > 0;
  else
    return det_g >= kFloatRankTol;
}

}  // namespace detail

/// Checked constructor; throws RankDeficient with the exact zero determinant
/// as certificate when the rows are dependent. Accepts any Eigen expression.
template <class Derived>
Basis<typename Derived::Scalar> make_basis(
    const Eigen::MatrixBase<Derived>& expr) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> rows = expr;
  if (rows.rows() < 1 || rows.cols() < 1)
    throw DomainError("basis must have at least one row and column");
  const Scalar d = detail::gram_det(rows);
  if (!detail::volume_positive(d))
    throw RankDeficient("rank-deficient basis: det(B*B^T) = " +
                        format_scalar(d));
  return Basis<Scalar>{std::move(rows)};
}

/// Squared lattice volume det(B*B^T); kept squared so exact mode never takes
/// roots.
template <class Scalar>
Scalar volume_sq(const Basis<Scalar>& b) {
  const Scalar d = detail::gram_det(b.rows);
  if (!detail::volume_positive(d))
    throw RankDeficient("volume_sq: det(B*B^T) = " + format_scalar(d));
  return d;
}

inline double volume_approx(const Basis<Rational>& b) {
  return std::sqrt(to_double(volume_sq(b)));
}
inline double volume_approx(const Basis<double>& b) {
  return std::sqrt(volume_sq(b));
}

/// Reciprocal rows b*_i with <b_i, b*_j> = delta_ij, via the full-row-rank
/// pseudo-inverse formula B* = (B B^T)^{-1} B.
template <class Scalar>
struct DualBasis {
  MatrixX<Scalar> rows;
  Basis<Scalar> source;
};

template <class Scalar>
DualBasis<Scalar> dual_basis(const Basis<Scalar>& b) {
  MatrixX<Scalar> g = gram(b);
  MatrixX<Scalar> ginv;
  try {
    ginv = inverse(g);
  } catch (const SingularMatrix&) {
    throw RankDeficient("dual_basis: gram matrix singular");
  }
  DualBasis<Scalar> d{ginv * b.rows, b};
  if constexpr (is_exact_v<Scalar>) {
    // duality must hold exactly; anything else is a bug
    for (Index i = 0; i < b.n(); ++i)
      for (Index j = 0; j < b.n(); ++j) {
        Scalar v(0);
        for (Index k = 0; k < b.m(); ++k) v += b.rows(i, k) * d.rows(j, k);
        if (v != Scalar(i == j ? 1 : 0))
          throw InvariantBroken("dual_basis: B * B*^T != I");
      }
  }
  return d;
}

/// det of the gram of B with row i deleted, i.e. (Vol L_i)^2.
template <class Scalar>
Scalar sublattice_volume_sq(const Basis<Scalar>& b, Index i) {
  if (b.n() < 2) throw DomainError("sublattice_volume_sq: need n >= 2");
  const Scalar d = detail::gram_det(MatrixX<Scalar>(drop_row(b.rows, i)));
  if (!detail::volume_positive(d))
    throw RankDeficient("sublattice_volume_sq: degenerate sublattice");
  return d;
}

/// sin^2 of the angle between b_i and the span of the other rows:
/// Vol^2 L / (||b_i||^2 * Vol^2 L_i). Exact rational in exact mode.
template <class Scalar>
Scalar sin_alpha_sq(const Basis<Scalar>& b, Index i) {
  return volume_sq(b) / (row_norm_sq(b.rows, i) * sublattice_volume_sq(b, i));
}

/// Per-row angle data. cos^2 beta_i is computed through the dual route
/// <b_i,b*_i>^2 / (||b_i||^2 ||b*_i||^2) and equals sin^2 alpha_i.
template <class Scalar>
struct AngleProfile {
  std::vector<Scalar> sin2_alpha;
  std::vector<Scalar> cos2_beta;
};

template <class Scalar>
AngleProfile<Scalar> angle_profile(const Basis<Scalar>& b) {
  AngleProfile<Scalar> p;
  const auto dual = dual_basis(b);
  for (Index i = 0; i < b.n(); ++i) {
    p.sin2_alpha.push_back(sin_alpha_sq(b, i));
    p.cos2_beta.push_back(Scalar(1) / (row_norm_sq(b.rows, i) *
                                       row_norm_sq(dual.rows, i)));
  }
  return p;
}

/// Appends k zero columns, then applies a seeded random signed column
/// permutation: an exact isometry of R^{m+k}, so the gram matrix is
/// preserved entry for entry.
template <class Scalar>
Basis<Scalar> embed_isometric(const Basis<Scalar>& b, Index k,
                              std::uint64_t seed) {
  const Index m2 = b.m() + k;
  Xoshiro256pp rng(seed);
  std::vector<Index> perm(m2);
  for (Index j = 0; j < m2; ++j) perm[j] = j;
  for (Index j = m2 - 1; j > 0; --j)
    std::swap(perm[j], perm[rng.below(static_cast<std::uint64_t>(j) + 1)]);

  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(b.n(), m2);
  for (Index j = 0; j < m2; ++j) {
    const Scalar sign = rng.coin() ? Scalar(-1) : Scalar(1);
    if (perm[j] < b.m())
      for (Index i = 0; i < b.n(); ++i) out(i, j) = sign * b.rows(i, perm[j]);
  }
  return Basis<Scalar>{std::move(out)};
}

}  // namespace latq

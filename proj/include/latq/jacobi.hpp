#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "latq/errors.hpp"
#include "latq/matrix.hpp"

namespace latq {

struct SymmetricEigen {
  RealVector values;   // descending
  RealMatrix vectors;  // column i pairs with values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for symmetric matrices with the relative
/// rotation threshold |a_pq| > tol * sqrt(|a_pp * a_qq|), which preserves the
/// high relative accuracy of small eigenvalues on positive definite input;
/// converged when a full sweep rotates nothing.
inline SymmetricEigen sym_eigen(const RealMatrix& s, double tol = 1e-12,
                                int sweep_cap = 100) {
  const Index n = s.rows();
  if (s.cols() != n) throw DomainError("sym_eigen: matrix not square");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (std::fabs(s(i, j) - s(j, i)) > tol * scale)
        throw NotSymmetric("sym_eigen: input not symmetric within tol");

  RealMatrix a = (s + s.transpose()) / 2.0;
  RealMatrix v = RealMatrix::Identity(n, n);

  int sweep = 0;
  for (bool converged = n < 2; !converged;) {
    if (++sweep > sweep_cap)
      throw NoConvergence("sym_eigen: sweep cap reached");
    converged = true;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double threshold =
            tol * std::sqrt(std::fabs(a(p, p) * a(q, q)));
        if (std::fabs(a(p, q)) <= threshold) continue;
        converged = false;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        double t = 1.0 / (std::fabs(theta) + std::sqrt(1 + theta * theta));
        if (theta < 0) t = -t;
        const double c = 1.0 / std::sqrt(1 + t * t);
        const double sn = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;  // rotation zeroes the pair exactly
        for (Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index(0));
  std::sort(order.begin(), order.end(),
            [&](Index x, Index y) { return a(x, x) > a(y, y); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    out.vectors.col(i) = v.col(order[i]);
  }
  out.sweeps = sweep;
  return out;
}

/// Just the eigenvalues, descending.
inline RealVector sym_eigenvalues(const RealMatrix& s, double tol = 1e-12,
                                  int sweep_cap = 100) {
  return sym_eigen(s, tol, sweep_cap).values;
}

}  // namespace latq

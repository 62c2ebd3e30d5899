#pragma once

#include <utility>
#include <vector>

#include "latq/lattice.hpp"
#include "latq/measures.hpp"

namespace latq {

enum class PairOrder { row_major, best_first };

struct ReductionConfig {
  int max_sweeps = 1000;
  double tol = 1e-12;  // float mode: required relative decrease per step
  PairOrder pair_order = PairOrder::row_major;
};

/// One applied pair operation b_i <- b_i + lambda * b_j.
template <class Scalar>
struct Step {
  Index i = 0, j = 0;
  Scalar lambda{};
  Scalar delta_s{};
};

/// Mutable state of one reduction run. basis = transform * original input at
/// every point, and basis * dual^T = I after every step (exactly in exact
/// mode; within the accumulated rounding envelope in float mode).
template <class Scalar>
struct ReductionState {
  MatrixX<Scalar> basis;
  MatrixX<Scalar> dual;
  MatrixX<Scalar> transform;  // integer entries, |det| = 1
  Scalar s_current;
  std::vector<Step<Scalar>> trace;
  double tol = 1e-12;
  // float mode: forward-error envelopes per basis / dual row (2-norm of the
  // accumulated rounding each row may carry); empty in exact mode
  std::vector<double> basis_err;
  std::vector<double> dual_err;
};

namespace detail {

template <class Scalar>
double row_norm(const MatrixX<Scalar>& m, Index i) {
  return std::sqrt(to_double(row_norm_sq(m, i)));
}

}  // namespace detail

template <class Scalar>
ReductionState<Scalar> make_reduction_state(const Basis<Scalar>& b,
                                            double tol = 1e-12) {
  ReductionState<Scalar> st;
  st.basis = b.rows;
  st.dual = dual_basis(b).rows;
  st.transform = MatrixX<Scalar>::Identity(b.n(), b.n());
  Scalar s(0);
  for (Index i = 0; i < b.n(); ++i)
    s += row_norm_sq(st.basis, i) * row_norm_sq(st.dual, i);
  st.s_current = s;
  st.tol = tol;
  if constexpr (!is_exact_v<Scalar>) {
    // seed the dual envelopes from the measured duality residuals, lifted by
    // ||B^+|| = ||B*|| since b*_c - (true dual) = B^+ (B b*_c - e_c)
    const double eps = std::numeric_limits<double>::epsilon();
    const Index n = b.n();
    st.basis_err.assign(static_cast<std::size_t>(n), 0.0);
    st.dual_err.assign(static_cast<std::size_t>(n), 0.0);
    const double pinv_norm = std::sqrt(to_double(frobenius_sq(st.dual)));
    for (Index c = 0; c < n; ++c) {
      double resid_sq = 0;
      for (Index r = 0; r < n; ++r) {
        Scalar dot(0);
        for (Index k = 0; k < b.m(); ++k) dot += st.basis(r, k) * st.dual(c, k);
        const double resid = to_double(dot) - (r == c ? 1.0 : 0.0);
        resid_sq += resid * resid;
      }
      st.dual_err[static_cast<std::size_t>(c)] =
          2 * std::sqrt(resid_sq) * pinv_norm +
          eps * static_cast<double>(b.m()) * detail::row_norm(st.dual, c);
    }
  }
  return st;
}

/// Change in S for b_i <- b_i + lambda*b_j, b*_j <- b*_j - lambda*b*_i:
///   dS = ||b*_i||^2 (2 lambda <b_i,b_j> + lambda^2 ||b_j||^2)
///      + ||b_j||^2 (-2 lambda <b*_i,b*_j> + lambda^2 ||b*_i||^2)
template <class Scalar>
Scalar pair_delta_s(const ReductionState<Scalar>& st, Index i, Index j,
                    const Scalar& lambda) {
  const Scalar basis_ij = row_dot(st.basis, i, j);
  const Scalar basis_jj = row_norm_sq(st.basis, j);
  const Scalar dual_ii = row_norm_sq(st.dual, i);
  const Scalar dual_ij = row_dot(st.dual, i, j);
  return dual_ii * (Scalar(2) * lambda * basis_ij + lambda * lambda * basis_jj) +
         basis_jj * (Scalar(-2) * lambda * dual_ij + lambda * lambda * dual_ii);
}

/// Integer lambda minimizing S for the pair (i, j), with the halfway tie
/// rounded toward zero so an indifferent pair is a no-op. Returns the step
/// (unapplied); lambda = 0 carries delta_s = 0.
template <class Scalar>
Step<Scalar> optimal_pair_step(const ReductionState<Scalar>& st, Index i,
                               Index j) {
  if (i == j) throw DomainError("optimal_pair_step: indices must differ");
  const Scalar dual_cross = row_dot(st.dual, i, j);
  const Scalar dual_ii = row_norm_sq(st.dual, i);
  const Scalar basis_cross = row_dot(st.basis, i, j);
  const Scalar basis_jj = row_norm_sq(st.basis, j);
  const Scalar minimizer =
      (dual_cross / dual_ii - basis_cross / basis_jj) / Scalar(2);
  const Scalar lambda = round_half_toward_zero(minimizer);
  Step<Scalar> step{i, j, lambda, Scalar(0)};
  if (lambda != Scalar(0)) step.delta_s = pair_delta_s(st, i, j, lambda);
  return step;
}

/// Applies b_i += lambda*b_j with the dual compensation b*_j -= lambda*b*_i,
/// updates the accumulated transform and S, and re-checks duality.
template <class Scalar>
void apply_step(ReductionState<Scalar>& st, Index i, Index j,
                const Scalar& lambda) {
  if (i == j) throw DomainError("apply_step: indices must differ");
  const Scalar delta = pair_delta_s(st, i, j, lambda);
  st.basis.row(i) += lambda * st.basis.row(j);
  st.dual.row(j) -= lambda * st.dual.row(i);
  st.transform.row(i) += lambda * st.transform.row(j);
  st.s_current += delta;
  st.trace.push_back(Step<Scalar>{i, j, lambda, delta});

  const Index n = st.basis.rows();
  if constexpr (is_exact_v<Scalar>) {
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) {
        Scalar dot(0);
        for (Index k = 0; k < st.basis.cols(); ++k)
          dot += st.basis(r, k) * st.dual(c, k);
        if (dot != Scalar(r == c ? 1 : 0))
          throw InvariantBroken("apply_step: duality lost");
      }
  } else {
    // propagate the forward-error envelopes: errors in a source row enter the
    // target scaled by |lambda|, plus fresh rounding at the new magnitudes
    const double eps = std::numeric_limits<double>::epsilon();
    const double al = std::fabs(to_double(lambda));
    const double m = static_cast<double>(st.basis.cols());
    auto& eb = st.basis_err;
    auto& ed = st.dual_err;
    eb[static_cast<std::size_t>(i)] +=
        al * eb[static_cast<std::size_t>(j)] +
        eps * m *
            (detail::row_norm(st.basis, i) + al * detail::row_norm(st.basis, j));
    ed[static_cast<std::size_t>(j)] +=
        al * ed[static_cast<std::size_t>(i)] +
        eps * m *
            (detail::row_norm(st.dual, j) + al * detail::row_norm(st.dual, i));
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) {
        Scalar dot(0);
        for (Index k = 0; k < st.basis.cols(); ++k)
          dot += st.basis(r, k) * st.dual(c, k);
        const double nb = detail::row_norm(st.basis, r);
        const double nd = detail::row_norm(st.dual, c);
        const double err_b = eb[static_cast<std::size_t>(r)];
        const double err_d = ed[static_cast<std::size_t>(c)];
        const double allow = (nb + err_b) * err_d + err_b * (nd + err_d) +
                             eps * m * nb * nd;
        if (std::fabs(to_double(dot) - (r == c ? 1.0 : 0.0)) >
            16 * allow + 1e-12)
          throw InvariantBroken("apply_step: duality drifted");
      }
  }
}

template <class Scalar>
struct ReductionResult {
  Basis<Scalar> basis;
  MatrixX<Scalar> transform;
  std::vector<Step<Scalar>> steps;
  int sweeps = 0;
  bool hit_sweep_limit = false;
  Scalar s_initial;
  Scalar s_final;
};

namespace detail {

template <class Scalar>
bool improves(const ReductionState<Scalar>& st, const Scalar& delta_s) {
  if constexpr (is_exact_v<Scalar>)
    return delta_s < Scalar(0);
  else
    return delta_s <= -st.tol * st.s_current;
}

}  // namespace detail

/// Greedy descent on S over ordered pairs. Stops at a pair-local minimum
/// (no single integer row operation decreases S) or at the sweep cap, in
/// which case the best state so far is returned flagged.
template <class Scalar>
ReductionResult<Scalar> seysen_reduce(const Basis<Scalar>& b,
                                      const ReductionConfig& cfg = {}) {
  if (cfg.max_sweeps < 1) throw DomainError("seysen_reduce: max_sweeps >= 1");
  ReductionState<Scalar> st = make_reduction_state(b, cfg.tol);
  const Scalar s_initial = st.s_current;
  const Index n = b.n();

  int sweeps = 0;
  bool hit_limit = false;
  if (cfg.pair_order == PairOrder::row_major) {
    for (;;) {
      if (sweeps == cfg.max_sweeps) {
        hit_limit = true;
        break;
      }
      ++sweeps;
      bool applied = false;
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          if (i == j) continue;
          const auto step = optimal_pair_step(st, i, j);
          if (step.lambda != Scalar(0) && detail::improves(st, step.delta_s)) {
            apply_step(st, i, j, step.lambda);
            applied = true;
          }
        }
      if (!applied) break;
    }
  } else {
    // best_first: each sweep recomputes every pair gain and applies the
    // single largest decrease
    for (;;) {
      if (sweeps == cfg.max_sweeps) {
        hit_limit = true;
        break;
      }
      ++sweeps;
      bool have = false;
      Step<Scalar> best{};
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          if (i == j) continue;
          const auto step = optimal_pair_step(st, i, j);
          if (step.lambda != Scalar(0) && detail::improves(st, step.delta_s) &&
              (!have || step.delta_s < best.delta_s)) {
            best = step;
            have = true;
          }
        }
      if (!have) break;
      apply_step(st, best.i, best.j, best.lambda);
    }
  }

  Basis<Scalar> reduced{std::move(st.basis)};
  Scalar s_final = st.s_current;
  if constexpr (!is_exact_v<Scalar>)
    s_final = seysen_dual(reduced);  // the running sum carries rounding at
                                     // the historical magnitudes
  ReductionResult<Scalar> out{std::move(reduced),
                              std::move(st.transform),
                              std::move(st.trace),
                              sweeps,
                              hit_limit,
                              s_initial,
                              s_final};
  return out;
}

/// True when no single pair step can decrease S (the exit condition of
/// seysen_reduce).
template <class Scalar>
bool pair_locally_reduced(const Basis<Scalar>& b, double tol = 1e-12) {
  ReductionState<Scalar> st = make_reduction_state(b, tol);
  for (Index i = 0; i < b.n(); ++i)
    for (Index j = 0; j < b.n(); ++j) {
      if (i == j) continue;
      const auto step = optimal_pair_step(st, i, j);
      if (step.lambda != Scalar(0) && detail::improves(st, step.delta_s))
        return false;
    }
  return true;
}

struct LllResult {
  Basis<Rational> basis;
  RationalMatrix transform;
  long swaps = 0;
};

/// Classical LLL with exact rational Gram-Schmidt. delta is converted to an
/// exact rational (binary expansion of the double), so the Lovasz condition
/// is decided exactly and termination follows the textbook argument.
inline LllResult lll_reduce(const Basis<Rational>& b, double delta = 0.75) {
  if (!(delta > 0.25) || !(delta <= 1.0))
    throw DomainError("lll_reduce: delta must lie in (1/4, 1]");
  const Rational delta_q = rational_from_double(delta);
  const Index n = b.n(), m = b.m();

  RationalMatrix rows = b.rows;
  RationalMatrix u = RationalMatrix::Identity(n, n);
  RationalMatrix gs(n, m);
  RationalMatrix mu = RationalMatrix::Zero(n, n);
  std::vector<Rational> gs_norm(n);

  auto recompute_gs_from = [&](Index start) {
    for (Index i = start; i < n; ++i) {
      gs.row(i) = rows.row(i);
      for (Index j = 0; j < i; ++j) {
        Rational dot(0);
        for (Index k = 0; k < m; ++k) dot += rows(i, k) * gs(j, k);
        mu(i, j) = dot / gs_norm[j];
        gs.row(i) -= mu(i, j) * gs.row(j);
      }
      gs_norm[i] = row_norm_sq(gs, i);
      if (sign_of(gs_norm[i]) <= 0)
        throw RankDeficient("lll_reduce: dependent rows");
    }
  };
  recompute_gs_from(0);

  long swaps = 0;
  Index k = 1;
  while (k < n) {
    for (Index j = k - 1; j >= 0; --j) {
      const Rational r = round_half_toward_zero(mu(k, j));
      if (r != 0) {
        rows.row(k) -= r * rows.row(j);
        u.row(k) -= r * u.row(j);
        for (Index l = 0; l < j; ++l) mu(k, l) -= r * mu(j, l);
        mu(k, j) -= r;
      }
    }
    const Rational lhs = gs_norm[k];
    const Rational rhs = (delta_q - mu(k, k - 1) * mu(k, k - 1)) * gs_norm[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      rows.row(k).swap(rows.row(k - 1));
      u.row(k).swap(u.row(k - 1));
      ++swaps;
      recompute_gs_from(k - 1);
      k = std::max<Index>(k - 1, 1);
    }
  }
  return LllResult{Basis<Rational>{std::move(rows)}, std::move(u), swaps};
}

/// Applies `steps` seeded random elementary integer row operations
/// (b_i <- b_i +/- c*b_j with c in {1,2,3}, row swaps, sign flips); the
/// lattice and its volume are unchanged.
template <class Scalar>
Basis<Scalar> unimodular_scramble(const Basis<Scalar>& b, std::uint64_t seed,
                                  int steps) {
  if (steps < 0) throw DomainError("unimodular_scramble: steps >= 0");
  MatrixX<Scalar> rows = b.rows;
  const Index n = b.n();
  Xoshiro256pp rng(seed);
  for (int s = 0; s < steps; ++s) {
    const std::uint64_t op = rng.below(4);
    if (n < 2) {
      if (op == 3 && rng.coin()) rows.row(0) = -rows.row(0);
      continue;
    }
    const Index i = static_cast<Index>(rng.below(n));
    Index j = static_cast<Index>(rng.below(n - 1));
    if (j >= i) ++j;
    if (op < 3) {
      const long c = 1 + static_cast<long>(rng.below(3));
      const Scalar coeff(rng.coin() ? -c : c);
      rows.row(i) += coeff * rows.row(j);
    } else if (rng.coin()) {
      rows.row(i).swap(rows.row(j));
    } else {
      rows.row(i) = -rows.row(i);
    }
  }
  return Basis<Scalar>{std::move(rows)};
}

}  // namespace latq

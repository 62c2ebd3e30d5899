#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <string>
#include <type_traits>

namespace latq {

/// Exact rational scalar. GMP keeps values in canonical form (positive
/// denominator, gcd 1) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

template <class Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Exact binary expansion of a double, e.g. 0.75 -> 3/4.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x))
    throw std::domain_error("rational_from_double: value not finite");
  return Rational(x);
}

inline Rational abs_val(const Rational& q) { return Rational(abs(q)); }
inline double abs_val(double x) { return std::fabs(x); }

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// q^e with a nonnegative integer exponent, exact for rationals.
inline Rational pow_int(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(q.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(q.get_mpq_t()), e);
  return r;  // powers of a canonical fraction stay canonical
}
inline double pow_int(double x, unsigned long e) {
  return std::pow(x, static_cast<double>(e));
}

inline Integer floor_int(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), mpq_numref(q.get_mpq_t()),
             mpq_denref(q.get_mpq_t()));
  return f;
}

/// Nearest integer; an exact half rounds toward zero, so an indifferent
/// reduction pair becomes a no-op.
inline Rational round_half_toward_zero(const Rational& q) {
  Integer f, r;
  mpz_fdiv_qr(f.get_mpz_t(), r.get_mpz_t(), mpq_numref(q.get_mpq_t()),
              mpq_denref(q.get_mpq_t()));
  const Integer twice_r = 2 * r;
  const int c = cmp(twice_r, Integer(mpq_denref(q.get_mpq_t())));
  if (c > 0) f += 1;
  if (c == 0 && f < 0) f += 1;  // tie: f and f+1 straddle, pick smaller |.|
  return Rational(f);
}

inline double round_half_toward_zero(double x) {
  const double f = std::floor(x);
  const double frac = x - f;
  if (frac > 0.5) return f + 1;
  if (frac < 0.5) return f;
  return x > 0 ? f : f + 1;
}

/// Canonical "p" / "p/q" text, matching the matrix-file grammar.
inline std::string format_scalar(const Rational& q) { return q.get_str(); }

/// Floats print with 17 significant digits so reports are reproducible
/// byte for byte.
inline std::string format_scalar(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace latq

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

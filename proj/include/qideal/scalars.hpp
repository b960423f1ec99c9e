#pragma once

// Scalar tower used throughout: exact integers and rationals on GMP,
// adjustable-precision reals on MPFR. Expression templates are disabled
// so the types behave as plain values inside Eigen expressions.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qideal {

namespace mp = boost::multiprecision;

using Int  = mp::number<mp::gmp_int, mp::et_off>;
using Rat  = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

template <class S> using Mat4 = Eigen::Matrix<S, 4, 4>;
template <class S> using Vec4 = Eigen::Matrix<S, 1, 4>;  // row vector
template <class S> using Mat2 = Eigen::Matrix<S, 2, 2>;
template <class S> using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using Mat4i = Mat4<Int>;
using Vec4i = Vec4<Int>;
using Mat4q = Mat4<Rat>;
using Vec4q = Vec4<Rat>;
using Mat4r = Mat4<Real>;
using Mat2i = Mat2<Int>;
using MatXi = MatX<Int>;

// Errors that callers are expected to handle (budget/size limits and
// invalid inputs) versus internal invariant breaches.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

#define QIDEAL_CHECK(cond, msg) \
  do { if (!(cond)) throw ::qideal::internal_error(msg); } while (0)

inline int sign_of(const Int& x) { return x.sign(); }
inline int sign_of(const Rat& x) { return x.sign(); }

// Floor division (quotient rounded toward -inf).
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
  return q;
}
inline Int fmod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.backend().data(), a.backend().data(), b.backend().data());
  return r;
}
// Representative of a mod m in [0, m).
inline Int mod_reduce(const Int& a, const Int& m) { return fmod(a, m); }

inline Int floor_rat(const Rat& x) { return fdiv(numerator(x), denominator(x)); }
inline Int ceil_rat(const Rat& x) { return -fdiv(-numerator(x), denominator(x)); }

inline Int v_adic(Int n, const Int& p) {
  QIDEAL_CHECK(n != 0, "v_adic(0)");
  Int v = 0;
  while (n % p == 0) { n /= p; ++v; }
  return v;
}

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.backend().data(), b.backend().data(), e);
  return r;
}

inline Int isqrt(const Int& n) {
  QIDEAL_CHECK(n >= 0, "isqrt of negative");
  Int r;
  mpz_sqrt(r.backend().data(), n.backend().data());
  return r;
}

inline bool is_square(const Int& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.backend().data()) != 0;
}

inline Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  int ok = mpz_invert(r.backend().data(), a.backend().data(), m.backend().data());
  QIDEAL_CHECK(ok, "element not invertible");
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) { return gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return lcm(a, b); }

// gcd of the fractional ideals aZ + bZ of Q, as a positive rational.
inline Rat gcd_rat(const Rat& a, const Rat& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Int an = numerator(a), ad = denominator(a);
  Int bn = numerator(b), bd = denominator(b);
  return Rat(gcd(an * bd, bn * ad), ad * bd);
}

inline size_t bit_length(const Int& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.backend().data(), 2);
}

inline size_t digit_count(const Int& n) {
  if (n == 0) return 1;
  return mpz_sizeinbase(n.backend().data(), 10);
}

// Scoped MPFR working-precision override (decimal digits).
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits10)
      : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

constexpr unsigned kDefaultPrecisionDigits = 40;  // ~128-bit mantissa

}  // namespace qideal

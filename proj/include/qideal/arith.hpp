#pragma once

// Exact integer utilities: factorization, local symbols, and fundamental
// units of real quadratic orders via continued fractions.

#include <optional>
#include <utility>
#include <vector>

#include "qideal/scalars.hpp"

namespace qideal {

struct Factored {
  int sign = 1;                              // +1 or -1
  std::vector<std::pair<Int, Int>> factors;  // (prime, exponent), primes increasing

  Int value() const {
    Int v = sign;
    for (const auto& [p, e] : factors)
      for (Int k = 0; k < e; ++k) v *= p;
    return v;
  }
  Int abs_value() const { return abs(value()); }
  Int v_p(const Int& p) const {
    for (const auto& [q, e] : factors)
      if (q == p) return e;
    return 0;
  }
  bool is_unit() const { return factors.empty(); }
};

// Primes up to the trial-division bound, shared and built once.
const std::vector<uint32_t>& small_primes();

bool is_prime(const Int& n);
Int next_prime(const Int& n);

// Exact factorization; trial division then Brent-cycle Pollard rho.
// Throws budget_error on composites above `digit_cap` digits.
Factored factor_integer(const Int& n, size_t digit_cap = 40);

// Merge factored values: a * b.
Factored factored_mul(const Factored& a, const Factored& b);
// a^e for e >= 0.
Factored factored_pow(const Factored& a, const Int& e);

// Kronecker symbol (a|n).
int kronecker(const Int& a, const Int& n);

// Hilbert symbol (a,b) at a finite prime p, or at infinity if p == 0.
int hilbert_symbol(const Int& a, const Int& b, const Int& p);

// Square root of a modulo odd prime p ((a|p) must be 1), via Tonelli-Shanks.
Int sqrt_mod_prime(const Int& a, const Int& p);

// x with x*x == a mod p^k, p odd, (a|p) == 1, via Hensel lifting.
Int sqrt_mod_prime_power(const Int& a, const Int& p, const Int& pk);

// Squarefree part: n = squarefree(n) * s^2.
Int squarefree_part(const Factored& f);

// Fundamental unit of the order Z + f*Z_K in K = Q(sqrt(d)), d squarefree > 1,
// returned as (x, y) with unit (x + y*sqrt(d))/2, x,y > 0, smallest > 1.
// norm() is (x^2 - d y^2)/4, always +1 or -1.
struct QuadUnit {
  Int d;
  Int conductor;
  Int x, y;  // element (x + y sqrt(d))/2
  Rat norm() const { return Rat(x * x - d * y * y, 4); }
};

QuadUnit pell_fundamental_unit(const Int& d, const Int& conductor,
                               size_t digit_cap = 10000);

}  // namespace qideal

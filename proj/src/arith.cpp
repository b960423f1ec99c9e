#include "qideal/arith.hpp"

#include <algorithm>
#include <map>

namespace qideal {

namespace {
constexpr uint32_t kSieveBound = 1000000;
}

const std::vector<uint32_t>& small_primes() {
  static const std::vector<uint32_t> primes = [] {
    std::vector<bool> composite(kSieveBound + 1, false);
    std::vector<uint32_t> ps;
    for (uint32_t i = 2; i <= kSieveBound; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (uint64_t j = uint64_t(i) * i; j <= kSieveBound; j += i) composite[j] = true;
    }
    return ps;
  }();
  return primes;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.backend().data(), 30) != 0;
}

Int next_prime(const Int& n) {
  Int r;
  mpz_nextprime(r.backend().data(), n.backend().data());
  return r;
}

namespace {

// Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n.
Int pollard_brent(const Int& n) {
  for (Int c = 1;; ++c) {
    Int y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const long m = 128;
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        Int count = std::min(Int(m), r - k);
        for (Int i = 0; i < count; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      // backtrack one step at a time
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      }
    }
    if (g != n) return g;
    // cycle degenerated for this c; retry with the next one
  }
}

void factor_into(const Int& n, std::map<Int, Int>& out, size_t digit_cap) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  if (digit_count(n) > digit_cap)
    throw budget_error("factor_integer: composite above digit cap");
  if (mpz_perfect_power_p(n.backend().data())) {
    for (size_t e = 2; e <= bit_length(n); ++e) {
      Int root, rem;
      mpz_rootrem(root.backend().data(), rem.backend().data(),
                  n.backend().data(), static_cast<unsigned long>(e));
      if (rem == 0) {
        std::map<Int, Int> sub;
        factor_into(root, sub, digit_cap);
        for (auto& [p, k] : sub) out[p] += k * Int(static_cast<long>(e));
        return;
      }
    }
  }
  Int d = pollard_brent(n);
  factor_into(d, out, digit_cap);
  factor_into(n / d, out, digit_cap);
}

}  // namespace

Factored factor_integer(const Int& n, size_t digit_cap) {
  QIDEAL_CHECK(n != 0, "factor_integer(0)");
  Factored f;
  Int m = n;
  if (m < 0) {
    f.sign = -1;
    m = -m;
  }
  std::map<Int, Int> acc;
  for (uint32_t p : small_primes()) {
    if (Int(p) * p > m) break;
    while (m % p == 0) {
      acc[Int(p)] += 1;
      m /= p;
    }
  }
  if (m > 1) factor_into(m, acc, digit_cap);
  f.factors.assign(acc.begin(), acc.end());
  return f;
}

Factored factored_mul(const Factored& a, const Factored& b) {
  Factored r;
  r.sign = a.sign * b.sign;
  std::map<Int, Int> acc;
  for (const auto& [p, e] : a.factors) acc[p] += e;
  for (const auto& [p, e] : b.factors) acc[p] += e;
  for (auto& [p, e] : acc)
    if (e != 0) r.factors.emplace_back(p, e);
  return r;
}

Factored factored_pow(const Factored& a, const Int& e) {
  QIDEAL_CHECK(e >= 0, "factored_pow: negative exponent");
  Factored r;
  r.sign = (a.sign == -1 && e % 2 == 1) ? -1 : 1;
  if (e == 0) return r;
  for (const auto& [p, k] : a.factors) r.factors.emplace_back(p, k * e);
  return r;
}

int kronecker(const Int& a, const Int& n) {
  return mpz_kronecker(a.backend().data(), n.backend().data());
}

int hilbert_symbol(const Int& a, const Int& b, const Int& p) {
  QIDEAL_CHECK(a != 0 && b != 0, "hilbert_symbol: zero argument");
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  QIDEAL_CHECK(is_prime(p), "hilbert_symbol: place must be prime or 0");
  Int alpha = v_adic(a, p), beta = v_adic(b, p);
  Int u = a / pow_int(p, alpha.convert_to<unsigned long>());
  Int v = b / pow_int(p, beta.convert_to<unsigned long>());
  if (p == 2) {
    auto eps = [](const Int& x) { return mod_reduce((x - 1) / 2, 2); };
    auto omega = [](const Int& x) { return mod_reduce((x * x - 1) / 8, 2); };
    Int e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
    return e % 2 == 0 ? 1 : -1;
  }
  int r = 1;
  if ((alpha * beta) % 2 == 1 && mod_reduce(p, 4) == 3) r = -r;
  if (beta % 2 == 1) r *= kronecker(u, p);
  if (alpha % 2 == 1) r *= kronecker(v, p);
  return r;
}

Int sqrt_mod_prime(const Int& a0, const Int& p) {
  Int a = mod_reduce(a0, p);
  if (p == 2) return a;
  QIDEAL_CHECK(kronecker(a, p) == 1, "sqrt_mod_prime: non-residue");
  if (mod_reduce(p, 4) == 3) {
    Int x;
    mpz_powm(x.backend().data(), a.backend().data(), Int((p + 1) / 4).backend().data(),
             p.backend().data());
    return x;
  }
  // Tonelli-Shanks
  Int q = p - 1, s = 0;
  while (q % 2 == 0) { q /= 2; ++s; }
  Int z = 2;
  while (kronecker(z, p) != -1) ++z;
  auto powm = [&](const Int& b, const Int& e) {
    Int r;
    mpz_powm(r.backend().data(), b.backend().data(), e.backend().data(), p.backend().data());
    return r;
  };
  Int m = s, c = powm(z, q), t = powm(a, q), x = powm(a, (q + 1) / 2);
  while (t != 1) {
    Int i = 0, tt = t;
    while (tt != 1) { tt = tt * tt % p; ++i; }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    x = x * b % p;
  }
  return x;
}

Int sqrt_mod_prime_power(const Int& a, const Int& p, const Int& pk) {
  QIDEAL_CHECK(p != 2, "sqrt_mod_prime_power: p must be odd");
  Int x = sqrt_mod_prime(a, p);
  Int mod = p;
  while (mod < pk) {
    mod = mod * mod;
    if (mod > pk) mod = pk;  // over-lift is fine, clamp for size
    Int inv = mod_inverse(mod_reduce(2 * x, mod), mod);
    x = mod_reduce(x - (x * x - a) * inv, mod);
  }
  return mod_reduce(x, pk);
}

Int squarefree_part(const Factored& f) {
  Int r = f.sign;
  for (const auto& [p, e] : f.factors)
    if (e % 2 == 1) r *= p;
  return r;
}

QuadUnit pell_fundamental_unit(const Int& d, const Int& conductor, size_t digit_cap) {
  QIDEAL_CHECK(d > 1 && !is_square(d), "pell: d must be a nonsquare > 1");
  QIDEAL_CHECK(conductor >= 1, "pell: conductor must be positive");
  Int D0 = (mod_reduce(d, 4) == 1) ? d : 4 * d;
  Int D = conductor * conductor * D0;  // discriminant of the order

  // Continued fraction of a reduced alpha = (P0 + sqrt(Dcf))/Q0 with
  // Z[alpha] the order of discriminant D; the full period yields the
  // fundamental unit k_{l-1} * alpha + k_{l-2}.
  Int Dcf, P0, Q0;
  if (mod_reduce(D, 4) == 1) {
    Dcf = D;
    Q0 = 2;
    Int s = isqrt(Dcf);
    P0 = (mod_reduce(s, 2) == 1) ? s : s - 1;  // odd integer in (sqrt(D)-2, sqrt(D))
  } else {
    Dcf = D / 4;
    Q0 = 1;
    P0 = isqrt(Dcf);
  }
  Int sq = isqrt(Dcf);
  QIDEAL_CHECK(mod_reduce(Dcf - P0 * P0, Q0) == 0, "pell: invalid CF seed");

  Int P = P0, Q = Q0;
  Int hk1 = 1, hk2 = 0;  // h_{-1}, h_{-2} (kept only for debugging symmetry)
  Int kk1 = 0, kk2 = 1;  // k_{-1}, k_{-2}
  Int prev_k = 0, prev2_k = 1;
  size_t steps = 0;
  while (true) {
    Int a = fdiv(P + sq, Q);
    Int h = a * hk1 + hk2;
    Int k = a * kk1 + kk2;
    hk2 = hk1; hk1 = h;
    kk2 = kk1; kk1 = k;
    P = a * Q - P;
    Q = (Dcf - P * P) / Q;
    ++steps;
    if (digit_count(kk1) > digit_cap)
      throw budget_error("pell_fundamental_unit: unit exceeds digit cap");
    if (P == P0 && Q == Q0) {
      prev_k = kk1;   // k_{l-1}
      prev2_k = kk2;  // k_{l-2}
      break;
    }
    QIDEAL_CHECK(steps < size_t(1) << 40, "pell: runaway period");
  }

  // epsilon = prev_k * (P0 + sqrt(Dcf))/Q0 + prev2_k, rewritten over sqrt(d).
  Int x, y;
  if (Q0 == 2) {
    // sqrt(Dcf) = f * sqrt(d) with D = f^2 d, f = conductor (d = 1 mod 4, f odd)
    x = prev_k * P0 + 2 * prev2_k;
    y = prev_k * conductor;
  } else {
    // sqrt(Dcf) = g * sqrt(d) with Dcf = g^2 d
    Int g2 = Dcf / d;
    Int g = isqrt(g2);
    QIDEAL_CHECK(g * g == g2, "pell: conductor bookkeeping");
    x = 2 * (prev_k * P0 + prev2_k);
    y = 2 * prev_k * g;
  }
  QuadUnit u{d, conductor, x, y};
  Rat nrm = u.norm();
  QIDEAL_CHECK(nrm == 1 || nrm == -1, "pell: output is not a unit");
  QIDEAL_CHECK(u.y != 0, "pell: trivial unit");
  return u;
}

}  // namespace qideal

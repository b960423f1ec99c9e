#include "doctest.h"

#include <cstdint>
#include <set>

#include "qideal/arith.hpp"
#include "qideal/rng.hpp"

using namespace qideal;

namespace {

// Independent oracle: local solubility of z^2 = a x^2 + b y^2 by exhaustive
// search over primitive triples mod p^k (k = 3 odd p, 6 for p = 2), which
// characterizes the Hilbert symbol for squarefree a, b.
int brute_hilbert(int64_t a, int64_t b, int64_t p) {
  int k = (p == 2) ? 6 : 3;
  int64_t m = 1;
  for (int i = 0; i < k; ++i) m *= p;
  std::set<int64_t> squares;
  for (int64_t z = 0; z < m; ++z) squares.insert(z * z % m);
  auto norm = [&](int64_t v) { return ((v % m) + m) % m; };
  for (int64_t x = 0; x < m; ++x)
    for (int64_t y = 0; y < m; ++y) {
      if (x % p == 0 && y % p == 0) continue;
      if (squares.count(norm(a * x * x + b * y * y))) return 1;
    }
  return -1;
}

// Smallest unit > 1 of the order of conductor f in Q(sqrt(d)), brute force:
// scan y and test x^2 = d y^2 +- 4 for a square, in half-coordinates.
QuadUnit brute_pell(const Int& d, const Int& f) {
  for (Int y = 1;; ++y) {
    for (int s : {-4, 4}) {
      Int t = d * y * y + s;
      if (t <= 0 || !is_square(t)) continue;
      Int x = isqrt(t);
      // (x + y sqrt d)/2 must lie in Z + f*Z_K
      bool integral;
      if (mod_reduce(d, 4) == 1) {
        // Z_K = Z[(1+sqrt d)/2]; element = (x-y)/2 + y*(1+sqrt d)/2
        integral = (mod_reduce(x - y, 2) == 0) && (y % f == 0);
      } else {
        // Z_K = Z[sqrt d]
        integral = (mod_reduce(x, 2) == 0) && (mod_reduce(y, 2) == 0) && ((y / 2) % f == 0);
      }
      if (integral) return QuadUnit{d, f, x, y};
    }
  }
}

}  // namespace

TEST_CASE("factor_integer basics") {
  Factored f = factor_integer(12);
  CHECK(f.sign == 1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<Int, Int>(2, 2));
  CHECK(f.factors[1] == std::pair<Int, Int>(3, 1));

  Factored g = factor_integer(-19);
  CHECK(g.sign == -1);
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0] == std::pair<Int, Int>(19, 1));

  // Delta of the (3,-1) algebra: 6^2 = 36, oracle = direct multiplication
  Factored h = factor_integer(36);
  CHECK(h.value() == 36);
  REQUIRE(h.factors.size() == 2);
  CHECK(h.factors[0] == std::pair<Int, Int>(2, 2));
  CHECK(h.factors[1] == std::pair<Int, Int>(3, 2));
}

TEST_CASE("factor_integer round trip and primality") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    Int n = Int(rng.below(uint64_t(1) << 50)) + 2;
    if (rng.coin()) n = -n;
    Factored f = factor_integer(n);
    CHECK(f.value() == n);
    Int last = 0;
    for (const auto& [p, e] : f.factors) {
      CHECK(p > last);
      last = p;
      CHECK(e >= 1);
      CHECK(is_prime(p));
    }
  }
  // a larger semiprime through the rho path
  Int p("1000000000039"), q("1000000000061");
  Factored f = factor_integer(p * q);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == p);
  CHECK(f.factors[1].first == q);
}

TEST_CASE("hilbert symbol known values") {
  CHECK(hilbert_symbol(3, -1, 2) == -1);  // (3,-1) is ramified at 2
  CHECK(hilbert_symbol(3, -1, 3) == -1);  // ... and at 3
  CHECK(hilbert_symbol(3, -1, 5) == 1);
  CHECK(hilbert_symbol(3, -1, 0) == 1);
  for (Int p : {2, 3, 5, 7, 11, 13}) CHECK(hilbert_symbol(1, 1, p) == 1);
  CHECK(hilbert_symbol(-2, -3, 0) == -1);
}

TEST_CASE("hilbert symbol vs exhaustive local solubility") {
  for (int64_t a : {-10, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 13})
    for (int64_t b : {-7, -5, -1, 1, 2, 3, 6, 11})
      for (int64_t p : {2, 3, 5, 7, 11, 13}) {
        INFO("a=", a, " b=", b, " p=", p);
        CHECK(hilbert_symbol(a, b, p) == brute_hilbert(a, b, p));
      }
}

TEST_CASE("hilbert symbol symmetry and product formula") {
  Rng rng(99);
  auto squarefree_draw = [&]() {
    while (true) {
      Int n = Int(rng.below(uint64_t(4000))) - 2000;
      if (n == 0) continue;
      Factored f = factor_integer(n);
      bool sf = true;
      for (const auto& [p, e] : f.factors)
        if (e > 1) sf = false;
      if (sf) return n;
    }
  };
  for (int trial = 0; trial < 1000; ++trial) {
    Int a = squarefree_draw(), b = squarefree_draw();
    // symmetry on a sample place set
    for (Int p : {Int(0), Int(2), Int(3), Int(5)})
      CHECK(hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p));
    // product over all places: only p | 2ab and infinity can be -1
    int prod = hilbert_symbol(a, b, 0);
    std::set<Int> places{2};
    for (const auto& [p, e] : factor_integer(a * b).factors) places.insert(p);
    for (const Int& p : places) prod *= hilbert_symbol(a, b, p);
    CHECK(prod == 1);
  }
}

TEST_CASE("pell fundamental units match brute force") {
  QuadUnit u3 = pell_fundamental_unit(3, 1);
  CHECK(u3.x == 4);  // 2 + sqrt(3)
  CHECK(u3.y == 2);
  CHECK(u3.norm() == 1);

  QuadUnit u2 = pell_fundamental_unit(2, 1);
  CHECK(u2.x == 2);  // 1 + sqrt(2)
  CHECK(u2.y == 2);
  CHECK(u2.norm() == -1);

  QuadUnit u52 = pell_fundamental_unit(5, 2);
  CHECK(u52.x == 4);  // 2 + sqrt(5), the order Z[sqrt 5]
  CHECK(u52.y == 2);
  CHECK(u52.norm() == -1);

  QuadUnit u5 = pell_fundamental_unit(5, 1);
  CHECK(u5.x == 1);  // golden ratio (1 + sqrt 5)/2
  CHECK(u5.y == 1);
}

TEST_CASE("pell fundamental units are minimal, d <= 200") {
  for (Int d = 2; d <= 200; ++d) {
    if (is_square(d)) continue;
    Factored f = factor_integer(d);
    bool sf = true;
    for (const auto& [p, e] : f.factors)
      if (e > 1) sf = false;
    if (!sf) continue;
    QuadUnit got = pell_fundamental_unit(d, 1);
    QuadUnit want = brute_pell(d, 1);
    INFO("d=", d.convert_to<long>());
    CHECK(got.x == want.x);
    CHECK(got.y == want.y);
    Rat n = got.norm();
    CHECK((n == 1 || n == -1));
  }
}

TEST_CASE("pell with conductors vs brute force") {
  for (auto [d, f] : std::vector<std::pair<int, int>>{
           {2, 2}, {2, 3}, {3, 2}, {5, 3}, {13, 2}, {17, 2}, {5, 4}}) {
    QuadUnit got = pell_fundamental_unit(d, f);
    QuadUnit want = brute_pell(d, f);
    INFO("d=", d, " f=", f);
    CHECK(got.x == want.x);
    CHECK(got.y == want.y);
  }
}

TEST_CASE("sqrt mod prime powers") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Int p = Int(std::vector<int>{3, 5, 7, 13, 17}[rng.below(uint64_t(5))]);
    Int pk = pow_int(p, 1 + unsigned(rng.below(uint64_t(5))));
    Int x = rng.below(pk);
    if (x % p == 0) continue;
    Int a = x * x % pk;
    Int r = sqrt_mod_prime_power(a, p, pk);
    CHECK(mod_reduce(r * r - a, pk) == 0);
  }
}

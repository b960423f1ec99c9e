#include "doctest.h"

#include "qideal/quat.hpp"
#include "qideal/rng.hpp"

using namespace qideal;

namespace {

QuatElement random_element(Rng& rng, int64_t range, const Int& den) {
  QuatElement x;
  for (int k = 0; k < 4; ++k)
    x(k) = Rat(Int(rng.below(uint64_t(2 * range))) - range, den);
  return x;
}

// omega = (1 + i + j + ij)/2 in the (3,-1) algebra
QuatElement omega() { return qelem(Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)); }

}  // namespace

TEST_CASE("defining relations") {
  QuatAlgebra alg = make_algebra(3, -1);
  QuatElement i = qelem(0, 1, 0, 0), j = qelem(0, 0, 1, 0), k = qelem(0, 0, 0, 1);
  CHECK(qmul(alg, i, j) == k);
  CHECK(qmul(alg, j, i) == -k);
  CHECK(qmul(alg, i, i) == qelem(3, 0, 0, 0));
  CHECK(qmul(alg, j, j) == qelem(-1, 0, 0, 0));
  // Pell unit times conjugate: (2+i)(2-i) = 4 - 3 = 1
  CHECK(qmul(alg, qelem(2, 1, 0, 0), qelem(2, -1, 0, 0)) == qone());
}

TEST_CASE("norm multiplicativity and conjugation anti-automorphism") {
  QuatAlgebra alg = make_algebra(3, -1);
  Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    QuatElement x = random_element(rng, 30, 1 + Int(rng.below(uint64_t(3))));
    QuatElement y = random_element(rng, 30, 1 + Int(rng.below(uint64_t(3))));
    CHECK(reduced_norm(alg, qmul(alg, x, y)) == reduced_norm(alg, x) * reduced_norm(alg, y));
    CHECK(qconj(qmul(alg, x, y)) == qmul(alg, qconj(y), qconj(x)));
    CHECK(qmul(alg, x, qconj(x)) == qelem(reduced_norm(alg, x), 0, 0, 0));
  }
}

TEST_CASE("paper norms in the (3,-1) algebra") {
  QuatAlgebra alg = make_algebra(3, -1);
  QuatElement w = omega();
  QuatElement x = qelem(3, 4, -3, 0) - Rat(11) * w;
  CHECK(reduced_norm(alg, x) == -19);
  QuatElement c = qelem(-1, -2, -1, 0) + w;
  CHECK(reduced_norm(alg, c) == -7);
  CHECK(reduced_norm(alg, qone()) == 1);
  // the smoothing element (7 + i - 9j - 3w)/19 has norm 7/19
  QuatElement s = (qelem(7, 1, -9, 0) - Rat(3) * w) / Rat(19);
  CHECK(reduced_norm(alg, s) == Rat(7, 19));
  // the local reduction unit (-9 - 5i - 7j - 3w)/7 has norm 1
  QuatElement u = (qelem(-9, -5, -7, 0) - Rat(3) * w) / Rat(7);
  CHECK(reduced_norm(alg, u) == 1);
}

TEST_CASE("ramified places") {
  std::vector<Int> r = ramified_places(3, -1);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == 2);
  CHECK(r[1] == 3);
  CHECK(ramified_places(1, 1).empty());
  CHECK_THROWS_AS(ramified_places(-2, -3), input_error);

  // (17,-1): verified against the product formula and local solubility
  std::vector<Int> r17 = ramified_places(17, -1);
  CHECK(r17.size() % 2 == 0);
  int prod = hilbert_symbol(17, -1, 0);
  for (Int p = 2; p <= 100; p = next_prime(p)) {
    int h = hilbert_symbol(17, -1, p);
    bool in = std::find(r17.begin(), r17.end(), p) != r17.end();
    CHECK(in == (h == -1));
    prod *= h;
  }
  CHECK(prod == 1);
}

TEST_CASE("algebra normalization and discriminant") {
  QuatAlgebra alg = make_algebra(3, -1);
  CHECK(alg.delta == 6);
  CHECK(alg.Delta == 36);
  QuatAlgebra swapped = make_algebra(-1, 3);
  CHECK(swapped.a == 3);  // normalized so the splitting uses a real sqrt(a)
  CHECK(swapped.b == -1);
  QuatAlgebra split = make_algebra(1, 1);
  CHECK(split.delta == 1);
  CHECK(split.ramified.empty());
}

TEST_CASE("T2 values and covolume") {
  QuatAlgebra alg = make_algebra(3, -1);
  GramForm g = t2_gram_ambient(alg);
  CHECK(g.value(qone()) == 2);
  CHECK(g.value(qelem(0, 1, 0, 0)) == 2 * 3);
  CHECK(g.positive_definite());

  Order o = maximal_order(alg);
  GramForm go = t2_gram(o);
  PrecisionGuard guard(60);
  Real covol2 = go.eval().determinant();  // = Delta for a maximal order
  CHECK(abs(covol2 - Real(36)) < Real("1e-25"));
}

TEST_CASE("maximal order of (3,-1) is Z + Zi + Zj + Zw") {
  QuatAlgebra alg = make_algebra(3, -1);
  Order o = maximal_order(alg);
  CHECK(o.reduced_disc == 6);
  Mat4i expect;
  expect << 1, 1, 1, 1,
            0, 2, 0, 0,
            0, 0, 2, 0,
            0, 0, 0, 2;
  CHECK(o.lattice.den == 2);
  CHECK(o.lattice.basis == expect);
  CHECK(o.contains(omega()));
  CHECK(o.contains(qone()));
}

TEST_CASE("maximal order of the split (1,1) algebra") {
  QuatAlgebra alg = make_algebra(1, 1);
  Order o = maximal_order(alg);
  CHECK(o.reduced_disc == 1);
}

TEST_CASE("maximal orders for random algebras") {
  Rng rng(55);
  std::vector<std::pair<int, int>> cases = {
      {2, 3}, {5, -1}, {7, -2}, {6, -1}, {15, 2}, {10, 3}, {-5, 11}, {13, -7}, {21, 5}};
  for (auto [a, b] : cases) {
    QuatAlgebra alg = make_algebra(a, b);
    Order o = maximal_order(alg);  // order axioms checked inside
    CHECK(o.reduced_disc == alg.delta);
    // integrality of trace and norm on the basis
    for (int k = 0; k < 4; ++k) {
      CHECK(denominator(reduced_trace(o.basis_element(k))) == 1);
      CHECK(denominator(reduced_norm(alg, o.basis_element(k))) == 1);
    }
  }
}

TEST_CASE("p_radical squares to pO at ramified primes") {
  QuatAlgebra alg = make_algebra(3, -1);
  Order o = maximal_order(alg);
  for (Int p : {2, 3}) {
    IntLattice rad = p_radical(o, p);
    // P^2 = pO: generate products of the radical basis
    MatXi rows(16, 4);
    Int den = rad.den * rad.den;
    for (int s = 0; s < 4; ++s)
      for (int t = 0; t < 4; ++t) {
        QuatElement prod = qmul(alg, rad.basis.row(s).cast<Rat>() / Rat(rad.den),
                                rad.basis.row(t).cast<Rat>() / Rat(rad.den));
        for (int c = 0; c < 4; ++c) {
          Rat scaled = prod(c) * Rat(den);
          REQUIRE(denominator(scaled) == 1);
          rows(4 * s + t, c) = numerator(scaled);
        }
      }
    IntLattice sq = lattice_from_rows(rows, den);
    IntLattice po = lattice_scale(o.lattice, Rat(p));
    CHECK(sq == po);
  }
}

TEST_CASE("element parsing round trip") {
  QuatElement x = parse_element("3,-4,1/2,0");
  CHECK(x == qelem(3, -4, Rat(1, 2), 0));
  CHECK(parse_element(format_element(x)) == x);
  CHECK_THROWS_AS(parse_element("1,2,3"), input_error);
}

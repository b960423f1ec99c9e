#pragma once

// The quaternion algebra (a,b / Q) with basis (1, i, j, ij): element
// arithmetic, ramification data, the positive definite form T2 for the
// fixed real splitting, and maximal orders.
//
// Elements are row vectors of rational coordinates over (1, i, j, ij).

#include <string>
#include <vector>

#include "qideal/arith.hpp"
#include "qideal/lattice.hpp"
#include "qideal/scalars.hpp"

namespace qideal {

using QuatElement = Vec4q;

struct QuatAlgebra {
  Int a, b;                   // i^2 = a, j^2 = b; normalized so a > 0
  std::vector<Int> ramified;  // sorted finite ramified primes
  Int delta;                  // reduced discriminant, product of ramified primes
  Int Delta;                  // absolute discriminant delta^2 (disc_F = 1)

  bool operator==(const QuatAlgebra& o) const { return a == o.a && b == o.b; }
};

// Finite ramified places of (a,b); rejects definite algebras.
std::vector<Int> ramified_places(const Int& a, const Int& b);

// Validates squarefreeness and the Eichler condition, swaps a and b if
// needed so that a > 0, and fills in the discriminant data.
QuatAlgebra make_algebra(const Int& a, const Int& b);

QuatElement qelem(const Rat& t, const Rat& u, const Rat& v, const Rat& w);
QuatElement qone();

QuatElement qmul(const QuatAlgebra& alg, const QuatElement& x, const QuatElement& y);
QuatElement qconj(const QuatElement& x);
Rat reduced_norm(const QuatAlgebra& alg, const QuatElement& x);
Rat reduced_trace(const QuatElement& x);
QuatElement qinv(const QuatAlgebra& alg, const QuatElement& x);

// Matrices of one-sided multiplication acting on coordinate rows:
// coords(x*y) = coords(x) * right_mul_matrix(y)
// coords(x*y) = coords(y) * left_mul_matrix(x)
Mat4q right_mul_matrix(const QuatAlgebra& alg, const QuatElement& y);
Mat4q left_mul_matrix(const QuatAlgebra& alg, const QuatElement& x);

// Gram data of T2(x) = sum of squared entries of the fixed splitting
// sigma': i -> diag(sqrt a, -sqrt a), j -> [[0, b], [1, 0]].
GramForm t2_gram_ambient(const QuatAlgebra& alg);

struct Order {
  QuatAlgebra alg;
  IntLattice lattice;  // basis rows over (1, i, j, ij)
  Int reduced_disc = 0;
  Mat4q basis_q;       // rows / den
  Mat4q basis_inv;     // right-inverse: ambient coords * basis_inv = order coords

  bool contains(const QuatElement& x) const { return lattice_contains(lattice, x); }
  QuatElement basis_element(int k) const { return basis_q.row(k); }
  Vec4q to_order_coords(const QuatElement& x) const { return x * basis_inv; }
  QuatElement from_order_coords(const Vec4q& c) const { return c * basis_q; }
};

// Wraps a multiplicatively closed unital lattice as an order; checks the
// axioms and computes the reduced discriminant.
Order order_from_lattice(const QuatAlgebra& alg, const IntLattice& lat);

// T2 Gram evaluated on the order basis.
GramForm t2_gram(const Order& order);

// Deterministic maximal order containing Z<1,i,j,ij>, by radical idealizers.
Order maximal_order(const QuatAlgebra& alg);

// Lattice pO + (p-radical of O/pO); for ramified p this is the prime
// two-sided ideal P with P^2 = pO.
IntLattice p_radical(const Order& order, const Int& p);

// Left and right orders of a lattice.
IntLattice left_order_lattice(const QuatAlgebra& alg, const IntLattice& lat);
IntLattice right_order_lattice(const QuatAlgebra& alg, const IntLattice& lat);

// Text forms used by the CLI: "a,b" and "t,u,v,w" with rational entries.
QuatAlgebra parse_algebra(const std::string& s);
QuatElement parse_element(const std::string& s);
std::string format_element(const QuatElement& x);

}  // namespace qideal

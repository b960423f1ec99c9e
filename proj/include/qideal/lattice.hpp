#pragma once

// Rank-4 lattices over Z with a common denominator, in row convention:
// the lattice is the Z-span of basis.row(i) / den. Canonical form is row
// HNF (upper triangular, positive pivots, entries above a pivot reduced)
// with gcd(content(basis), den) == 1, so lattice equality is field equality.

#include <optional>
#include <set>
#include <vector>

#include "qideal/scalars.hpp"

namespace qideal {

struct IntLattice {
  Mat4i basis;
  Int den = 1;

  bool operator==(const IntLattice& o) const { return den == o.den && basis == o.basis; }
  bool operator!=(const IntLattice& o) const { return !(*this == o); }
};

// A basis of a lattice that is not necessarily in canonical form (LLL output).
struct LatticeBasis {
  Mat4i rows;
  Int den = 1;
};

// --- HNF machinery -------------------------------------------------------

// Row HNF of an m x n integer matrix; returns the nonzero rows, pivots
// left to right. If transform != nullptr it receives a unimodular U with
// U * rows == [H; 0].
MatXi hnf_rows(const MatXi& rows, MatXi* transform = nullptr);

// Integral coefficients c with c^T * rows == target, if any.
std::optional<std::vector<Int>> solve_in_span(const MatXi& rows,
                                              const std::vector<Int>& target);

// Canonical lattice from spanning rows (must have rank 4).
IntLattice lattice_from_rows(const MatXi& rows, const Int& den);
IntLattice lattice_from_rows(const MatX<Rat>& rows);

IntLattice hnf_from_generators(const MatXi& generators, const Int& den);

// --- lattice operations ---------------------------------------------------

IntLattice lattice_sum(const IntLattice& a, const IntLattice& b);
IntLattice lattice_dual(const IntLattice& a);
IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b);
IntLattice lattice_scale(const IntLattice& a, const Rat& q);

// Image {x*M : x in L} and preimage {x : x*M in L} under invertible M.
IntLattice lattice_transform(const IntLattice& a, const Mat4q& m);
IntLattice lattice_preimage(const IntLattice& a, const Mat4q& m);

bool lattice_contains(const IntLattice& a, const Vec4q& v);
bool lattice_subset(const IntLattice& sub, const IntLattice& sup);

// Positive determinant det(basis)/den^4 of the canonical basis.
Rat lattice_det(const IntLattice& a);

// gcd of all basis entries over den; primitive part has content 1.
Rat lattice_content(const IntLattice& a);
IntLattice lattice_primitive_part(const IntLattice& a);

// Rational coordinates of v with respect to the basis rows of a.
Vec4q lattice_coords(const IntLattice& a, const Vec4q& v);

// --- the positive definite form T2 ----------------------------------------

// Exact symmetric bilinear form xpart + sqrt(irr) * ypart (irr >= 0), kept
// exact so evaluations can be redone at any working precision.
struct GramForm {
  Mat4q xpart = Mat4q::Zero();
  Mat4q ypart = Mat4q::Zero();
  Int irr = 0;

  Mat4r eval() const;
  GramForm conjugated(const Mat4q& w) const;  // w * G * w^T
  Real value(const Vec4q& v) const;           // v G v^T
  bool positive_definite() const;
  size_t max_entry_bits() const;
};

GramForm gram_identity();

// LLL (delta = 0.99) of L with respect to G; same lattice, reduced rows.
LatticeBasis lll_reduce(const IntLattice& lat, const GramForm& gram);

// --- enumeration by increasing T2 ------------------------------------------

// Stateful Kannan-Fincke-Pohst stream: nonzero vectors of the lattice by
// nondecreasing T2, one representative per +-pair, ties in lexicographic
// order of the ambient row. Single-owner mutable state.
class Enumerator {
 public:
  Enumerator(const IntLattice& lat, const GramForm& gram);

  // Next vector, as ambient coordinates row/den.
  Vec4q next();

  // T2 value of the last vector returned.
  Real last_value() const { return last_value_; }

  size_t emitted_count() const { return emitted_.size(); }

 private:
  void refill();

  IntLattice lat_;
  GramForm gram_;            // ambient form
  Mat4i rows_;               // reduced basis (rows over den_)
  Int den_ = 1;
  GramForm basis_gram_;      // exact Gram of rows_/den_
  Real radius_;
  std::vector<std::pair<Real, Vec4i>> queue_;  // pending, sorted ascending; back = next
  std::set<std::vector<Int>> emitted_;
  Real last_value_ = 0;
  unsigned precision_;
};

}  // namespace qideal

#include "qideal/lattice.hpp"

#include <algorithm>
#include <functional>

namespace qideal {

namespace {

void row_gcd_combine(MatXi& a, MatXi* u, long r, long i, long c) {
  // Unimodular combination making a(i,c) = 0 and a(r,c) = gcd.
  Int g, s, t;
  mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(),
             a(r, c).backend().data(), a(i, c).backend().data());
  Int ag = a(r, c) / g, bg = a(i, c) / g;
  for (long j = 0; j < a.cols(); ++j) {
    Int tmp = s * a(r, j) + t * a(i, j);
    a(i, j) = ag * a(i, j) - bg * a(r, j);
    a(r, j) = tmp;
  }
  if (u) {
    for (long j = 0; j < u->cols(); ++j) {
      Int tmp = s * (*u)(r, j) + t * (*u)(i, j);
      (*u)(i, j) = ag * (*u)(i, j) - bg * (*u)(r, j);
      (*u)(r, j) = tmp;
    }
  }
}

}  // namespace

MatXi hnf_rows(const MatXi& rows, MatXi* transform) {
  MatXi a = rows;
  long m = a.rows(), n = a.cols();
  MatXi u;
  if (transform) u = MatXi::Identity(m, m);
  MatXi* up = transform ? &u : nullptr;
  long r = 0;
  for (long c = 0; c < n && r < m; ++c) {
    long piv = -1;
    for (long i = r; i < m; ++i)
      if (a(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) {
      a.row(r).swap(a.row(piv));
      if (up) up->row(r).swap(up->row(piv));
    }
    for (long i = r + 1; i < m; ++i)
      if (a(i, c) != 0) row_gcd_combine(a, up, r, i, c);
    if (a(r, c) < 0) {
      a.row(r) = -a.row(r);
      if (up) up->row(r) = -up->row(r);
    }
    for (long i = 0; i < r; ++i) {
      Int q = fdiv(a(i, c), a(r, c));
      if (q != 0) {
        a.row(i) -= (q * a.row(r).array()).matrix();
        if (up) up->row(i) -= (q * up->row(r).array()).matrix();
      }
    }
    ++r;
  }
  if (transform) *transform = u;
  return a.topRows(r);
}

std::optional<std::vector<Int>> solve_in_span(const MatXi& rows,
                                              const std::vector<Int>& target) {
  QIDEAL_CHECK(size_t(rows.cols()) == target.size(), "solve_in_span: shape");
  MatXi u;
  MatXi h = hnf_rows(rows, &u);
  std::vector<Int> t = target;
  std::vector<Int> y(h.rows(), Int(0));
  for (long k = 0; k < h.rows(); ++k) {
    long pc = 0;
    while (pc < h.cols() && h(k, pc) == 0) ++pc;
    if (t[pc] % h(k, pc) != 0) {
      // pivot does not divide; maybe a later reduction fixes nothing -- no solution
    }
    Int q = t[pc] / h(k, pc);
    if (q * h(k, pc) != t[pc]) return std::nullopt;
    y[k] = q;
    for (long j = 0; j < h.cols(); ++j) t[j] -= q * h(k, j);
  }
  for (const Int& v : t)
    if (v != 0) return std::nullopt;
  std::vector<Int> c(rows.rows(), Int(0));
  for (long k = 0; k < h.rows(); ++k)
    for (long j = 0; j < rows.rows(); ++j) c[j] += y[k] * u(k, j);
  return c;
}

IntLattice lattice_from_rows(const MatXi& rows, const Int& den) {
  QIDEAL_CHECK(den > 0, "lattice: nonpositive denominator");
  MatXi h = hnf_rows(rows);
  if (h.rows() != 4)
    throw input_error("lattice_from_rows: generators are rank-deficient");
  IntLattice l;
  l.basis = h;
  l.den = den;
  Int g = den;
  for (int i = 0; i < 4 && g != 1; ++i)
    for (int j = i; j < 4; ++j) g = gcd(g, l.basis(i, j));
  if (g > 1) {
    l.den /= g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) l.basis(i, j) /= g;
  }
  return l;
}

IntLattice lattice_from_rows(const MatX<Rat>& rows) {
  Int den = 1;
  for (long i = 0; i < rows.rows(); ++i)
    for (long j = 0; j < rows.cols(); ++j) den = lcm(den, denominator(rows(i, j)));
  MatXi scaled(rows.rows(), rows.cols());
  for (long i = 0; i < rows.rows(); ++i)
    for (long j = 0; j < rows.cols(); ++j)
      scaled(i, j) = numerator(rows(i, j)) * (den / denominator(rows(i, j)));
  return lattice_from_rows(scaled, den);
}

IntLattice hnf_from_generators(const MatXi& generators, const Int& den) {
  return lattice_from_rows(generators, den);
}

IntLattice lattice_sum(const IntLattice& a, const IntLattice& b) {
  Int l = lcm(a.den, b.den);
  MatXi stacked(8, 4);
  stacked.topRows(4) = a.basis * (l / a.den);
  stacked.bottomRows(4) = b.basis * (l / b.den);
  return lattice_from_rows(stacked, l);
}

IntLattice lattice_dual(const IntLattice& a) {
  Mat4q inv = a.basis.cast<Rat>().eval().inverse();
  MatX<Rat> rows = (inv.transpose() * Rat(a.den)).eval();
  return lattice_from_rows(rows);
}

IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b) {
  return lattice_dual(lattice_sum(lattice_dual(a), lattice_dual(b)));
}

IntLattice lattice_scale(const IntLattice& a, const Rat& q) {
  QIDEAL_CHECK(q > 0, "lattice_scale: scale must be positive");
  IntLattice l;
  MatX<Rat> rows = (a.basis.cast<Rat>() * (q / Rat(a.den))).eval();
  return lattice_from_rows(rows);
}

IntLattice lattice_transform(const IntLattice& a, const Mat4q& m) {
  MatX<Rat> rows = (a.basis.cast<Rat>() * m / Rat(a.den)).eval();
  return lattice_from_rows(rows);
}

IntLattice lattice_preimage(const IntLattice& a, const Mat4q& m) {
  return lattice_transform(a, m.inverse().eval());
}

Vec4q lattice_coords(const IntLattice& a, const Vec4q& v) {
  Mat4q inv = a.basis.cast<Rat>().eval().inverse();
  return (v * inv * Rat(a.den)).eval();
}

bool lattice_contains(const IntLattice& a, const Vec4q& v) {
  Vec4q c = lattice_coords(a, v);
  for (int i = 0; i < 4; ++i)
    if (denominator(c(i)) != 1) return false;
  return true;
}

bool lattice_subset(const IntLattice& sub, const IntLattice& sup) {
  for (int i = 0; i < 4; ++i) {
    Vec4q v = sub.basis.row(i).cast<Rat>() / Rat(sub.den);
    if (!lattice_contains(sup, v)) return false;
  }
  return true;
}

Rat lattice_det(const IntLattice& a) {
  Rat d = Rat(a.basis.determinant()) / Rat(pow_int(a.den, 4));
  QIDEAL_CHECK(d > 0, "lattice_det: canonical basis must have positive det");
  return d;
}

Rat lattice_content(const IntLattice& a) {
  Int g = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) g = gcd(g, a.basis(i, j));
  return Rat(g, a.den);
}

IntLattice lattice_primitive_part(const IntLattice& a) {
  return lattice_scale(a, Rat(1) / lattice_content(a));
}

// --- GramForm ---------------------------------------------------------------

Mat4r GramForm::eval() const {
  Mat4r m;
  Real s = (irr == 0) ? Real(0) : sqrt(Real(irr));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m(i, j) = Real(xpart(i, j)) + s * Real(ypart(i, j));
  return m;
}

GramForm GramForm::conjugated(const Mat4q& w) const {
  GramForm g;
  g.xpart = w * xpart * w.transpose();
  g.ypart = w * ypart * w.transpose();
  g.irr = irr;
  return g;
}

Real GramForm::value(const Vec4q& v) const {
  Rat xv = (v * xpart * v.transpose())(0, 0);
  Rat yv = (v * ypart * v.transpose())(0, 0);
  Real s = (irr == 0) ? Real(0) : sqrt(Real(irr));
  return Real(xv) + s * Real(yv);
}

bool GramForm::positive_definite() const {
  Mat4r m = eval();
  for (int k = 1; k <= 4; ++k)
    if (m.topLeftCorner(k, k).determinant() <= 0) return false;
  return true;
}

size_t GramForm::max_entry_bits() const {
  size_t b = bit_length(irr);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      b = std::max(b, bit_length(numerator(xpart(i, j))) + bit_length(denominator(xpart(i, j))));
      b = std::max(b, bit_length(numerator(ypart(i, j))) + bit_length(denominator(ypart(i, j))));
    }
  return b;
}

GramForm gram_identity() {
  GramForm g;
  g.xpart = Mat4q::Identity();
  return g;
}

namespace {

// sign of x + y*sqrt(a)
int quad_sign(const Rat& x, const Rat& y, const Int& a) {
  if (a == 0 || y == 0) return sign_of(x);
  if (x == 0) return sign_of(y);
  if (x > 0 && y > 0) return 1;
  if (x < 0 && y < 0) return -1;
  Rat t = x * x - Rat(a) * y * y;
  if (t == 0) return 0;
  return t > 0 ? sign_of(x) : sign_of(y);
}

Int round_to_int(const Real& x) {
  Int r;
  Real h = floor(x + Real(0.5));
  mpfr_get_z(r.backend().data(), h.backend().data(), MPFR_RNDN);
  return r;
}

unsigned working_digits(const GramForm& g) {
  size_t bits = g.max_entry_bits();
  return std::max<unsigned>(kDefaultPrecisionDigits, unsigned(bits * 2 / 3 + 30));
}

// Core LLL pass at the current precision; returns the unimodular transform.
// Throws internal_error when the iteration budget is hit (caller retries
// at doubled precision).
Mat4i lll_core(const GramForm& basis_gram) {
  Mat4i u = Mat4i::Identity();
  const Real delta(0.99);
  Real mu[4][4];
  Real bst[4];

  auto recompute = [&]() {
    GramForm cg = basis_gram.conjugated(u.cast<Rat>());
    Mat4r g = cg.eval();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < i; ++j) {
        Real acc = g(i, j);
        for (int k = 0; k < j; ++k) acc -= mu[i][k] * mu[j][k] * bst[k];
        if (bst[j] <= 0) throw internal_error("lll: nonpositive projection");
        mu[i][j] = acc / bst[j];
      }
      Real acc = g(i, i);
      for (int k = 0; k < i; ++k) acc -= mu[i][k] * mu[i][k] * bst[k];
      bst[i] = acc;
      if (bst[i] <= 0) throw internal_error("lll: form not positive definite at precision");
    }
  };

  recompute();
  int k = 1;
  size_t iters = 0;
  while (k < 4) {
    if (++iters > 20000) throw internal_error("lll: iteration budget");
    for (int j = k - 1; j >= 0; --j) {
      Int r = round_to_int(mu[k][j]);
      if (r != 0) {
        u.row(k) -= (r * u.row(j).array()).matrix();
        recompute();
      }
    }
    if (bst[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bst[k - 1]) {
      ++k;
    } else {
      u.row(k).swap(u.row(k - 1));
      recompute();
      k = std::max(k - 1, 1);
    }
  }
  QIDEAL_CHECK(abs(u.determinant()) == 1, "lll: transform not unimodular");
  return u;
}

}  // namespace

LatticeBasis lll_reduce(const IntLattice& lat, const GramForm& gram) {
  GramForm basis_gram = gram.conjugated(lat.basis.cast<Rat>() / Rat(lat.den));
  unsigned digits = working_digits(basis_gram);
  for (int attempt = 0;; ++attempt) {
    PrecisionGuard guard(digits);
    try {
      Mat4i u = lll_core(basis_gram);
      return LatticeBasis{u * lat.basis, lat.den};
    } catch (const internal_error&) {
      if (attempt >= 3) throw;
      digits *= 2;
    }
  }
}

// --- Enumerator -------------------------------------------------------------

Enumerator::Enumerator(const IntLattice& lat, const GramForm& gram)
    : lat_(lat), gram_(gram) {
  LatticeBasis red = lll_reduce(lat, gram);
  rows_ = red.rows;
  den_ = red.den;
  basis_gram_ = gram.conjugated(rows_.cast<Rat>() / Rat(den_));
  precision_ = working_digits(basis_gram_);
  radius_ = 0;
}

void Enumerator::refill() {
  PrecisionGuard guard(precision_);
  Mat4r g = basis_gram_.eval();

  // Gram-Schmidt data for the quadratic form in the x-coordinates.
  Real mu[4][4];
  Real d[4];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      Real acc = g(i, j);
      for (int k = 0; k < j; ++k) acc -= mu[i][k] * mu[j][k] * d[k];
      mu[i][j] = acc / d[j];
    }
    Real acc = g(i, i);
    for (int k = 0; k < i; ++k) acc -= mu[i][k] * mu[i][k] * d[k];
    d[i] = acc;
    QIDEAL_CHECK(d[i] > 0, "enumerator: form not positive definite");
  }

  if (radius_ == 0) {
    Real m = g(0, 0);
    for (int i = 1; i < 4; ++i) m = std::min(m, g(i, i));
    radius_ = m * Real("1.0000001") + Real("1e-30");
  } else {
    radius_ *= 2;
  }
  Real bound = radius_ * (1 + Real("1e-25"));

  std::vector<std::pair<Real, Vec4i>> found;
  Vec4i x = Vec4i::Zero();
  // depth-first over coordinates 3..0 with +-1 widened integer ranges
  auto center_at = [&](int i) {
    Real c = 0;
    for (int j = i + 1; j < 4; ++j) c += mu[j][i] * Real(x(j));
    return c;
  };
  std::function<void(int, Real)> descend = [&](int i, Real partial) {
    if (i < 0) {
      if (x == Vec4i::Zero()) return;
      found.emplace_back(partial, x);
      return;
    }
    Real c = center_at(i);
    Real rem = bound - partial;
    if (rem < 0) return;
    Real half = sqrt(rem / d[i]);
    Int lo = round_to_int(floor(-c - half)) - 1;
    Int hi = round_to_int(ceil(-c + half)) + 1;
    for (Int v = lo; v <= hi; ++v) {
      x(i) = v;
      Real t = Real(v) + c;
      Real np = partial + d[i] * t * t;
      if (np <= bound) descend(i - 1, np);
    }
    x(i) = 0;
  };
  descend(3, Real(0));

  // exact filter, sign canonicalization, dedup, exact ordering
  struct Cand {
    Rat xv, yv;
    Vec4i row;
  };
  std::vector<Cand> cands;
  std::set<std::vector<Int>> batch_seen;
  for (auto& [val, xc] : found) {
    Vec4i row = xc * rows_;
    int s = 0;
    for (int j = 0; j < 4 && s == 0; ++j) s = sign_of(row(j));
    if (s < 0) row = -row;
    std::vector<Int> key{row(0), row(1), row(2), row(3)};
    if (emitted_.count(key) || batch_seen.count(key)) continue;
    Vec4q xq = xc.cast<Rat>();
    Rat xv = (xq * basis_gram_.xpart * xq.transpose())(0, 0);
    Rat yv = (xq * basis_gram_.ypart * xq.transpose())(0, 0);
    // exact radius test: xv + yv*sqrt(irr) <= radius (compared against the
    // float bound; borderline vectors are kept, ordering below is exact)
    batch_seen.insert(std::move(key));
    cands.push_back(Cand{xv, yv, row});
  }
  std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
    int s = quad_sign(a.xv - b.xv, a.yv - b.yv, basis_gram_.irr);
    if (s != 0) return s > 0;  // descending by value
    for (int j = 0; j < 4; ++j)
      if (a.row(j) != b.row(j)) return a.row(j) > b.row(j);  // descending lex
    return false;
  });
  queue_.clear();
  for (auto& c : cands) {
    Real v = Real(c.xv);
    if (basis_gram_.irr != 0) v += sqrt(Real(basis_gram_.irr)) * Real(c.yv);
    queue_.emplace_back(v, c.row);
  }
}

Vec4q Enumerator::next() {
  while (queue_.empty()) refill();
  auto [val, row] = queue_.back();
  queue_.pop_back();
  last_value_ = val;
  emitted_.insert({row(0), row(1), row(2), row(3)});
  return row.cast<Rat>() / Rat(den_);
}

}  // namespace qideal

#include "qideal/quat.hpp"

#include <algorithm>
#include <sstream>

namespace qideal {

namespace {

bool squarefree(const Int& n) {
  if (n == 0) return false;
  Factored f = factor_integer(n);
  for (const auto& [p, e] : f.factors)
    if (e > 1) return false;
  return true;
}

}  // namespace

std::vector<Int> ramified_places(const Int& a, const Int& b) {
  QIDEAL_CHECK(a != 0 && b != 0, "ramified_places: zero parameter");
  if (a < 0 && b < 0)
    throw input_error("definite algebra: the method requires the Eichler condition");
  std::vector<Int> candidates{2};
  for (const Int& n : {abs(a), abs(b)}) {
    Factored f = factor_integer(n);
    for (const auto& [p, e] : f.factors) candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<Int> ram;
  for (const Int& p : candidates)
    if (hilbert_symbol(a, b, p) == -1) ram.push_back(p);
  QIDEAL_CHECK(ram.size() % 2 == 0, "ramified set must have even cardinality over Q");
  return ram;
}

QuatAlgebra make_algebra(const Int& a0, const Int& b0) {
  if (!squarefree(a0) || !squarefree(b0))
    throw input_error("algebra parameters must be squarefree and nonzero");
  Int a = a0, b = b0;
  if (a < 0) std::swap(a, b);  // indefinite: at least one positive
  QuatAlgebra alg;
  alg.a = a;
  alg.b = b;
  alg.ramified = ramified_places(a, b);
  alg.delta = 1;
  for (const Int& p : alg.ramified) alg.delta *= p;
  alg.Delta = alg.delta * alg.delta;
  return alg;
}

QuatElement qelem(const Rat& t, const Rat& u, const Rat& v, const Rat& w) {
  QuatElement x;
  x << t, u, v, w;
  return x;
}

QuatElement qone() { return qelem(1, 0, 0, 0); }

QuatElement qmul(const QuatAlgebra& alg, const QuatElement& x, const QuatElement& y) {
  const Rat &t = x(0), &u = x(1), &v = x(2), &w = x(3);
  const Rat &T = y(0), &U = y(1), &V = y(2), &W = y(3);
  Rat a(alg.a), b(alg.b);
  return qelem(t * T + a * u * U + b * v * V - a * b * w * W,
               t * U + u * T - b * v * W + b * w * V,
               t * V + v * T + a * u * W - a * w * U,
               t * W + w * T + u * V - v * U);
}

QuatElement qconj(const QuatElement& x) { return qelem(x(0), -x(1), -x(2), -x(3)); }

Rat reduced_norm(const QuatAlgebra& alg, const QuatElement& x) {
  Rat a(alg.a), b(alg.b);
  return x(0) * x(0) - a * x(1) * x(1) - b * x(2) * x(2) + a * b * x(3) * x(3);
}

Rat reduced_trace(const QuatElement& x) { return 2 * x(0); }

QuatElement qinv(const QuatAlgebra& alg, const QuatElement& x) {
  Rat n = reduced_norm(alg, x);
  QIDEAL_CHECK(n != 0, "qinv: zero divisor");
  return qconj(x) / n;
}

Mat4q right_mul_matrix(const QuatAlgebra& alg, const QuatElement& y) {
  Mat4q m;
  m.row(0) = qmul(alg, qelem(1, 0, 0, 0), y);
  m.row(1) = qmul(alg, qelem(0, 1, 0, 0), y);
  m.row(2) = qmul(alg, qelem(0, 0, 1, 0), y);
  m.row(3) = qmul(alg, qelem(0, 0, 0, 1), y);
  return m;
}

Mat4q left_mul_matrix(const QuatAlgebra& alg, const QuatElement& x) {
  Mat4q m;
  m.row(0) = qmul(alg, x, qelem(1, 0, 0, 0));
  m.row(1) = qmul(alg, x, qelem(0, 1, 0, 0));
  m.row(2) = qmul(alg, x, qelem(0, 0, 1, 0));
  m.row(3) = qmul(alg, x, qelem(0, 0, 0, 1));
  return m;
}

GramForm t2_gram_ambient(const QuatAlgebra& alg) {
  // sigma'(t+ui+vj+wij) = [[t+u s, b(v+w s)], [v-w s, t-u s]] with s = sqrt(a):
  // T2 = 2t^2 + 2a u^2 + (b^2+1)(v^2 + a w^2) + 2(b^2-1) v w s
  GramForm g;
  Rat a(alg.a), b(alg.b);
  g.xpart = Mat4q::Zero();
  g.ypart = Mat4q::Zero();
  g.xpart(0, 0) = 2;
  g.xpart(1, 1) = 2 * a;
  g.xpart(2, 2) = b * b + 1;
  g.xpart(3, 3) = a * (b * b + 1);
  g.ypart(2, 3) = b * b - 1;
  g.ypart(3, 2) = b * b - 1;
  g.irr = alg.a;
  QIDEAL_CHECK(g.positive_definite(), "T2 must be positive definite");
  return g;
}

GramForm t2_gram(const Order& order) {
  return t2_gram_ambient(order.alg).conjugated(order.basis_q);
}

Order order_from_lattice(const QuatAlgebra& alg, const IntLattice& lat) {
  Order o;
  o.alg = alg;
  o.lattice = lat;
  o.basis_q = lat.basis.cast<Rat>() / Rat(lat.den);
  o.basis_inv = o.basis_q.inverse().eval();
  QIDEAL_CHECK(lattice_contains(lat, qone()), "order must contain 1");
  Mat4q tr;
  for (int s = 0; s < 4; ++s) {
    for (int t = 0; t < 4; ++t) {
      QuatElement prod = qmul(alg, o.basis_element(s), o.basis_element(t));
      QIDEAL_CHECK(lattice_contains(lat, prod), "order must be closed under multiplication");
      tr(s, t) = reduced_trace(prod);
    }
  }
  Rat disc = tr.determinant();
  QIDEAL_CHECK(denominator(disc) == 1, "order discriminant must be integral");
  Int d = numerator(abs(disc));
  Int rd = isqrt(d);
  QIDEAL_CHECK(rd * rd == d, "order discriminant must be a square");
  o.reduced_disc = rd;
  return o;
}

namespace {

// Kernel of a symmetric integer matrix mod an odd prime, as 0/1.. coordinate rows.
std::vector<Vec4i> kernel_mod_p(Mat4i m, const Int& p) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = mod_reduce(m(i, j), p);
  // Row-reduce [m | I] over F_p; rows of the I-block aligned with zero rows
  // of the reduced m form a basis of the left kernel {x : x m = 0}.
  Eigen::Matrix<Int, 4, 8> w;
  w.leftCols(4) = m;
  w.rightCols(4) = Mat4i::Identity();
  int rank = 0;
  for (int c = 0; c < 4 && rank < 4; ++c) {
    int piv = -1;
    for (int i = rank; i < 4; ++i)
      if (mod_reduce(w(i, c), p) != 0) { piv = i; break; }
    if (piv < 0) continue;
    w.row(rank).swap(w.row(piv));
    Int inv = mod_inverse(mod_reduce(w(rank, c), p), p);
    for (int j = 0; j < 8; ++j) w(rank, j) = mod_reduce(w(rank, j) * inv, p);
    for (int i = 0; i < 4; ++i) {
      if (i == rank) continue;
      Int f = mod_reduce(w(i, c), p);
      if (f != 0)
        for (int j = 0; j < 8; ++j) w(i, j) = mod_reduce(w(i, j) - f * w(rank, j), p);
    }
    ++rank;
  }
  std::vector<Vec4i> ker;
  for (int i = rank; i < 4; ++i) ker.push_back(w.row(i).rightCols<4>());
  return ker;
}

bool nilpotent_mod2(const QuatAlgebra& alg, const Order& o, const Vec4i& coords) {
  // x given by order coords mod 2; check x^4 = 0 in O/2O
  Vec4q x = coords.cast<Rat>() * o.basis_q;
  QuatElement acc = x;
  for (int k = 0; k < 2; ++k) {  // square twice: x^4
    acc = qmul(alg, acc, acc);
    Vec4q c = o.to_order_coords(acc);
    Vec4q red;
    for (int t = 0; t < 4; ++t) {
      QIDEAL_CHECK(denominator(c(t)) == 1, "mod-2 radical: element left the order");
      red(t) = Rat(mod_reduce(numerator(c(t)), 2));
    }
    acc = red * o.basis_q;
  }
  Vec4q c = o.to_order_coords(acc);
  for (int t = 0; t < 4; ++t)
    if (mod_reduce(numerator(c(t)), 2) != 0) return false;
  return true;
}

std::vector<Vec4i> radical_mod2(const Order& o) {
  // brute force over the 16 classes: rad = { x : x*y nilpotent for all y }
  const QuatAlgebra& alg = o.alg;
  std::vector<Vec4i> members;
  for (int mask = 1; mask < 16; ++mask) {
    Vec4i xc;
    for (int t = 0; t < 4; ++t) xc(t) = (mask >> t) & 1;
    QuatElement x = xc.cast<Rat>() * o.basis_q;
    bool ok = true;
    for (int ym = 0; ym < 16 && ok; ++ym) {
      Vec4i yc;
      for (int t = 0; t < 4; ++t) yc(t) = (ym >> t) & 1;
      QuatElement y = yc.cast<Rat>() * o.basis_q;
      QuatElement xy = qmul(alg, x, y);
      Vec4q c = o.to_order_coords(xy);
      Vec4i cm;
      for (int t = 0; t < 4; ++t) cm(t) = mod_reduce(numerator(c(t)), 2);
      if (!nilpotent_mod2(alg, o, cm)) ok = false;
    }
    if (ok) members.push_back(xc);
  }
  return members;
}

}  // namespace

IntLattice p_radical(const Order& order, const Int& p) {
  std::vector<Vec4i> rad_coords;
  if (p == 2) {
    rad_coords = radical_mod2(order);
  } else {
    Mat4i tr;
    for (int s = 0; s < 4; ++s)
      for (int t = 0; t < 4; ++t) {
        Rat v = reduced_trace(qmul(order.alg, order.basis_element(s), order.basis_element(t)));
        QIDEAL_CHECK(denominator(v) == 1, "trace form must be integral on an order");
        tr(s, t) = numerator(v);
      }
    rad_coords = kernel_mod_p(tr, p);
  }
  MatXi rows(4 + long(rad_coords.size()), 4);
  rows.topRows(4) = order.lattice.basis * p;
  for (size_t k = 0; k < rad_coords.size(); ++k) {
    Vec4q amb = rad_coords[k].cast<Rat>() * order.basis_q;
    for (int j = 0; j < 4; ++j) {
      Rat scaled = amb(j) * Rat(order.lattice.den);
      QIDEAL_CHECK(denominator(scaled) == 1, "radical lift must live in the order lattice scale");
      rows(4 + long(k), j) = numerator(scaled);
    }
  }
  return lattice_from_rows(rows, order.lattice.den);
}

IntLattice left_order_lattice(const QuatAlgebra& alg, const IntLattice& lat) {
  IntLattice result;
  bool first = true;
  for (int m = 0; m < 4; ++m) {
    QuatElement g = lat.basis.row(m).cast<Rat>() / Rat(lat.den);
    IntLattice pre = lattice_preimage(lat, right_mul_matrix(alg, g));
    result = first ? pre : lattice_intersect(result, pre);
    first = false;
  }
  return result;
}

IntLattice right_order_lattice(const QuatAlgebra& alg, const IntLattice& lat) {
  IntLattice result;
  bool first = true;
  for (int m = 0; m < 4; ++m) {
    QuatElement g = lat.basis.row(m).cast<Rat>() / Rat(lat.den);
    IntLattice pre = lattice_preimage(lat, left_mul_matrix(alg, g));
    result = first ? pre : lattice_intersect(result, pre);
    first = false;
  }
  return result;
}

Order maximal_order(const QuatAlgebra& alg) {
  Order o = order_from_lattice(alg, lattice_from_rows(MatXi(Mat4i::Identity()), 1));
  while (o.reduced_disc != alg.delta) {
    QIDEAL_CHECK(o.reduced_disc % alg.delta == 0, "reduced discriminant must be a multiple of delta");
    Factored extra = factor_integer(o.reduced_disc / alg.delta);
    QIDEAL_CHECK(!extra.factors.empty(), "non-maximal order with trivial excess");
    Int p = extra.factors.front().first;
    IntLattice rad = p_radical(o, p);
    IntLattice bigger = left_order_lattice(alg, rad);
    Order next = order_from_lattice(alg, bigger);
    QIDEAL_CHECK(next.reduced_disc < o.reduced_disc, "radical idealizer made no progress");
    o = next;
  }
  return o;
}

QuatAlgebra parse_algebra(const std::string& s) {
  std::istringstream in(s);
  std::string ta, tb;
  if (!std::getline(in, ta, ',') || !std::getline(in, tb))
    throw input_error("algebra spec must be \"a,b\"");
  try {
    return make_algebra(Int(ta), Int(tb));
  } catch (const std::exception& e) {
    throw input_error(std::string("bad algebra spec: ") + e.what());
  }
}

namespace {
Rat parse_rat(const std::string& tok) {
  std::string t = tok;
  t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' ' || c == '\t'; }),
          t.end());
  if (t.empty()) throw input_error("empty rational token");
  auto slash = t.find('/');
  if (slash == std::string::npos) return Rat(Int(t));
  return Rat(Int(t.substr(0, slash)), Int(t.substr(slash + 1)));
}
}  // namespace

QuatElement parse_element(const std::string& s) {
  std::istringstream in(s);
  std::string tok;
  std::vector<Rat> vals;
  while (std::getline(in, tok, ',')) vals.push_back(parse_rat(tok));
  if (vals.size() != 4) throw input_error("element spec must be \"t,u,v,w\"");
  return qelem(vals[0], vals[1], vals[2], vals[3]);
}

std::string format_element(const QuatElement& x) {
  std::ostringstream out;
  for (int k = 0; k < 4; ++k) {
    if (k) out << ",";
    out << x(k);
  }
  return out.str();
}

}  // namespace qideal

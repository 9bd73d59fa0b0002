// Isometries of small lattices: validation, positive-cone behaviour, order,
// characteristic data and polarization orbits.

#ifndef GIZCERT_ISOMETRY_HPP_
#define GIZCERT_ISOMETRY_HPP_

#include "gizcert/arith.hpp"
#include "gizcert/discgroup.hpp"
#include "gizcert/lattice.hpp"
#include "gizcert/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gizcert {

inline bool is_isometry(const GramLattice& g, const IntMatrix& m) {
  if (m.rows() != g.rank() || m.cols() != g.rank())
    throw usage_error("isometry matrix shape does not match lattice rank");
  return preserves_form(g, m);
}

// Integer matrix M acting on coefficient columns with M^T G M = G.
class IsometryMatrix {
 public:
  IsometryMatrix(GramLattice g, IntMatrix m) : gram_(std::move(g)), m_(std::move(m)) {
    if (!is_isometry(gram_, m_)) throw usage_error("matrix is not an isometry of the lattice");
  }

  const IntMatrix& matrix() const { return m_; }
  const GramLattice& lattice() const { return gram_; }

  IsometryMatrix operator*(const IsometryMatrix& o) const {
    return IsometryMatrix(gram_, m_ * o.m_);
  }
  IsometryMatrix inverse() const { return IsometryMatrix(gram_, unimodular_inverse(m_)); }
  LatticeVector apply(const LatticeVector& v) const { return m_ * v; }

 private:
  GramLattice gram_;
  IntMatrix m_;
};

// In signature (1,1) an isometry maps the positive cone to itself or to its
// negative; the sign shows up on any interior vector h.
inline bool preserves_positive_cone(const IsometryMatrix& m, const LatticeVector& h) {
  const GramLattice& g = m.lattice();
  if (signature(g) != Signature{1, 1})
    throw usage_error("positive cone test requires signature (1,1)");
  if (norm(g, h) <= 0) throw usage_error("reference vector is not in the positive cone");
  return inner(g, m.apply(h), h) > 0;
}

struct OrderResult {
  bool infinite = false;
  int k = 0;  // valid when !infinite

  static OrderResult finite(int k) { return {false, k}; }
  static OrderResult infinite_order() { return {true, 0}; }
  friend bool operator==(const OrderResult&, const OrderResult&) = default;
  std::string str() const { return infinite ? "infinite" : std::to_string(k); }
};

// Finite orders in GL_2(Z) divide 12 (they are 1, 2, 3, 4 or 6).
inline OrderResult order(const IntMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw usage_error("order is only supported in rank 2");
  const IntMatrix id = IntMatrix::identity(2);
  IntMatrix p = m;
  for (int k = 1; k <= 12; ++k) {
    if (p == id) return OrderResult::finite(k);
    p = p * m;
  }
  return OrderResult::infinite_order();
}

inline OrderResult order(const IsometryMatrix& m) { return order(m.matrix()); }

// p + q sqrt(d); d squarefree, or d = 0 when q = 0.
struct QuadraticSurd {
  Rational p;
  Rational q;
  Int d;

  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;

  std::string str() const {
    if (q == 0 || d == 0) return to_string(p);
    std::string out;
    if (p != 0) out = to_string(p) + (q > 0 ? " + " : " - ");
    else if (q < 0) out = "-";
    Rational aq = q < 0 ? Rational(-q) : q;
    if (aq != 1) out += to_string(aq);
    return out + "√" + d.str();
  }
};

struct CharData {
  Int trace;
  Int det;
  // Real root of largest absolute value, if the roots are real.
  std::optional<QuadraticSurd> dominant_root;

  std::string poly_str() const {
    std::string s = "x^2";
    if (trace != 0) s += (trace > 0 ? " - " : " + ") + abs(trace).str() + "x";
    if (det != 0) s += (det > 0 ? " + " : " - ") + abs(det).str();
    return s;
  }
};

inline CharData char_poly_rank2(const IntMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw usage_error("char_poly_rank2 needs a 2x2 matrix");
  CharData c;
  c.trace = m(0, 0) + m(1, 1);
  c.det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Int disc = c.trace * c.trace - 4 * c.det;
  if (disc < 0) return c;
  const int dir = c.trace < 0 ? -1 : 1;
  if (disc == 0) {
    c.dominant_root = QuadraticSurd{Rational(c.trace, 2), 0, 0};
  } else if (is_square(disc)) {
    c.dominant_root = QuadraticSurd{Rational(c.trace + dir * isqrt(disc), 2), 0, 0};
  } else {
    auto [s, d] = square_part(disc);
    c.dominant_root = QuadraticSurd{Rational(c.trace, 2), Rational(dir * s, 2), d};
  }
  return c;
}

inline CharData char_poly_rank2(const IsometryMatrix& m) { return char_poly_rank2(m.matrix()); }

// Exact test whether x = p + q sqrt(d) satisfies x^2 - trace x + det = 0.
inline bool is_char_root(const CharData& c, const QuadraticSurd& x) {
  // x^2 = p^2 + q^2 d + 2 p q sqrt(d)
  const Rational d(x.d);
  const Rational rational_part = x.p * x.p + x.q * x.q * d - Rational(c.trace) * x.p + Rational(c.det);
  const Rational surd_part = 2 * x.p * x.q - Rational(c.trace) * x.q;
  return rational_part == 0 && (surd_part == 0 || x.d == 0);
}

struct OrbitPoint {
  unsigned k;
  LatticeVector image;  // M^k h
  Int degree;           // inner(M^k h, h)
};

inline std::vector<OrbitPoint> polarization_orbit(const IsometryMatrix& m, const LatticeVector& h,
                                                  unsigned k_max) {
  if (k_max < 1) throw usage_error("k_max must be at least 1");
  check_dim(m.lattice(), h);
  std::vector<OrbitPoint> out;
  LatticeVector v = h;
  for (unsigned k = 0; k <= k_max; ++k) {
    out.push_back({k, v, inner(m.lattice(), v, h)});
    v = m.apply(v);
  }
  return out;
}

inline bool moves_polarization(const IsometryMatrix& m, const LatticeVector& h) {
  return m.apply(h) != h;
}

}  // namespace gizcert

#endif  // GIZCERT_ISOMETRY_HPP_

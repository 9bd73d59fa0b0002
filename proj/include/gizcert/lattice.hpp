// Integral lattices of small rank given by a Gram matrix on a fixed basis.

#ifndef GIZCERT_LATTICE_HPP_
#define GIZCERT_LATTICE_HPP_

#include "gizcert/arith.hpp"
#include "gizcert/matrix.hpp"

#include <cstddef>
#include <string>

namespace gizcert {

// Coefficients of a class with respect to the lattice basis h_1..h_rank.
using LatticeVector = IntVector;

struct Signature {
  int positive = 0;
  int negative = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
  std::string str() const {
    return "(" + std::to_string(positive) + "," + std::to_string(negative) + ")";
  }
};

// Nondegenerate integral symmetric bilinear form of rank 1..4.
// Immutable after construction.
class GramLattice {
 public:
  static constexpr std::size_t kMaxRank = 4;

  explicit GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_square()) throw usage_error("Gram matrix must be square");
    if (gram_.rows() < 1 || gram_.rows() > kMaxRank)
      throw usage_error("Gram matrix rank must be in 1..4");
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (gram_(i, j) != gram_(j, i))
          throw usage_error("Gram matrix must be symmetric");
    det_ = gizcert::determinant(gram_);
    if (det_ == 0) throw degenerate_form_error("Gram matrix is degenerate (det = 0)");
  }

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const Int& operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }
  const Int& det() const { return det_; }

 private:
  IntMatrix gram_;
  Int det_;
};

inline void check_dim(const GramLattice& g, const LatticeVector& v) {
  if (v.size() != g.rank())
    throw usage_error("vector length " + std::to_string(v.size()) +
                      " does not match lattice rank " + std::to_string(g.rank()));
}

inline Int inner(const GramLattice& g, const LatticeVector& u, const LatticeVector& v) {
  check_dim(g, u);
  check_dim(g, v);
  Int s = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < g.rank(); ++j) s += u[i] * g(i, j) * v[j];
  }
  return s;
}

inline Int norm(const GramLattice& g, const LatticeVector& v) { return inner(g, v, v); }

inline Int determinant(const GramLattice& g) { return g.det(); }

// Counts of positive and negative squares of a nondegenerate symmetric
// matrix via congruence diagonalization over Q. A zero pivot is repaired by
// adding row/column j to row/column i when (i, j) is a nonzero off-diagonal
// entry, which makes the new diagonal entry 2*a_ij.
inline Signature signature(const IntMatrix& m) {
  if (!m.is_square()) throw usage_error("signature of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = to_rational(m);
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // All remaining diagonal entries vanish; find a nonzero off-diagonal.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) throw degenerate_form_error("form is degenerate");
      a.add_row(pi, pj, Rational(1));
      a.add_col(pi, pj, Rational(1));
      piv = pi;
    }
    a.swap_rows(k, piv);
    a.swap_cols(k, piv);
    const Rational d = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = -a(i, k) / d;
      a.add_row(i, k, f);
      a.add_col(i, k, f);
    }
    (d > 0 ? sig.positive : sig.negative)++;
  }
  return sig;
}

inline Signature signature(const GramLattice& g) { return signature(g.gram()); }

// Even iff every diagonal entry is even: v.v = sum g_ii v_i^2 + 2 sum_{i<j} ...
inline bool is_even(const GramLattice& g) {
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (g(i, i) % 2 != 0) return false;
  return true;
}

inline Int content(const LatticeVector& v) {
  Int c = 0;
  for (const auto& x : v) c = gcd(c, x);
  return c;
}

inline bool is_zero(const LatticeVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_primitive(const LatticeVector& v) {
  if (is_zero(v)) throw usage_error("primitivity of the zero vector is undefined");
  return content(v) == 1;
}

inline LatticeVector negate(const LatticeVector& v) {
  LatticeVector r = v;
  for (auto& x : r) x = -x;
  return r;
}

}  // namespace gizcert

#endif  // GIZCERT_LATTICE_HPP_

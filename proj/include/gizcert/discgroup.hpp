// Discriminant group L*/L of a nondegenerate lattice, its quadratic form, and
// the action induced on it by isometries.

#ifndef GIZCERT_DISCGROUP_HPP_
#define GIZCERT_DISCGROUP_HPP_

#include "gizcert/arith.hpp"
#include "gizcert/lattice.hpp"
#include "gizcert/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace gizcert {

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., zeros last.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Pivot on the smallest nonzero entry of the trailing block.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return {u, a, v};

      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q = floor_div(a(i, t), a(t, t));
        a.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q = floor_div(a(t, j), a(t, t));
        a.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility chain: pull an offending row into the pivot row.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row(t, i, 1);
            u.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.add_row(t, t, -2);
      u.add_row(t, t, -2);
    }
  }
  return {u, a, v};
}

// L*/L = (+) Z/d_i. Generators are dual vectors in basis coordinates.
class DiscriminantGroup {
 public:
  explicit DiscriminantGroup(const GramLattice& g) : gram_(g) {
    SmithDecomposition snf = smith_normal_form(g.gram());
    v_inv_ = unimodular_inverse(snf.V);
    const std::size_t n = g.rank();
    for (std::size_t i = 0; i < n; ++i) {
      const Int d = snf.D(i, i);
      if (d == 1) continue;
      factors_.push_back(d);
      index_.push_back(i);
      RatVector w(n);
      for (std::size_t r = 0; r < n; ++r) w[r] = Rational(snf.V(r, i), d);
      generators_.push_back(std::move(w));
    }
  }

  const std::vector<Int>& invariant_factors() const { return factors_; }
  const std::vector<RatVector>& generators() const { return generators_; }
  const GramLattice& lattice() const { return gram_; }

  Int order() const {
    Int o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
  }

  bool contains_dual(const RatVector& w) const {
    if (w.size() != gram_.rank()) return false;
    for (const auto& x : to_rational(gram_.gram()) * w)
      if (!is_integral(x)) return false;
    return true;
  }

  // Coordinates of the class of w in the generator basis, reduced modulo the
  // invariant factors.
  std::vector<Int> coordinates(const RatVector& w) const {
    if (!contains_dual(w)) throw usage_error("vector is not in the dual lattice");
    RatVector c = to_rational(v_inv_) * w;
    std::vector<Int> out;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      Rational z = c[index_[k]] * factors_[k];
      if (!is_integral(z)) throw internal_error("dual coordinate denominator mismatch");
      out.push_back(mod(boost::multiprecision::numerator(z), factors_[k]));
    }
    return out;
  }

 private:
  GramLattice gram_;
  IntMatrix v_inv_;
  std::vector<Int> factors_;
  std::vector<std::size_t> index_;
  std::vector<RatVector> generators_;
};

inline DiscriminantGroup discriminant_group(const GramLattice& g) { return DiscriminantGroup(g); }

// w^T G w reduced into [0, 2).
inline Rational disc_quadratic_value(const GramLattice& g, const RatVector& w) {
  if (!is_even(g)) throw usage_error("discriminant quadratic form needs an even lattice");
  if (w.size() != g.rank()) throw usage_error("dual vector length mismatch");
  const RatVector gw = to_rational(g.gram()) * w;
  for (const auto& x : gw)
    if (!is_integral(x)) throw usage_error("vector is not in the dual lattice");
  Rational q = 0;
  for (std::size_t i = 0; i < w.size(); ++i) q += w[i] * gw[i];
  const Rational two = 2;
  Rational k = q / two;
  Int fl = floor_div(boost::multiprecision::numerator(k), boost::multiprecision::denominator(k));
  return q - two * Rational(fl);
}

// Action on generator coordinates: column j is the image of generator j,
// row i reduced modulo factor i.
struct DiscAction {
  IntMatrix matrix;
  std::vector<Int> factors;

  bool is_identity() const {
    for (std::size_t i = 0; i < factors.size(); ++i)
      for (std::size_t j = 0; j < factors.size(); ++j)
        if (mod(matrix(i, j) - (i == j ? 1 : 0), factors[i]) != 0) return false;
    return true;
  }

  friend bool operator==(const DiscAction&, const DiscAction&) = default;
};

// (a o b): apply b first, then a.
inline DiscAction compose(const DiscAction& a, const DiscAction& b) {
  if (a.factors != b.factors) throw usage_error("actions on different groups");
  DiscAction c{a.matrix * b.matrix, a.factors};
  for (std::size_t i = 0; i < c.factors.size(); ++i)
    for (std::size_t j = 0; j < c.factors.size(); ++j)
      c.matrix(i, j) = mod(c.matrix(i, j), c.factors[i]);
  return c;
}

inline bool preserves_form(const GramLattice& g, const IntMatrix& m) {
  return m.rows() == g.rank() && m.cols() == g.rank() && m.transpose() * g.gram() * m == g.gram();
}

inline DiscAction induced_action(const DiscriminantGroup& dg, const IntMatrix& m) {
  const GramLattice& g = dg.lattice();
  if (!preserves_form(g, m)) throw usage_error("matrix is not an isometry of the lattice");
  const std::size_t k = dg.invariant_factors().size();
  DiscAction act{IntMatrix(k, k), dg.invariant_factors()};
  const RatMatrix mq = to_rational(m);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Int> c = dg.coordinates(mq * dg.generators()[j]);
    for (std::size_t i = 0; i < k; ++i) act.matrix(i, j) = c[i];
  }
  return act;
}

inline DiscAction induced_action(const GramLattice& g, const IntMatrix& m) {
  return induced_action(DiscriminantGroup(g), m);
}

struct ActionOrder {
  bool exceeded_cap = false;
  std::uint64_t n = 0;  // valid when !exceeded_cap

  static ActionOrder finite(std::uint64_t k) { return {false, k}; }
  static ActionOrder exceeded() { return {true, 0}; }
  friend bool operator==(const ActionOrder&, const ActionOrder&) = default;
};

// Least n >= 1 with a^n = id, by iterate-and-compare.
inline ActionOrder action_order(const DiscAction& a, std::uint64_t cap) {
  DiscAction p = a;
  for (std::uint64_t n = 1; n <= cap; ++n) {
    if (p.is_identity()) return ActionOrder::finite(n);
    p = compose(a, p);
  }
  return ActionOrder::exceeded();
}

// Default cap: the group order (saturated to 64 bits).
inline ActionOrder action_order(const DiscAction& a) {
  Int o = 1;
  for (const auto& d : a.factors) o *= d;
  const Int limit = std::numeric_limits<std::uint64_t>::max();
  return action_order(a, o > limit ? std::numeric_limits<std::uint64_t>::max()
                                   : static_cast<std::uint64_t>(o));
}

}  // namespace gizcert

#endif  // GIZCERT_DISCGROUP_HPP_

// Brute-force verifiers. Each one recomputes, by exhaustive scanning or
// naive iteration, a quantity that the decision procedures in quadform,
// discgroup and k3cert derive more cleverly. They deliberately share no code
// path with those procedures beyond basic lattice arithmetic.

#ifndef GIZCERT_ORACLE_HPP_
#define GIZCERT_ORACLE_HPP_

#include "gizcert/arith.hpp"
#include "gizcert/classes.hpp"
#include "gizcert/discgroup.hpp"
#include "gizcert/lattice.hpp"
#include "gizcert/matrix.hpp"
#include "gizcert/quadform.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace gizcert::oracle {

// Every norm attained on the box [-B, B]^rank, with the first witness in
// lexicographic order. The zero vector is skipped, so t = 0 only appears for
// isotropic vectors.
inline std::map<Int, LatticeVector> brute_values(const GramLattice& g, const Int& radius) {
  if (g.rank() > 2) throw usage_error("brute_values supports rank <= 2");
  if (radius < 1) throw usage_error("box radius must be >= 1");
  std::map<Int, LatticeVector> out;
  if (g.rank() == 1) {
    for (Int x = -radius; x <= radius; ++x) {
      if (x == 0) continue;
      out.try_emplace(norm(g, {x}), LatticeVector{x});
    }
    return out;
  }
  const Int a = g(0, 0), b = 2 * g(0, 1), c = g(1, 1);
  for (Int x = -radius; x <= radius; ++x)
    for (Int y = -radius; y <= radius; ++y) {
      if (x == 0 && y == 0) continue;
      out.try_emplace(a * x * x + b * x * y + c * y * y, LatticeVector{x, y});
    }
  return out;
}

// A box radius that provably contains every C with 0 < C.h < bound and
// C^2 > 0. Writing C = (C.h / h^2) h + s w with w spanning h-perp (negative
// definite in signature (1,1)) gives s^2 < bound^2 / (h^2 |w^2|).
inline Int required_low_degree_radius(const GramLattice& g, const LatticeVector& h,
                                      const Int& bound) {
  if (g.rank() != 2) throw usage_error("low-degree scan supports rank 2 only");
  const Int hh = norm(g, h);
  if (hh <= 0) throw usage_error("polarization must have positive square");
  const Int p = inner(g, {1, 0}, h), q = inner(g, {0, 1}, h);
  const Int e = gcd(p, q);
  const LatticeVector w{-q / e, p / e};
  const Int ww = norm(g, w);
  if (ww >= 0) throw internal_error("orthogonal complement of h is not negative definite");
  const Int root = isqrt(hh * abs(ww));
  Int r = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    Int ri = ceil_div(bound * abs(h[i]), hh) + ceil_div(bound * abs(w[i]), root);
    r = std::max(r, ri);
  }
  return std::max(r, Int(1));
}

inline std::vector<LowDegreeClass> brute_low_degree(const GramLattice& g, const LatticeVector& h,
                                                    const Int& bound, const Int& radius) {
  const Int needed = required_low_degree_radius(g, h, bound);
  if (radius < needed)
    throw usage_error("box radius " + radius.str() + " is not provably exhaustive; need >= " +
                      needed.str());
  std::vector<LowDegreeClass> out;
  for (Int x = -radius; x <= radius; ++x)
    for (Int y = -radius; y <= radius; ++y) {
      LatticeVector c{x, y};
      const Int deg = inner(g, c, h);
      if (deg <= 0 || deg >= bound) continue;
      if (norm(g, c) <= 0) continue;
      out.push_back(make_class(g, c, h));
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<PellSolution> brute_pell(const Int& D, const Int& y_max) {
  if (D <= 0 || is_square(D)) throw usage_error("brute_pell needs a positive nonsquare D");
  for (Int y = 1; y <= y_max; ++y) {
    const Int x2 = D * y * y + 1;
    if (is_square(x2)) return PellSolution{isqrt(x2), y, D, 1};
  }
  return std::nullopt;
}

// Order of the action of M on L*/L computed from the dual basis G^{-1}
// directly: iterate M on every dual basis vector until each returns to
// itself modulo L.
inline ActionOrder brute_action_order(const GramLattice& g, const IntMatrix& m, std::uint64_t cap) {
  if (!preserves_form(g, m)) throw usage_error("matrix is not an isometry of the lattice");
  const RatMatrix dual = inverse(g.gram());
  const RatMatrix mq = to_rational(m);
  const std::size_t n = g.rank();
  RatMatrix cur = dual;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    cur = mq * cur;
    bool all_back = true;
    for (std::size_t i = 0; i < n && all_back; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!is_integral(cur(i, j) - dual(i, j))) {
          all_back = false;
          break;
        }
    if (all_back) return ActionOrder::finite(k);
  }
  return ActionOrder::exceeded();
}

inline ActionOrder brute_action_order(const GramLattice& g, const IntMatrix& m) {
  const Int order = abs(g.det());
  const Int limit = std::numeric_limits<std::uint64_t>::max();
  return brute_action_order(
      g, m, order > limit ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(order));
}

}  // namespace gizcert::oracle

#endif  // GIZCERT_ORACLE_HPP_

// Low-degree curve classes relative to a polarization.

#ifndef GIZCERT_CLASSES_HPP_
#define GIZCERT_CLASSES_HPP_

#include "gizcert/arith.hpp"
#include "gizcert/lattice.hpp"

#include <optional>
#include <tuple>

namespace gizcert {

struct LowDegreeClass {
  LatticeVector coords;
  Int degree;  // inner(C, h)
  Int square;  // norm(C)
  std::optional<Int> multiple_of_h;  // m with C = m h

  friend bool operator==(const LowDegreeClass&, const LowDegreeClass&) = default;
  friend bool operator<(const LowDegreeClass& a, const LowDegreeClass& b) {
    return std::tie(a.degree, a.coords) < std::tie(b.degree, b.coords);
  }
};

// m with v = m h, if any; h must be nonzero.
inline std::optional<Int> multiple_of(const LatticeVector& v, const LatticeVector& h) {
  if (v.size() != h.size()) throw usage_error("vector length mismatch");
  std::size_t pivot = h.size();
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0) {
      pivot = i;
      break;
    }
  if (pivot == h.size()) throw usage_error("multiple_of: zero reference vector");
  if (v[pivot] % h[pivot] != 0) return std::nullopt;
  const Int m = v[pivot] / h[pivot];
  for (std::size_t i = 0; i < h.size(); ++i)
    if (v[i] != m * h[i]) return std::nullopt;
  return m;
}

inline LowDegreeClass make_class(const GramLattice& g, const LatticeVector& c,
                                 const LatticeVector& h) {
  return {c, inner(g, c, h), norm(g, c), multiple_of(c, h)};
}

}  // namespace gizcert

#endif  // GIZCERT_CLASSES_HPP_

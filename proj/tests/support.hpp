// Shared fixtures and random generators for the test suites.

#ifndef GIZCERT_TESTS_SUPPORT_HPP_
#define GIZCERT_TESTS_SUPPORT_HPP_

#include "gizcert/gizcert.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gizcert::testing {

inline GramLattice quartic_lattice() { return GramLattice(IntMatrix{{4, 20}, {20, 4}}); }
inline IntMatrix quartic_sigma() { return IntMatrix{{10, 1}, {-1, 0}}; }

// Every lattice shipped under data/ plus the controls named in the docs.
inline std::vector<GramLattice> bundled_lattices() {
  return {
      quartic_lattice(),
      GramLattice(IntMatrix{{0, 1}, {1, 0}}),
      GramLattice(IntMatrix{{2, 0}, {0, -2}}),
      GramLattice(IntMatrix{{4, 6}, {6, 4}}),
      GramLattice(IntMatrix{{4, 10}, {10, 4}}),
      GramLattice(IntMatrix{{2, 3}, {3, 2}}),
      GramLattice(IntMatrix{{2, 1}, {1, -2}}),
  };
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long long uniform(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(gen_);
  }

  LatticeVector vec(std::size_t n, long long r) {
    LatticeVector v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(uniform(-r, r));
    return v;
  }

  IntMatrix matrix(std::size_t rows, std::size_t cols, long long r) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(-r, r);
    return m;
  }

  IntMatrix symmetric(std::size_t n, long long r, bool even = false) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Int v = uniform(-r, r);
        if (i == j && even) v *= 2;
        m(i, j) = v;
        m(j, i) = v;
      }
    return m;
  }

  // Nondegenerate symmetric Gram matrix of the given rank.
  GramLattice lattice(std::size_t n, long long r, bool even = false) {
    for (;;) {
      IntMatrix m = symmetric(n, r, even);
      if (determinant(m) != 0) return GramLattice(m);
    }
  }

  // Rank-2 even lattice with det < 0 (signature (1,1)).
  GramLattice indefinite_even(long long r) {
    for (;;) {
      IntMatrix m = symmetric(2, r, true);
      if (determinant(m) < 0) return GramLattice(m);
    }
  }

  // Product of random elementary operations.
  IntMatrix unimodular(std::size_t n, int steps = 6) {
    IntMatrix u = IntMatrix::identity(n);
    for (int s = 0; s < steps; ++s) {
      const auto i = static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1));
      auto j = static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1));
      if (i == j) j = (j + 1) % n;
      if (n == 1) {
        u(0, 0) = -u(0, 0);
        continue;
      }
      u.add_row(i, j, Int(uniform(-2, 2)));
      if (uniform(0, 3) == 0) u.swap_rows(i, j);
    }
    return u;
  }

 private:
  std::mt19937_64 gen_;
};

inline bool is_diagonal_chain(const IntMatrix& d) {
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < k) {
      if (d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
      if (d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
  }
  return true;
}

inline bool is_unimodular(const IntMatrix& m) { return abs(determinant(m)) == 1; }

}  // namespace gizcert::testing

#endif  // GIZCERT_TESTS_SUPPORT_HPP_

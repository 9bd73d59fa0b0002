// Binary quadratic forms attached to rank-2 lattices: representability of a
// target value, Pell equations, and automorphs.
//
// Representability of t by an indefinite form f = (a, b, c) is decided by a
// staged pipeline:
//
//   1. t = 0: f has a nontrivial zero iff its discriminant is a square.
//   2. content filter: gcd(a, b, c) must divide t.
//   3. congruence filter: t must be a value of f modulo each small modulus.
//   4. class search on the primitive part f'. With D = disc(f') and
//      U = 2a x + b y we have U^2 - D y^2 = 4 a t'. For nonsquare D every
//      solution orbit under the automorph group contains a solution whose y
//      obeys Nagell's bound in terms of the fundamental Pell unit, so a
//      finite scan over y decides. For square D = s^2 the form factors over
//      Z and the scan runs over divisor pairs of 4 a t'.
//
// Step 4 gives up with Unknown once it would exceed search_bound
// iterations.

#ifndef GIZCERT_QUADFORM_HPP_
#define GIZCERT_QUADFORM_HPP_

#include "gizcert/arith.hpp"
#include "gizcert/lattice.hpp"
#include "gizcert/matrix.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gizcert {

struct BinaryForm {
  Int a, b, c;

  Int discriminant() const { return b * b - 4 * a * c; }
  Int operator()(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
  std::string str() const {
    return "(" + a.str() + ", " + b.str() + ", " + c.str() + ")";
  }
};

// x^2 - D y^2 = N
struct PellSolution {
  Int x, y;
  Int D;
  Int N;

  friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

enum class RepStatus { Yes, No, Unknown };

enum class RepReason {
  None,
  ContentDivisibility,
  CongruenceFilter,
  NonsquareDiscriminant,
  PellExhausted,
  // square discriminant, t != 0: every divisor pair of 4 a t' was tried
  FactorExhausted,
  SearchBoundExceeded,
};

inline const char* to_string(RepStatus s) {
  switch (s) {
    case RepStatus::Yes: return "yes";
    case RepStatus::No: return "no";
    case RepStatus::Unknown: return "unknown";
  }
  return "?";
}

inline const char* to_string(RepReason r) {
  switch (r) {
    case RepReason::None: return "none";
    case RepReason::ContentDivisibility: return "content-divisibility";
    case RepReason::CongruenceFilter: return "congruence-filter";
    case RepReason::NonsquareDiscriminant: return "nonsquare-discriminant";
    case RepReason::PellExhausted: return "pell-exhausted";
    case RepReason::FactorExhausted: return "factor-exhausted";
    case RepReason::SearchBoundExceeded: return "search-bound-exceeded";
  }
  return "?";
}

struct Representation {
  RepStatus status = RepStatus::Unknown;
  RepReason reason = RepReason::None;
  std::optional<std::pair<Int, Int>> witness;
  // Which modulus rejected t, when reason == CongruenceFilter.
  std::optional<Int> modulus;

  static Representation yes(Int x, Int y) {
    return {RepStatus::Yes, RepReason::None, std::make_pair(std::move(x), std::move(y)), {}};
  }
  static Representation no(RepReason why) { return {RepStatus::No, why, {}, {}}; }
  static Representation unknown() {
    return {RepStatus::Unknown, RepReason::SearchBoundExceeded, {}, {}};
  }

  friend bool operator==(const Representation&, const Representation&) = default;
};

struct RepresentOptions {
  Int search_bound = 1000;
  std::vector<Int> moduli = {3, 5, 8, 16};
};

inline BinaryForm to_binary_form(const GramLattice& g) {
  if (g.rank() != 2) throw usage_error("binary form requires a rank-2 lattice");
  return {g(0, 0), 2 * g(0, 1), g(1, 1)};
}

inline Int content(const BinaryForm& f) { return gcd(gcd(f.a, f.b), f.c); }

inline BinaryForm primitive_part(const BinaryForm& f) {
  Int g = content(f);
  if (g == 0) throw usage_error("zero form has no primitive part");
  return {f.a / g, f.b / g, f.c / g};
}

// A nonzero integer root of f, if one exists (disc must be a square).
inline std::optional<std::pair<Int, Int>> zero_witness(const BinaryForm& f) {
  const Int disc = f.discriminant();
  if (!is_square(disc)) return std::nullopt;
  if (f.a == 0) return std::make_pair(Int(1), Int(0));
  // a x^2 + b x y + c y^2 = 0 at x / y = (-b + s) / (2a)
  Int x = -f.b + isqrt(disc);
  Int y = 2 * f.a;
  Int g = gcd(x, y);
  return std::make_pair(x / g, y / g);
}

inline bool represents_zero_nontrivially(const BinaryForm& f) {
  if (f.discriminant() == 0) throw usage_error("degenerate binary form");
  return is_square(f.discriminant());
}

// Minimal positive solution of x^2 - D y^2 = 1 from the continued fraction
// of sqrt(D).
inline PellSolution pell_fundamental(const Int& D) {
  if (D <= 0) throw usage_error("Pell discriminant must be positive");
  if (is_square(D)) throw usage_error("Pell discriminant must not be a perfect square");
  const Int a0 = isqrt(D);
  Int m = 0, d = 1, a = a0;
  Int h_prev = 1, h = a0;  // convergent numerators
  Int k_prev = 0, k = 1;   // convergent denominators
  while (h * h - D * k * k != 1) {
    m = d * a - m;
    d = (D - m * m) / d;
    a = (a0 + m) / d;
    Int h_next = a * h + h_prev;
    Int k_next = a * k + k_prev;
    h_prev = std::move(h);
    h = std::move(h_next);
    k_prev = std::move(k);
    k = std::move(k_next);
  }
  return {h, k, D, 1};
}

namespace detail {

inline bool hits_residue(const BinaryForm& f, const Int& t, const Int& k) {
  const Int target = mod(t, k);
  for (Int x = 0; x < k; ++x)
    for (Int y = 0; y < k; ++y)
      if (mod(f(x, y), k) == target) return true;
  return false;
}

// Square discriminant s^2, t != 0, f primitive.
inline Representation search_factored(const BinaryForm& f, const Int& t, const Int& bound) {
  if (f.a == 0 && f.c != 0) {
    Representation r = search_factored({f.c, f.b, f.a}, t, bound);
    if (r.witness) std::swap(r.witness->first, r.witness->second);
    return r;
  }
  const Int s = isqrt(f.discriminant());
  if (f.a == 0) {
    // f = b x y
    if (t % f.b != 0) return Representation::no(RepReason::FactorExhausted);
    return Representation::yes(1, t / f.b);
  }
  // (2a x + (b + s) y)(2a x + (b - s) y) = 4 a t
  const Int n = 4 * f.a * t;
  const Int an = abs(n);
  Int iters = 0;
  for (Int d = 1; d * d <= an; ++d) {
    if (++iters > bound) return Representation::unknown();
    if (an % d != 0) continue;
    for (const Int& base : {d, Int(an / d)}) {
      for (int sg : {1, -1}) {
        const Int l1 = sg * base;
        const Int l2 = n / l1;
        Int diff = l1 - l2;
        if (diff % (2 * s) != 0) continue;
        Int y = diff / (2 * s);
        Int xn = l1 - (f.b + s) * y;
        if (xn % (2 * f.a) != 0) continue;
        return Representation::yes(xn / (2 * f.a), y);
      }
    }
  }
  return Representation::no(RepReason::FactorExhausted);
}

// Nonsquare discriminant, t != 0, f primitive (so a != 0).
inline Representation search_pell_classes(const BinaryForm& f, const Int& t, const Int& bound) {
  const Int D = f.discriminant();
  const Int N = 4 * f.a * t;
  const PellSolution unit = pell_fundamental(D);
  // Nagell: y^2 <= y1^2 |N| / (2 (x1 +- 1)) for the fundamental solution of
  // each class.
  const Int denom = N > 0 ? Int(2 * (unit.x + 1)) : Int(2 * (unit.x - 1));
  const Int y_max = isqrt(unit.y * unit.y * abs(N) / denom);
  for (Int y = 0; y <= y_max; ++y) {
    if (y >= bound) return Representation::unknown();
    const Int rhs = N + D * y * y;
    if (!is_square(rhs)) continue;
    const Int r = isqrt(rhs);
    for (const Int& yy : {y, Int(-y)})
      for (const Int& u : {r, Int(-r)}) {
        Int xn = u - f.b * yy;
        if (xn % (2 * f.a) == 0) return Representation::yes(xn / (2 * f.a), yy);
      }
  }
  return Representation::no(RepReason::PellExhausted);
}

}  // namespace detail

// Decides whether the indefinite rank-2 lattice g represents t, i.e. whether
// norm(g, v) = t for some v (nonzero when t = 0).
inline Representation represents_value(const GramLattice& g, const Int& t,
                                       const RepresentOptions& opts = {}) {
  if (g.rank() != 2) throw usage_error("represents_value requires a rank-2 lattice");
  if (g.det() > 0) throw usage_error("represents_value requires an indefinite form");
  const BinaryForm f = to_binary_form(g);

  if (t == 0) {
    if (auto w = zero_witness(f)) return Representation::yes(w->first, w->second);
    return Representation::no(RepReason::NonsquareDiscriminant);
  }

  const Int cont = content(f);
  if (t % cont != 0) return Representation::no(RepReason::ContentDivisibility);
  const BinaryForm p = primitive_part(f);
  const Int tp = t / cont;

  for (const Int& k : opts.moduli) {
    if (k < 2) continue;
    if (!detail::hits_residue(p, tp, k)) {
      Representation r = Representation::no(RepReason::CongruenceFilter);
      r.modulus = k;
      return r;
    }
  }

  if (is_square(p.discriminant())) return detail::search_factored(p, tp, opts.search_bound);
  return detail::search_pell_classes(p, tp, opts.search_bound);
}

inline Representation represents_value(const GramLattice& g, const Int& t, const Int& search_bound) {
  RepresentOptions opts;
  opts.search_bound = search_bound;
  return represents_value(g, t, opts);
}

// Least (t, u), u > 0, with t^2 - disc u^2 = 4. With e = (t + u sqrt(disc))/2,
// the Pell unit x1 + y1 sqrt(disc) is e, e^2 or e^3. The cube has
// y1 = u (disc u^2 + 3) / 2, the square has x1 = (disc u^2 + 2) / 2.
inline std::pair<Int, Int> least_unit(const Int& disc) {
  const PellSolution p = pell_fundamental(disc);
  Int lo = 1, hi = p.y;
  while (lo < hi) {
    const Int mid = (lo + hi) / 2;
    if (mid * (disc * mid * mid + 3) < 2 * p.y) lo = mid + 1;
    else hi = mid;
  }
  if (lo * (disc * lo * lo + 3) == 2 * p.y && is_square(disc * lo * lo + 4)) {
    const Int t = isqrt(disc * lo * lo + 4);
    if (t * (t * t + 3 * disc * lo * lo) == 8 * p.x) return {t, lo};
  }
  if ((2 * p.x - 2) % disc == 0 && is_square((2 * p.x - 2) / disc)) {
    const Int u = isqrt((2 * p.x - 2) / disc);
    if (is_square(disc * u * u + 4)) {
      const Int t = isqrt(disc * u * u + 4);
      if (t * u == 2 * p.y) return {t, u};
    }
  }
  return {2 * p.x, 2 * p.y};
}

// Generator M of the proper automorphs of a primitive indefinite form with
// nonsquare discriminant: f(M v) = f(v), built from the least u > 0 with
// t^2 - disc u^2 = 4.
inline IntMatrix automorph_generator(const BinaryForm& f) {
  const Int disc = f.discriminant();
  if (content(f) != 1) throw usage_error("automorph_generator requires a primitive form");
  if (disc <= 0) throw usage_error("automorph_generator requires an indefinite form");
  if (is_square(disc)) throw usage_error("automorph_generator requires a nonsquare discriminant");
  const auto [t, u] = least_unit(disc);
  IntMatrix m(2, 2);
  m(0, 0) = (t - f.b * u) / 2;
  m(0, 1) = -f.c * u;
  m(1, 0) = f.a * u;
  m(1, 1) = (t + f.b * u) / 2;
  return m;
}

}  // namespace gizcert

#endif  // GIZCERT_QUADFORM_HPP_

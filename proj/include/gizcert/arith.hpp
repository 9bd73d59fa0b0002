// Exact integer and rational arithmetic used throughout gizcert.
//
// Everything is arbitrary precision: SNF intermediates and Pell solutions
// outgrow machine words quickly, and nothing in this library is allowed to
// round.

#ifndef GIZCERT_ARITH_HPP_
#define GIZCERT_ARITH_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <tuple>

namespace gizcert {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Caller violated a documented precondition (bad dimensions, bad argument).
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bilinear form with zero determinant was supplied where a nondegenerate
// one is required.
class degenerate_form_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An internal consistency check failed; indicates a bug or an input that
// slipped past an earlier stage.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int sign(const Int& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }
inline int sign(const Rational& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

inline Int gcd(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

// Floor division; b != 0. cpp_int's operator/ truncates toward zero.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

// Least nonnegative residue; m > 0.
inline Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) throw usage_error("isqrt of a negative number");
  if (n < 2) return n;
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

// Writes n = s^2 * d with d squarefree (sign carried by d). n != 0.
inline std::pair<Int, Int> square_part(const Int& n) {
  if (n == 0) throw usage_error("square_part of zero");
  Int d = n < 0 ? Int(-n) : n;
  Int s = 1;
  // Trial division is fine: only characteristic-polynomial discriminants of
  // small matrices go through here.
  for (Int p = 2; p * p <= d; ++p) {
    Int pp = p * p;
    while (d % pp == 0) {
      d /= pp;
      s *= p;
    }
  }
  return {s, n < 0 ? Int(-d) : d};
}

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rational& a) {
  auto num = boost::multiprecision::numerator(a);
  auto den = boost::multiprecision::denominator(a);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline bool is_integral(const Rational& a) {
  return boost::multiprecision::denominator(a) == 1;
}

}  // namespace gizcert

#endif  // GIZCERT_ARITH_HPP_

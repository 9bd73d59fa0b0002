// Certificate pipeline for a polarized rank-2 lattice datum (Gram matrix,
// degree-4 polarization h, optional isometry M).
//
//   S1  lattice is even, rank 2, signature (1,1)
//   S2  lattice represents neither 0 nor -2
//   S3  h is primitive with h^2 = 4 (normalized into the positive cone)
//   S4  every class C with 0 < C.h < degree_bound and C^2 > 0 is in Z h
//   S5  an isometry exists that preserves the positive cone, has infinite
//       order and moves h; the order of its action on L*/L is recorded
//
// The verdict is pass iff all five steps pass. After the first failing step
// the remaining steps are reported as skipped.

#ifndef GIZCERT_K3CERT_HPP_
#define GIZCERT_K3CERT_HPP_

#include "gizcert/arith.hpp"
#include "gizcert/classes.hpp"
#include "gizcert/discgroup.hpp"
#include "gizcert/isometry.hpp"
#include "gizcert/lattice.hpp"
#include "gizcert/matrix.hpp"
#include "gizcert/oracle.hpp"
#include "gizcert/quadform.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

namespace gizcert {

enum class StepStatus { Pass, Fail, Unknown, Skipped };

inline const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Pass: return "pass";
    case StepStatus::Fail: return "fail";
    case StepStatus::Unknown: return "unknown";
    case StepStatus::Skipped: return "skipped";
  }
  return "?";
}

struct Witness {
  std::string what;
  std::optional<LatticeVector> vector;
  std::optional<Int> value;
  std::optional<IntMatrix> matrix;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct StepResult {
  std::string id;
  StepStatus status = StepStatus::Skipped;
  std::string summary;
  std::optional<Witness> witness;
  std::string citation;
  double millis = 0;
};

struct CertificateInput {
  IntMatrix gram;
  LatticeVector polarization;
  std::optional<IntMatrix> isometry;
  Int degree_bound = 16;
  Int search_bound = 1000;
  Int box_radius = 50;
};

struct RunOptions {
  bool verify = false;  // cross-check against the brute-force oracles
  unsigned jobs = 1;    // worker threads for the S4 degree windows
};

// One admissible degree d of S4: the integer points C(s) = base + s * step on
// the line C.h = d, and the window where C(s)^2 = c0 + c1 s + c2 s^2 > 0.
// The quadratic is divided by the content of the lattice's norm form.
struct DegreeWindow {
  Int degree;
  bool has_points = false;
  LatticeVector base;
  LatticeVector step;
  Int c0, c1, c2;
  Int scale = 1;
  std::optional<std::pair<Int, Int>> s_range;  // inclusive, if nonempty

  std::string line_str() const;
  std::string inequality_str() const;
};

struct S1Data {
  std::size_t rank = 0;
  bool even = false;
  Signature signature;
};

struct S2Data {
  Representation zero;
  Representation minus_two;
  // --verify
  std::optional<bool> oracle_zero_found;
  std::optional<bool> oracle_minus_two_found;
};

struct S3Data {
  LatticeVector supplied;
  LatticeVector normalized;
  bool negated = false;
  Int square;
  bool primitive = false;
};

struct S4Data {
  std::vector<DegreeWindow> windows;
  std::vector<LowDegreeClass> classes;
  // --verify
  std::optional<Int> oracle_radius;
  std::optional<bool> oracle_agrees;
};

struct S5Data {
  bool supplied = false;
  std::vector<IntMatrix> candidates;
  std::optional<IntMatrix> isometry;  // the one analysed (first qualifying candidate)
  bool is_isometry = false;
  bool preserves_cone = false;
  OrderResult order;
  bool moves_polarization = false;
  std::optional<CharData> char_data;
  std::optional<ActionOrder> disc_order;
  bool cited_eigenvalue_is_root = false;
  // --verify
  std::optional<ActionOrder> oracle_disc_order;
};

struct Derived {
  Int det;
  std::optional<Signature> signature;
  std::optional<std::vector<Int>> invariant_factors;
};

enum class Verdict { Pass, Fail, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

struct CertificateReport {
  std::vector<StepResult> steps;
  Verdict verdict = Verdict::Unknown;
  std::vector<std::string> notes;
  bool verified = false;

  Derived derived;
  std::optional<S1Data> s1;
  std::optional<S2Data> s2;
  std::optional<S3Data> s3;
  std::optional<S4Data> s4;
  std::optional<S5Data> s5;

  const StepResult& step(const std::string& id) const {
    for (const auto& s : steps)
      if (s.id == id) return s;
    throw usage_error("no step " + id);
  }
};

namespace citation {
inline constexpr const char* kS1 = "Lemma morrison";
inline constexpr const char* kS2 = "Lemma rational curve";
inline constexpr const char* kS3 = "Lemma veryample";
inline constexpr const char* kS4 = "Lemma num; Theorem logsarkisov(2)";
inline constexpr const char* kS5 = "Lemma autom";
}  // namespace citation

// Dominant eigenvalue as printed alongside the isometry in Lemma autom.
inline const QuadraticSurd kCitedEigenvalue{5, 4, 6};

inline std::vector<std::string> cited_steps() {
  return {
      "Lemma morrison: existence of a K3 surface with this Picard lattice (period map "
      "surjectivity) is cited, not computed",
      "Lemma veryample: very ampleness of the normalized h (Saint-Donat) is cited, not computed",
      "Lemma autom: extending the isometry's power to H^2(S,Z) (Nikulin gluing) and realizing it "
      "by an automorphism (global Torelli) are cited, not computed",
      "Lemma num: surjectivity of H^0(P^3,O(m)) -> H^0(S,O(m)) is cited; only C in Zh is checked",
      "Theorem logsarkisov(2): the degree-16 criterion (Takahashi) is assumed",
      "Theorem gen(1): finiteness of the linear stabilizer of S in PGL(4) is cited, not computed",
  };
}

namespace detail {

inline std::string poly_term(const Int& coef, const std::string& var, bool first) {
  if (coef == 0) return "";
  std::string s;
  if (first) s = coef < 0 ? "-" : "";
  else s = coef < 0 ? " - " : " + ";
  const Int a = abs(coef);
  if (a != 1 || var.empty()) s += a.str();
  return s + var;
}

}  // namespace detail

inline std::string DegreeWindow::line_str() const {
  std::string s = "C = (";
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (i) s += ", ";
    std::string t = detail::poly_term(base[i], "", true) + detail::poly_term(step[i], "s", base[i] == 0);
    s += t.empty() ? "0" : t;
  }
  return s + ")";
}

inline std::string DegreeWindow::inequality_str() const {
  std::string t = detail::poly_term(c0, "", true);
  t += detail::poly_term(c1, "s", t.empty());
  t += detail::poly_term(c2, "s^2", t.empty());
  return (t.empty() ? "0" : t) + " > 0";
}

// The positive cone is oriented by the first basis vector of positive
// square; h is replaced by -h if it lies in the opposite component.
inline std::pair<LatticeVector, bool> normalize_polarization(const GramLattice& g,
                                                             const LatticeVector& h) {
  if (norm(g, h) <= 0) return {h, false};
  for (std::size_t i = 0; i < g.rank(); ++i) {
    LatticeVector e(g.rank(), Int(0));
    e[i] = 1;
    if (norm(g, e) > 0) {
      if (inner(g, h, e) < 0) return {negate(h), true};
      return {h, false};
    }
  }
  return {h, false};
}

inline DegreeWindow degree_window(const GramLattice& g, const LatticeVector& h, const Int& d,
                                  const Int& form_content) {
  DegreeWindow w;
  w.degree = d;
  const Int p = inner(g, {1, 0}, h), q = inner(g, {0, 1}, h);
  auto [e, x0, y0] = ext_gcd(p, q);
  if (d % e != 0) return w;
  w.has_points = true;
  w.base = {x0 * (d / e), y0 * (d / e)};
  w.step = {-q / e, p / e};
  const Int a = norm(g, w.step);
  const Int b = 2 * inner(g, w.base, w.step);
  const Int c = norm(g, w.base);
  if (a >= 0) throw internal_error("degree window is unbounded; h-perp is not negative definite");
  w.scale = form_content;
  w.c2 = a / form_content;
  w.c1 = b / form_content;
  w.c0 = c / form_content;
  // a s^2 + b s + c > 0 with a < 0: between the roots (-b -+ sqrt(disc)) / (2a).
  const Int disc = b * b - 4 * a * c;
  if (disc <= 0) return w;
  const Int r = isqrt(disc);
  const Int na = -a;
  Int lo = floor_div(b - r - 1, 2 * na);
  Int hi = ceil_div(b + r + 1, 2 * na);
  auto positive = [&](const Int& s) { return a * s * s + b * s + c > 0; };
  while (lo <= hi && !positive(lo)) ++lo;
  while (hi >= lo && !positive(hi)) --hi;
  if (lo <= hi) w.s_range = std::make_pair(lo, hi);
  return w;
}

inline S4Data enumerate_low_degree(const GramLattice& g, const LatticeVector& h,
                                   const Int& degree_bound, unsigned jobs = 1) {
  if (g.rank() != 2) throw usage_error("low-degree enumeration supports rank 2 only");
  if (norm(g, h) <= 0) throw usage_error("polarization must have positive square");
  const Int form_content = content(to_binary_form(g));

  auto run = [&](Int first, Int last) {
    S4Data part;
    for (Int d = first; d < last; ++d) {
      DegreeWindow w = degree_window(g, h, d, form_content);
      if (w.s_range)
        for (Int s = w.s_range->first; s <= w.s_range->second; ++s) {
          LatticeVector c{w.base[0] + s * w.step[0], w.base[1] + s * w.step[1]};
          part.classes.push_back(make_class(g, c, h));
        }
      part.windows.push_back(std::move(w));
    }
    return part;
  };

  S4Data out;
  if (degree_bound <= 1) return out;
  const Int count = degree_bound - 1;
  const unsigned workers = std::max(1u, jobs);
  if (workers == 1 || count < 2) {
    out = run(1, degree_bound);
  } else {
    std::vector<std::future<S4Data>> parts;
    const Int chunk = ceil_div(count, Int(workers));
    for (Int first = 1; first < degree_bound; first += chunk) {
      Int last = std::min(Int(first + chunk), degree_bound);
      parts.push_back(std::async(std::launch::async, run, first, last));
    }
    for (auto& f : parts) {
      S4Data p = f.get();
      out.windows.insert(out.windows.end(), p.windows.begin(), p.windows.end());
      out.classes.insert(out.classes.end(), p.classes.begin(), p.classes.end());
    }
  }
  std::sort(out.classes.begin(), out.classes.end());
  std::sort(out.windows.begin(), out.windows.end(),
            [](const DegreeWindow& a, const DegreeWindow& b) { return a.degree < b.degree; });
  return out;
}

// ---- individual steps ---------------------------------------------------

inline StepResult check_S1_lattice(const GramLattice& g, S1Data* data = nullptr) {
  StepResult r{"S1", StepStatus::Pass, "", {}, citation::kS1, 0};
  S1Data d{g.rank(), is_even(g), signature(g)};
  if (data) *data = d;
  if (d.rank != 2) {
    r.status = StepStatus::Fail;
    r.summary = "rank is " + std::to_string(d.rank) + ", expected 2";
    r.witness = Witness{"rank", {}, Int(d.rank), {}};
  } else if (!d.even) {
    std::size_t i = g(0, 0) % 2 != 0 ? 0 : 1;
    LatticeVector e(2, Int(0));
    e[i] = 1;
    r.status = StepStatus::Fail;
    r.summary = "lattice is odd";
    r.witness = Witness{"odd-norm basis vector", e, norm(g, e), {}};
  } else if (d.signature != Signature{1, 1}) {
    r.status = StepStatus::Fail;
    r.summary = "signature is " + d.signature.str() + ", expected (1,1)";
    r.witness = Witness{"determinant", {}, g.det(), {}};
  } else {
    r.summary = "even, rank 2, signature (1,1)";
  }
  return r;
}

inline StepResult check_S2_no_0_minus2(const GramLattice& g, const Int& search_bound,
                                       S2Data* data = nullptr) {
  StepResult r{"S2", StepStatus::Pass, "", {}, citation::kS2, 0};
  S2Data d{represents_value(g, 0, search_bound), represents_value(g, -2, search_bound), {}, {}};
  if (data) *data = d;
  for (const auto* rep : {&d.zero, &d.minus_two}) {
    if (rep->status != RepStatus::Yes) continue;
    const Int t = rep == &d.zero ? Int(0) : Int(-2);
    LatticeVector v{rep->witness->first, rep->witness->second};
    r.status = StepStatus::Fail;
    r.summary = "lattice represents " + t.str();
    r.witness = Witness{t == 0 ? "isotropic vector" : "vector of norm -2", v, norm(g, v), {}};
    return r;
  }
  if (d.zero.status == RepStatus::Unknown || d.minus_two.status == RepStatus::Unknown) {
    r.status = StepStatus::Unknown;
    r.summary = "representation search exceeded search_bound";
    return r;
  }
  r.summary = std::string("0: no (") + to_string(d.zero.reason) + "), -2: no (" +
              to_string(d.minus_two.reason) + ")";
  return r;
}

inline StepResult check_S3_polarization(const GramLattice& g, const LatticeVector& h,
                                        S3Data* data = nullptr) {
  check_dim(g, h);
  if (is_zero(h)) throw usage_error("polarization must be nonzero");
  StepResult r{"S3", StepStatus::Pass, "", {}, citation::kS3, 0};
  auto [hn, negated] = normalize_polarization(g, h);
  S3Data d{h, hn, negated, norm(g, hn), is_primitive(hn)};
  if (data) *data = d;
  if (!d.primitive) {
    r.status = StepStatus::Fail;
    r.summary = "polarization is divisible by " + content(hn).str();
    r.witness = Witness{"imprimitive polarization", hn, content(hn), {}};
  } else if (d.square != 4) {
    r.status = StepStatus::Fail;
    r.summary = "polarization has square " + d.square.str() + ", expected 4";
    r.witness = Witness{"polarization square", hn, d.square, {}};
  } else {
    r.summary = "primitive, h^2 = 4";
    if (negated) r.summary += " (replaced h by -h)";
  }
  return r;
}

inline StepResult check_S4_low_degree(const GramLattice& g, const LatticeVector& h,
                                      const Int& degree_bound, S4Data* data = nullptr,
                                      unsigned jobs = 1) {
  StepResult r{"S4", StepStatus::Pass, "", {}, citation::kS4, 0};
  S4Data d = enumerate_low_degree(g, h, degree_bound, jobs);
  for (const auto& c : d.classes)
    if (!c.multiple_of_h) {
      r.status = StepStatus::Fail;
      r.summary = "class of degree " + c.degree.str() + " is not a multiple of h";
      r.witness = Witness{"low-degree class not in Zh", c.coords, c.degree, {}};
      break;
    }
  if (r.status == StepStatus::Pass)
    r.summary = std::to_string(d.classes.size()) + " positive classes of degree < " +
                degree_bound.str() + ", all multiples of h";
  if (data) *data = std::move(d);
  return r;
}

namespace detail {

struct IsometryAnalysis {
  bool cone = false;
  OrderResult order;
  bool moves = false;
  bool qualifies() const { return cone && order.infinite && moves; }
};

inline IsometryAnalysis analyse(const IsometryMatrix& m, const LatticeVector& h) {
  return {preserves_positive_cone(m, h), gizcert::order(m), moves_polarization(m, h)};
}

}  // namespace detail

inline StepResult check_S5_isometry(const GramLattice& g, const LatticeVector& h,
                                    const std::optional<IntMatrix>& supplied,
                                    S5Data* data = nullptr) {
  StepResult r{"S5", StepStatus::Pass, "", {}, citation::kS5, 0};
  S5Data d;
  d.supplied = supplied.has_value();
  auto finish = [&]() {
    if (data) *data = d;
    return r;
  };

  std::optional<IsometryMatrix> chosen;
  if (supplied) {
    d.candidates.push_back(*supplied);
    if (!is_isometry(g, *supplied)) {
      r.status = StepStatus::Fail;
      r.summary = "supplied matrix is not an isometry (M^T G M != G)";
      r.witness = Witness{"M^T G M", {}, {}, supplied->transpose() * g.gram() * *supplied};
      return finish();
    }
    chosen.emplace(g, *supplied);
  } else {
    const BinaryForm f = primitive_part(to_binary_form(g));
    if (f.discriminant() <= 0 || is_square(f.discriminant())) {
      r.status = StepStatus::Fail;
      r.summary = "no infinite-order automorph: discriminant is not a positive nonsquare";
      r.witness = Witness{"discriminant", {}, f.discriminant(), {}};
      return finish();
    }
    const IntMatrix a = automorph_generator(f);
    const IntMatrix ai = unimodular_inverse(a);
    d.candidates = {a, ai, -a, -ai};
    for (const auto& c : d.candidates) {
      IsometryMatrix m(g, c);
      if (detail::analyse(m, h).qualifies()) {
        chosen.emplace(m);
        break;
      }
    }
    if (!chosen) chosen.emplace(g, d.candidates.front());
  }

  d.isometry = chosen->matrix();
  d.is_isometry = true;
  const auto an = detail::analyse(*chosen, h);
  d.preserves_cone = an.cone;
  d.order = an.order;
  d.moves_polarization = an.moves;
  d.char_data = char_poly_rank2(*chosen);
  d.cited_eigenvalue_is_root = is_char_root(*d.char_data, kCitedEigenvalue);

  if (!an.cone) {
    r.status = StepStatus::Fail;
    r.summary = "isometry swaps the positive cone with its negative";
    r.witness = Witness{"inner(M h, h)", chosen->apply(h), inner(g, chosen->apply(h), h), {}};
  } else if (!an.order.infinite) {
    r.status = StepStatus::Fail;
    r.summary = "isometry has finite order " + an.order.str();
    r.witness = Witness{"finite order", {}, Int(an.order.k), chosen->matrix()};
  } else if (!an.moves) {
    r.status = StepStatus::Fail;
    r.summary = "isometry fixes h";
    r.witness = Witness{"fixed polarization", h, {}, chosen->matrix()};
  }
  if (r.status == StepStatus::Fail) return finish();

  const DiscriminantGroup dg(g);
  d.disc_order = action_order(induced_action(dg, chosen->matrix()));
  if (d.disc_order->exceeded_cap) {
    r.status = StepStatus::Unknown;
    r.summary = "order of the discriminant action exceeds the group order cap";
    return finish();
  }
  r.summary = "infinite order, preserves the positive cone, moves h; acts on L*/L with order " +
              std::to_string(d.disc_order->n);
  return finish();
}

// ---- pipeline ------------------------------------------------------------

inline void validate(const CertificateInput& in) {
  if (in.degree_bound < 1) throw usage_error("degree_bound must be >= 1");
  if (in.search_bound < 1) throw usage_error("search_bound must be >= 1");
  if (in.box_radius < 1) throw usage_error("box_radius must be >= 1");
  if (in.polarization.size() != in.gram.rows())
    throw usage_error("polarization length does not match the Gram matrix");
  if (is_zero(in.polarization)) throw usage_error("polarization must be nonzero");
  if (in.isometry && (in.isometry->rows() != in.gram.rows() || in.isometry->cols() != in.gram.cols()))
    throw usage_error("isometry shape does not match the Gram matrix");
}

inline CertificateReport run_certificate(const CertificateInput& in, const RunOptions& opts = {}) {
  validate(in);
  const GramLattice g(in.gram);
  CertificateReport rep;
  rep.notes = cited_steps();
  rep.verified = opts.verify;
  rep.derived.det = g.det();
  rep.derived.signature = signature(g);
  rep.derived.invariant_factors = discriminant_group(g).invariant_factors();

  using clock = std::chrono::steady_clock;
  bool failed = false;
  LatticeVector h = in.polarization;

  auto timed = [&](auto&& fn) {
    const auto t0 = clock::now();
    StepResult r = fn();
    r.millis = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    if (r.status == StepStatus::Fail) failed = true;
    rep.steps.push_back(std::move(r));
  };
  auto skip = [&](const char* id, const char* cite) {
    rep.steps.push_back({id, StepStatus::Skipped, "skipped after an earlier failure", {}, cite, 0});
  };

  timed([&] {
    S1Data d;
    StepResult r = check_S1_lattice(g, &d);
    rep.s1 = d;
    return r;
  });

  if (failed) skip("S2", citation::kS2);
  else
    timed([&] {
      S2Data d;
      StepResult r = check_S2_no_0_minus2(g, in.search_bound, &d);
      if (opts.verify) {
        const auto values = oracle::brute_values(g, in.box_radius);
        d.oracle_zero_found = values.count(0) > 0;
        d.oracle_minus_two_found = values.count(-2) > 0;
        if (r.status == StepStatus::Pass && (*d.oracle_zero_found || *d.oracle_minus_two_found)) {
          r.status = StepStatus::Unknown;
          r.summary = "oracle box scan contradicts the decision procedure";
        }
      }
      rep.s2 = d;
      return r;
    });

  if (failed) skip("S3", citation::kS3);
  else
    timed([&] {
      S3Data d;
      StepResult r = check_S3_polarization(g, h, &d);
      h = d.normalized;
      rep.s3 = d;
      return r;
    });

  if (failed) skip("S4", citation::kS4);
  else
    timed([&] {
      S4Data d;
      StepResult r = check_S4_low_degree(g, h, in.degree_bound, &d, opts.jobs);
      if (opts.verify) {
        d.oracle_radius = oracle::required_low_degree_radius(g, h, in.degree_bound);
        d.oracle_agrees =
            oracle::brute_low_degree(g, h, in.degree_bound, *d.oracle_radius) == d.classes;
        if (!*d.oracle_agrees && r.status == StepStatus::Pass) {
          r.status = StepStatus::Unknown;
          r.summary = "oracle enumeration disagrees with the window enumeration";
        }
      }
      rep.s4 = std::move(d);
      return r;
    });

  if (failed) skip("S5", citation::kS5);
  else
    timed([&] {
      S5Data d;
      StepResult r = check_S5_isometry(g, h, in.isometry, &d);
      if (opts.verify && d.disc_order) {
        d.oracle_disc_order = oracle::brute_action_order(g, *d.isometry);
        if (!(*d.oracle_disc_order == *d.disc_order) && r.status == StepStatus::Pass) {
          r.status = StepStatus::Unknown;
          r.summary = "oracle discriminant-action order disagrees";
        }
      }
      rep.s5 = d;
      return r;
    });

  bool all_pass = true, any_fail = false;
  for (const auto& s : rep.steps) {
    all_pass = all_pass && s.status == StepStatus::Pass;
    any_fail = any_fail || s.status == StepStatus::Fail;
  }
  rep.verdict = all_pass ? Verdict::Pass : (any_fail ? Verdict::Fail : Verdict::Unknown);
  return rep;
}

}  // namespace gizcert

#endif  // GIZCERT_K3CERT_HPP_

// Input documents and certificate reports as JSON / plain text.
//
// Input document (all integers, no floats):
//
//   {
//     "gram":         [[4, 20], [20, 4]],
//     "polarization": [1, 0],
//     "isometry":     [[10, 1], [-1, 0]],   optional
//     "degree_bound": 16,                   optional, default 16
//     "search_bound": 1000,                 optional, default 1000
//     "box_radius":   50                    optional, default 50
//   }
//
// Unknown fields are rejected. Integers that do not fit in 64 bits are
// written as decimal strings in reports.

#ifndef GIZCERT_IO_HPP_
#define GIZCERT_IO_HPP_

#include "gizcert/k3cert.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gizcert::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1.0";

// Malformed input document; `field` names the offending member.
class input_error : public std::runtime_error {
 public:
  input_error(std::string field, const std::string& msg)
      : std::runtime_error(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

inline json to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return json(static_cast<std::int64_t>(v));
  return json(v.str());
}

inline json to_json(const Rational& v) { return json(to_string(v)); }

inline json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

namespace detail {

inline Int read_int(const json& v, const std::string& field) {
  if (v.is_number_unsigned()) return Int(v.get<std::uint64_t>());
  if (v.is_number_integer()) return Int(v.get<std::int64_t>());
  throw input_error(field, "expected an integer");
}

inline IntVector read_vector(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) throw input_error(field, "expected a nonempty integer array");
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(read_int(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

inline IntMatrix read_square(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) throw input_error(field, "expected a nonempty 2D integer array");
  const std::size_t n = v.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rf = field + "[" + std::to_string(i) + "]";
    IntVector row = read_vector(v[i], rf);
    if (row.size() != n) throw input_error(rf, "matrix must be square");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
  }
  return m;
}

inline Int read_positive(const json& v, const std::string& field) {
  Int x = read_int(v, field);
  if (x < 1) throw input_error(field, "must be a positive integer");
  return x;
}

}  // namespace detail

inline CertificateInput parse_input(const json& doc) {
  if (!doc.is_object()) throw input_error("document", "expected a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "gram" && key != "polarization" && key != "isometry" && key != "degree_bound" &&
        key != "search_bound" && key != "box_radius")
      throw input_error(key, "unknown field");
  if (!doc.contains("gram")) throw input_error("gram", "missing required field");
  if (!doc.contains("polarization")) throw input_error("polarization", "missing required field");

  CertificateInput in;
  in.gram = detail::read_square(doc["gram"], "gram");
  for (std::size_t i = 0; i < in.gram.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (in.gram(i, j) != in.gram(j, i)) throw input_error("gram", "matrix must be symmetric");
  if (in.gram.rows() > GramLattice::kMaxRank) throw input_error("gram", "rank must be at most 4");

  in.polarization = detail::read_vector(doc["polarization"], "polarization");
  if (in.polarization.size() != in.gram.rows())
    throw input_error("polarization", "length must equal the rank of gram");
  if (is_zero(in.polarization)) throw input_error("polarization", "must be nonzero");

  if (doc.contains("isometry")) {
    in.isometry = detail::read_square(doc["isometry"], "isometry");
    if (in.isometry->rows() != in.gram.rows())
      throw input_error("isometry", "shape must match gram");
  }
  if (doc.contains("degree_bound")) in.degree_bound = detail::read_positive(doc["degree_bound"], "degree_bound");
  if (doc.contains("search_bound")) in.search_bound = detail::read_positive(doc["search_bound"], "search_bound");
  if (doc.contains("box_radius")) in.box_radius = detail::read_positive(doc["box_radius"], "box_radius");
  return in;
}

inline CertificateInput parse_input(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error("document", std::string("not valid JSON: ") + e.what());
  }
  return parse_input(doc);
}

// Canonical form: every field present, fixed key order.
inline json to_json(const CertificateInput& in) {
  json doc;
  doc["gram"] = to_json(in.gram);
  doc["polarization"] = to_json(in.polarization);
  if (in.isometry) doc["isometry"] = to_json(*in.isometry);
  doc["degree_bound"] = to_json(in.degree_bound);
  doc["search_bound"] = to_json(in.search_bound);
  doc["box_radius"] = to_json(in.box_radius);
  return doc;
}

// ---- reports --------------------------------------------------------------

inline json to_json(const Signature& s) { return json::array({s.positive, s.negative}); }

inline json to_json(const QuadraticSurd& s) {
  return json{{"p", to_json(s.p)}, {"q", to_json(s.q)}, {"d", to_json(s.d)}, {"text", s.str()}};
}

inline json to_json(const Representation& r) {
  json j{{"status", to_string(r.status)}, {"reason", to_string(r.reason)}};
  if (r.witness) j["witness"] = json::array({to_json(r.witness->first), to_json(r.witness->second)});
  if (r.modulus) j["modulus"] = to_json(*r.modulus);
  return j;
}

inline json to_json(const ActionOrder& o) {
  return o.exceeded_cap ? json("exceeded-cap") : json(o.n);
}

inline json to_json(const LowDegreeClass& c) {
  return json{{"coords", to_json(c.coords)},
              {"degree", to_json(c.degree)},
              {"square", to_json(c.square)},
              {"multiple_of_h", c.multiple_of_h ? to_json(*c.multiple_of_h) : json(nullptr)}};
}

inline json to_json(const Witness& w) {
  json j{{"what", w.what}};
  if (w.vector) j["vector"] = to_json(*w.vector);
  if (w.value) j["value"] = to_json(*w.value);
  if (w.matrix) j["matrix"] = to_json(*w.matrix);
  return j;
}

inline json char_json(const CharData& c) {
  return json{{"trace", to_json(c.trace)}, {"det", to_json(c.det)}, {"polynomial", c.poly_str()}};
}

namespace detail {

inline json step_details(const CertificateReport& rep, const StepResult& s) {
  json d{{"summary", s.summary}};
  if (s.status == StepStatus::Skipped) return d;
  if (s.id == "S1" && rep.s1) {
    d["rank"] = rep.s1->rank;
    d["even"] = rep.s1->even;
    d["signature"] = to_json(rep.s1->signature);
  } else if (s.id == "S2" && rep.s2) {
    d["zero"] = to_json(rep.s2->zero);
    d["minus_two"] = to_json(rep.s2->minus_two);
    if (rep.s2->oracle_zero_found)
      d["oracle"] = json{{"zero_found", *rep.s2->oracle_zero_found},
                         {"minus_two_found", *rep.s2->oracle_minus_two_found}};
  } else if (s.id == "S3" && rep.s3) {
    d["supplied"] = to_json(rep.s3->supplied);
    d["normalized"] = to_json(rep.s3->normalized);
    d["negated"] = rep.s3->negated;
    d["square"] = to_json(rep.s3->square);
    d["primitive"] = rep.s3->primitive;
  } else if (s.id == "S4" && rep.s4) {
    json windows = json::array();
    for (const auto& w : rep.s4->windows) {
      if (!w.has_points) continue;
      windows.push_back(json{
          {"degree", to_json(w.degree)},
          {"line", w.line_str()},
          {"inequality", w.inequality_str()},
          {"scale", to_json(w.scale)},
          {"s_range", w.s_range ? json::array({to_json(w.s_range->first), to_json(w.s_range->second)})
                                : json(nullptr)}});
    }
    d["windows"] = std::move(windows);
    json classes = json::array();
    for (const auto& c : rep.s4->classes) classes.push_back(to_json(c));
    d["classes"] = std::move(classes);
    if (rep.s4->oracle_agrees)
      d["oracle"] = json{{"radius", to_json(*rep.s4->oracle_radius)}, {"agrees", *rep.s4->oracle_agrees}};
  } else if (s.id == "S5" && rep.s5) {
    const S5Data& f = *rep.s5;
    d["supplied"] = f.supplied;
    json cands = json::array();
    for (const auto& c : f.candidates) cands.push_back(to_json(c));
    d["candidates"] = std::move(cands);
    d["isometry"] = f.isometry ? to_json(*f.isometry) : json(nullptr);
    d["is_isometry"] = f.is_isometry;
    if (f.is_isometry) {
      d["preserves_positive_cone"] = f.preserves_cone;
      d["order"] = f.order.infinite ? json("infinite") : json(f.order.k);
      d["moves_polarization"] = f.moves_polarization;
    }
    if (f.char_data) {
      d["char_poly"] = char_json(*f.char_data);
      d["dominant_root"] = f.char_data->dominant_root ? to_json(*f.char_data->dominant_root) : json(nullptr);
      d["cited_eigenvalue"] = json{{"citation", citation::kS5},
                                   {"value", kCitedEigenvalue.str()},
                                   {"is_root", f.cited_eigenvalue_is_root}};
    }
    if (f.disc_order) d["disc_action_order"] = to_json(*f.disc_order);
    if (f.oracle_disc_order) d["oracle"] = json{{"disc_action_order", to_json(*f.oracle_disc_order)}};
  }
  return d;
}

}  // namespace detail

inline json to_json(const CertificateReport& rep, bool with_timing = false) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["verdict"] = to_string(rep.verdict);
  json steps = json::array();
  for (const auto& s : rep.steps) {
    steps.push_back(json{{"id", s.id},
                         {"status", to_string(s.status)},
                         {"witness", s.witness ? to_json(*s.witness) : json(nullptr)},
                         {"citation", s.citation},
                         {"details", detail::step_details(rep, s)}});
  }
  doc["steps"] = std::move(steps);

  json derived;
  derived["det"] = to_json(rep.derived.det);
  derived["signature"] = rep.derived.signature ? to_json(*rep.derived.signature) : json(nullptr);
  derived["invariant_factors"] =
      rep.derived.invariant_factors ? to_json(*rep.derived.invariant_factors) : json(nullptr);
  const S5Data* s5 = rep.s5 ? &*rep.s5 : nullptr;
  derived["disc_action_order"] = s5 && s5->disc_order ? to_json(*s5->disc_order) : json(nullptr);
  derived["char_poly"] = s5 && s5->char_data ? char_json(*s5->char_data) : json(nullptr);
  derived["dominant_root"] = s5 && s5->char_data && s5->char_data->dominant_root
                                 ? to_json(*s5->char_data->dominant_root)
                                 : json(nullptr);
  doc["derived"] = std::move(derived);
  doc["notes"] = rep.notes;
  if (with_timing) {
    json t;
    for (const auto& s : rep.steps) t[s.id] = s.millis;
    doc["timing"] = std::move(t);
  }
  return doc;
}

inline std::string to_text(const CertificateReport& rep, bool with_timing = false) {
  std::ostringstream os;
  os << "certificate report (format " << kFormatVersion << ")\n";
  os << "det " << rep.derived.det;
  if (rep.derived.signature) os << ", signature " << rep.derived.signature->str();
  if (rep.derived.invariant_factors) {
    os << ", discriminant group";
    if (rep.derived.invariant_factors->empty()) os << " trivial";
    for (std::size_t i = 0; i < rep.derived.invariant_factors->size(); ++i)
      os << (i ? " + " : " ") << "Z/" << (*rep.derived.invariant_factors)[i];
  }
  os << "\n\n";
  for (const auto& s : rep.steps) {
    os << s.id << "  " << to_string(s.status) << "  " << s.summary << "  [" << s.citation << "]";
    if (with_timing) os << "  (" << s.millis << " ms)";
    os << "\n";
    if (s.witness) {
      os << "    witness: " << s.witness->what;
      if (s.witness->vector) os << " " << to_string(*s.witness->vector);
      if (s.witness->value) os << " value " << *s.witness->value;
      if (s.witness->matrix) os << " matrix " << *s.witness->matrix;
      os << "\n";
    }
    if (s.status == StepStatus::Skipped) continue;
    if (s.id == "S4" && rep.s4) {
      for (const auto& w : rep.s4->windows) {
        if (!w.has_points) continue;
        os << "    degree " << w.degree << ": " << w.line_str() << ", " << w.inequality_str();
        if (w.s_range) os << ", s in [" << w.s_range->first << ", " << w.s_range->second << "]";
        else os << ", no s";
        os << "\n";
      }
      for (const auto& c : rep.s4->classes) {
        os << "    class " << to_string(c.coords) << " degree " << c.degree << " square " << c.square;
        if (c.multiple_of_h) os << " = " << *c.multiple_of_h << "h";
        os << "\n";
      }
    }
    if (s.id == "S5" && rep.s5 && rep.s5->char_data) {
      const auto& c = *rep.s5->char_data;
      os << "    characteristic polynomial " << c.poly_str();
      if (c.dominant_root) os << ", dominant root " << c.dominant_root->str();
      os << "\n    " << citation::kS5 << " eigenvalue " << kCitedEigenvalue.str() << ": "
         << (rep.s5->cited_eigenvalue_is_root ? "consistent" : "NOT a root of the characteristic polynomial")
         << "\n";
    }
  }
  os << "\nverdict: " << to_string(rep.verdict) << "\n";
  os << "cited, not computed:\n";
  for (const auto& n : rep.notes) os << "  - " << n << "\n";
  return os.str();
}

}  // namespace gizcert::io

#endif  // GIZCERT_IO_HPP_

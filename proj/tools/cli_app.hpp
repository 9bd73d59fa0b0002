// Command-line front end. Kept in a header so the test suite can drive it
// in-process with captured streams.
//
// Exit codes: 0 pass / success, 1 fail, 2 unknown, 3 input or usage error.

#ifndef GIZCERT_TOOLS_CLI_APP_HPP_
#define GIZCERT_TOOLS_CLI_APP_HPP_

#include "gizcert/gizcert.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace gizcert::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUnknown = 2, kUsage = 3 };

inline CertificateInput load_document(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io::input_error("path", "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return io::parse_input(ss.str());
}

inline int cmd_check(const std::string& path, bool verify, const std::string& format,
                     std::optional<long long> degree_bound, unsigned jobs, bool timing,
                     std::ostream& out) {
  CertificateInput in = load_document(path);
  if (degree_bound) {
    if (*degree_bound < 1) throw usage_error("--degree-bound must be positive");
    in.degree_bound = *degree_bound;
  }
  RunOptions opts;
  opts.verify = verify;
  opts.jobs = jobs;
  const CertificateReport rep = run_certificate(in, opts);
  if (format == "json") out << io::to_json(rep, timing).dump(2) << "\n";
  else out << io::to_text(rep, timing);
  switch (rep.verdict) {
    case Verdict::Pass: return kPass;
    case Verdict::Fail: return kFail;
    case Verdict::Unknown: return kUnknown;
  }
  return kUnknown;
}

inline int cmd_pell(const std::string& d_text, const std::string& format, std::ostream& out) {
  Int D;
  try {
    D = Int(d_text);
  } catch (const std::exception&) {
    throw usage_error("D must be an integer");
  }
  const PellSolution s = pell_fundamental(D);
  if (format == "json")
    out << io::json{{"D", io::to_json(D)}, {"x", io::to_json(s.x)}, {"y", io::to_json(s.y)}}.dump(2) << "\n";
  else
    out << "(" << s.x << ", " << s.y << ")\n";
  return kPass;
}

inline int cmd_disc(const std::string& path, const std::string& format, std::ostream& out) {
  const CertificateInput in = load_document(path);
  const GramLattice g(in.gram);
  const DiscriminantGroup dg(g);
  io::json doc;
  doc["invariant_factors"] = io::to_json(dg.invariant_factors());
  doc["order"] = io::to_json(dg.order());
  io::json gens = io::json::array();
  for (const auto& w : dg.generators()) {
    io::json gen;
    io::json coords = io::json::array();
    for (const auto& x : w) coords.push_back(io::to_json(x));
    gen["vector"] = std::move(coords);
    if (is_even(g)) gen["q"] = io::to_json(disc_quadratic_value(g, w));
    gens.push_back(std::move(gen));
  }
  doc["generators"] = std::move(gens);
  if (in.isometry) {
    const DiscAction act = induced_action(dg, *in.isometry);
    doc["action"] = io::to_json(act.matrix);
    doc["action_order"] = io::to_json(action_order(act));
  }
  if (format == "json") {
    out << doc.dump(2) << "\n";
    return kPass;
  }
  out << "invariant factors: [";
  for (std::size_t i = 0; i < dg.invariant_factors().size(); ++i)
    out << (i ? ", " : "") << dg.invariant_factors()[i];
  out << "]\norder: " << dg.order() << "\n";
  for (std::size_t i = 0; i < dg.generators().size(); ++i) {
    out << "generator " << i << ": (";
    for (std::size_t j = 0; j < dg.generators()[i].size(); ++j)
      out << (j ? ", " : "") << to_string(dg.generators()[i][j]);
    out << ")";
    if (is_even(g)) out << "  q = " << to_string(disc_quadratic_value(g, dg.generators()[i])) << " mod 2";
    out << "\n";
  }
  if (in.isometry) {
    out << "action: " << doc["action"].dump() << "\n";
    out << "action order: " << doc["action_order"].dump() << "\n";
  }
  return kPass;
}

inline int cmd_orbit(const std::string& path, unsigned k_max, const std::string& format,
                     std::ostream& out) {
  const CertificateInput in = load_document(path);
  if (!in.isometry) throw io::input_error("isometry", "orbit needs an isometry in the document");
  const GramLattice g(in.gram);
  const IsometryMatrix m(g, *in.isometry);
  const auto orbit = polarization_orbit(m, in.polarization, k_max);
  if (format == "json") {
    io::json pts = io::json::array();
    for (const auto& p : orbit)
      pts.push_back(io::json{{"k", p.k}, {"image", io::to_json(p.image)}, {"degree", io::to_json(p.degree)}});
    out << io::json{{"moves_polarization", moves_polarization(m, in.polarization)}, {"orbit", pts}}.dump(2)
        << "\n";
    return kPass;
  }
  for (const auto& p : orbit)
    out << "k=" << p.k << "  " << to_string(p.image) << "  degree " << p.degree << "\n";
  return kPass;
}

inline int cmd_enumerate(const std::string& path, std::optional<long long> bound,
                         const std::string& format, std::ostream& out) {
  const CertificateInput in = load_document(path);
  const GramLattice g(in.gram);
  const Int b = bound ? Int(*bound) : in.degree_bound;
  if (b < 1) throw usage_error("--bound must be positive");
  const LatticeVector h = normalize_polarization(g, in.polarization).first;
  const Int radius = oracle::required_low_degree_radius(g, h, b);
  const auto brute = oracle::brute_low_degree(g, h, b, radius);
  const auto windows = enumerate_low_degree(g, h, b);
  const bool agrees = brute == windows.classes;
  if (format == "json") {
    io::json cls = io::json::array();
    for (const auto& c : brute) cls.push_back(io::to_json(c));
    out << io::json{{"degree_bound", io::to_json(b)},
                    {"radius", io::to_json(radius)},
                    {"classes", cls},
                    {"agrees_with_windows", agrees}}
               .dump(2)
        << "\n";
  } else {
    out << "box radius " << radius << " (exhaustive for degree < " << b << ")\n";
    for (const auto& c : brute) {
      out << to_string(c.coords) << "  degree " << c.degree << "  square " << c.square;
      if (c.multiple_of_h) out << "  = " << *c.multiple_of_h << "h";
      out << "\n";
    }
    out << "window enumeration " << (agrees ? "agrees" : "DISAGREES") << "\n";
  }
  return agrees ? kPass : kFail;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice certificate checker for polarized rank-2 K3 Picard lattices"};
  app.require_subcommand(1);

  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };

  std::string path;
  bool verify = false, timing = false;
  long long degree_bound = 0;
  unsigned jobs = 1;
  auto* check = app.add_subcommand("check", "Run the full certificate on an input document");
  check->add_option("path", path, "Input document")->required();
  check->add_flag("--verify", verify, "Cross-check every decision with the brute-force oracles");
  auto* db_opt = check->add_option("--degree-bound", degree_bound, "Override degree_bound");
  check->add_option("--jobs", jobs, "Worker threads for the degree windows")->check(CLI::PositiveNumber);
  check->add_flag("--timing", timing, "Include per-step timings");
  add_format(check);

  std::string d_text;
  auto* pell = app.add_subcommand("pell", "Fundamental solution of x^2 - D y^2 = 1");
  pell->add_option("D", d_text, "Positive nonsquare integer")->required();
  add_format(pell);

  auto* disc = app.add_subcommand("disc", "Discriminant group of the document's lattice");
  disc->add_option("path", path, "Input document")->required();
  add_format(disc);

  unsigned k_max = 3;
  auto* orbit = app.add_subcommand("orbit", "Orbit of the polarization under the isometry");
  orbit->add_option("path", path, "Input document")->required();
  orbit->add_option("--k-max", k_max, "Last power to report")->check(CLI::PositiveNumber);
  add_format(orbit);

  long long bound = 0;
  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive low-degree class scan");
  enumerate->add_option("path", path, "Input document")->required();
  auto* bound_opt = enumerate->add_option("--bound", bound, "Degree bound (default: document)");
  add_format(enumerate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*check)
      return cmd_check(path, verify, format,
                       db_opt->count() ? std::optional<long long>(degree_bound) : std::nullopt, jobs,
                       timing, out);
    if (*pell) return cmd_pell(d_text, format, out);
    if (*disc) return cmd_disc(path, format, out);
    if (*orbit) return cmd_orbit(path, k_max, format, out);
    if (*enumerate)
      return cmd_enumerate(path, bound_opt->count() ? std::optional<long long>(bound) : std::nullopt,
                           format, out);
  } catch (const io::input_error& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"gizcert"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gizcert::cli

#endif  // GIZCERT_TOOLS_CLI_APP_HPP_

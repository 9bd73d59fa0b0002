#include "support.hpp"

#include <gtest/gtest.h>

using namespace gizcert;
using gizcert::testing::quartic_lattice;
using gizcert::testing::quartic_sigma;

namespace {

CertificateInput quartic_input() {
  CertificateInput in;
  in.gram = IntMatrix{{4, 20}, {20, 4}};
  in.polarization = {1, 0};
  in.isometry = quartic_sigma();
  return in;
}

// Recompute a fail witness from scratch and check it supports the reason.
void expect_witness_revalidates(const GramLattice& g, const LatticeVector& h, const StepResult& s) {
  ASSERT_EQ(s.status, StepStatus::Fail);
  ASSERT_TRUE(s.witness);
  const Witness& w = *s.witness;
  if (s.id == "S2") {
    ASSERT_TRUE(w.vector);
    ASSERT_FALSE(is_zero(*w.vector));
    const Int n = norm(g, *w.vector);
    ASSERT_TRUE(n == 0 || n == -2);
    ASSERT_EQ(n, *w.value);
  } else if (s.id == "S3") {
    ASSERT_TRUE(w.vector);
    ASSERT_TRUE(!is_primitive(*w.vector) || norm(g, *w.vector) != 4);
  } else if (s.id == "S4") {
    ASSERT_TRUE(w.vector);
    const Int d = inner(g, *w.vector, h);
    ASSERT_GT(d, 0);
    ASSERT_LT(d, 16);
    ASSERT_GT(norm(g, *w.vector), 0);
    ASSERT_FALSE(multiple_of(*w.vector, h));
  }
}

}  // namespace

TEST(S1, Examples) {
  EXPECT_EQ(check_S1_lattice(quartic_lattice()).status, StepStatus::Pass);
  const StepResult odd = check_S1_lattice(GramLattice(IntMatrix{{1, 0}, {0, -1}}));
  EXPECT_EQ(odd.status, StepStatus::Fail);
  ASSERT_TRUE(odd.witness && odd.witness->vector);
  EXPECT_EQ(norm(GramLattice(IntMatrix{{1, 0}, {0, -1}}), *odd.witness->vector) % 2 != 0, true);
  EXPECT_EQ(check_S1_lattice(GramLattice(IntMatrix{{2, 0}, {0, 2}})).status, StepStatus::Fail);
  EXPECT_EQ(check_S1_lattice(GramLattice(IntMatrix{{2, 1, 0}, {1, 2, 0}, {0, 0, -2}})).status,
            StepStatus::Fail);
}

TEST(S2, Examples) {
  EXPECT_EQ(check_S2_no_0_minus2(quartic_lattice(), 1000).status, StepStatus::Pass);

  // primitive part x^2 + 5xy + y^2 (disc 21); -2 blocked by content 4
  const GramLattice control(IntMatrix{{4, 10}, {10, 4}});
  EXPECT_EQ(check_S2_no_0_minus2(control, 1000).status, StepStatus::Pass);
  const auto box = oracle::brute_values(control, 50);
  EXPECT_EQ(box.count(0) + box.count(-2), 0u);

  const GramLattice diag(IntMatrix{{2, 0}, {0, -2}});
  const StepResult r = check_S2_no_0_minus2(diag, 1000);
  EXPECT_EQ(r.status, StepStatus::Fail);
  expect_witness_revalidates(diag, {1, 0}, r);

  const GramLattice hyp(IntMatrix{{0, 1}, {1, 0}});
  const StepResult rh = check_S2_no_0_minus2(hyp, 1000);
  EXPECT_EQ(rh.status, StepStatus::Fail);
  EXPECT_EQ(rh.witness->what, "isotropic vector");
  expect_witness_revalidates(hyp, {1, 1}, rh);
}

TEST(S3, Examples) {
  const GramLattice g = quartic_lattice();
  EXPECT_EQ(check_S3_polarization(g, {1, 0}).status, StepStatus::Pass);
  EXPECT_EQ(check_S3_polarization(g, {0, 1}).status, StepStatus::Pass);
  const StepResult imp = check_S3_polarization(g, {2, 0});
  EXPECT_EQ(imp.status, StepStatus::Fail);
  expect_witness_revalidates(g, {2, 0}, imp);
  EXPECT_THROW(check_S3_polarization(g, {0, 0}), usage_error);

  S3Data d;
  EXPECT_EQ(check_S3_polarization(g, {-1, 0}, &d).status, StepStatus::Pass);
  EXPECT_TRUE(d.negated);
  EXPECT_EQ(d.normalized, (LatticeVector{1, 0}));
}

TEST(S4, QuarticWindowsReproduceCaseAnalysis) {
  S4Data d;
  const StepResult r = check_S4_low_degree(quartic_lattice(), {1, 0}, 16, &d);
  EXPECT_EQ(r.status, StepStatus::Pass);
  ASSERT_EQ(d.classes.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(d.classes[i].coords, (LatticeVector{Int(i + 1), 0}));
    EXPECT_EQ(d.classes[i].multiple_of_h, Int(i + 1));
  }
  std::vector<std::string> ineqs, lines;
  for (const auto& w : d.windows)
    if (w.has_points) {
      ineqs.push_back(w.inequality_str());
      lines.push_back(w.line_str());
      ASSERT_TRUE(w.s_range);
      EXPECT_EQ(*w.s_range, std::make_pair(Int(0), Int(0)));
    }
  EXPECT_EQ(ineqs, (std::vector<std::string>{"1 - 24s^2 > 0", "4 - 24s^2 > 0", "9 - 24s^2 > 0"}));
  EXPECT_EQ(lines, (std::vector<std::string>{"C = (1 - 5s, s)", "C = (2 - 5s, s)", "C = (3 - 5s, s)"}));
}

TEST(S4, ControlFails) {
  const GramLattice g(IntMatrix{{4, 6}, {6, 4}});
  const StepResult r = check_S4_low_degree(g, {1, 0}, 16);
  EXPECT_EQ(r.status, StepStatus::Fail);
  EXPECT_EQ(r.witness->vector, (LatticeVector{0, 1}));
  expect_witness_revalidates(g, {1, 0}, r);
}

TEST(S4, MatchesOracleAndIsMonotoneInBound) {
  const std::vector<std::pair<IntMatrix, LatticeVector>> cases = {
      {IntMatrix{{4, 20}, {20, 4}}, {1, 0}}, {IntMatrix{{4, 20}, {20, 4}}, {0, 1}},
      {IntMatrix{{4, 6}, {6, 4}}, {1, 0}},   {IntMatrix{{4, 10}, {10, 4}}, {1, 0}},
      {IntMatrix{{2, 1}, {1, -2}}, {1, 0}},  {IntMatrix{{4, 2}, {2, -6}}, {1, 0}},
      {IntMatrix{{6, 1}, {1, -4}}, {1, 1}}};
  for (const auto& [gram, h] : cases) {
    const GramLattice g(gram);
    std::vector<LowDegreeClass> prev;
    for (int bound = 1; bound <= 40; ++bound) {
      const S4Data d = enumerate_low_degree(g, h, bound);
      const auto brute = oracle::brute_low_degree(g, h, bound, oracle::required_low_degree_radius(g, h, bound));
      ASSERT_EQ(d.classes, brute) << gram << " bound " << bound;
      ASSERT_GE(d.classes.size(), prev.size());
      ASSERT_TRUE(std::equal(prev.begin(), prev.end(), d.classes.begin()));
      prev = d.classes;
    }
  }
}

TEST(S4, ParallelWindowsAreDeterministic) {
  const GramLattice g(IntMatrix{{2, 1}, {1, -2}});
  const S4Data one = enumerate_low_degree(g, {1, 0}, 200, 1);
  for (unsigned jobs : {2u, 3u, 8u}) {
    const S4Data many = enumerate_low_degree(g, {1, 0}, 200, jobs);
    EXPECT_EQ(many.classes, one.classes);
    ASSERT_EQ(many.windows.size(), one.windows.size());
    for (std::size_t i = 0; i < one.windows.size(); ++i)
      EXPECT_EQ(many.windows[i].inequality_str(), one.windows[i].inequality_str());
  }
}

TEST(S5, SuppliedSigma) {
  S5Data d;
  const StepResult r = check_S5_isometry(quartic_lattice(), {1, 0}, quartic_sigma(), &d);
  EXPECT_EQ(r.status, StepStatus::Pass);
  EXPECT_TRUE(d.preserves_cone);
  EXPECT_TRUE(d.order.infinite);
  EXPECT_TRUE(d.moves_polarization);
  ASSERT_TRUE(d.disc_order);
  EXPECT_EQ(*d.disc_order, oracle::brute_action_order(quartic_lattice(), quartic_sigma()));
  EXPECT_FALSE(d.cited_eigenvalue_is_root);
}

TEST(S5, IdentityFails) {
  const StepResult r = check_S5_isometry(quartic_lattice(), {1, 0}, IntMatrix::identity(2));
  EXPECT_EQ(r.status, StepStatus::Fail);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->value, Int(1));
}

TEST(S5, NonIsometryFails) {
  const StepResult r = check_S5_isometry(quartic_lattice(), {1, 0}, IntMatrix{{1, 1}, {0, 1}});
  EXPECT_EQ(r.status, StepStatus::Fail);
  ASSERT_TRUE(r.witness && r.witness->matrix);
}

TEST(S5, ConeSwappingFails) {
  EXPECT_EQ(check_S5_isometry(quartic_lattice(), {1, 0}, -quartic_sigma()).status, StepStatus::Fail);
}

TEST(S5, AutomorphCandidateWhenAbsent) {
  S5Data d;
  const StepResult r = check_S5_isometry(quartic_lattice(), {1, 0}, std::nullopt, &d);
  EXPECT_EQ(r.status, StepStatus::Pass);
  ASSERT_TRUE(d.isometry);
  // the chosen automorph generates the same cyclic group as sigma
  const IntMatrix& m = *d.isometry;
  EXPECT_TRUE(m == quartic_sigma() || m == unimodular_inverse(quartic_sigma()));
}

TEST(Certificate, QuarticInputPasses) {
  const CertificateReport rep = run_certificate(quartic_input(), {true, 1});
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  ASSERT_EQ(rep.steps.size(), 5u);
  for (const auto& s : rep.steps) EXPECT_EQ(s.status, StepStatus::Pass) << s.id << ": " << s.summary;
  EXPECT_EQ(rep.derived.det, -384);
  EXPECT_EQ(*rep.derived.invariant_factors, (std::vector<Int>{4, 96}));
  EXPECT_TRUE(*rep.s4->oracle_agrees);
  EXPECT_FALSE(*rep.s2->oracle_zero_found);
}

TEST(Certificate, ImprimitivePolarizationFailsAtS3) {
  CertificateInput in = quartic_input();
  in.polarization = {2, 0};
  const CertificateReport rep = run_certificate(in);
  EXPECT_EQ(rep.verdict, Verdict::Fail);
  EXPECT_EQ(rep.step("S3").status, StepStatus::Fail);
  EXPECT_EQ(rep.step("S4").status, StepStatus::Skipped);
  EXPECT_EQ(rep.step("S5").status, StepStatus::Skipped);
}

TEST(Certificate, HyperbolicPlaneFailsAtS2) {
  CertificateInput in;
  in.gram = IntMatrix{{0, 1}, {1, 0}};
  in.polarization = {1, 1};
  const CertificateReport rep = run_certificate(in);
  EXPECT_EQ(rep.verdict, Verdict::Fail);
  EXPECT_EQ(rep.step("S1").status, StepStatus::Pass);
  EXPECT_EQ(rep.step("S2").status, StepStatus::Fail);
  for (const char* id : {"S3", "S4", "S5"}) EXPECT_EQ(rep.step(id).status, StepStatus::Skipped);
}

TEST(Certificate, StableUnderBasisSwapAndInverse) {
  CertificateInput swapped = quartic_input();
  swapped.polarization = {0, 1};
  // sigma conjugated by the swap, still an isometry of the same Gram matrix
  const IntMatrix p{{0, 1}, {1, 0}};
  swapped.isometry = p * quartic_sigma() * p;
  EXPECT_EQ(run_certificate(swapped).verdict, Verdict::Pass);

  CertificateInput inv = quartic_input();
  inv.isometry = unimodular_inverse(quartic_sigma());
  EXPECT_EQ(run_certificate(inv).verdict, Verdict::Pass);
}

TEST(Certificate, RejectsMalformedInput) {
  CertificateInput in = quartic_input();
  in.polarization = {1, 0, 0};
  EXPECT_THROW(run_certificate(in), usage_error);
  in = quartic_input();
  in.degree_bound = 0;
  EXPECT_THROW(run_certificate(in), usage_error);
  in = quartic_input();
  in.gram = IntMatrix{{2, 4}, {4, 8}};
  EXPECT_THROW(run_certificate(in), degenerate_form_error);
}

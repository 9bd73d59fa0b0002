#include "support.hpp"

#include <gtest/gtest.h>

using namespace gizcert;
using gizcert::testing::quartic_lattice;
using gizcert::testing::quartic_sigma;
using gizcert::testing::Rng;

TEST(Isometry, Validation) {
  const GramLattice g = quartic_lattice();
  EXPECT_TRUE(is_isometry(g, quartic_sigma()));
  EXPECT_TRUE(is_isometry(g, IntMatrix::identity(2)));
  EXPECT_TRUE(is_isometry(g, IntMatrix{{0, 1}, {1, 0}}));
  EXPECT_FALSE(is_isometry(g, IntMatrix{{1, 1}, {0, 1}}));
  EXPECT_THROW(is_isometry(g, IntMatrix::identity(3)), usage_error);
  EXPECT_THROW(IsometryMatrix(g, IntMatrix{{2, 0}, {0, 1}}), usage_error);
  // sigma(h1) = 10 h1 - h2: (10h1 - h2)^2 = 4 and (10h1 - h2).h1 = 20
  EXPECT_EQ(norm(g, {10, -1}), 4);
  EXPECT_EQ(inner(g, {10, -1}, {1, 0}), 20);
}

TEST(Isometry, PositiveCone) {
  const GramLattice g = quartic_lattice();
  const LatticeVector h{1, 0};
  EXPECT_EQ(inner(g, IsometryMatrix(g, quartic_sigma()).apply(h), h), 40 - 20);
  EXPECT_TRUE(preserves_positive_cone(IsometryMatrix(g, quartic_sigma()), h));
  EXPECT_TRUE(preserves_positive_cone(IsometryMatrix(g, IntMatrix::identity(2)), h));
  EXPECT_FALSE(preserves_positive_cone(IsometryMatrix(g, -IntMatrix::identity(2)), h));
  EXPECT_THROW(preserves_positive_cone(IsometryMatrix(g, quartic_sigma()), {1, -1}), usage_error);
  EXPECT_THROW(preserves_positive_cone(IsometryMatrix(GramLattice(IntMatrix::identity(2)),
                                                      IntMatrix::identity(2)),
                                       {1, 0}),
               usage_error);
}

TEST(Isometry, Order) {
  EXPECT_EQ(order(IntMatrix::identity(2)), OrderResult::finite(1));
  EXPECT_EQ(order(-IntMatrix::identity(2)), OrderResult::finite(2));
  EXPECT_EQ(order(IntMatrix{{0, -1}, {1, 0}}), OrderResult::finite(4));
  EXPECT_EQ(order(IntMatrix{{0, -1}, {1, -1}}), OrderResult::finite(3));
  EXPECT_EQ(order(IntMatrix{{1, -1}, {1, 0}}), OrderResult::finite(6));
  EXPECT_TRUE(order(quartic_sigma()).infinite);
  EXPECT_THROW(order(IntMatrix::identity(3)), usage_error);
}

TEST(Isometry, CharacteristicData) {
  const CharData s = char_poly_rank2(quartic_sigma());
  EXPECT_EQ(s.trace, 10);
  EXPECT_EQ(s.det, 1);
  ASSERT_TRUE(s.dominant_root);
  EXPECT_EQ(*s.dominant_root, (QuadraticSurd{5, 2, 6}));
  EXPECT_EQ(s.dominant_root->str(), "5 + 2√6");
  EXPECT_EQ(s.poly_str(), "x^2 - 10x + 1");
  EXPECT_TRUE(is_char_root(s, *s.dominant_root));
  EXPECT_TRUE(is_char_root(s, QuadraticSurd{5, -2, 6}));
  EXPECT_FALSE(is_char_root(s, QuadraticSurd{5, 4, 6}));

  const CharData id = char_poly_rank2(IntMatrix::identity(2));
  EXPECT_EQ(id.trace, 2);
  EXPECT_EQ(id.det, 1);
  EXPECT_EQ(id.dominant_root->str(), "1");

  const CharData swap = char_poly_rank2(IntMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(swap.trace, 0);
  EXPECT_EQ(swap.det, -1);
  EXPECT_EQ(swap.dominant_root->str(), "1");

  EXPECT_FALSE(char_poly_rank2(IntMatrix{{0, -1}, {1, 0}}).dominant_root);  // complex roots
  // golden ratio: half-integral surd coefficients
  EXPECT_EQ(char_poly_rank2(IntMatrix{{1, 1}, {1, 0}}).dominant_root->str(), "1/2 + 1/2√5");
}

TEST(Isometry, PolarizationOrbit) {
  const GramLattice g = quartic_lattice();
  const IsometryMatrix s(g, quartic_sigma());
  const auto orbit = polarization_orbit(s, {1, 0}, 3);
  ASSERT_EQ(orbit.size(), 4u);
  EXPECT_EQ(orbit[0].degree, 4);
  EXPECT_EQ(orbit[1].image, (LatticeVector{10, -1}));
  EXPECT_EQ(orbit[1].degree, 20);
  EXPECT_EQ(orbit[2].image, (LatticeVector{99, -10}));
  EXPECT_EQ(orbit[2].degree, 196);
  EXPECT_EQ(orbit[3].degree, 1940);
  EXPECT_TRUE(moves_polarization(s, {1, 0}));
  EXPECT_FALSE(moves_polarization(IsometryMatrix(g, IntMatrix::identity(2)), {1, 0}));
  EXPECT_THROW(polarization_orbit(s, {1, 0}, 0), usage_error);
}

TEST(Isometry, OrbitDegreesStrictlyIncrease) {
  const IsometryMatrix s(quartic_lattice(), quartic_sigma());
  const auto orbit = polarization_orbit(s, {1, 0}, 10);
  for (std::size_t k = 1; k < orbit.size(); ++k) EXPECT_LT(orbit[k - 1].degree, orbit[k].degree);
}

TEST(IsometryProperties, NormPreservationAndGroupStructure) {
  const GramLattice g = quartic_lattice();
  const IsometryMatrix s(g, quartic_sigma());
  const std::vector<IsometryMatrix> gens = {s, s.inverse(), IsometryMatrix(g, IntMatrix{{0, 1}, {1, 0}}),
                                            IsometryMatrix(g, -IntMatrix::identity(2))};
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    IsometryMatrix m(g, IntMatrix::identity(2));
    const int len = static_cast<int>(rng.uniform(1, 5));
    for (int i = 0; i < len; ++i) m = m * gens[static_cast<std::size_t>(rng.uniform(0, 3))];
    ASSERT_TRUE(is_isometry(g, m.matrix()));
    ASSERT_TRUE(is_isometry(g, m.inverse().matrix()));
    ASSERT_EQ((m * m.inverse()).matrix(), IntMatrix::identity(2));
    ASSERT_EQ(abs(determinant(m.matrix())), 1);
    for (int x = -5; x <= 5; ++x)
      for (int y = -5; y <= 5; ++y) ASSERT_EQ(norm(g, m.apply({x, y})), norm(g, {x, y}));
    const OrderResult o = order(m);
    if (o.infinite) ASSERT_NE(power(m.matrix(), 12), IntMatrix::identity(2));
    else ASSERT_EQ(power(m.matrix(), static_cast<unsigned>(o.k)), IntMatrix::identity(2));
  }
}

TEST(IsometryProperties, ConeFlagIsMultiplicative) {
  const GramLattice g = quartic_lattice();
  const std::vector<IntMatrix> isos = {quartic_sigma(), unimodular_inverse(quartic_sigma()),
                                       IntMatrix{{0, 1}, {1, 0}}, -IntMatrix::identity(2),
                                       -quartic_sigma()};
  for (const LatticeVector& h : {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{3, 1}}) {
    for (const auto& a : isos)
      for (const auto& b : isos) {
        const bool fa = preserves_positive_cone(IsometryMatrix(g, a), h);
        const bool fb = preserves_positive_cone(IsometryMatrix(g, b), h);
        ASSERT_EQ(preserves_positive_cone(IsometryMatrix(g, a * b), h), fa == fb);
      }
  }
}

#include <gtest/gtest.h>

#include "support.hpp"

using namespace tkern;
using tkern::testing::Gen;
using tkern::testing::sup_diff;

namespace {

RationalFunction zpk(Complex k, std::vector<Complex> z, std::vector<Complex> p) {
  return RationalFunction::from_zpk(k, std::move(z), std::move(p));
}

const RationalFunction Z = RationalFunction::z();

}  // namespace

TEST(Rational, ReducesCommonFactors) {
  RationalFunction f = zpk(2.0, {0.5, 3.0}, {0.5, -1.5});
  EXPECT_EQ(f.num_degree(), 1);
  EXPECT_EQ(f.den_degree(), 1);
  EXPECT_NEAR(std::abs(f(0.2) - 2.0 * (0.2 - 3.0) / (0.2 + 1.5)), 0.0, 1e-14);
}

TEST(Rational, DenominatorIsMonic) {
  RationalFunction f = RationalFunction::from_polynomials(Polynomial({1.0, 2.0}), Polynomial({4.0, -2.0}));
  EXPECT_NEAR(std::abs(f.denominator().leading() - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f(0.3) - 1.6 / 3.4), 0.0, 1e-14);
}

TEST(Rational, SumMatchesPointwise) {
  Gen g(21);
  for (int t = 0; t < 50; ++t) {
    RationalFunction a = g.h2_function(), b = g.h2_function();
    RationalFunction s = a + b, d = a - b;
    EXPECT_LT(sup_diff(s, [&](Complex z) { return a(z) + b(z); }), 1e-9);
    EXPECT_LT(sup_diff(d, [&](Complex z) { return a(z) - b(z); }), 1e-9);
  }
}

TEST(Rational, CancellingSumIsZero) {
  RationalFunction a = zpk(1.0, {2.0}, {3.0});
  EXPECT_TRUE((a - a).is_zero());
}

TEST(Classify, WorkedExampleSymbol) {
  RationalFunction g = zpk(1.0, {2.0}, {0.0, 0.0, 3.0, 4.0});
  PoleZeroProfile p = classify(g);
  EXPECT_EQ(p.zeros.n_outside(), 1);
  EXPECT_EQ(p.zeros.n_inside(), 0);
  EXPECT_EQ(p.poles.n_inside(), 2);
  ASSERT_EQ(p.poles.inside.size(), 1u);
  EXPECT_EQ(p.poles.inside[0].second, 2);
  EXPECT_EQ(p.poles.n_outside(), 2);
}

TEST(Classify, ZeroOnCircle) {
  PoleZeroProfile p = classify(zpk(1.0, {1.0}, {}));
  EXPECT_EQ(p.zeros.n_on_circle(), 1);
}

TEST(Classify, PoleOutside) {
  RationalFunction f = RationalFunction(1.0) / (1.0 - 0.5 * Z);
  PoleZeroProfile p = classify(f);
  ASSERT_EQ(p.poles.n_outside(), 1);
  EXPECT_NEAR(std::abs(p.poles.outside[0].first - 2.0), 0.0, 1e-14);
}

TEST(Classify, AmbiguousBandThrows) {
  RationalFunction f = zpk(1.0, {1.0 + 1e-8}, {});
  try {
    classify(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundaryAmbiguous);
  }
}

TEST(BoundaryConjugate, Examples) {
  RationalFunction r = boundary_conjugate(Z);
  EXPECT_EQ(r.num_degree(), 0);
  EXPECT_EQ(r.den_degree(), 1);
  EXPECT_NEAR(std::abs(r(0.5) - 2.0), 0.0, 1e-15);

  RationalFunction s = boundary_conjugate(1.0 - 0.5 * Z);
  EXPECT_LT(sup_diff(s, [](Complex z) { return (z - 0.5) / z; }), 1e-14);

  RationalFunction b = zpk(1.0, {0.5}, {}) / (1.0 - 0.5 * Z);
  EXPECT_LT(sup_diff(boundary_conjugate(b), [&](Complex z) { return 1.0 / b(z); }), 1e-13);
}

TEST(BoundaryConjugate, ConjugatesOnCircleProperty) {
  Gen g(8);
  for (int t = 0; t < 100; ++t) {
    RationalFunction f = g.h2_function();
    if (g.integer(0, 1)) f = f / zpk(1.0, {g.in_disk(0.8)}, {});
    RationalFunction r = boundary_conjugate(f);
    double scale = 1.0;
    for (Complex z : circle_points(64)) scale = std::max(scale, std::abs(f(z)));
    EXPECT_LT(sup_diff(r, [&](Complex z) { return std::conj(f(z)); }, 64), 1e-12 * scale);
    RationalFunction rr = boundary_conjugate(r);
    EXPECT_LT(sup_diff(rr, f, 64), 1e-12 * scale);
  }
}

TEST(ProjectPlus, Laurent) {
  RationalFunction f = RationalFunction(1.0) / Z + 1.0 + Z;
  EXPECT_LT(sup_diff(project_plus(f), [](Complex z) { return 1.0 + z; }), 1e-13);
}

TEST(ProjectPlus, KeepsOuterPoleTerm) {
  RationalFunction f = zpk(1.0, {}, {0.5, 2.0});
  RationalFunction p = project_plus(f);
  EXPECT_LT(sup_diff(p, [](Complex z) { return (2.0 / 3.0) / (z - 2.0); }), 1e-13);
}

TEST(ProjectPlus, IdentityOnH2) {
  RationalFunction f = zpk(3.0, {0.2, 5.0}, {-2.0, Complex{0.0, 1.5}});
  EXPECT_LT(sup_diff(project_plus(f), f), 1e-12);
}

TEST(ProjectPlus, PoleOnCircleThrows) {
  try {
    project_plus(zpk(1.0, {}, {1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleOnCircle);
  }
}

TEST(ProjectPlus, RepeatedPoles) {
  // 1/((z-0.5)^2 (z-2)^2), checked against the exact Fourier coefficients
  // from direct quadrature.
  RationalFunction f = zpk(1.0, {}, {0.5, 0.5, 2.0, 2.0});
  RationalFunction p = project_plus(f);
  auto exact = fourier_coeffs_dft(f, 0, 20);
  auto got = fourier_coeffs_dft(p, -5, 20);
  for (int k = -5; k < 0; ++k) EXPECT_NEAR(std::abs(got[static_cast<size_t>(k + 5)]), 0.0, 1e-12);
  for (int k = 0; k <= 20; ++k) EXPECT_NEAR(std::abs(got[static_cast<size_t>(k + 5)] - exact[static_cast<size_t>(k)]), 0.0, 1e-12);
}

TEST(ProjectPlus, IdempotentAndSplitsProperty) {
  Gen g(13);
  for (int t = 0; t < 100; ++t) {
    std::vector<Complex> zs, ps;
    for (int k = g.integer(0, 3); k > 0; --k) zs.push_back(g.in_disk(3.0));
    for (int k = g.integer(0, 4); k > 0; --k) ps.push_back(g.integer(0, 1) ? g.in_disk(0.8) : g.in_annulus(1.25, 3.0));
    RationalFunction f = zpk(1.0, zs, ps);
    RationalFunction p = project_plus(f);
    EXPECT_LT(sup_diff(project_plus(p), p), 1e-10 * std::max(1.0, sup_on_circle(p)));
    RationalFunction rest = f - p;
    EXPECT_TRUE(is_in_H2minus(rest)) << "trial " << t;
  }
}

TEST(L2Inner, Examples) {
  EXPECT_NEAR(std::abs(l2_inner(Z, Z) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(l2_inner(RationalFunction(1.0), Z)), 0.0, 1e-14);
  RationalFunction k = RationalFunction(1.0) / (1.0 - 0.5 * Z);
  EXPECT_NEAR(std::abs(l2_inner(k, k) - 4.0 / 3.0), 0.0, 1e-12);
}

TEST(L2Inner, NormIsRealProperty) {
  Gen g(17);
  for (int t = 0; t < 100; ++t) {
    RationalFunction f = g.h2_function();
    Complex n = l2_inner(f, f);
    EXPECT_GE(n.real(), 0.0);
    EXPECT_LT(std::abs(n.imag()), 1e-12 * std::max(1.0, n.real()));
  }
}

#include <gtest/gtest.h>

#include "support.hpp"

using namespace tkern;
using tkern::testing::Gen;
using tkern::testing::sup_diff;
using tkern::testing::unimodular_ratio_defect;

namespace {

const RationalFunction Z = RationalFunction::z();

RationalFunction zpk(Complex k, std::vector<Complex> z, std::vector<Complex> p) {
  return RationalFunction::from_zpk(k, std::move(z), std::move(p));
}

}  // namespace

TEST(H2Plus, Examples) {
  EXPECT_TRUE(is_in_H2plus(RationalFunction(1.0) / (1.0 - 0.5 * Z)));
  EXPECT_FALSE(is_in_H2plus(RationalFunction(1.0) / Z));
  EXPECT_TRUE(is_in_H2plus((1.0 + Z) / (Z - 3.0)));
  EXPECT_FALSE(is_in_H2plus(zpk(1.0, {}, {1.0})));
}

TEST(H2Minus, Examples) {
  EXPECT_TRUE(is_in_H2minus(RationalFunction(1.0) / Z));
  EXPECT_FALSE(is_in_H2minus(RationalFunction(1.0)));
  EXPECT_TRUE(is_in_H2minus((Z - 3.0) / (Z * Z)));
  EXPECT_TRUE(is_in_H2minus(RationalFunction()));
  EXPECT_FALSE(is_in_H2minus(RationalFunction(1.0) / (Z - 2.0)));
}

TEST(H2, NeverBothProperty) {
  Gen g(61);
  for (int t = 0; t < 200; ++t) {
    std::vector<Complex> zs, ps;
    for (int k = g.integer(0, 4); k > 0; --k) zs.push_back(g.in_disk(3.0));
    for (int k = g.integer(0, 4); k > 0; --k) ps.push_back(g.integer(0, 1) ? g.in_disk(0.9) : g.in_annulus(1.1, 3.0));
    RationalFunction f = zpk(g.uniform(0.5, 2.0), zs, ps);
    EXPECT_FALSE(is_in_H2plus(f) && is_in_H2minus(f));
    // H2- membership is the same as a vanishing Riesz projection.
    RationalFunction p = project_plus(f);
    double pn = p.is_zero() ? 0.0 : sup_on_circle(p);
    EXPECT_EQ(is_in_H2minus(f), pn < 1e-10) << "trial " << t;
  }
}

TEST(InnerOuter, Examples) {
  InnerOuter a = inner_outer(Z * (Z - 2.0));
  EXPECT_EQ(a.inner.degree(), 1);
  EXPECT_EQ(a.inner.zeros()[0], Complex{0.0});
  EXPECT_LT(unimodular_ratio_defect(a.outer, [](Complex z) { return z - 2.0; }), 1e-12);

  InnerOuter b = inner_outer((Z - 0.5) * (Z + 3.0));
  ASSERT_EQ(b.inner.degree(), 1);
  EXPECT_NEAR(std::abs(b.inner.zeros()[0] - 0.5), 0.0, 1e-12);
  EXPECT_LT(unimodular_ratio_defect(b.outer, [](Complex z) { return (1.0 - 0.5 * z) * (z + 3.0); }), 1e-12);

  InnerOuter c = inner_outer(1.0 + Z);
  EXPECT_EQ(c.inner.degree(), 0);
  EXPECT_TRUE(is_outer(c.outer));
}

TEST(InnerOuter, RejectsNonHardy) {
  try {
    inner_outer(RationalFunction(1.0) / Z);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInHardySpace);
  }
}

TEST(InnerOuter, FactorizationProperty) {
  Gen g(67);
  for (int t = 0; t < 200; ++t) {
    RationalFunction f = g.h2_function(6, 3);
    InnerOuter io = inner_outer(f);
    EXPECT_EQ(classify(io.outer).zeros.n_inside(), 0);
    EXPECT_TRUE(is_outer(io.outer));
    double scale = std::max(1.0, sup_on_circle(f));
    EXPECT_LT(sup_diff(io.product(), f, 256), 1e-9 * scale) << "trial " << t;
  }
}

TEST(ConjugateSmirnov, Examples) {
  EXPECT_TRUE(in_conjugate_smirnov(RationalFunction(1.0) / Z));
  EXPECT_FALSE(in_conjugate_smirnov(Z));
  EXPECT_TRUE(in_conjugate_smirnov((1.0 - 0.5 * Z) / (Z - 0.5)));
}

TEST(ToeplitzKernel, BridgeExamples) {
  // K_{z^2} is the kernel of T_{1/z^2}.
  RationalFunction g = RationalFunction(1.0) / (Z * Z);
  EXPECT_TRUE(in_toeplitz_kernel(RationalFunction(1.0), g));
  EXPECT_TRUE(in_toeplitz_kernel(1.0 + 2.0 * Z, g));
  EXPECT_FALSE(in_toeplitz_kernel(Z * Z, g));
  EXPECT_FALSE(in_toeplitz_kernel(RationalFunction(1.0) / Z, g));
}

TEST(ToeplitzKernel, BridgeAgreesWithProjectionProperty) {
  // f in ker T_g iff P+(g f) = 0, the latter computed from the quadrature
  // Fourier coefficients.
  Gen g(71);
  int hits = 0;
  for (int t = 0; t < 100; ++t) {
    BlaschkeProduct th = g.blaschke(g.integer(1, 3));
    RationalFunction sym = boundary_conjugate(th.to_rational());
    RationalFunction f = g.integer(0, 1) ? tm_basis(th)[0] * g.uniform(0.5, 2.0) : g.h2_function(2, 2);
    RationalFunction gf = sym * f;
    auto c = fourier_coeffs_dft(gf, 0, 40);
    double m = 0.0;
    for (Complex x : c) m = std::max(m, std::abs(x));
    bool in = in_toeplitz_kernel(f, sym);
    hits += in;
    EXPECT_EQ(in, m < 1e-9) << "trial " << t;
  }
  EXPECT_GT(hits, 20);
}

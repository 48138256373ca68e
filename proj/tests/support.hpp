#pragma once

// Test-side helpers: random generators and independent reference
// computations that do not go through the library's own algebra.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tkern/tkern.hpp"

namespace tkern::testing {

class Gen {
public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

  // Uniform in the disk |z| <= r.
  Complex in_disk(double r) {
    double rad = r * std::sqrt(uniform(0.0, 1.0));
    return std::polar(rad, uniform(0.0, 2.0 * std::numbers::pi));
  }

  // Point in the annulus rmin <= |z| <= rmax.
  Complex in_annulus(double rmin, double rmax) {
    return std::polar(uniform(rmin, rmax), uniform(0.0, 2.0 * std::numbers::pi));
  }

  // Blaschke product of the given degree with zeros in |z| <= r, kept at
  // least `sep` apart so that multiplicities are unambiguous.
  BlaschkeProduct blaschke(int degree, double r = 0.8, double sep = 0.05) {
    std::vector<Complex> zs;
    while (static_cast<int>(zs.size()) < degree) {
      Complex a = in_disk(r);
      bool ok = true;
      for (Complex b : zs) ok = ok && std::abs(a - b) > sep;
      if (ok) zs.push_back(a);
    }
    return BlaschkeProduct(zs, std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)));
  }

  // Rational function in H2 with zeros anywhere off the circle and poles
  // outside the closed disk.
  RationalFunction h2_function(int max_zeros = 3, int max_poles = 3) {
    std::vector<Complex> zs, ps;
    int nz = integer(0, max_zeros), np = integer(0, max_poles);
    for (int i = 0; i < nz; ++i) zs.push_back(integer(0, 1) ? in_disk(0.8) : in_annulus(1.25, 3.0));
    for (int i = 0; i < np; ++i) ps.push_back(in_annulus(1.25, 3.0));
    return RationalFunction::from_zpk(std::polar(uniform(0.5, 2.0), uniform(0.0, 6.28)), zs, ps);
  }

  std::mt19937& engine() { return rng_; }

private:
  std::mt19937 rng_;
};

// Gram matrix by direct circle quadrature.
inline Eigen::MatrixXcd gram(const std::vector<RationalFunction>& fs, int n = 2048) {
  auto pts = circle_points(n);
  const Eigen::Index d = static_cast<Eigen::Index>(fs.size());
  Eigen::MatrixXcd vals(n, d);
  for (int s = 0; s < n; ++s)
    for (Eigen::Index j = 0; j < d; ++j) vals(s, j) = fs[static_cast<size_t>(j)](pts[static_cast<size_t>(s)]);
  return vals.adjoint() * vals / static_cast<double>(n);
}

inline double gram_defect(const std::vector<RationalFunction>& fs, int n = 2048) {
  Eigen::MatrixXcd G = gram(fs, n);
  return (G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

// Sampled max |f - g| on the circle.
inline double sup_diff(const std::function<Complex(Complex)>& f, const std::function<Complex(Complex)>& g,
                       int n = 512) {
  double m = 0.0;
  for (Complex z : circle_points(n)) m = std::max(m, std::abs(f(z) - g(z)));
  return m;
}

// Smallest c with |c| = 1 fit of f = c g, and the residual.
inline double unimodular_ratio_defect(const std::function<Complex(Complex)>& f,
                                      const std::function<Complex(Complex)>& g, int n = 512) {
  auto pts = circle_points(n);
  Complex num{0.0};
  double den = 0.0;
  for (Complex z : pts) {
    num += f(z) * std::conj(g(z));
    den += std::norm(g(z));
  }
  Complex c = num / den;
  double defect = std::abs(std::abs(c) - 1.0);
  for (Complex z : pts) defect = std::max(defect, std::abs(f(z) - c * g(z)));
  return defect;
}

// Dimension of ker T_g from the square section of the Toeplitz matrix built
// by direct quadrature of the symbol (no partial fractions involved).
inline int quadrature_kernel_dim(const std::function<Complex(Complex)>& g, int M, int n = 4096) {
  auto pts = circle_points(n);
  std::vector<Complex> vals(pts.size());
  for (size_t j = 0; j < pts.size(); ++j) vals[j] = g(pts[j]);
  auto coeff = [&](int k) {
    Complex acc{0.0};
    for (size_t j = 0; j < pts.size(); ++j) acc += vals[j] * std::pow(std::conj(pts[j]), k);
    return acc / static_cast<double>(n);
  };
  std::vector<Complex> c(static_cast<size_t>(4 * M));
  for (int k = -(M - 1); k < 2 * M; ++k) c[static_cast<size_t>(k + M - 1)] = coeff(k);
  Eigen::MatrixXcd T(2 * M, M);
  for (int j = 0; j < 2 * M; ++j)
    for (int k = 0; k < M; ++k) T(j, k) = c[static_cast<size_t>(j - k + M - 1)];
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(T);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= 1e-8 * s(0)) ++rank;
  return M - rank;
}

}  // namespace tkern::testing

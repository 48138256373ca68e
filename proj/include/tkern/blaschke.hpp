#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "core.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace tkern {

// Finite Blaschke product constant * prod B_a, B_a = (z - a) / (1 - conj(a) z).
class BlaschkeProduct {
public:
  BlaschkeProduct() = default;

  explicit BlaschkeProduct(std::vector<Complex> zeros, Complex constant = 1.0, double tol_boundary = tol::boundary)
      : constant_(constant), zeros_(std::move(zeros)) {
    if (std::abs(std::abs(constant_) - 1.0) > tol::unimodular) {
      throw Error(ErrorCode::InvalidArgument, "Blaschke constant must be unimodular");
    }
    constant_ /= std::abs(constant_);
    for (Complex& a : zeros_) {
      if (!(std::abs(a) < 1.0 - tol_boundary)) {
        throw Error(ErrorCode::InvalidArgument, "Blaschke zero outside the open disk");
      }
      if (std::abs(a) < 1e-14) a = Complex{0.0};
    }
    detail::sort_roots(zeros_);
  }

  static BlaschkeProduct factor(Complex a) { return BlaschkeProduct({a}); }
  static BlaschkeProduct z_power(int n) { return BlaschkeProduct(std::vector<Complex>(static_cast<size_t>(n))); }
  static BlaschkeProduct constant_fn(Complex c) { return BlaschkeProduct({}, c); }

  Complex constant() const { return constant_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  Complex operator()(Complex z) const {
    Complex v = constant_;
    for (Complex a : zeros_) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
  }

  RationalFunction to_rational() const {
    Complex gain = constant_;
    std::vector<Complex> poles;
    for (Complex a : zeros_) {
      if (a == Complex{0.0}) continue;
      gain *= -1.0 / std::conj(a);
      poles.push_back(reflect_point(a));
    }
    return RationalFunction::from_zpk(gain, zeros_, std::move(poles));
  }

  // N* = prod (1 - conj(a) z), the denominator of the product.
  RationalFunction reflected_factor() const {
    Complex gain = 1.0;
    std::vector<Complex> zs;
    for (Complex a : zeros_) {
      if (a == Complex{0.0}) continue;
      gain *= -std::conj(a);
      zs.push_back(reflect_point(a));
    }
    return RationalFunction::from_zpk(gain, std::move(zs), {});
  }

  Polynomial numerator_poly() const { return Polynomial::from_roots(zeros_, constant_); }
  Polynomial reflected_poly() const {
    Polynomial p(1.0);
    for (Complex a : zeros_) p = p * Polynomial(std::vector<Complex>{1.0, -std::conj(a)});
    return p;
  }

  friend BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b) {
    std::vector<Complex> zs = a.zeros_;
    zs.insert(zs.end(), b.zeros_.begin(), b.zeros_.end());
    return BlaschkeProduct(std::move(zs), a.constant_ * b.constant_);
  }

  BlaschkeProduct with_constant(Complex c) const { return BlaschkeProduct(zeros_, c); }

private:
  Complex constant_{1.0};
  std::vector<Complex> zeros_;
};

inline constexpr double divide_tol = 1e-6;

// alpha divides theta: the zero multiset of alpha embeds into that of theta.
inline bool divides(const BlaschkeProduct& alpha, const BlaschkeProduct& theta, double tol = divide_tol) {
  return match_roots(alpha.zeros(), theta.zeros(), tol).size() == alpha.zeros().size();
}

inline BlaschkeProduct blaschke_gcd(const BlaschkeProduct& theta, const BlaschkeProduct& alpha,
                                    double tol = divide_tol) {
  return BlaschkeProduct(match_roots(theta.zeros(), alpha.zeros(), tol));
}

// theta / alpha for alpha dividing theta; throws NotDividing otherwise.
inline BlaschkeProduct blaschke_quotient(const BlaschkeProduct& theta, const BlaschkeProduct& alpha,
                                         double tol = divide_tol) {
  std::vector<bool> used;
  auto common = match_roots(alpha.zeros(), theta.zeros(), tol, &used);
  if (common.size() != alpha.zeros().size()) throw Error(ErrorCode::NotDividing, "Blaschke product does not divide");
  std::vector<Complex> rest;
  for (size_t j = 0; j < theta.zeros().size(); ++j)
    if (!used[j]) rest.push_back(theta.zeros()[j]);
  return BlaschkeProduct(std::move(rest), theta.constant() / alpha.constant());
}

// Probe points for constant pinning: 0, then 0.5, then seeded points in the disk.
inline std::vector<Complex> default_probes(unsigned seed = 12345) {
  std::vector<Complex> probes{Complex{0.0}, Complex{0.5}};
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> r(0.1, 0.7), t(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 16; ++i) probes.push_back(std::polar(r(rng), t(rng)));
  return probes;
}

// Unimodular c with c * prod B_a(z) = target(z) at the first usable probe.
inline Complex pin_constant(const std::vector<Complex>& zeros, const std::function<Complex(Complex)>& target,
                            const std::vector<Complex>& probes = default_probes(),
                            const std::vector<Complex>& avoid = {}) {
  const BlaschkeProduct unit(zeros);
  for (Complex z : probes) {
    bool near = false;
    for (Complex a : zeros) near = near || std::abs(z - a) < 1e-3;
    for (Complex a : avoid) near = near || std::abs(z - a) < 1e-3;
    if (near) continue;
    Complex b = unit(z), t = target(z);
    if (std::abs(b) < 1e-8 || !std::isfinite(std::abs(t))) continue;
    Complex c = t / b;
    if (std::abs(std::abs(c) - 1.0) > 1e-6) {
      throw Error(ErrorCode::NotInner, "pinned constant has modulus " + std::to_string(std::abs(c)));
    }
    return c / std::abs(c);
  }
  throw Error(ErrorCode::InvalidArgument, "no usable probe point for constant pinning");
}

namespace detail {

inline void check_in_disk(const std::vector<Complex>& zs, double tol_boundary) {
  for (Complex a : zs) {
    if (std::abs(a) >= 1.0 - tol_boundary) {
      throw Error(ErrorCode::RootEscapedDisk, "computed zero with modulus " + std::to_string(std::abs(a)));
    }
  }
}

}  // namespace detail

// theta_p = (theta - conj p) / (1 - p theta).
inline BlaschkeProduct frostman_shift(const BlaschkeProduct& theta, Complex p,
                                      const std::vector<Complex>& probes = default_probes()) {
  if (!(std::abs(p) < 1.0 - tol::boundary)) throw Error(ErrorCode::InvalidArgument, "Frostman shift needs |p| < 1");
  if (p == Complex{0.0}) return theta;
  Polynomial q = theta.numerator_poly() - std::conj(p) * theta.reflected_poly();
  std::vector<Complex> zs = theta.degree() == 0 ? std::vector<Complex>{} : roots(q);
  detail::check_in_disk(zs, tol::boundary);
  auto target = [&](Complex z) {
    Complex t = theta(z);
    return (t - std::conj(p)) / (1.0 - p * t);
  };
  return BlaschkeProduct(zs, pin_constant(zs, target, probes));
}

// The inner function tilde k / k for the reproducing kernels of K_theta at lam.
inline BlaschkeProduct kernel_inner_factor(const BlaschkeProduct& theta, Complex lam,
                                           const std::vector<Complex>& probes = default_probes()) {
  if (theta.degree() < 1) throw Error(ErrorCode::ConstantInnerFactor, "kernel of a constant inner function");
  const Complex w = theta(lam);
  Polynomial q = theta.numerator_poly() - w * theta.reflected_poly();
  std::vector<Complex> zs = roots(q);
  auto it = std::min_element(zs.begin(), zs.end(),
                             [&](Complex a, Complex b) { return std::abs(a - lam) < std::abs(b - lam); });
  zs.erase(it);
  detail::check_in_disk(zs, tol::boundary);
  auto target = [&](Complex z) {
    Complex t = theta(z);
    Complex kt = (t - w) / (z - lam);
    Complex k = (1.0 - std::conj(w) * t) / (1.0 - std::conj(lam) * z);
    return kt / k;
  };
  return BlaschkeProduct(zs, pin_constant(zs, target, probes, {lam}));
}

// Reads an inner rational function as a Blaschke product; throws NotInner if
// it has poles in the closed disk or is not unimodular on the circle.
inline BlaschkeProduct blaschke_from_rational(const RationalFunction& f, double tol_boundary = tol::boundary) {
  if (f.is_zero()) throw Error(ErrorCode::NotInner, "zero function");
  for (Complex p : f.poles()) {
    if (std::abs(p) <= 1.0 + tol_boundary) throw Error(ErrorCode::NotInner, "pole in the closed disk");
  }
  for (Complex z : circle_points(256)) {
    if (std::abs(std::abs(f(z)) - 1.0) > 1e-8) throw Error(ErrorCode::NotInner, "not unimodular on the circle");
  }
  std::vector<Complex> zs;
  for (Complex a : f.zeros()) {
    if (std::abs(a) < 1.0 - tol_boundary) zs.push_back(a);
  }
  if (zs.size() != f.zeros().size()) throw Error(ErrorCode::NotInner, "zero outside the open disk");
  return BlaschkeProduct(zs, pin_constant(zs, [&](Complex z) { return f(z); }));
}

}  // namespace tkern

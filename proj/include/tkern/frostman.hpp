#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "blaschke.hpp"
#include "core.hpp"
#include "hardy.hpp"
#include "kernel.hpp"
#include "model_space.hpp"
#include "rational.hpp"

namespace tkern {

inline double sup_on_circle(const RationalFunction& f, int n = tol::sup_samples) {
  double m = 0.0;
  for (Complex z : circle_points(n)) m = std::max(m, std::abs(f(z)));
  return m;
}

// The pair (theta, h) behind the symbol conj(theta) - h, with h analytic on
// the closed disk and sup |h| < 1.
struct Perturbation {
  BlaschkeProduct theta;
  RationalFunction h;

  Perturbation(BlaschkeProduct t, RationalFunction hh) : theta(std::move(t)), h(std::move(hh)) {
    if (!is_in_H2plus(h)) throw Error(ErrorCode::NotInHardySpace, "h must be analytic on the closed disk");
    if (!(sup_on_circle(h) < 1.0 - 1e-9)) throw Error(ErrorCode::NormTooLarge, "sup |h| must be below 1");
  }

  RationalFunction symbol() const { return model_space_symbol(theta) - h; }
};

// ker T_{conj(theta) - h} = (1 / (1 - h theta)) K_theta.
inline KernelRep frostman_kernel_rep(const Perturbation& p) {
  RationalFunction denom = 1.0 - p.h * p.theta.to_rational();
  return KernelRep{denom.reciprocal(), p.theta, false, 1.0, p.symbol()};
}

// theta_h = (theta - conj h) / (1 - h theta), unimodular on the circle.
inline RationalFunction generalized_shift(const Perturbation& p) {
  RationalFunction t = p.theta.to_rational();
  return (t - boundary_conjugate(p.h)) / (1.0 - p.h * t);
}

// Smallest alpha with conj(alpha) h bounded-conjugate-analytic: its zeros are
// the poles of R[h] inside the disk.
inline BlaschkeProduct minimal_alpha(const RationalFunction& h) {
  if (!is_in_H2plus(h)) throw Error(ErrorCode::NotInHardySpace, "h must be analytic on the closed disk");
  RationalFunction r = boundary_conjugate(h);
  std::vector<Complex> zs;
  for (Complex p : r.poles())
    if (std::abs(p) < 1.0) zs.push_back(p);
  return BlaschkeProduct(zs);
}

// alpha * R[h] has no poles in the disk.
inline bool in_K_alpha_infty(const RationalFunction& h, const BlaschkeProduct& alpha) {
  RationalFunction r = alpha.to_rational() * boundary_conjugate(h);
  return std::none_of(r.poles().begin(), r.poles().end(), [](Complex p) { return std::abs(p) < 1.0 + tol::boundary; });
}

// gamma = theta_h alpha, certified inner.
inline BlaschkeProduct gamma_of(const Perturbation& p, const BlaschkeProduct& alpha) {
  RationalFunction g = generalized_shift(p) * alpha.to_rational();
  BlaschkeProduct gamma = blaschke_from_rational(g);
  if (gamma.degree() != p.theta.degree() + alpha.degree()) {
    throw Error(ErrorCode::NotInner, "gamma has degree " + std::to_string(gamma.degree()) + ", expected " +
                                         std::to_string(p.theta.degree() + alpha.degree()));
  }
  return gamma;
}

// alpha divides gamma_p iff R[h] + conj(shift) R[alpha] (1 - h theta) is
// bounded analytic. The pole test is cross-checked against the zeros of gamma_p.
inline bool alpha_divides_gamma_p(const Perturbation& p, const BlaschkeProduct& alpha, Complex shift) {
  RationalFunction e = boundary_conjugate(p.h) +
                       std::conj(shift) * boundary_conjugate(alpha.to_rational()) * (1.0 - p.h * p.theta.to_rational());
  const bool by_poles = std::all_of(e.poles().begin(), e.poles().end(),
                                    [](Complex q) { return std::abs(q) >= 1.0 + tol::boundary; });
  const bool by_zeros = divides(alpha, frostman_shift(gamma_of(p, alpha), shift));
  if (by_poles != by_zeros) {
    throw Error(ErrorCode::InconsistentChecks, "pole test and zero matching disagree on alpha dividing gamma_p");
  }
  return by_poles;
}

// ker T_{conj(theta) - h} = (m_p^gamma)^{-1} K_{gamma_p / alpha}, isometric.
inline KernelRep isometric_frostman_rep(const Perturbation& p, const BlaschkeProduct& alpha, Complex shift) {
  if (!in_K_alpha_infty(p.h, alpha)) throw Error(ErrorCode::NotInner, "h is not in K_alpha^infty");
  if (!alpha_divides_gamma_p(p, alpha, shift)) throw Error(ErrorCode::NotDividing, "alpha does not divide gamma_p");
  BlaschkeProduct gamma = gamma_of(p, alpha);
  BlaschkeProduct gamma_p = frostman_shift(gamma, shift);
  const double c = std::sqrt(1.0 - std::norm(shift));
  // 1 - shift gamma vanishes at the reflections of the zeros of gamma_p.
  RationalFunction inv_m =
      reflected_product((1.0 - shift * gamma(0.0)) / c, gamma_p.zeros(), gamma.zeros());
  return KernelRep{inv_m, blaschke_quotient(gamma_p, alpha), true, 1.0 / c, p.symbol()};
}

// h = C - shift alpha with alpha dividing theta.
inline KernelRep cor610_representation(const BlaschkeProduct& theta, const BlaschkeProduct& alpha, Complex C,
                                       Complex shift) {
  if (!divides(alpha, theta)) throw Error(ErrorCode::NotDividing, "alpha must divide theta");
  RationalFunction h = RationalFunction(C) - shift * alpha.to_rational();
  return isometric_frostman_rep(Perturbation(theta, h), alpha, shift);
}

// Numerical test that C / (1 - h theta) multiplies K_theta isometrically: the
// compression of 1 - |C|^2 / |1 - h theta|^2 to K_theta must vanish. Not a
// certificate; the exact case 1 - |C|^2 - |h|^2 = 0 is recognized directly.
inline bool isometric_condition_check(const Perturbation& p, Complex C, int n_samples = tol::samples) {
  const auto pts = circle_points(n_samples);
  double exact = 0.0;
  for (Complex z : pts) exact = std::max(exact, std::abs(1.0 - std::norm(C) - std::norm(p.h(z))));
  if (exact < 1e-12) return true;
  if (p.theta.degree() == 0) return true;

  auto basis = tm_basis(p.theta);
  const Eigen::Index d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd vals(static_cast<Eigen::Index>(n_samples), d);
  Eigen::VectorXd weight(static_cast<Eigen::Index>(n_samples));
  for (Eigen::Index s = 0; s < static_cast<Eigen::Index>(n_samples); ++s) {
    Complex z = pts[static_cast<size_t>(s)];
    weight(s) = 1.0 - std::norm(C) / std::norm(1.0 - p.h(z) * p.theta(z));
    for (Eigen::Index j = 0; j < d; ++j) vals(s, j) = basis[static_cast<size_t>(j)](z);
  }
  Eigen::MatrixXcd A = vals.adjoint() * weight.asDiagonal() * vals / static_cast<double>(n_samples);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues()(0) < 1e-6;
}

}  // namespace tkern

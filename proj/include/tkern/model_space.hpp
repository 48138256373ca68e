#pragma once

#include <cmath>
#include <vector>

#include "blaschke.hpp"
#include "core.hpp"
#include "hardy.hpp"
#include "rational.hpp"

namespace tkern {

// c * prod_{b in num} (1 - conj(b) z) / prod_{a in den} (1 - conj(a) z); its value at 0 is c.
inline RationalFunction reflected_product(Complex c, const std::vector<Complex>& num, const std::vector<Complex>& den) {
  Complex gain = c;
  std::vector<Complex> zs, ps;
  for (Complex b : num) {
    if (b == Complex{0.0}) continue;
    gain *= -std::conj(b);
    zs.push_back(reflect_point(b));
  }
  for (Complex a : den) {
    if (a == Complex{0.0}) continue;
    gain /= -std::conj(a);
    ps.push_back(reflect_point(a));
  }
  return RationalFunction::from_zpk(gain, std::move(zs), std::move(ps));
}

// 1 - conj(lam) z.
inline RationalFunction one_minus_conj_z(Complex lam) { return reflected_product(1.0, {lam}, {}); }

inline RationalFunction z_minus(Complex lam) { return RationalFunction::from_zpk(1.0, {lam}, {}); }

inline RationalFunction model_space_symbol(const BlaschkeProduct& theta) {
  return boundary_conjugate(theta.to_rational());
}

inline bool in_model_space(const BlaschkeProduct& theta, const RationalFunction& f) {
  return in_toeplitz_kernel(f, model_space_symbol(theta));
}

struct ReproKernels {
  RationalFunction k;        // (1 - conj(theta(lam)) theta) / (1 - conj(lam) z)
  RationalFunction k_tilde;  // (theta - theta(lam)) / (z - lam)
  BlaschkeProduct inner;     // k_tilde / k
};

// Both kernels are assembled from the zeros of theta and of k_tilde / k, so
// the pole and zero locations are shared exactly with the other objects built
// from the same Blaschke products.
inline ReproKernels repro_kernels(const BlaschkeProduct& theta, Complex lam,
                                  const std::vector<Complex>& probes = default_probes()) {
  BlaschkeProduct inner = kernel_inner_factor(theta, lam, probes);
  const Complex w = theta(lam);
  RationalFunction k = reflected_product(1.0 - std::conj(w) * theta(0.0), inner.zeros(), theta.zeros());
  return {k, inner.to_rational() * k, inner};
}

// Takenaka-Malmquist system in stored zero order.
inline std::vector<RationalFunction> tm_basis(const BlaschkeProduct& theta) {
  std::vector<RationalFunction> basis;
  RationalFunction partial(1.0);
  for (Complex a : theta.zeros()) {
    basis.push_back(reflected_product(std::sqrt(1.0 - std::norm(a)), {}, {a}) * partial);
    partial = partial * BlaschkeProduct::factor(a).to_rational();
  }
  return basis;
}

// C f = theta * conj(z f) on the circle.
inline RationalFunction conjugation(const BlaschkeProduct& theta, const RationalFunction& f) {
  if (!in_model_space(theta, f)) throw Error(ErrorCode::NotInModelSpace, "conjugation argument not in K_theta");
  return theta.to_rational() * boundary_conjugate(f) / RationalFunction::z();
}

struct Crofoot {
  RationalFunction m;
  BlaschkeProduct theta_p;
};

// m = sqrt(1 - |p|^2) / (1 - p theta), mapping K_theta isometrically onto K_{theta_p}.
inline Crofoot crofoot(const BlaschkeProduct& theta, Complex p,
                       const std::vector<Complex>& probes = default_probes()) {
  if (p == Complex{0.0}) return {RationalFunction(1.0), theta};
  BlaschkeProduct shifted = frostman_shift(theta, p, probes);
  // 1 - p theta vanishes at the reflections of the zeros of theta_p.
  RationalFunction m = reflected_product(std::sqrt(1.0 - std::norm(p)) / (1.0 - p * theta(0.0)), theta.zeros(),
                                         shifted.zeros());
  return {m, shifted};
}

struct Hayashi {
  RationalFunction u;
  BlaschkeProduct gamma;
};

inline Hayashi hayashi_of_model_space(const BlaschkeProduct& theta,
                                      const std::vector<Complex>& probes = default_probes()) {
  if (theta.degree() < 1) throw Error(ErrorCode::InvalidArgument, "Hayashi representation needs deg theta >= 1");
  const Complex t0 = theta(0.0);
  if (std::abs(t0) > 1.0 - 1e-10) throw Error(ErrorCode::DegenerateShift, "|theta(0)| too close to 1");
  ReproKernels rk = repro_kernels(theta, 0.0, probes);
  return {rk.k * (1.0 / std::sqrt(1.0 - std::norm(t0))), BlaschkeProduct::z_power(1) * rk.inner};
}

struct CascadeStep {
  BlaschkeProduct prev;      // I_{n-1}
  Complex lam;               // lambda_n
  Complex value;             // I_{n-1}(lambda_n)
  RationalFunction kernel;   // k^{I_{n-1}}_{lambda_n}
  RationalFunction factor;   // O-factor 1 - conj(value) I_{n-1} = (1 - conj(lambda_n) z) k
};

struct Cascade {
  std::vector<CascadeStep> steps;
  BlaschkeProduct last;  // I_N
};

// I_n = tilde k / k of I_{n-1} at lambda_n. The O-factor of each step is
// checked against its additive form on circle samples.
inline Cascade inner_cascade(const BlaschkeProduct& start, const std::vector<Complex>& lams,
                             const std::vector<Complex>& probes = default_probes()) {
  if (start.degree() < static_cast<int>(lams.size())) {
    throw Error(ErrorCode::InsufficientDegree, "inner factor has degree " + std::to_string(start.degree()) +
                                                   " but " + std::to_string(lams.size()) + " points were given");
  }
  Cascade c;
  BlaschkeProduct cur = start;
  for (Complex lam : lams) {
    if (!(std::abs(lam) < 1.0 - tol::boundary)) throw Error(ErrorCode::InvalidArgument, "point outside the disk");
    ReproKernels rk = repro_kernels(cur, lam, probes);
    const Complex w = cur(lam);
    RationalFunction factor = one_minus_conj_z(lam) * rk.k;
    RationalFunction additive = 1.0 - std::conj(w) * cur.to_rational();
    if (circle_distance(factor, additive) > 1e-9) {
      throw Error(ErrorCode::InconsistentChecks, "O-factor disagrees with 1 - conj(I(lam)) I");
    }
    if (rk.inner.degree() != cur.degree() - 1) {
      throw Error(ErrorCode::InconsistentChecks, "cascade step did not lower the degree by one");
    }
    c.steps.push_back({cur, lam, w, rk.k, factor});
    cur = rk.inner;
  }
  c.last = cur;
  return c;
}

}  // namespace tkern

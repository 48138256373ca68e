#pragma once

#include <cmath>
#include <vector>

#include "blaschke.hpp"
#include "core.hpp"
#include "hardy.hpp"
#include "kernel.hpp"
#include "model_space.hpp"
#include "rational.hpp"

namespace tkern {

inline RationalFunction blaschke_symbol(const BlaschkeProduct& theta, const BlaschkeProduct& B) {
  return model_space_symbol(theta) * B.to_rational();
}

// ker T_{conj(theta) B_lam} = (1 - conj(lam) z) k^theta_mu K_{theta_mu} for any mu.
inline KernelRep represent_single(const BlaschkeProduct& theta, Complex lam, Complex mu) {
  if (theta.degree() < 2) throw Error(ErrorCode::InsufficientDegree, "needs deg theta >= 2");
  ReproKernels rk = repro_kernels(theta, mu);
  KernelRep rep;
  rep.multiplier = one_minus_conj_z(lam) * rk.k;
  rep.theta = rk.inner;
  rep.isometric = false;
  rep.symbol = blaschke_symbol(theta, BlaschkeProduct::factor(lam));
  return rep;
}

inline KernelRep represent_single_isometric(const BlaschkeProduct& theta, Complex lam) {
  if (theta.degree() < 2) throw Error(ErrorCode::InsufficientDegree, "needs deg theta >= 2");
  ReproKernels rk = repro_kernels(theta, lam);
  const double scale = 1.0 / std::sqrt(1.0 - std::norm(theta(lam)));
  KernelRep rep;
  rep.multiplier = one_minus_conj_z(lam) * rk.k * RationalFunction(scale);
  rep.theta = rk.inner;
  rep.isometric = true;
  rep.normalization = scale;
  rep.symbol = blaschke_symbol(theta, BlaschkeProduct::factor(lam));
  return rep;
}

struct BlaschkeReps {
  KernelRep plain;
  KernelRep isometric;
  KernelRep hayashi;
};

inline BlaschkeReps represent_blaschke(const BlaschkeProduct& theta, const std::vector<Complex>& lams,
                                       const std::vector<Complex>& probes = default_probes()) {
  if (theta.degree() <= static_cast<int>(lams.size())) {
    throw Error(ErrorCode::InsufficientDegree, "needs deg theta > number of points");
  }
  Cascade c = inner_cascade(theta, lams, probes);
  RationalFunction plain(1.0);
  double scale = 1.0;
  for (const auto& step : c.steps) {
    plain = plain * step.factor;
    scale /= std::sqrt(1.0 - std::norm(step.value));
  }
  const RationalFunction symbol = blaschke_symbol(theta, BlaschkeProduct(lams));

  BlaschkeReps out;
  out.plain = KernelRep{plain, c.last, false, 1.0, symbol};
  out.isometric = KernelRep{plain * RationalFunction(scale), c.last, true, scale, symbol};
  Hayashi h = hayashi_of_model_space(c.last, probes);
  out.hayashi = KernelRep{out.isometric.multiplier * h.u, h.gamma, true,
                          scale / std::sqrt(1.0 - std::norm(c.last(0.0))), symbol};
  return out;
}

// From ker T_G = w K_theta, ker T_{G alpha} = w ker T_{conj(theta) alpha}.
inline KernelRep propagate_multiplier(const KernelRep& rep_G, const BlaschkeProduct& alpha) {
  if (rep_G.theta.degree() <= alpha.degree()) {
    throw Error(ErrorCode::InsufficientDegree, "the subkernel of the symbol times alpha is trivial");
  }
  if (alpha.degree() == 0) {
    KernelRep same = rep_G;
    same.symbol = rep_G.symbol * alpha.to_rational();
    return same;
  }
  BlaschkeReps inner = represent_blaschke(rep_G.theta, alpha.zeros());
  const KernelRep& part = rep_G.isometric ? inner.isometric : inner.plain;
  KernelRep out;
  out.multiplier = rep_G.multiplier * part.multiplier;
  out.theta = part.theta;
  out.isometric = rep_G.isometric;
  out.normalization = rep_G.normalization * part.normalization;
  out.symbol = rep_G.symbol * alpha.to_rational();
  return out;
}

namespace detail {

inline InnerOuter carleson_checked(const MaximalFunctionCert& cert) {
  InnerOuter io = inner_outer(cert.f);
  if (outer_circle_zeros(io.outer) > 0) {
    throw Error(ErrorCode::CarlesonViolation, "outer factor of the maximal function vanishes on the circle");
  }
  return io;
}

}  // namespace detail

// With f = I O maximal and O, 1/O bounded on the circle, ker T_g = O K_{z I}.
inline KernelRep multiplier_from_maximal(const MaximalFunctionCert& cert) {
  InnerOuter io = detail::carleson_checked(cert);
  return KernelRep{io.outer, BlaschkeProduct::z_power(1) * io.inner, false, 1.0, symbol_rational(cert.symbol)};
}

// ker T_{g B_lam} = O (1 - conj(lam) z) K_I.
inline KernelRep multiplier_from_maximal_at(const MaximalFunctionCert& cert, Complex lam) {
  InnerOuter io = detail::carleson_checked(cert);
  if (io.inner.degree() < 1) throw Error(ErrorCode::InsufficientDegree, "the subkernel is trivial");
  return KernelRep{io.outer * one_minus_conj_z(lam), io.inner, false, 1.0,
                   symbol_rational(cert.symbol) * BlaschkeProduct::factor(lam).to_rational()};
}

}  // namespace tkern

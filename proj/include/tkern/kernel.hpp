#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blaschke.hpp"
#include "core.hpp"
#include "hardy.hpp"
#include "model_space.hpp"
#include "rational.hpp"

namespace tkern {

struct RationalSymbol {
  RationalFunction f;

  explicit RationalSymbol(RationalFunction g) : f(std::move(g)) {
    if (has_pole_on_circle(f)) throw Error(ErrorCode::PoleOnCircle, "symbol has a pole on the unit circle");
  }
};

// The symbol conj(theta) * alpha * conj(O) / O on the circle. The outer part
// defaults to 1, giving the plain unimodular symbol conj(theta) alpha.
struct UnimodularSymbol {
  BlaschkeProduct theta;
  BlaschkeProduct alpha;
  RationalFunction outer{1.0};

  RationalFunction to_rational() const {
    RationalFunction g = boundary_conjugate(theta.to_rational()) * alpha.to_rational();
    if (!outer.is_constant()) g = g * boundary_conjugate(outer) / outer;
    return g;
  }
};

using Symbol = std::variant<RationalSymbol, UnimodularSymbol>;

inline RationalFunction symbol_rational(const Symbol& s) {
  if (const auto* r = std::get_if<RationalSymbol>(&s)) return r->f;
  return std::get<UnimodularSymbol>(s).to_rational();
}

// ker T_g = multiplier * K_theta.
struct KernelRep {
  RationalFunction multiplier{1.0};
  BlaschkeProduct theta;
  bool isometric = false;
  Complex normalization{1.0};
  RationalFunction symbol{1.0};

  int dim() const { return theta.degree(); }

  std::vector<RationalFunction> basis() const {
    std::vector<RationalFunction> out;
    for (const auto& e : tm_basis(theta)) out.push_back(multiplier * e);
    return out;
  }
};

struct RationalKernel {
  std::optional<KernelRep> rep;  // empty for the trivial kernel
  BlaschkeProduct containing;    // minimal model space containing the kernel
  int n = 0, n_T = 0, n1 = 0, n2 = 0, N = 0;

  int dim() const { return rep ? rep->dim() : 0; }
};

// Splits the symbol into its T-zeros, the parts with zeros and poles in D and
// the parts outside, and reads off the kernel (Q+/P+) K_{z^{n - n_T}}.
inline RationalKernel kernel_of_rational_symbol(const RationalSymbol& g, double tol_boundary = tol::boundary) {
  RationalKernel out;
  if (g.f.is_zero()) throw Error(ErrorCode::InvalidArgument, "the zero symbol has an infinite-dimensional kernel");
  PoleZeroProfile prof = classify(g.f, tol_boundary);
  if (prof.poles.n_on_circle() > 0) throw Error(ErrorCode::PoleOnCircle, "symbol has a pole on the unit circle");
  std::vector<Complex> p_plus = prof.zeros.flat(prof.zeros.outside);
  std::vector<Complex> q_plus = prof.poles.flat(prof.poles.outside);
  out.n_T = prof.zeros.n_on_circle();
  out.n = prof.poles.n_inside() - prof.zeros.n_inside();
  out.n1 = static_cast<int>(p_plus.size());
  out.n2 = static_cast<int>(q_plus.size());
  out.N = out.n_T - out.n + out.n1 - out.n2;
  if (out.n_T - out.n >= 0) {
    out.containing = BlaschkeProduct();
    return out;
  }
  KernelRep rep;
  rep.multiplier = RationalFunction::from_zpk(1.0, q_plus, p_plus);
  rep.theta = BlaschkeProduct::z_power(out.n - out.n_T);
  rep.symbol = g.f;
  out.rep = rep;

  std::vector<Complex> b1;
  for (Complex a : p_plus) b1.push_back(reflect_point(a));
  out.containing = BlaschkeProduct(b1);
  if (out.N < 0) out.containing = out.containing * BlaschkeProduct::z_power(-out.N);
  return out;
}

// Zeros of the outer part lying on the circle each contribute a factor conj(z).
inline int outer_circle_zeros(const RationalFunction& outer, double tol_boundary = tol::boundary) {
  int n = 0;
  for (Complex a : outer.zeros()) n += band_of(a, tol_boundary) == Band::OnCircle;
  return n;
}

inline int kernel_dim_unimodular(const UnimodularSymbol& s) {
  BlaschkeProduct theta = s.theta * BlaschkeProduct::z_power(outer_circle_zeros(s.outer));
  BlaschkeProduct delta = blaschke_gcd(theta, s.alpha);
  int d = (theta.degree() - delta.degree()) - (s.alpha.degree() - delta.degree());
  return std::max(d, 0);
}

inline int kernel_dim(const Symbol& s) {
  if (const auto* u = std::get_if<UnimodularSymbol>(&s)) return kernel_dim_unimodular(*u);
  return kernel_of_rational_symbol(std::get<RationalSymbol>(s)).dim();
}

// ker T_g is contained in ker T_G iff G/g lies in the conjugate Smirnov class.
// The trivial kernel is contained in every kernel.
inline bool is_subkernel(const Symbol& g, const Symbol& G) {
  RationalFunction rg = symbol_rational(g), rG = symbol_rational(G);
  if (has_pole_on_circle(rg) || has_pole_on_circle(rG)) throw Error(ErrorCode::PoleOnCircle, "symbol pole on T");
  if (kernel_dim(g) == 0) return true;
  return in_conjugate_smirnov(rG / rg);
}

inline bool kernels_equal(const Symbol& g, const Symbol& h) {
  const int dg = kernel_dim(g), dh = kernel_dim(h);
  if (dg == 0 || dh == 0) return dg == dh;
  if (dg != dh) return false;
  const auto* ug = std::get_if<UnimodularSymbol>(&g);
  const auto* uh = std::get_if<UnimodularSymbol>(&h);
  if (ug && uh && ug->outer.is_constant() && uh->outer.is_constant()) {
    auto reduce = [](const UnimodularSymbol& s) {
      BlaschkeProduct d = blaschke_gcd(s.theta, s.alpha);
      return std::pair{blaschke_quotient(s.theta, d), blaschke_quotient(s.alpha, d)};
    };
    auto [tg, ag] = reduce(*ug);
    auto [th, ah] = reduce(*uh);
    return tg.degree() == th.degree() && ag.degree() == ah.degree() && divides(tg, th) && divides(ag, ah);
  }
  RationalFunction r = boundary_conjugate(symbol_rational(h) / symbol_rational(g));
  auto inside = [](Complex a) { return band_of(a) == Band::Inside; };
  return std::none_of(r.zeros().begin(), r.zeros().end(), inside) &&
         std::none_of(r.poles().begin(), r.poles().end(), inside);
}

struct MaximalFunctionCert {
  RationalFunction f;
  Symbol symbol;
  RationalFunction O_witness;
  std::optional<bool> conjugation_agrees;  // only for unimodular symbols
};

struct Rejection {
  std::string reason;
  RationalFunction O_witness;
};

using MaximalVerdict = std::variant<MaximalFunctionCert, Rejection>;

// f is maximal in ker T_g iff g f = conj(z O) with O outer; the witness is
// O = R[z g f]. For unimodular symbols the conjugate of f is computed
// separately from the factors of the symbol and must also be outer.
inline MaximalVerdict verify_maximal(const RationalFunction& f, const Symbol& g) {
  RationalFunction rg = symbol_rational(g);
  if (f.is_zero() || !in_toeplitz_kernel(f, rg)) throw Error(ErrorCode::NotInKernel, "function is not in the kernel");
  RationalFunction witness = boundary_conjugate(RationalFunction::z() * rg * f);
  const bool accept = is_outer(witness);
  std::optional<bool> agrees;
  if (const auto* u = std::get_if<UnimodularSymbol>(&g)) {
    RationalFunction conj_g = u->theta.to_rational() * boundary_conjugate(u->alpha.to_rational());
    if (!u->outer.is_constant()) conj_g = conj_g * u->outer / boundary_conjugate(u->outer);
    RationalFunction cf = conj_g * boundary_conjugate(f) / RationalFunction::z();
    agrees = is_outer(cf) == accept && circle_distance(cf, witness) < 1e-8;
  }
  if (!accept) return Rejection{"witness R[z g f] is not outer", witness};
  return MaximalFunctionCert{f, g, witness, agrees};
}

inline bool accepted(const MaximalVerdict& v) { return std::holds_alternative<MaximalFunctionCert>(v); }

// Symbol conj(z I) conj(O) / O of the smallest Toeplitz kernel containing f = I O.
inline UnimodularSymbol minimal_kernel_of(const RationalFunction& f) {
  InnerOuter io = inner_outer(f);
  return UnimodularSymbol{BlaschkeProduct::z_power(1) * io.inner, BlaschkeProduct(), io.outer};
}

// (z - lam) tilde k^I_lam O: maximal in the same kernel as I O, vanishing at lam.
inline RationalFunction maximal_vanishing_at(const InnerOuter& fm, Complex lam) {
  if (fm.inner.degree() < 1) throw Error(ErrorCode::ConstantInnerFactor, "maximal function has a constant inner factor");
  ReproKernels rk = repro_kernels(fm.inner, lam);
  return z_minus(lam) * rk.k_tilde * fm.outer;
}

struct DivisibleMaximal {
  RationalFunction F_B;  // B I_N O_N, maximal in the original kernel
  RationalFunction f_B;  // I_N O_N, maximal in the subkernel of the symbol times B
  BlaschkeProduct I_N;
  RationalFunction O_N;
  BlaschkeProduct B;
};

inline DivisibleMaximal maximal_divisible_by_B(const InnerOuter& fm, const std::vector<Complex>& lams) {
  if (lams.empty()) throw Error(ErrorCode::InvalidArgument, "at least one point is required");
  Cascade c = inner_cascade(fm.inner, lams);
  RationalFunction O = fm.outer;
  for (const auto& step : c.steps) O = O * step.factor;
  BlaschkeProduct B(lams);
  RationalFunction f = c.last.to_rational() * O;
  return {B.to_rational() * f, f, c.last, O, B};
}

// Given f maximal in ker T_{G u} with u bounded, u f is maximal in ker T_G.
inline MaximalVerdict lift_maximal(const RationalFunction& u, const Symbol& G, const MaximalFunctionCert& cert) {
  if (u.is_zero() || !is_in_H2plus(u)) throw Error(ErrorCode::InvalidArgument, "lifting factor must be bounded");
  return verify_maximal(u * cert.f, G);
}

// A maximal function of a nontrivial rational-symbol kernel: the multiplier
// times z^{d-1}, the maximal function of K_{z^d}.
inline RationalFunction maximal_of_rational_kernel(const RationalKernel& k) {
  if (!k.rep) throw Error(ErrorCode::NotInKernel, "the kernel is trivial");
  return k.rep->multiplier * RationalFunction::from_zpk(1.0, std::vector<Complex>(k.rep->dim() - 1), {});
}

}  // namespace tkern

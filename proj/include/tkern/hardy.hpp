#pragma once

#include <algorithm>

#include "blaschke.hpp"
#include "core.hpp"
#include "rational.hpp"

namespace tkern {

// For rational f: no poles in the closed disk, with the boundary band counted
// as part of the disk.
inline bool is_in_H2plus(const RationalFunction& f, double tol_boundary = tol::boundary) {
  return std::all_of(f.poles().begin(), f.poles().end(),
                     [&](Complex p) { return std::abs(p) >= 1.0 + tol_boundary; });
}

// All poles strictly inside the disk and f(inf) = 0. The zero function is a member.
inline bool is_in_H2minus(const RationalFunction& f, double tol_boundary = tol::boundary) {
  if (f.is_zero()) return true;
  if (f.num_degree() >= f.den_degree()) return false;
  return std::all_of(f.poles().begin(), f.poles().end(),
                     [&](Complex p) { return std::abs(p) <= 1.0 - tol_boundary; });
}

// Rational outer function: no zeros in the open disk, no poles in the closed disk.
inline bool is_outer(const RationalFunction& f, double tol_boundary = tol::boundary) {
  if (f.is_zero() || !is_in_H2plus(f, tol_boundary)) return false;
  return std::none_of(f.zeros().begin(), f.zeros().end(),
                      [&](Complex a) { return band_of(a, tol_boundary) == Band::Inside; });
}

struct InnerOuter {
  BlaschkeProduct inner;
  RationalFunction outer;

  RationalFunction product() const { return inner.to_rational() * outer; }
};

// Zeros on the circle stay in the outer factor; zeros in the ambiguity band
// are rejected by classify.
inline InnerOuter inner_outer(const RationalFunction& f, double tol_boundary = tol::boundary) {
  if (f.is_zero() || !is_in_H2plus(f, tol_boundary)) {
    throw Error(ErrorCode::NotInHardySpace, "inner-outer factorization needs a nonzero H2 function");
  }
  PoleZeroProfile prof = classify(f, tol_boundary);
  BlaschkeProduct inner(prof.zeros.flat(prof.zeros.inside));
  return {inner, f / inner.to_rational()};
}

// Membership of a rational q in the conjugate Smirnov class: R[q] has no
// poles in the open disk.
inline bool in_conjugate_smirnov(const RationalFunction& q, double tol_boundary = tol::boundary) {
  RationalFunction r = boundary_conjugate(q);
  return std::none_of(r.poles().begin(), r.poles().end(),
                      [&](Complex p) { return band_of(p, tol_boundary) == Band::Inside; });
}

// f lies in ker T_g iff f is in H2 and g f is in the conjugate space H2-.
inline bool in_toeplitz_kernel(const RationalFunction& f, const RationalFunction& g,
                               double tol_boundary = tol::boundary) {
  return is_in_H2plus(f, tol_boundary) && is_in_H2minus(g * f, tol_boundary);
}

}  // namespace tkern

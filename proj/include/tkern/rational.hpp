#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "core.hpp"
#include "polynomial.hpp"

namespace tkern {

// Rational function gain * prod(z - zeros) / prod(z - poles), kept in reduced
// form: no zero lies within the cancellation tolerance of a pole. The
// denominator is monic by construction. Zero and pole multisets are the
// primary data; products and quotients are exact on them, only sums go
// through root finding.
class RationalFunction {
public:
  RationalFunction() = default;
  RationalFunction(Complex c) : gain_(c) {}
  RationalFunction(double c) : gain_(c) {}

  static RationalFunction z() { return from_zpk(1.0, {Complex{0.0}}, {}); }

  static RationalFunction from_zpk(Complex gain, std::vector<Complex> zeros, std::vector<Complex> poles) {
    RationalFunction f;
    f.gain_ = gain;
    if (gain != Complex{0.0}) {
      f.zeros_ = std::move(zeros);
      f.poles_ = std::move(poles);
      f.reduce();
    }
    return f;
  }

  static RationalFunction from_polynomial(const Polynomial& p) {
    if (p.is_zero()) return {};
    return from_zpk(p.leading(), roots(p), {});
  }

  static RationalFunction from_polynomials(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero denominator");
    if (num.is_zero()) return {};
    return from_zpk(num.leading() / den.leading(), roots(num), roots(den));
  }

  Complex gain() const { return gain_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  const std::vector<Complex>& poles() const { return poles_; }
  bool is_zero() const { return gain_ == Complex{0.0}; }
  bool is_constant() const { return zeros_.empty() && poles_.empty(); }
  int num_degree() const { return static_cast<int>(zeros_.size()); }
  int den_degree() const { return static_cast<int>(poles_.size()); }

  Polynomial numerator() const {
    if (is_zero()) return Polynomial();
    return Polynomial::from_roots(zeros_, gain_);
  }
  Polynomial denominator() const { return Polynomial::from_roots(poles_); }

  Complex operator()(Complex z) const {
    Complex v = gain_;
    for (Complex a : zeros_) v *= (z - a);
    for (Complex b : poles_) v /= (z - b);
    return v;
  }

  RationalFunction reciprocal() const {
    if (is_zero()) throw Error(ErrorCode::InvalidArgument, "reciprocal of the zero function");
    return from_zpk(1.0 / gain_, poles_, zeros_);
  }

  RationalFunction pow(int n) const {
    if (n < 0) return reciprocal().pow(-n);
    RationalFunction r(1.0);
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
  }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> zs = a.zeros_, ps = a.poles_;
    zs.insert(zs.end(), b.zeros_.begin(), b.zeros_.end());
    ps.insert(ps.end(), b.poles_.begin(), b.poles_.end());
    return from_zpk(a.gain_ * b.gain_, std::move(zs), std::move(ps));
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return a * b.reciprocal();
  }
  friend RationalFunction operator-(const RationalFunction& a) { return a * RationalFunction(-1.0); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // Common denominator: the multiset union of both pole sets.
    std::vector<bool> used_b;
    std::vector<Complex> shared = match_roots(a.poles_, b.poles_, tol::cancel, &used_b);
    std::vector<Complex> b_only;
    for (size_t j = 0; j < b.poles_.size(); ++j)
      if (!used_b[j]) b_only.push_back(b.poles_[j]);
    std::vector<bool> used_a;
    match_roots(b.poles_, a.poles_, tol::cancel, &used_a);
    std::vector<Complex> a_only;
    for (size_t j = 0; j < a.poles_.size(); ++j)
      if (!used_a[j]) a_only.push_back(a.poles_[j]);

    std::vector<Complex> za = a.zeros_;
    za.insert(za.end(), b_only.begin(), b_only.end());
    std::vector<Complex> zb = b.zeros_;
    zb.insert(zb.end(), a_only.begin(), a_only.end());
    Polynomial pa = Polynomial::from_roots(za, a.gain_);
    Polynomial pb = Polynomial::from_roots(zb, b.gain_);
    const double scale = std::max(pa.max_abs_coeff(), pb.max_abs_coeff());
    Polynomial sum = (pa + pb).chopped(16 * tol::coeff, scale);
    if (sum.is_zero()) return {};

    std::vector<Complex> den = a.poles_;
    den.insert(den.end(), b_only.begin(), b_only.end());
    return from_zpk(sum.leading(), roots(sum), std::move(den));
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

private:
  void reduce() {
    // Cancel pairs greedily in zero order so both sides drop the same count.
    std::vector<Complex> zs, ps;
    std::vector<bool> pole_taken(poles_.size(), false);
    for (Complex a : zeros_) {
      double best = 1e300;
      size_t best_j = poles_.size();
      for (size_t j = 0; j < poles_.size(); ++j) {
        if (pole_taken[j]) continue;
        double d = std::abs(a - poles_[j]);
        if (d < best) {
          best = d;
          best_j = j;
        }
      }
      if (best_j < poles_.size() && best <= tol::cancel * std::max(1.0, std::abs(a))) {
        pole_taken[best_j] = true;
        continue;
      }
      zs.push_back(a);
    }
    for (size_t j = 0; j < poles_.size(); ++j)
      if (!pole_taken[j]) ps.push_back(poles_[j]);
    zeros_ = std::move(zs);
    poles_ = std::move(ps);
    detail::sort_roots(zeros_);
    detail::sort_roots(poles_);
  }

  Complex gain_{0.0};
  std::vector<Complex> zeros_;
  std::vector<Complex> poles_;
};


// Band of a point relative to the unit circle.
enum class Band { Inside, OnCircle, Outside };

inline Band band_of(Complex z, double tol_boundary = tol::boundary) {
  double m = std::abs(z);
  if (std::abs(m - 1.0) <= tol_boundary) return Band::OnCircle;
  return m < 1.0 ? Band::Inside : Band::Outside;
}

struct RootBands {
  std::vector<std::pair<Complex, int>> inside, on_circle, outside;

  int count(const std::vector<std::pair<Complex, int>>& v) const {
    int n = 0;
    for (const auto& [loc, m] : v) n += m;
    return n;
  }
  int n_inside() const { return count(inside); }
  int n_on_circle() const { return count(on_circle); }
  int n_outside() const { return count(outside); }

  std::vector<Complex> flat(const std::vector<std::pair<Complex, int>>& v) const {
    std::vector<Complex> out;
    for (const auto& [loc, m] : v) out.insert(out.end(), static_cast<size_t>(m), loc);
    return out;
  }
};

struct PoleZeroProfile {
  RootBands zeros;
  RootBands poles;
};

namespace detail {

inline std::vector<std::pair<Complex, int>> group_multiplicities(const std::vector<Complex>& pts, double tol) {
  std::vector<std::pair<Complex, int>> out;
  for (Complex p : pts) {
    bool found = false;
    for (auto& [loc, m] : out) {
      if (std::abs(loc - p) <= tol * std::max(1.0, std::abs(p))) {
        ++m;
        found = true;
        break;
      }
    }
    if (!found) out.emplace_back(p, 1);
  }
  return out;
}

inline RootBands classify_points(const std::vector<Complex>& pts, double tol_boundary) {
  RootBands b;
  std::vector<Complex> in, on, out;
  for (Complex p : pts) {
    const double dist = std::abs(std::abs(p) - 1.0);
    if (std::abs(dist - tol_boundary) < tol_boundary / 10.0) {
      throw Error(ErrorCode::BoundaryAmbiguous,
                  "root with modulus " + std::to_string(std::abs(p)) + " lies at the edge of the boundary band");
    }
    switch (band_of(p, tol_boundary)) {
      case Band::Inside: in.push_back(p); break;
      case Band::OnCircle: on.push_back(p); break;
      case Band::Outside: out.push_back(p); break;
    }
  }
  b.inside = group_multiplicities(in, tol::cluster);
  b.on_circle = group_multiplicities(on, tol::cluster);
  b.outside = group_multiplicities(out, tol::cluster);
  return b;
}

}  // namespace detail

inline PoleZeroProfile classify(const RationalFunction& f, double tol_boundary = tol::boundary) {
  return {detail::classify_points(f.zeros(), tol_boundary), detail::classify_points(f.poles(), tol_boundary)};
}

inline bool has_pole_on_circle(const RationalFunction& f, double tol_boundary = tol::boundary) {
  return std::any_of(f.poles().begin(), f.poles().end(),
                     [&](Complex p) { return band_of(p, tol_boundary) == Band::OnCircle; });
}

// R[f](z) = conj(f(1 / conj z)); equals conj(f) on the unit circle.
inline RationalFunction boundary_conjugate(const RationalFunction& f) {
  if (f.is_zero()) return {};
  constexpr double origin = 1e-14;
  Complex gain = std::conj(f.gain());
  std::vector<Complex> zs, ps;
  int zpow = 0;
  for (Complex a : f.zeros()) {
    --zpow;
    if (std::abs(a) <= origin) continue;
    gain *= -std::conj(a);
    zs.push_back(reflect_point(a));
  }
  for (Complex b : f.poles()) {
    ++zpow;
    if (std::abs(b) <= origin) continue;
    gain /= -std::conj(b);
    ps.push_back(reflect_point(b));
  }
  if (zpow > 0) zs.insert(zs.end(), static_cast<size_t>(zpow), Complex{0.0});
  if (zpow < 0) ps.insert(ps.end(), static_cast<size_t>(-zpow), Complex{0.0});
  return RationalFunction::from_zpk(gain, std::move(zs), std::move(ps));
}

// Principal part of f at one pole: sum_k coeffs[k-1] / (z - pole)^k.
struct PolePart {
  Complex pole;
  std::vector<Complex> coeffs;
};

struct PartialFractions {
  Polynomial polynomial;
  std::vector<PolePart> parts;
};

namespace detail {

// Taylor coefficients (order < n) at p of gain * prod(z - zs) / prod(z - ps).
inline std::vector<Complex> taylor_at(Complex p, Complex gain, const std::vector<Complex>& zs,
                                      const std::vector<Complex>& ps, size_t n) {
  std::vector<Complex> s(n, Complex{0.0});
  s[0] = gain;
  auto mul = [&](const std::vector<Complex>& t) {
    std::vector<Complex> r(n, Complex{0.0});
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; i + j < n; ++j) r[i + j] += s[i] * t[j];
    s = std::move(r);
  };
  for (Complex a : zs) {
    std::vector<Complex> t(n, Complex{0.0});
    t[0] = p - a;
    if (n > 1) t[1] = 1.0;
    mul(t);
  }
  for (Complex b : ps) {
    // 1/(z - b) = sum_k (-1)^k (z - p)^k / (p - b)^{k+1}
    std::vector<Complex> t(n);
    Complex inv = 1.0 / (p - b), term = inv;
    for (size_t k = 0; k < n; ++k) {
      t[k] = term;
      term *= -inv;
    }
    mul(t);
  }
  return s;
}

}  // namespace detail

// Partial fractions via residues. Poles closer than the cancellation
// tolerance are treated as one pole of higher multiplicity at their centroid.
inline PartialFractions partial_fractions(const RationalFunction& f) {
  PartialFractions pf;
  if (f.is_zero()) return pf;
  if (f.num_degree() >= f.den_degree()) {
    pf.polynomial = f.numerator().divmod(f.denominator()).first;
  }
  auto groups = detail::group_multiplicities(f.poles(), tol::cancel);
  for (auto& [loc, mult] : groups) {
    // Centroid of the members of the group.
    Complex sum{0.0};
    int cnt = 0;
    for (Complex b : f.poles()) {
      if (std::abs(b - loc) <= tol::cancel * std::max(1.0, std::abs(b))) {
        sum += b;
        ++cnt;
      }
    }
    loc = sum / static_cast<double>(cnt);
  }
  for (size_t g = 0; g < groups.size(); ++g) {
    const auto [p, m] = groups[g];
    std::vector<Complex> others;
    for (size_t h = 0; h < groups.size(); ++h) {
      if (h == g) continue;
      others.insert(others.end(), static_cast<size_t>(groups[h].second), groups[h].first);
    }
    auto t = detail::taylor_at(p, f.gain(), f.zeros(), others, static_cast<size_t>(m));
    PolePart part{p, std::vector<Complex>(static_cast<size_t>(m))};
    for (int k = 1; k <= m; ++k) part.coeffs[static_cast<size_t>(k - 1)] = t[static_cast<size_t>(m - k)];
    pf.parts.push_back(std::move(part));
  }
  return pf;
}

// Rebuilds a rational function from a polynomial plus principal parts.
inline RationalFunction assemble(const Polynomial& poly, const std::vector<PolePart>& parts) {
  std::vector<Complex> den;
  for (const auto& part : parts) den.insert(den.end(), part.coeffs.size(), part.pole);
  Polynomial num = poly * Polynomial::from_roots(den);
  double scale = num.max_abs_coeff();
  for (size_t i = 0; i < parts.size(); ++i) {
    const auto& part = parts[i];
    for (size_t k = 1; k <= part.coeffs.size(); ++k) {
      std::vector<Complex> rest;
      for (size_t j = 0; j < parts.size(); ++j) {
        size_t mult = parts[j].coeffs.size();
        if (j == i) mult -= k;
        rest.insert(rest.end(), mult, parts[j].pole);
      }
      Polynomial term = Polynomial::from_roots(rest, part.coeffs[k - 1]);
      scale = std::max(scale, term.max_abs_coeff());
      num = num + term;
    }
  }
  num = num.chopped(16 * tol::coeff, scale);
  if (num.is_zero()) return {};
  return RationalFunction::from_zpk(num.leading(), roots(num), std::move(den));
}

// Riesz projection onto H^2: polynomial part plus principal parts at poles
// outside the closed disk.
inline RationalFunction project_plus(const RationalFunction& f, double tol_boundary = tol::boundary) {
  if (has_pole_on_circle(f, tol_boundary)) throw Error(ErrorCode::PoleOnCircle, "P+ of a function with a pole on T");
  PartialFractions pf = partial_fractions(f);
  std::vector<PolePart> outer;
  for (auto& part : pf.parts)
    if (std::abs(part.pole) > 1.0) outer.push_back(part);
  return assemble(pf.polynomial, outer);
}

// Trapezoidal approximation of (1/2pi) int f conj(g) dt on n uniform points.
inline Complex l2_inner(const RationalFunction& f, const RationalFunction& g, int n_samples = tol::samples) {
  if (has_pole_on_circle(f) || has_pole_on_circle(g))
    throw Error(ErrorCode::PoleOnCircle, "L2 inner product with a pole on T");
  Complex acc{0.0};
  for (Complex z : circle_points(n_samples)) acc += f(z) * std::conj(g(z));
  return acc / static_cast<double>(n_samples);
}

inline double l2_norm(const RationalFunction& f, int n_samples = tol::samples) {
  return std::sqrt(std::max(0.0, l2_inner(f, f, n_samples).real()));
}

// max |f(z) - g(z)| over n circle samples, relative to max(1, max |g|).
inline double circle_distance(const std::function<Complex(Complex)>& f, const std::function<Complex(Complex)>& g,
                              int n = 256) {
  double diff = 0.0, scale = 1.0;
  for (Complex z : circle_points(n)) {
    Complex gv = g(z);
    diff = std::max(diff, std::abs(f(z) - gv));
    scale = std::max(scale, std::abs(gv));
  }
  return diff / scale;
}

}  // namespace tkern

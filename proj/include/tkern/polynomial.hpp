#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "core.hpp"

namespace tkern {

// Dense complex polynomial, coefficients in ascending degree. The zero
// polynomial is stored as the single coefficient 0.
class Polynomial {
public:
  Polynomial() : c_{Complex{0.0}} {}
  Polynomial(Complex constant) : c_{constant} {}
  explicit Polynomial(std::vector<Complex> ascending) : c_(std::move(ascending)) { normalize(); }
  explicit Polynomial(std::initializer_list<Complex> ascending) : c_(ascending) { normalize(); }

  static Polynomial monomial(int n, Complex coeff = 1.0) {
    std::vector<Complex> c(static_cast<size_t>(n) + 1, Complex{0.0});
    c.back() = coeff;
    return Polynomial(std::move(c));
  }

  // lead * prod (z - r).
  static Polynomial from_roots(std::span<const Complex> roots, Complex lead = 1.0) {
    std::vector<Complex> c{lead};
    for (Complex r : roots) {
      c.push_back(Complex{0.0});
      for (size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
      c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == Complex{0.0}; }
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex operator[](int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)] : Complex{0.0};
  }
  Complex leading() const { return c_.back(); }

  Complex operator()(Complex z) const {
    Complex acc{0.0};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  // Running error bound of Horner's rule at z.
  double horner_error_bound(Complex z) const {
    double az = std::abs(z), acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * az + std::abs(*it);
    return 4.0 * c_.size() * std::numeric_limits<double>::epsilon() * acc;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (Complex c : c_) m = std::max(m, std::abs(c));
    return m;
  }

  double norm() const {
    double s = 0.0;
    for (Complex c : c_) s += std::norm(c);
    return std::sqrt(s);
  }

  Polynomial derivative() const {
    if (degree() == 0) return Polynomial();
    std::vector<Complex> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot normalize the zero polynomial");
    return *this * (1.0 / leading());
  }

  // Sets every coefficient below rel * scale to zero.
  Polynomial chopped(double rel, double scale) const {
    std::vector<Complex> c = c_;
    for (Complex& x : c) {
      if (std::abs(x) <= rel * scale) x = Complex{0.0};
    }
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex{0.0});
    for (size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a) { return a * Complex{-1.0}; }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, Complex{0.0});
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, Complex s) {
    std::vector<Complex> c = a.c_;
    for (Complex& x : c) x *= s;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(Complex s, const Polynomial& a) { return a * s; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Long division: returns (quotient, remainder).
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
    if (degree() < d.degree()) return {Polynomial(), *this};
    std::vector<Complex> r = c_;
    std::vector<Complex> q(static_cast<size_t>(degree() - d.degree() + 1), Complex{0.0});
    const Complex lead = d.leading();
    for (int k = degree() - d.degree(); k >= 0; --k) {
      Complex t = r[static_cast<size_t>(k + d.degree())] / lead;
      q[static_cast<size_t>(k)] = t;
      for (int j = 0; j <= d.degree(); ++j) r[static_cast<size_t>(k + j)] -= t * d.c_[static_cast<size_t>(j)];
    }
    r.resize(static_cast<size_t>(std::max(d.degree(), 1)));
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  // Synthetic division by (z - a), remainder discarded.
  Polynomial deflate(Complex a) const {
    if (degree() == 0) return Polynomial();
    std::vector<Complex> q(c_.size() - 1);
    Complex acc{0.0};
    for (size_t k = c_.size() - 1; k > 0; --k) {
      acc = acc * a + c_[k];
      q[k - 1] = acc;
    }
    return Polynomial(std::move(q));
  }

private:
  void normalize() {
    if (c_.empty()) {
      c_.push_back(Complex{0.0});
      return;
    }
    double scale = 0.0;
    for (Complex x : c_) scale = std::max(scale, std::abs(x));
    while (c_.size() > 1 && std::abs(c_.back()) <= tol::coeff * scale) c_.pop_back();
    if (c_.size() == 1 && std::abs(c_[0]) == 0.0) c_[0] = Complex{0.0};
  }

  std::vector<Complex> c_;
};

// z^deg(p) * conj(p(1 / conj z)): conjugate and reverse the coefficients.
inline Polynomial reflect(const Polynomial& p) {
  std::vector<Complex> c(p.coeffs().rbegin(), p.coeffs().rend());
  for (Complex& x : c) x = std::conj(x);
  return Polynomial(std::move(c));
}

namespace detail {

inline void sort_roots(std::vector<Complex>& r) {
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Parlett-Reinsch balancing in place.
inline void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

inline std::vector<Complex> companion_eigenvalues(const Polynomial& p) {
  const int n = p.degree();
  if (n == 0) return {};
  if (n == 1) return {-p[0] / p[1]};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = p.leading();
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i] / lead;
  balance(comp);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i);
  return out;
}

inline Complex newton_polish(const Polynomial& p, const Polynomial& dp, Complex r) {
  double best = std::abs(p(r));
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    Complex d = dp(r);
    if (d == Complex{0.0}) break;
    Complex next = r - p(r) / d;
    double res = std::abs(p(next));
    if (!(res < best)) break;
    r = next;
    best = res;
  }
  return r;
}

}  // namespace detail

// Roots with multiplicity. Exact zero roots are split off first, the rest come
// from the balanced companion matrix followed by Newton polishing. Roots within
// `cluster_tol * max(1, max|r|)` are merged into their centroid; so are wider
// clusters (up to 1e-4 relative) whose centroid is a root to rounding level.
inline std::vector<Complex> roots(const Polynomial& p, double cluster_tol = tol::cluster) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  const double scale = p.max_abs_coeff();
  int zero_mult = 0;
  while (zero_mult < p.degree() && std::abs(p[zero_mult]) <= 1e-15 * scale) ++zero_mult;
  std::vector<Complex> tail(p.coeffs().begin() + zero_mult, p.coeffs().end());
  Polynomial q(std::move(tail));

  std::vector<Complex> raw = detail::companion_eigenvalues(q);
  const Polynomial dq = q.derivative();
  for (Complex& r : raw) r = detail::newton_polish(q, dq, r);

  double rmax = 1.0;
  for (Complex r : raw) rmax = std::max(rmax, std::abs(r));

  // Single-linkage grouping at the wide radius; a group is accepted as one
  // multiple root if it is tight or if its centroid is a rounding-level root.
  const double tight = cluster_tol * rmax;
  const double wide = std::max(1e-4, cluster_tol) * rmax;
  const size_t n = raw.size();
  std::vector<int> group(n, -1);
  int ngroups = 0;
  for (size_t i = 0; i < n; ++i) {
    if (group[i] >= 0) continue;
    group[i] = ngroups;
    std::vector<size_t> stack{i};
    while (!stack.empty()) {
      size_t a = stack.back();
      stack.pop_back();
      for (size_t b = 0; b < n; ++b) {
        if (group[b] < 0 && std::abs(raw[a] - raw[b]) <= wide) {
          group[b] = ngroups;
          stack.push_back(b);
        }
      }
    }
    ++ngroups;
  }

  std::vector<Complex> out(static_cast<size_t>(zero_mult), Complex{0.0});
  for (int g = 0; g < ngroups; ++g) {
    std::vector<Complex> members;
    for (size_t i = 0; i < n; ++i)
      if (group[i] == g) members.push_back(raw[i]);
    if (members.size() == 1) {
      out.push_back(members[0]);
      continue;
    }
    Complex centroid = std::accumulate(members.begin(), members.end(), Complex{0.0}) /
                       static_cast<double>(members.size());
    double spread = 0.0;
    for (Complex m : members) spread = std::max(spread, std::abs(m - centroid));
    // A genuine multiple root leaves the centroid at rounding level; two
    // distinct roots a distance d apart leave |q(c)| ~ d^2.
    bool merge = spread <= tight || std::abs(q(centroid)) <= 10.0 * q.horner_error_bound(centroid);
    if (merge) {
      out.insert(out.end(), members.size(), centroid);
    } else {
      out.insert(out.end(), members.begin(), members.end());
    }
  }
  detail::sort_roots(out);
  return out;
}

// Greedy tolerance matching of two root multisets. Returns the matched
// elements of `a` and flags for which elements of `b` were consumed.
inline std::vector<Complex> match_roots(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                        double tol, std::vector<bool>* used_b = nullptr) {
  std::vector<bool> used(b.size(), false);
  std::vector<Complex> common;
  for (Complex r : a) {
    double best = std::numeric_limits<double>::infinity();
    size_t best_j = b.size();
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(r - b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    if (best_j < b.size() && best <= tol * std::max(1.0, std::abs(r))) {
      used[best_j] = true;
      common.push_back(r);
    }
  }
  if (used_b) *used_b = std::move(used);
  return common;
}

// Monic polynomial over the tolerance-matched common roots of p and q.
inline Polynomial approx_gcd(const Polynomial& p, const Polynomial& q, double tol = 1e-6) {
  if (p.is_zero() && q.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "gcd of two zero polynomials");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  std::vector<Complex> common = match_roots(roots(p), roots(q), tol);
  return Polynomial::from_roots(common);
}

}  // namespace tkern

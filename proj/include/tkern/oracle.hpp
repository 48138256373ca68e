#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "core.hpp"
#include "rational.hpp"

namespace tkern {

// Fourier coefficients f^(k), k = lo..hi, from the partial fraction
// decomposition: poles outside the disk feed the nonnegative indices, poles
// inside feed the negative ones.
inline std::vector<Complex> fourier_coeffs(const RationalFunction& f, int lo, int hi) {
  if (has_pole_on_circle(f)) throw Error(ErrorCode::PoleOnCircle, "Fourier coefficients with a pole on T");
  std::vector<Complex> out(static_cast<size_t>(hi - lo + 1), Complex{0.0});
  auto put = [&](int k, Complex v) {
    if (k >= lo && k <= hi) out[static_cast<size_t>(k - lo)] += v;
  };
  PartialFractions pf = partial_fractions(f);
  for (int k = 0; k <= pf.polynomial.degree(); ++k) put(k, pf.polynomial[k]);
  for (const auto& part : pf.parts) {
    const Complex p = part.pole;
    for (size_t mi = 0; mi < part.coeffs.size(); ++mi) {
      const int m = static_cast<int>(mi) + 1;
      const Complex c = part.coeffs[mi];
      if (c == Complex{0.0}) continue;
      if (std::abs(p) > 1.0) {
        // (z - p)^{-m} = (-1/p)^m sum_n C(n+m-1, m-1) (z/p)^n
        Complex lead = c * std::pow(-1.0 / p, m);
        double binom = 1.0;
        Complex pw = 1.0;
        for (int n = 0; n <= hi; ++n) {
          if (n > 0) {
            binom *= static_cast<double>(n + m - 1) / n;
            pw /= p;
          }
          put(n, lead * binom * pw);
        }
      } else {
        // (z - p)^{-m} = sum_n C(n+m-1, m-1) p^n z^{-n-m}
        double binom = 1.0;
        Complex pw = 1.0;
        for (int n = 0; -n - m >= lo; ++n) {
          if (n > 0) {
            binom *= static_cast<double>(n + m - 1) / n;
            pw *= p;
          }
          if (p == Complex{0.0} && n > 0) break;
          put(-n - m, c * binom * pw);
        }
      }
    }
  }
  return out;
}

// Same coefficients from an n-point discrete Fourier transform.
inline std::vector<Complex> fourier_coeffs_dft(const RationalFunction& f, int lo, int hi, int n = 4096) {
  auto pts = circle_points(n);
  std::vector<Complex> vals(pts.size());
  for (size_t j = 0; j < pts.size(); ++j) vals[j] = f(pts[j]);
  std::vector<Complex> out;
  for (int k = lo; k <= hi; ++k) {
    Complex acc{0.0};
    for (size_t j = 0; j < pts.size(); ++j) acc += vals[j] * std::conj(std::pow(pts[j], k));
    out.push_back(acc / static_cast<double>(n));
  }
  return out;
}

// Rows x cols section of the Toeplitz matrix, entries g^(j - k).
struct ToeplitzTruncation {
  Eigen::MatrixXcd entries;

  static ToeplitzTruncation build(const RationalFunction& g, int rows, int cols) {
    auto c = fourier_coeffs(g, -(cols - 1), rows - 1);
    ToeplitzTruncation t;
    t.entries.resize(rows, cols);
    for (int j = 0; j < rows; ++j)
      for (int k = 0; k < cols; ++k) t.entries(j, k) = c[static_cast<size_t>(j - k + cols - 1)];
    return t;
  }
};

struct NumericalSubspace {
  Eigen::MatrixXcd basis;  // orthonormal columns
  double tol_rank = 1e-8;
  bool stable = true;

  int dim() const { return static_cast<int>(basis.cols()); }
  int ambient() const { return static_cast<int>(basis.rows()); }
};

namespace detail {

inline Eigen::MatrixXcd svd_null_space(const Eigen::MatrixXcd& A, double tol_rank) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= tol_rank * smax) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

}  // namespace detail

// Kernel of T_g restricted to polynomials of degree < M, read from the
// 2M x M section so that P+(g f) is kept well beyond the first M modes. The
// dimension is compared against the run at 2M.
inline NumericalSubspace numerical_kernel(const RationalFunction& g, int M, double tol_rank = 1e-8,
                                          bool check_stability = true) {
  NumericalSubspace out;
  out.tol_rank = tol_rank;
  out.basis = detail::svd_null_space(ToeplitzTruncation::build(g, 2 * M, M).entries, tol_rank);
  if (check_stability) {
    auto twice = detail::svd_null_space(ToeplitzTruncation::build(g, 4 * M, 2 * M).entries, tol_rank);
    out.stable = twice.cols() == out.basis.cols();
  }
  return out;
}

struct Expansion {
  Eigen::VectorXcd coeffs;
  double tail = 0.0;  // relative energy beyond the first M coefficients
};

// First M Taylor coefficients of an H2 function. The tail is summed from the
// coefficients M..16M-1 rather than taken as a difference of norms, which
// would lose everything below 1e-16.
inline Expansion expand(const RationalFunction& f, int M) {
  auto c = fourier_coeffs(f, 0, 16 * M - 1);
  Expansion e;
  e.coeffs.resize(M);
  double head = 0.0, rest = 0.0;
  for (int k = 0; k < 16 * M; ++k) {
    double a = std::norm(c[static_cast<size_t>(k)]);
    if (k < M) {
      e.coeffs(k) = c[static_cast<size_t>(k)];
      head += a;
    } else {
      rest += a;
    }
  }
  e.tail = head + rest > 0.0 ? rest / (head + rest) : 0.0;
  return e;
}

// Orthonormal basis of the span of the first M coefficients of the functions.
inline NumericalSubspace span_of(const std::vector<RationalFunction>& fs, int M, double* max_tail = nullptr) {
  Eigen::MatrixXcd A(M, static_cast<Eigen::Index>(fs.size()));
  double tail = 0.0;
  for (size_t j = 0; j < fs.size(); ++j) {
    Expansion e = expand(fs[j], M);
    A.col(static_cast<Eigen::Index>(j)) = e.coeffs;
    tail = std::max(tail, e.tail);
  }
  if (max_tail) *max_tail = tail;
  NumericalSubspace out;
  if (fs.empty()) {
    out.basis.resize(M, 0);
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-10 * s(0)) ++rank;
  out.basis = svd.matrixU().leftCols(rank);
  return out;
}

// Largest principal angle; pi/2 when the dimensions differ.
inline double subspace_angle(const NumericalSubspace& a, const NumericalSubspace& b) {
  if (a.ambient() != b.ambient()) throw Error(ErrorCode::DimensionMismatch, "subspaces live in different spaces");
  if (a.dim() != b.dim()) return std::numbers::pi / 2;
  if (a.dim() == 0) return 0.0;
  Eigen::MatrixXcd resid = b.basis - a.basis * (a.basis.adjoint() * b.basis);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(resid);
  return std::asin(std::min(1.0, svd.singularValues()(0)));
}

struct OracleReport {
  int M = 0;
  int symbolic_dim = 0;
  int numerical_dim = 0;
  bool stable = true;
  double angle = 0.0;
  double tail = 0.0;

  bool agrees(double angle_tol = 1e-6) const {
    return stable && symbolic_dim == numerical_dim && angle < angle_tol;
  }
};

// Tail energy below which an expansion of length M counts as converged: the
// truncation error must sit well under the rank threshold of the SVD.
inline constexpr double tail_tol = 1e-22;
inline constexpr int max_doublings = 4;

// Largest principal angle between the spans of two families of H2 functions,
// with M doubled while either expansion has a heavy tail.
inline double span_angle(const std::vector<RationalFunction>& a, const std::vector<RationalFunction>& b, int M) {
  double ta = 0.0, tb = 0.0;
  NumericalSubspace sa = span_of(a, M, &ta), sb = span_of(b, M, &tb);
  for (int k = 0; k < max_doublings && std::max(ta, tb) > tail_tol; ++k) {
    M *= 2;
    sa = span_of(a, M, &ta);
    sb = span_of(b, M, &tb);
  }
  return subspace_angle(sa, sb);
}

// Compares a predicted basis of ker T_g with the truncation kernel. M is
// doubled (up to 16 times the start) while the expansion tail is too heavy.
inline OracleReport oracle_compare(const RationalFunction& g, const std::vector<RationalFunction>& basis, int M) {
  OracleReport r;
  double tail = 0.0;
  NumericalSubspace pred = span_of(basis, M, &tail);
  for (int k = 0; k < max_doublings && tail > tail_tol; ++k) {
    M *= 2;
    pred = span_of(basis, M, &tail);
  }
  NumericalSubspace num = numerical_kernel(g, M);
  r.M = M;
  r.symbolic_dim = pred.dim();
  r.numerical_dim = num.dim();
  r.stable = num.stable;
  r.angle = subspace_angle(pred, num);
  r.tail = tail;
  return r;
}

}  // namespace tkern

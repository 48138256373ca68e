#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tkern {

using Complex = std::complex<double>;

inline constexpr Complex I_unit{0.0, 1.0};

// Numerical thresholds shared by every module. Each operation that exposes a
// tolerance argument defaults to one of these.
namespace tol {
inline constexpr double boundary = 1e-8;  // half-width of the band around |z| = 1
inline constexpr double cluster = 1e-8;   // root merging, relative to max(1, max |root|)
inline constexpr double cancel = 1e-6;    // pole/zero cancellation, relative
inline constexpr double coeff = 1e-14;    // coefficient trimming, relative to the largest one
inline constexpr double unimodular = 1e-9;
inline constexpr int samples = 2048;       // trapezoidal points on the circle
inline constexpr int sup_samples = 4096;  // sup-norm sampling
}  // namespace tol

enum class ErrorCode {
  ZeroPolynomial,
  BoundaryAmbiguous,
  PoleOnCircle,
  RootEscapedDisk,
  NotInHardySpace,
  NotInModelSpace,
  NotInKernel,
  ConstantInnerFactor,
  InsufficientDegree,
  CarlesonViolation,
  NormTooLarge,
  NotInner,
  NotDividing,
  DegenerateShift,
  DimensionMismatch,
  StabilityWarning,
  InconsistentChecks,
  InvalidArgument,
  ParseError,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::BoundaryAmbiguous: return "BoundaryAmbiguous";
    case ErrorCode::PoleOnCircle: return "PoleOnCircle";
    case ErrorCode::RootEscapedDisk: return "RootEscapedDisk";
    case ErrorCode::NotInHardySpace: return "NotInHardySpace";
    case ErrorCode::NotInModelSpace: return "NotInModelSpace";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::ConstantInnerFactor: return "ConstantInnerFactor";
    case ErrorCode::InsufficientDegree: return "InsufficientDegree";
    case ErrorCode::CarlesonViolation: return "CarlesonViolation";
    case ErrorCode::NormTooLarge: return "NormTooLarge";
    case ErrorCode::NotInner: return "NotInner";
    case ErrorCode::NotDividing: return "NotDividing";
    case ErrorCode::DegenerateShift: return "DegenerateShift";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StabilityWarning: return "StabilityWarning";
    case ErrorCode::InconsistentChecks: return "InconsistentChecks";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Points e^{2 pi i j / n}, j = 0..n-1.
inline std::vector<Complex> circle_points(int n) {
  std::vector<Complex> pts(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    pts[static_cast<size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
  }
  return pts;
}

// 1 / conj(a): the reflection of a across the unit circle.
inline Complex reflect_point(Complex a) { return 1.0 / std::conj(a); }

}  // namespace tkern

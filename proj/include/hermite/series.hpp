#pragma once

#include <complex>
#include <vector>

namespace hermite {

using Complex = std::complex<double>;

/// Principal-branch log-gamma on C (Lanczos, g = 7).
Complex log_gamma(Complex z);

/// Query for S_z(t) = sum_{k>=1} k^z e^{-itk} with -1 < Re z < 0.
/// The k = 0 term vanishes (0_+^z = 0 for Re z < 0).
struct SeriesQuery {
  Complex z;
  double t = 0.0;
  /// Abel damping factors, strictly decreasing, last entry >= 1e-6. The
  /// default ladder is eps_j = eps0 / 2^j, j = 0..3, eps0 = min(|t|,1)/16.
  std::vector<double> abel_schedule;
  double rtol = 1e-4;
  double atol = 1e-10;
  /// Optional cap on the number of series terms per level (0 = automatic,
  /// chosen so the discarded tail damping satisfies e^{-eps N} <= 1e-16).
  long max_terms = 0;

  static SeriesQuery make(Complex z, double t);
  void validate() const;
};

struct SeriesValue {
  Complex value;
  double error_estimate;
};

/// Abel-regularized value: partial sums damped by e^{-eps k} for each eps in
/// the schedule, Richardson (Neville) extrapolated to eps = 0. Throws
/// AccuracyError if the extrapolation spread exceeds the query tolerance.
SeriesValue eval_fractional_series(const SeriesQuery& q);

/// Gamma(z+1) (it)^{-z-1} on the principal branch, arg(it) = pi/2 (t > 0).
Complex singular_part(Complex z, double t);

struct SingularComparison {
  Complex series;
  Complex singular;
  Complex remainder;  // series - singular, the smooth part b(t)
  double error_estimate;
};

SingularComparison smooth_remainder(const SeriesQuery& q);

/// Least-squares slope of log|S_z(t)| against log t over a log-uniform grid
/// of `npts` points on [t_lo, t_hi]. For the kernel series this approaches
/// -Re z - 1 as the window moves toward 0.
double fit_blowup_slope(Complex z, double t_lo, double t_hi, int npts);

}  // namespace hermite

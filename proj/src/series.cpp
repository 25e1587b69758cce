#include "hermite/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hermite/errors.hpp"

namespace hermite {

Complex log_gamma(Complex z) {
  // Lanczos approximation, g = 7, 9 terms.
  static constexpr double kCoef[9] = {
      0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,  12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
    return std::log(M_PI / std::sin(M_PI * z)) - log_gamma(1.0 - z);
  }
  const Complex zm = z - 1.0;
  Complex x = kCoef[0];
  for (int k = 1; k < 9; ++k) x += kCoef[k] / (zm + static_cast<double>(k));
  const Complex t = zm + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (zm + 0.5) * std::log(t) - t +
         std::log(x);
}

SeriesQuery SeriesQuery::make(Complex z, double t) {
  SeriesQuery q;
  q.z = z;
  q.t = t;
  double eps0 = std::min(std::abs(t), 1.0) / 16.0;
  eps0 = std::max(eps0, 8e-6);  // keeps the smallest level >= 1e-6
  for (int j = 0; j < 4; ++j) q.abel_schedule.push_back(eps0 / (1 << j));
  return q;
}

void SeriesQuery::validate() const {
  if (!(z.real() > -1.0 && z.real() < 0.0))
    throw ParameterError("series: Re z must lie strictly inside (-1, 0)");
  if (!(std::abs(t) > 0.0 && std::abs(t) <= M_PI))
    throw ParameterError("series: need 0 < |t| <= pi");
  if (abel_schedule.size() < 2)
    throw ParameterError("series: abel schedule needs at least 2 levels");
  for (std::size_t j = 0; j < abel_schedule.size(); ++j) {
    if (abel_schedule[j] < 1e-6)
      throw ParameterError("series: abel epsilon below 1e-6");
    if (j > 0 && abel_schedule[j] >= abel_schedule[j - 1])
      throw ParameterError("series: abel schedule must be strictly decreasing");
  }
}

SeriesValue eval_fractional_series(const SeriesQuery& q) {
  q.validate();
  const int levels = static_cast<int>(q.abel_schedule.size());
  // Terms needed per level: e^{-eps N} <= 1e-16.
  constexpr double kLogTail = 36.8413614879047;  // -ln(1e-16)
  std::vector<long> nterms(levels);
  for (int j = 0; j < levels; ++j) {
    long n = static_cast<long>(std::ceil(kLogTail / q.abel_schedule[j]));
    if (q.max_terms > 0) n = std::min(n, q.max_terms);
    nterms[j] = n;
  }

  // One pass over k shared by all levels (schedule is decreasing, so term
  // counts are non-decreasing).
  const double zr = q.z.real(), zi = q.z.imag();
  std::vector<double> sum_re(levels, 0.0), sum_im(levels, 0.0);
  const long n_max = nterms.back();
  for (long k = 1; k <= n_max; ++k) {
    const double lk = std::log(static_cast<double>(k));
    const double angle = zi * lk - q.t * static_cast<double>(k);
    const double c = std::cos(angle), s = std::sin(angle);
    for (int j = levels - 1; j >= 0; --j) {
      if (k > nterms[j]) break;
      const double a = std::exp(zr * lk - q.abel_schedule[j] * k);
      sum_re[j] += a * c;
      sum_im[j] += a * s;
    }
  }

  // Neville extrapolation of A(eps) to eps = 0.
  std::vector<Complex> row(levels);
  for (int j = 0; j < levels; ++j) row[j] = Complex(sum_re[j], sum_im[j]);
  Complex diag_prev = row[0];
  for (int m = 1; m < levels; ++m) {
    for (int i = 0; i + m < levels; ++i) {
      const double e_i = q.abel_schedule[i];
      const double e_im = q.abel_schedule[i + m];
      row[i] = (e_i * row[i + 1] - e_im * row[i]) / (e_i - e_im);
    }
    if (m < levels - 1) diag_prev = row[0];
  }
  SeriesValue out;
  out.value = row[0];
  out.error_estimate = std::abs(row[0] - diag_prev);
  const double tol = std::max(q.atol, q.rtol * std::abs(out.value));
  if (!(out.error_estimate <= tol))
    throw AccuracyError("series extrapolation estimate " +
                        std::to_string(out.error_estimate) +
                        " above tolerance " + std::to_string(tol));
  return out;
}

Complex singular_part(Complex z, double t) {
  if (!(t > 0.0)) throw ParameterError("singular_part: t must be positive");
  // Gamma(z+1) exp(-(z+1) Log(it)), Log(it) = ln t + i pi/2.
  const Complex log_it(std::log(t), 0.5 * M_PI);
  return std::exp(log_gamma(z + 1.0) - (z + 1.0) * log_it);
}

SingularComparison smooth_remainder(const SeriesQuery& q) {
  if (!(q.t > 0.0))
    throw ParameterError("smooth_remainder: t must be positive");
  const SeriesValue s = eval_fractional_series(q);
  SingularComparison cmp;
  cmp.series = s.value;
  cmp.singular = singular_part(q.z, q.t);
  cmp.remainder = cmp.series - cmp.singular;
  cmp.error_estimate = s.error_estimate;
  return cmp;
}

double fit_blowup_slope(Complex z, double t_lo, double t_hi, int npts) {
  if (npts < 2 || !(t_lo > 0.0) || !(t_hi > t_lo))
    throw ParameterError("fit_blowup_slope: bad window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < npts; ++i) {
    const double lt = std::log(t_lo) +
                      (std::log(t_hi) - std::log(t_lo)) * i / (npts - 1);
    const SeriesValue v = eval_fractional_series(SeriesQuery::make(z, std::exp(lt)));
    const double ly = std::log(std::abs(v.value));
    sx += lt;
    sy += ly;
    sxx += lt * lt;
    sxy += lt * ly;
  }
  return (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
}

}  // namespace hermite

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "hermite/basis.hpp"

namespace hermite {

/// Minimum distance from t to the singular set {k*pi/2} accepted by the
/// kernel-based routines.
inline constexpr double kDefaultSingularMargin = 1e-2;

/// Distance from t to the nearest k*pi/2.
double singular_distance(double t);

/// Spectral flow: c_mu -> e^{-i t (2|mu| + n)} c_mu. Exactly unitary.
SpectralState evolve_spectral(const SpectralState& state, double t);
void evolve_spectral_inplace(SpectralState& state, double t);

/// Oscillatory kernel of the flow at points x, y in R^n (n = x.size()):
///   e^{-i pi n/4} e^{-i pi n floor(2t/pi)/2} (2 pi |sin 2t|)^{-n/2}
///     * exp[(i/2)(cot 2t (|x|^2+|y|^2) - 2 x.y / sin 2t)].
/// The floor factor continues the phase across the caustics at k*pi/2 so the
/// kernel agrees with the spectral flow for all admissible t (and conjugates
/// correctly under t -> -t). Throws SingularTimeError within `margin` of the
/// singular set.
Complex mehler_kernel(std::span<const double> x, std::span<const double> y,
                      double t, double margin = kDefaultSingularMargin);
Complex mehler_kernel(double x, double y, double t,
                      double margin = kDefaultSingularMargin);

/// Quadrature application of the kernel on the basis grid:
///   u(t, x_i) = sum_j w_j e^{x_j^2} K_it(x_i, x_j) f(x_j).
/// Samples of length M are treated as 1-d, length M^2 as the 2-d tensor grid
/// (applied axis by axis). Data must decay at least like e^{-x^2/4}.
Eigen::VectorXcd evolve_kernel(const Basis1D& basis,
                               const Eigen::VectorXcd& samples, double t,
                               double margin = kDefaultSingularMargin);

/// Same quadrature, evaluated at arbitrary 1-d target points.
Eigen::VectorXcd evolve_kernel_at(const Basis1D& basis,
                                  const Eigen::VectorXcd& samples, double t,
                                  std::span<const double> targets,
                                  double margin = kDefaultSingularMargin);

}  // namespace hermite

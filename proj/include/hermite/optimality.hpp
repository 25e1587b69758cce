#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hermite/basis.hpp"

namespace hermite {

/// Parameters of the coherent-state ensemble: position envelope width L,
/// momentum envelope width sqrt(mu), squeeze beta.
struct CoherentParams {
  double beta = 0.5;
  double L = 1.0;
  double mu = 1.0;
  int dim = 1;

  void validate() const;
  /// True in the 1/mu << beta << L^2 window (both ratios >= factor).
  bool regime_ok(double factor = 10.0) const;
};

/// Samples of F_{x,xi}(z) = (2 pi beta)^{-1/4} e^{-(z-x)^2/(4 beta)} e^{i xi z}
/// on a 1-d grid.
Eigen::VectorXcd coherent_state(double x, double xi, double beta,
                                std::span<const double> grid);

/// |e^{+itH} F_{x,xi}(z)| in closed form (1-d):
///   (2b/(pi D))^{1/4} exp(-b (z - x cos 2t + xi sin 2t)^2 / D),
///   D = 4 b^2 cos^2 2t + sin^2 2t.
/// The e^{-itH} magnitude is the same expression with xi -> -xi.
double evolved_coherent_magnitude(double x, double xi, double beta, double t,
                                  double z);

/// Density of the evolved ensemble. z is the radial coordinate (|z| for
/// dim 2); the profile is an isotropic Gaussian:
///   (2 pi)^{-n} (2 pi b mu L^2 / D)^{n/2} e^{-2 b z^2 / D},
///   D = (4b^2 + 2bL^2) cos^2 2t + (1 + 2 mu b) sin^2 2t.
double closed_form_density(const CoherentParams& cp, double t, double z);

/// ||rho||_{L^p_t L^q_x([-pi,pi] x R^n)} of the density above, exact under
/// the scaling relation n(q-1)p = 2q (equivalently 2/p + n/q = n).
double closed_form_mixed_norm(const CoherentParams& cp, double p, double q);

/// Trace of gamma_0: N = (mu L^2)^{n/2} / 2^n.
double trace_N(const CoherentParams& cp);

/// Schatten upper bound (r^{-n} N)^{1/r} from the Berezin-Lieb inequality
/// Tr gamma_0^r <= r^{-n} N, r >= 1.
double berezin_bound(const CoherentParams& cp, double r);

/// Quadrature discretization of gamma_0 in the Hermite basis (dim 1 only):
///   A_{jk} = (2 pi)^{-1} integral e^{-x^2/L^2 - xi^2/mu}
///            <Phi_j, F_{x,xi}> <F_{x,xi}, Phi_k> dx dxi,
/// assembled as B B^H over a Gauss-Hermite product rule (x scaled by L, xi by
/// sqrt(mu)), so the result is Hermitian PSD by construction. Throws
/// ResolutionError if the trace deficit against trace_N exceeds 5%.
Eigen::MatrixXcd gamma0_matrix(const CoherentParams& cp, const Basis1D& basis,
                               int nodes_x, int nodes_xi);

/// Density of a spectral-matrix operator at time t on 1-d points:
///   rho(z) = sum_{jk} e^{-it(2j+1)} A_{jk} e^{it(2k+1)} h_j(z) h_k(z).
Eigen::VectorXd matrix_density(const Eigen::MatrixXcd& a, double t,
                               std::span<const double> points);

struct EnsembleSummary {
  double trace_n;
  double mixed_norm;
  double berezin;
  double ratio;  // mixed_norm / berezin
};

EnsembleSummary ensemble_summary(const CoherentParams& cp, double p, double q,
                                 double r);

struct ScalingFit {
  double slope;
  double intercept;
};

/// Least-squares fit of log(mixed/berezin) against log N along a parameter
/// schedule. Requires >= 5 points, every point inside the regime window, and
/// N spanning at least two decades.
ScalingFit scaling_exponent_fit(std::span<const CoherentParams> schedule,
                                double p, double q, double r);

}  // namespace hermite

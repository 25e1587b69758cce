#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hermite/basis.hpp"
#include "hermite/density.hpp"

namespace hermite {

/// Even interaction kernel w, either a Gaussian w0 e^{-x^2/(2 sigma^2)} or
/// tabulated samples on a uniform grid centered at 0 (linear interpolation,
/// zero outside the table). Tabulated input is symmetrized on construction.
struct InteractionKernel {
  enum class Kind { gaussian, tabulated };

  Kind kind = Kind::gaussian;
  double amplitude = 0.0;
  double width = 1.0;
  std::vector<double> samples;  // odd length, centered at 0
  double spacing = 0.0;

  static InteractionKernel gaussian(double w0, double sigma);
  static InteractionKernel tabulated(std::vector<double> samples,
                                     double spacing);

  double operator()(double x) const;
  double l1_norm() const;
};

struct UniformGrid {
  double radius = 8.0;
  int count = 256;

  double spacing() const { return 2.0 * radius / (count - 1); }
  double point(int g) const { return -radius + g * spacing(); }
  std::vector<double> points() const;
};

struct HartreeConfig {
  double dt = 1e-2;
  int steps = 100;
  UniformGrid grid;
  InteractionKernel interaction;
  double band_limit_tol = 1e-6;

  void validate() const;
};

/// Direct discrete convolution on the uniform grid, grid spacing as measure:
///   V_g = dx * sum_h w(x_g - x_h) rho_h.
Eigen::VectorXd convolve(const InteractionKernel& w, const UniformGrid& grid,
                         const Eigen::VectorXd& rho);

struct StepDiagnostics {
  int step;
  double time;
  double trace;          // sum_j n_j ||u_j||^2
  double gram_drift;     // Frobenius distance of U^H U from its initial value
  double energy;
  double mass_drift;     // max_j | ||u_j||^2 - initial |
  double band_residual;  // worst analyze/synthesize round-trip residual
};

struct HartreeResult {
  OrthonormalSystem state;
  std::vector<StepDiagnostics> diagnostics;  // step 0 = initial data
};

/// Strang splitting for i d/dt u_j = (H + w * rho) u_j at frozen weights:
/// half potential phase, full spectral step, half potential phase with the
/// density recomputed after the linear step. The potential phase is common to
/// all j, so pairwise inner products survive the nonlinearity.
HartreeResult evolve_hartree(const Basis1D& basis, OrthonormalSystem initial,
                             const HartreeConfig& config);

/// One step of the same scheme (exposed for step-level tests).
void strang_step(const Basis1D& basis, OrthonormalSystem& sys,
                 const HartreeConfig& config);

/// sum_j n_j <u_j, H u_j> + (1/2) integral w(x-y) rho(x) rho(y) dx dy on the
/// evolution grid.
double hartree_energy(const Basis1D& basis, const OrthonormalSystem& sys,
                      const HartreeConfig& config);

}  // namespace hermite

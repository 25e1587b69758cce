#include "hermite/propagator.hpp"

#include <cmath>

#include "hermite/errors.hpp"

namespace hermite {

double singular_distance(double t) {
  const double half_pi = 0.5 * M_PI;
  double r = std::remainder(t, half_pi);
  return std::abs(r);
}

void evolve_spectral_inplace(SpectralState& state, double t) {
  const int n = state.idx.dim;
  for (int i = 0; i < state.idx.size(); ++i) {
    const double lambda = 2.0 * state.idx.degree(i) + n;
    state.coeffs[i] *= std::polar(1.0, -t * lambda);
  }
}

SpectralState evolve_spectral(const SpectralState& state, double t) {
  SpectralState out = state;
  evolve_spectral_inplace(out, t);
  return out;
}

namespace {

struct KernelFactors {
  Complex prefactor;  // phase * (2 pi |sin 2t|)^{-n/2}
  double cot2t;
  double inv_sin2t;
};

KernelFactors kernel_factors(int n, double t, double margin) {
  if (singular_distance(t) < margin)
    throw SingularTimeError("mehler kernel: t within " +
                            std::to_string(margin) + " of {k*pi/2}");
  const double s = std::sin(2.0 * t);
  const double c = std::cos(2.0 * t);
  const double branch = std::floor(2.0 * t / M_PI);
  KernelFactors f;
  f.cot2t = c / s;
  f.inv_sin2t = 1.0 / s;
  const double mag = std::pow(2.0 * M_PI * std::abs(s), -0.5 * n);
  f.prefactor = mag * std::polar(1.0, -0.25 * M_PI * n * (1.0 + 2.0 * branch));
  return f;
}

}  // namespace

Complex mehler_kernel(std::span<const double> x, std::span<const double> y,
                      double t, double margin) {
  if (x.size() != y.size() || x.empty())
    throw ShapeError("mehler_kernel: x and y must have equal nonzero size");
  const int n = static_cast<int>(x.size());
  const auto f = kernel_factors(n, t, margin);
  double xx = 0.0, yy = 0.0, xy = 0.0;
  for (int i = 0; i < n; ++i) {
    xx += x[i] * x[i];
    yy += y[i] * y[i];
    xy += x[i] * y[i];
  }
  const double phase = 0.5 * (f.cot2t * (xx + yy) - 2.0 * xy * f.inv_sin2t);
  return f.prefactor * std::polar(1.0, phase);
}

Complex mehler_kernel(double x, double y, double t, double margin) {
  return mehler_kernel(std::span<const double>(&x, 1),
                       std::span<const double>(&y, 1), t, margin);
}

namespace {

// Dense 1-d kernel matrix K(targets_i, nodes_j) * dweight_j.
Eigen::MatrixXcd kernel_matrix(const Basis1D& basis, double t,
                               std::span<const double> targets, double margin) {
  const auto f = kernel_factors(1, t, margin);
  const int M = basis.rule().size();
  const int T = static_cast<int>(targets.size());
  const auto& nodes = basis.rule().nodes;
  const auto& dw = basis.rule().dweights;
  Eigen::MatrixXcd K(T, M);
  for (int i = 0; i < T; ++i) {
    const double xi = targets[i];
    for (int j = 0; j < M; ++j) {
      const double yj = nodes[j];
      const double phase =
          0.5 * (f.cot2t * (xi * xi + yj * yj) - 2.0 * xi * yj * f.inv_sin2t);
      K(i, j) = f.prefactor * std::polar(dw[j], phase);
    }
  }
  return K;
}

}  // namespace

Eigen::VectorXcd evolve_kernel_at(const Basis1D& basis,
                                  const Eigen::VectorXcd& samples, double t,
                                  std::span<const double> targets,
                                  double margin) {
  if (samples.size() != basis.rule().size())
    throw ShapeError("evolve_kernel_at: samples must live on the rule grid");
  return kernel_matrix(basis, t, targets, margin) * samples;
}

Eigen::VectorXcd evolve_kernel(const Basis1D& basis,
                               const Eigen::VectorXcd& samples, double t,
                               double margin) {
  const int M = basis.rule().size();
  if (samples.size() == M)
    return kernel_matrix(basis, t, basis.rule().nodes, margin) * samples;
  if (samples.size() == static_cast<Eigen::Index>(M) * M) {
    Eigen::MatrixXcd K = kernel_matrix(basis, t, basis.rule().nodes, margin);
    Eigen::Map<const Eigen::MatrixXcd> F(samples.data(), M, M);  // (i2, i1)
    Eigen::MatrixXcd U = K * F.transpose() * K.transpose();      // (i1, i2)
    Eigen::VectorXcd out(M * M);
    for (int i1 = 0; i1 < M; ++i1)
      for (int i2 = 0; i2 < M; ++i2) out[i1 * M + i2] = U(i1, i2);
    return out;
  }
  throw ShapeError("evolve_kernel: samples do not match the rule grid");
}

}  // namespace hermite

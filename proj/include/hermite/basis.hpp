#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>
#include <vector>

#include "hermite/quadrature.hpp"

namespace hermite {

using Complex = std::complex<double>;

/// Values h_0(x)..h_K(x) of the L^2-normalized Hermite functions
///   h_k(x) = (2^k sqrt(pi) k!)^{-1/2} H_k(x) e^{-x^2/2},
/// evaluated with the normalized three-term recurrence
///   h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}.
/// Underflow to 0 for large |x| is silent and benign.
std::vector<double> eval_hermite_functions(int K, double x);

/// Table of h_k(points[i]) with rows k = 0..K.
Eigen::MatrixXd hermite_table(int K, std::span<const double> points);

/// One-dimensional basis: quadrature rule plus the value table used by
/// analysis and synthesis. Immutable after construction.
class Basis1D {
 public:
  /// M defaults to 2K+1, which makes analyze exact on degree-<=K data.
  explicit Basis1D(int K) : Basis1D(K, 2 * K + 1) {}
  Basis1D(int K, int M);

  int degree() const { return degree_; }
  const QuadratureRule& rule() const { return rule_; }
  /// (K+1) x M matrix, entry (k, i) = h_k(x_i).
  const Eigen::MatrixXd& table() const { return table_; }

 private:
  int degree_;
  QuadratureRule rule_;
  Eigen::MatrixXd table_;
};

/// Multi-indices mu with |mu| <= K in total-degree-major order,
/// lexicographic within a degree. dim is 1 or 2; for dim 1 the second
/// component is always 0.
struct MultiIndexSet {
  int dim = 1;
  int max_degree = 0;
  std::vector<std::array<int, 2>> indices;

  static MultiIndexSet make(int dim, int K);

  int size() const { return static_cast<int>(indices.size()); }
  int degree(int i) const { return indices[i][0] + indices[i][1]; }
  bool operator==(const MultiIndexSet& other) const = default;
};

/// Coefficient vector over a MultiIndexSet: a wavefunction expressed in the
/// Hermite eigenbasis.
struct SpectralState {
  MultiIndexSet idx;
  Eigen::VectorXcd coeffs;

  double norm() const { return coeffs.norm(); }
  double squared_norm() const { return coeffs.squaredNorm(); }
};

/// Fourier-Hermite analysis: c_mu = quadrature approximation of
/// integral f Phi_mu. Samples live on the basis tensor grid (length M for
/// dim 1, M^2 row-major with the first axis major for dim 2).
SpectralState analyze(const Basis1D& basis, const MultiIndexSet& idx,
                      const Eigen::VectorXcd& samples);

/// Inverse transform evaluated on the basis tensor grid.
Eigen::VectorXcd synthesize(const Basis1D& basis, const SpectralState& state);

/// Inverse transform at arbitrary points (dim 1).
Eigen::VectorXcd synthesize_at(const SpectralState& state,
                               std::span<const double> points);

/// Inverse transform at arbitrary points (dim 2).
Eigen::VectorXcd synthesize_at(const SpectralState& state,
                               std::span<const std::array<double, 2>> points);

/// Discrete L^2 norm squared of samples on the basis tensor grid.
double grid_squared_norm(const Basis1D& basis, int dim,
                         const Eigen::VectorXcd& samples);

}  // namespace hermite

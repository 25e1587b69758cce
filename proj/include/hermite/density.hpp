#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "hermite/basis.hpp"

namespace hermite {

/// Finite-rank weighted system: gamma_0 = sum_j n_j |u_j><u_j| with the u_j
/// stored as orthonormal coefficient columns over a shared index set.
struct OrthonormalSystem {
  MultiIndexSet idx;
  Eigen::VectorXcd weights;  // n_j
  Eigen::MatrixXcd states;   // idx.size() x J, orthonormal columns

  int size() const { return static_cast<int>(states.cols()); }
  /// Max deviation of U^H U from the identity.
  double orthonormality_defect() const;
};

/// Columns from Householder QR of a seeded complex Gaussian matrix, sign-fixed
/// so the factorization is unique. Deterministic per seed across platforms
/// (mt19937_64 bits mapped to doubles explicitly). Unit weights.
OrthonormalSystem random_orthonormal_system(int J, const MultiIndexSet& idx,
                                            std::uint64_t seed);

/// Mixed-norm exponents on [-pi,pi] x R^n. Either may be infinity.
struct MixedNormSpec {
  double p = 1.0;
  double q = 1.0;

  /// Checks the scaling relation 2/p + n/q = n (finite exponents) and the
  /// admissibility bound q < (n+1)/(n-1) (no upper bound at n = 1).
  void validate(int dim) const;
  bool admissible(int dim) const;
  /// Quadrature accuracy degrades for very large q; flagged at q > 16.
  bool quadrature_degraded() const { return q > 16.0; }
};

/// Density rho(t_i, x_j) of an evolved system on a uniform periodic time grid
/// over [-pi, pi) and a Gauss-Hermite space grid (tensor grid for dim 2).
struct DensityField {
  int dim = 1;
  int time_count = 0;
  QuadratureRule space_rule;
  Eigen::MatrixXd values;  // time_count x (M or M^2)

  double dt() const { return 2.0 * M_PI / time_count; }
  double time(int i) const { return -M_PI + i * dt(); }
  /// integral rho(t_i, .) dx for each time row.
  Eigen::VectorXd space_integrals() const;
};

/// rho(t,x) = sum_j n_j |synthesize(evolve_spectral(u_j, t))(x)|^2 on the
/// nodes of `space_rule`.
Eigen::VectorXd density(const OrthonormalSystem& sys, double t,
                        const QuadratureRule& space_rule);

/// Uniform time grid making the trapezoid rule exact for the trigonometric
/// polynomial integrands that appear at integer q (odd count > 6K works; we
/// use 4K+3).
int default_time_count(int max_degree);

DensityField density_field(const OrthonormalSystem& sys, int time_count,
                           const QuadratureRule& space_rule);

/// ( sum_i dt ( sum_j w~_j rho_ij^q )^{p/q} )^{1/p}, max over the grid for
/// infinite exponents.
double mixed_norm(const DensityField& field, const MixedNormSpec& spec);

/// (sum |n_j|^r)^{1/r}; max |n_j| at r = infinity. r < 1 is an error.
double schatten_norm_diagonal(const Eigen::VectorXcd& weights, double r);

/// l^r norm of the singular values.
double schatten_norm_matrix(const Eigen::MatrixXcd& a, double r);

/// mixed_norm(field) / schatten_norm_diagonal(weights, 2q/(q+1)) — the
/// empirical lower estimate of the constant in the orthonormal-system bound.
double strichartz_ratio(const DensityField& field, const OrthonormalSystem& sys,
                        const MixedNormSpec& spec);

struct StrichartzRow {
  std::uint64_t seed;
  int J;
  int K;
  double p, q;
  double ratio;
};

/// Ratio sweep over seeds and system sizes at equal weights. For each seed one
/// Haar frame of max(J_list) columns is drawn and its column prefixes provide
/// the J-graded systems. Rows are seed-major in input order regardless of the
/// worker count.
std::vector<StrichartzRow> strichartz_sweep(int K, std::span<const int> J_list,
                                            int num_seeds, std::uint64_t seed0,
                                            double p, double q,
                                            int time_count = 0,
                                            int workers = 1);

/// Least-squares slope of mean log(ratio/J^{1/r}) against log J, the growth
/// diagnostic for a candidate Schatten exponent r.
double sweep_log_slope(std::span<const StrichartzRow> rows, double r);

}  // namespace hermite

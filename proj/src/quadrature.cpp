#include "hermite/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "hermite/basis.hpp"
#include "hermite/errors.hpp"

namespace hermite {

namespace {

// h_M(x) and h_{M-1}(x) by the normalized recurrence; used for Newton polish
// and the Christoffel sum.
void hermite_pair(int M, double x, double& hM, double& hMm1, double& sumsq) {
  double hkm1 = 0.0;
  double hk = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  sumsq = hk * hk;
  for (int k = 0; k < M; ++k) {
    double hkp1 = x * std::sqrt(2.0 / (k + 1)) * hk -
                  std::sqrt(static_cast<double>(k) / (k + 1)) * hkm1;
    hkm1 = hk;
    hk = hkp1;
    if (k + 1 < M) sumsq += hk * hk;
  }
  hM = hk;
  hMm1 = hkm1;
}

}  // namespace

QuadratureRule build_quadrature(int M) {
  if (M < 1 || M > kMaxQuadratureSize)
    throw ParameterError("build_quadrature: M must be in [1, " +
                         std::to_string(kMaxQuadratureSize) + "], got " +
                         std::to_string(M));

  QuadratureRule rule;
  rule.nodes.resize(M);
  rule.weights.resize(M);
  rule.dweights.resize(M);

  if (M == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = rule.dweights[0] = std::sqrt(M_PI);
    return rule;
  }

  // Jacobi matrix of the orthonormal Hermite polynomials: zero diagonal,
  // off-diagonal b_k = sqrt(k/2). Eigenvalues are the nodes.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(M);
  Eigen::VectorXd sub(M - 1);
  for (int k = 1; k < M; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  Eigen::VectorXd x = es.eigenvalues();  // ascending

  // Two Newton steps on h_M; h_M'(x) = sqrt(2M) h_{M-1}(x) - x h_M(x).
  for (int i = 0; i < M; ++i) {
    double xi = x[i];
    for (int it = 0; it < 2; ++it) {
      double hM, hMm1, sumsq;
      hermite_pair(M, xi, hM, hMm1, sumsq);
      double d = std::sqrt(2.0 * M) * hMm1 - xi * hM;
      if (d != 0.0) xi -= hM / d;
    }
    rule.nodes[i] = xi;
  }

  // Enforce exact symmetry about 0.
  for (int i = 0; i < M / 2; ++i) {
    double s = 0.5 * (rule.nodes[M - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -s;
    rule.nodes[M - 1 - i] = s;
  }
  if (M % 2 == 1) rule.nodes[M / 2] = 0.0;

  // Christoffel weights: w_i e^{x_i^2} = 1 / sum_{k<M} h_k(x_i)^2.
  for (int i = 0; i <= (M - 1) / 2; ++i) {
    double hM, hMm1, sumsq;
    hermite_pair(M, rule.nodes[i], hM, hMm1, sumsq);
    double dw = 1.0 / sumsq;
    rule.dweights[i] = rule.dweights[M - 1 - i] = dw;
    double w = dw * std::exp(-rule.nodes[i] * rule.nodes[i]);
    rule.weights[i] = rule.weights[M - 1 - i] = w;
  }
  return rule;
}

}  // namespace hermite

#pragma once

#include <vector>

namespace hermite {

/// Gauss-Hermite rule for the weight e^{-x^2}:
///   integral f(x) e^{-x^2} dx  ~=  sum_i weights[i] * f(nodes[i]).
///
/// `dweights[i] = weights[i] * e^{nodes[i]^2}` are the de-weighted factors
/// used whenever the Gaussian decay already lives in the integrand
/// (integral g(x) dx ~= sum_i dweights[i] * g(nodes[i])). They are computed
/// directly from the Christoffel identity 1/sum_k h_k(x_i)^2, which stays
/// in range even where weights[i] itself underflows (nodes beyond |x| ~ 27).
struct QuadratureRule {
  std::vector<double> nodes;     // strictly increasing, symmetric about 0
  std::vector<double> weights;   // e^{-x^2} convention, positive
  std::vector<double> dweights;  // weights * e^{x^2}

  int size() const { return static_cast<int>(nodes.size()); }
};

inline constexpr int kMaxQuadratureSize = 512;

/// Nodes via the symmetric tridiagonal (Golub-Welsch) eigenproblem with two
/// Newton polish steps, weights via the Christoffel function. Deterministic.
/// Throws ParameterError unless 1 <= M <= 512.
QuadratureRule build_quadrature(int M);

}  // namespace hermite

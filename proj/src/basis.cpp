#include "hermite/basis.hpp"

#include <cmath>
#include <string>

#include "hermite/errors.hpp"

namespace hermite {

namespace {
constexpr int kMaxDegree = 512;
}

std::vector<double> eval_hermite_functions(int K, double x) {
  if (K < 0 || K > kMaxDegree)
    throw ParameterError("eval_hermite_functions: K out of range: " +
                         std::to_string(K));
  std::vector<double> h(K + 1);
  h[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (K >= 1) h[1] = x * std::sqrt(2.0) * h[0];
  for (int k = 1; k < K; ++k)
    h[k + 1] = x * std::sqrt(2.0 / (k + 1)) * h[k] -
               std::sqrt(static_cast<double>(k) / (k + 1)) * h[k - 1];
  return h;
}

Eigen::MatrixXd hermite_table(int K, std::span<const double> points) {
  const int M = static_cast<int>(points.size());
  Eigen::MatrixXd T(K + 1, M);
  for (int i = 0; i < M; ++i) {
    const double x = points[i];
    T(0, i) = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (K >= 1) T(1, i) = x * std::sqrt(2.0) * T(0, i);
    for (int k = 1; k < K; ++k)
      T(k + 1, i) = x * std::sqrt(2.0 / (k + 1)) * T(k, i) -
                    std::sqrt(static_cast<double>(k) / (k + 1)) * T(k - 1, i);
  }
  return T;
}

Basis1D::Basis1D(int K, int M) : degree_(K) {
  if (K < 0 || K > kMaxDegree)
    throw ParameterError("Basis1D: K out of range: " + std::to_string(K));
  if (M < K + 1)
    throw ParameterError("Basis1D: rule size M=" + std::to_string(M) +
                         " must be >= K+1=" + std::to_string(K + 1));
  rule_ = build_quadrature(M);
  table_ = hermite_table(K, rule_.nodes);
}

MultiIndexSet MultiIndexSet::make(int dim, int K) {
  if (dim != 1 && dim != 2)
    throw ParameterError("MultiIndexSet: dim must be 1 or 2");
  if (K < 0 || K > kMaxDegree)
    throw ParameterError("MultiIndexSet: K out of range");
  MultiIndexSet s;
  s.dim = dim;
  s.max_degree = K;
  if (dim == 1) {
    s.indices.reserve(K + 1);
    for (int d = 0; d <= K; ++d) s.indices.push_back({d, 0});
  } else {
    s.indices.reserve((K + 1) * (K + 2) / 2);
    for (int d = 0; d <= K; ++d)
      for (int m1 = 0; m1 <= d; ++m1) s.indices.push_back({m1, d - m1});
  }
  return s;
}

namespace {

void check_shapes(const Basis1D& basis, const MultiIndexSet& idx,
                  Eigen::Index nsamples) {
  const Eigen::Index M = basis.rule().size();
  if (idx.max_degree > basis.degree())
    throw ShapeError("index set degree exceeds basis degree");
  const Eigen::Index expect = idx.dim == 1 ? M : M * M;
  if (nsamples != expect)
    throw ShapeError("sample count " + std::to_string(nsamples) +
                     " does not match tensor grid size " +
                     std::to_string(expect));
}

}  // namespace

SpectralState analyze(const Basis1D& basis, const MultiIndexSet& idx,
                      const Eigen::VectorXcd& samples) {
  check_shapes(basis, idx, samples.size());
  const int M = basis.rule().size();
  const auto& T = basis.table();
  Eigen::Map<const Eigen::VectorXd> dw(basis.rule().dweights.data(), M);

  SpectralState state{idx, Eigen::VectorXcd(idx.size())};
  if (idx.dim == 1) {
    Eigen::VectorXcd weighted = dw.asDiagonal() * samples;
    Eigen::VectorXcd full = T * weighted;  // degrees 0..basis.degree()
    for (int i = 0; i < idx.size(); ++i) state.coeffs[i] = full[idx.indices[i][0]];
  } else {
    Eigen::Map<const Eigen::MatrixXcd> F(samples.data(), M, M);  // F(i2,i1)
    // c(mu1,mu2) = sum_{i1,i2} dw_i1 dw_i2 F(x_i1, x_i2) h_mu1(x_i1) h_mu2(x_i2)
    Eigen::MatrixXcd C =
        (T * dw.asDiagonal()) * F.transpose() * (T * dw.asDiagonal()).transpose();
    for (int i = 0; i < idx.size(); ++i)
      state.coeffs[i] = C(idx.indices[i][0], idx.indices[i][1]);
  }
  return state;
}

Eigen::VectorXcd synthesize(const Basis1D& basis, const SpectralState& state) {
  const auto& idx = state.idx;
  if (idx.max_degree > basis.degree())
    throw ShapeError("index set degree exceeds basis degree");
  const int M = basis.rule().size();
  const auto& T = basis.table();
  if (idx.dim == 1) {
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(basis.degree() + 1);
    for (int i = 0; i < idx.size(); ++i) full[idx.indices[i][0]] += state.coeffs[i];
    return T.transpose() * full;
  }
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(basis.degree() + 1, basis.degree() + 1);
  for (int i = 0; i < idx.size(); ++i)
    C(idx.indices[i][0], idx.indices[i][1]) += state.coeffs[i];
  Eigen::MatrixXcd F = T.transpose() * C * T;  // F(i1, i2)
  Eigen::VectorXcd out(M * M);
  for (int i1 = 0; i1 < M; ++i1)
    for (int i2 = 0; i2 < M; ++i2) out[i1 * M + i2] = F(i1, i2);
  return out;
}

Eigen::VectorXcd synthesize_at(const SpectralState& state,
                               std::span<const double> points) {
  if (state.idx.dim != 1) throw ShapeError("synthesize_at: state is not 1-d");
  Eigen::MatrixXd T = hermite_table(state.idx.max_degree, points);
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(state.idx.max_degree + 1);
  for (int i = 0; i < state.idx.size(); ++i)
    full[state.idx.indices[i][0]] += state.coeffs[i];
  return T.transpose() * full;
}

Eigen::VectorXcd synthesize_at(const SpectralState& state,
                               std::span<const std::array<double, 2>> points) {
  if (state.idx.dim != 2) throw ShapeError("synthesize_at: state is not 2-d");
  const int K = state.idx.max_degree;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    auto h1 = eval_hermite_functions(K, points[p][0]);
    auto h2 = eval_hermite_functions(K, points[p][1]);
    Complex acc = 0.0;
    for (int i = 0; i < state.idx.size(); ++i)
      acc += state.coeffs[i] * h1[state.idx.indices[i][0]] *
             h2[state.idx.indices[i][1]];
    out[p] = acc;
  }
  return out;
}

double grid_squared_norm(const Basis1D& basis, int dim,
                         const Eigen::VectorXcd& samples) {
  const int M = basis.rule().size();
  Eigen::Map<const Eigen::VectorXd> dw(basis.rule().dweights.data(), M);
  if (dim == 1) {
    if (samples.size() != M) throw ShapeError("grid_squared_norm: bad size");
    return (dw.array() * samples.array().abs2()).sum();
  }
  if (samples.size() != static_cast<Eigen::Index>(M) * M)
    throw ShapeError("grid_squared_norm: bad size");
  double acc = 0.0;
  for (int i1 = 0; i1 < M; ++i1)
    for (int i2 = 0; i2 < M; ++i2)
      acc += dw[i1] * dw[i2] * std::norm(samples[i1 * M + i2]);
  return acc;
}

}  // namespace hermite

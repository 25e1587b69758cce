#include "hermite/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hermite/errors.hpp"
#include "hermite/quadrature.hpp"

namespace hermite {

void CoherentParams::validate() const {
  if (!(beta > 0.0) || !(L > 0.0) || !(mu > 0.0))
    throw ParameterError("coherent params must be positive");
  if (dim != 1 && dim != 2) throw ParameterError("coherent params: dim in {1,2}");
}

bool CoherentParams::regime_ok(double factor) const {
  return mu * beta >= factor && L * L / beta >= factor;
}

Eigen::VectorXcd coherent_state(double x, double xi, double beta,
                                std::span<const double> grid) {
  if (!(beta > 0.0)) throw ParameterError("coherent_state: beta must be > 0");
  const double pref = std::pow(2.0 * M_PI * beta, -0.25);
  Eigen::VectorXcd out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = grid[i];
    out[i] = pref * std::exp(-(z - x) * (z - x) / (4.0 * beta)) *
             std::polar(1.0, xi * z);
  }
  return out;
}

double evolved_coherent_magnitude(double x, double xi, double beta, double t,
                                  double z) {
  if (!(beta > 0.0)) throw ParameterError("evolved magnitude: beta must be > 0");
  const double c = std::cos(2.0 * t), s = std::sin(2.0 * t);
  const double D = 4.0 * beta * beta * c * c + s * s;
  const double center = x * c - xi * s;
  return std::pow(2.0 * beta / (M_PI * D), 0.25) *
         std::exp(-beta * (z - center) * (z - center) / D);
}

namespace {

double density_denominator(const CoherentParams& cp, double t) {
  const double c = std::cos(2.0 * t), s = std::sin(2.0 * t);
  return (4.0 * cp.beta * cp.beta + 2.0 * cp.beta * cp.L * cp.L) * c * c +
         (1.0 + 2.0 * cp.mu * cp.beta) * s * s;
}

}  // namespace

double closed_form_density(const CoherentParams& cp, double t, double z) {
  cp.validate();
  const double D = density_denominator(cp, t);
  const double n = cp.dim;
  return std::pow(2.0 * M_PI, -n) *
         std::pow(2.0 * M_PI * cp.beta * cp.mu * cp.L * cp.L / D, 0.5 * n) *
         std::exp(-2.0 * cp.beta * z * z / D);
}

double closed_form_mixed_norm(const CoherentParams& cp, double p, double q) {
  cp.validate();
  const double n = cp.dim;
  if (std::abs(n * (q - 1.0) * p - 2.0 * q) > 1e-9 * q)
    throw ParameterError("closed_form_mixed_norm: need n(q-1)p = 2q");
  const double mul2 = cp.mu * cp.L * cp.L;
  const double bracket =
      std::sqrt(2.0) * M_PI * std::pow(M_PI / q, n * p / (2.0 * q)) *
      std::pow(mul2, n * p / 2.0) * cp.beta /
      (std::sqrt(2.0 * cp.beta * cp.beta + cp.beta * cp.L * cp.L) *
       std::sqrt(1.0 + 2.0 * cp.mu * cp.beta));
  return std::pow(bracket, 1.0 / p) * std::pow(2.0 * M_PI, -0.5 * n) *
         std::pow(2.0, -n / (2.0 * q));
}

double trace_N(const CoherentParams& cp) {
  cp.validate();
  return std::pow(cp.mu * cp.L * cp.L, 0.5 * cp.dim) / std::pow(2.0, cp.dim);
}

double berezin_bound(const CoherentParams& cp, double r) {
  if (!(r >= 1.0)) throw ParameterError("berezin_bound: r must be >= 1");
  return std::pow(std::pow(r, -static_cast<double>(cp.dim)) * trace_N(cp),
                  1.0 / r);
}

Eigen::MatrixXcd gamma0_matrix(const CoherentParams& cp, const Basis1D& basis,
                               int nodes_x, int nodes_xi) {
  cp.validate();
  if (cp.dim != 1) throw ParameterError("gamma0_matrix: dim 1 only");
  if (basis.degree() > 128)
    throw ParameterError("gamma0_matrix: K <= 128 required");
  if (nodes_x < 1 || nodes_x > 128 || nodes_xi < 1 || nodes_xi > 128)
    throw ParameterError("gamma0_matrix: product rule sizes <= 128");

  const QuadratureRule rx = build_quadrature(nodes_x);
  const QuadratureRule rxi = build_quadrature(nodes_xi);
  const int M = basis.rule().size();
  const int K = basis.degree();
  Eigen::Map<const Eigen::VectorXd> dwz(basis.rule().dweights.data(), M);
  Eigen::Map<const Eigen::VectorXd> z(basis.rule().nodes.data(), M);
  // Analysis operator with the quadrature de-weights folded in.
  const Eigen::MatrixXd analyzer = basis.table() * dwz.asDiagonal();

  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(K + 1, K + 1);
  Eigen::MatrixXcd F(M, nodes_xi);
  const double pref = std::pow(2.0 * M_PI * cp.beta, -0.25);
  for (int a = 0; a < nodes_x; ++a) {
    const double xa = cp.L * rx.nodes[a];
    const double wa = cp.L * rx.weights[a];
    for (int b = 0; b < nodes_xi; ++b) {
      const double xib = std::sqrt(cp.mu) * rxi.nodes[b];
      for (int i = 0; i < M; ++i) {
        const double env =
            pref * std::exp(-(z[i] - xa) * (z[i] - xa) / (4.0 * cp.beta));
        F(i, b) = env * std::polar(1.0, xib * z[i]);
      }
    }
    Eigen::MatrixXcd C = analyzer * F;  // (K+1) x nodes_xi
    for (int b = 0; b < nodes_xi; ++b) {
      const double wb = std::sqrt(cp.mu) * rxi.weights[b];
      C.col(b) *= std::sqrt(wa * wb / (2.0 * M_PI));
    }
    G.noalias() += C * C.adjoint();
  }

  const double tr = G.trace().real();
  const double N = trace_N(cp);
  if (std::abs(tr - N) > 0.05 * N)
    throw ResolutionError("gamma0_matrix: trace deficit " +
                          std::to_string(std::abs(tr - N) / N) +
                          " exceeds 5% (raise K or the rule sizes)");
  return G;
}

Eigen::VectorXd matrix_density(const Eigen::MatrixXcd& a, double t,
                               std::span<const double> points) {
  const int K = static_cast<int>(a.rows()) - 1;
  if (a.rows() != a.cols()) throw ShapeError("matrix_density: square matrix");
  Eigen::VectorXcd phase(K + 1);
  for (int k = 0; k <= K; ++k) phase[k] = std::polar(1.0, -t * (2.0 * k + 1.0));
  const Eigen::MatrixXcd At =
      phase.asDiagonal() * a * phase.conjugate().asDiagonal();
  const Eigen::MatrixXd T = hermite_table(K, points);
  Eigen::VectorXd rho(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::VectorXcd h = T.col(i).cast<Complex>();
    rho[static_cast<Eigen::Index>(i)] = (h.adjoint() * At * h).value().real();
  }
  return rho;
}

EnsembleSummary ensemble_summary(const CoherentParams& cp, double p, double q,
                                 double r) {
  EnsembleSummary s;
  s.trace_n = trace_N(cp);
  s.mixed_norm = closed_form_mixed_norm(cp, p, q);
  s.berezin = berezin_bound(cp, r);
  s.ratio = s.mixed_norm / s.berezin;
  return s;
}

ScalingFit scaling_exponent_fit(std::span<const CoherentParams> schedule,
                                double p, double q, double r) {
  if (schedule.size() < 5)
    throw ParameterError("scaling_exponent_fit: need >= 5 parameter points");
  double nmin = std::numeric_limits<double>::infinity(), nmax = 0.0;
  for (const auto& cp : schedule) {
    if (!cp.regime_ok())
      throw RegimeError("scaling_exponent_fit: point outside 1/mu << beta << L^2");
    const double N = trace_N(cp);
    nmin = std::min(nmin, N);
    nmax = std::max(nmax, N);
  }
  if (nmax < 100.0 * nmin)
    throw ParameterError("scaling_exponent_fit: N must span >= 2 decades");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(schedule.size());
  for (const auto& cp : schedule) {
    const EnsembleSummary s = ensemble_summary(cp, p, q, r);
    const double x = std::log(s.trace_n), y = std::log(s.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ScalingFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace hermite

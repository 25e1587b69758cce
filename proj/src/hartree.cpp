#include "hermite/hartree.hpp"

#include <cmath>
#include <string>

#include "hermite/errors.hpp"
#include "hermite/propagator.hpp"

namespace hermite {

InteractionKernel InteractionKernel::gaussian(double w0, double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("interaction: sigma must be > 0");
  InteractionKernel k;
  k.kind = Kind::gaussian;
  k.amplitude = w0;
  k.width = sigma;
  return k;
}

InteractionKernel InteractionKernel::tabulated(std::vector<double> samples,
                                               double spacing) {
  if (samples.empty() || samples.size() % 2 == 0)
    throw ParameterError("interaction: tabulated samples need odd length");
  if (!(spacing > 0.0)) throw ParameterError("interaction: spacing must be > 0");
  InteractionKernel k;
  k.kind = Kind::tabulated;
  k.spacing = spacing;
  k.samples = std::move(samples);
  const std::size_t c = k.samples.size() / 2;
  for (std::size_t i = 0; i <= c; ++i) {
    if (!std::isfinite(k.samples[c + i]) || !std::isfinite(k.samples[c - i]))
      throw ParameterError("interaction: non-finite sample");
    const double avg = 0.5 * (k.samples[c + i] + k.samples[c - i]);
    k.samples[c + i] = k.samples[c - i] = avg;  // enforce w(-x) = w(x)
  }
  return k;
}

double InteractionKernel::operator()(double x) const {
  if (kind == Kind::gaussian)
    return amplitude * std::exp(-x * x / (2.0 * width * width));
  const double c = static_cast<double>(samples.size() / 2);
  const double s = std::abs(x) / spacing;  // even extension
  if (s >= c) return 0.0;
  const auto i = static_cast<std::size_t>(s);
  const double f = s - static_cast<double>(i);
  const std::size_t base = samples.size() / 2;
  return (1.0 - f) * samples[base + i] + f * samples[base + i + 1];
}

double InteractionKernel::l1_norm() const {
  if (kind == Kind::gaussian)
    return std::abs(amplitude) * std::sqrt(2.0 * M_PI) * width;
  double acc = 0.0;
  for (double v : samples) acc += std::abs(v);
  return acc * spacing;
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> p(count);
  for (int g = 0; g < count; ++g) p[g] = point(g);
  return p;
}

void HartreeConfig::validate() const {
  if (!(dt > 0.0)) throw ParameterError("hartree: dt must be > 0");
  if (steps < 1) throw ParameterError("hartree: steps must be >= 1");
  if (dt * steps > 2.0 * M_PI + 1e-12)
    throw ParameterError("hartree: dt * steps must not exceed 2*pi");
  if (!(grid.radius >= 8.0))
    throw ParameterError("hartree: grid must cover [-R, R] with R >= 8");
  if (grid.count < 16 || grid.count > 2048)
    throw ParameterError("hartree: grid count in [16, 2048]");
}

Eigen::VectorXd convolve(const InteractionKernel& w, const UniformGrid& grid,
                         const Eigen::VectorXd& rho) {
  if (rho.size() != grid.count)
    throw ShapeError("convolve: rho does not match the grid");
  const double dx = grid.spacing();
  Eigen::VectorXd v(grid.count);
  for (int g = 0; g < grid.count; ++g) {
    double acc = 0.0;
    for (int h = 0; h < grid.count; ++h)
      acc += w((g - h) * dx) * rho[h];
    v[g] = acc * dx;
  }
  return v;
}

namespace {

struct StepWorkspace {
  Eigen::MatrixXd grid_table;    // (K+1) x Mu, Hermite values on uniform grid
  Eigen::MatrixXd kernel_qu;     // Mq x Mu, w(x_i - u_g) * du
  Eigen::MatrixXd kernel_uu;     // Mu x Mu, w(u_g - u_h) * du
  Eigen::VectorXd eigenvalues;   // 2k + 1

  StepWorkspace(const Basis1D& basis, const HartreeConfig& cfg) {
    const auto pts = cfg.grid.points();
    grid_table = hermite_table(basis.degree(), pts);
    const double du = cfg.grid.spacing();
    const int Mq = basis.rule().size();
    kernel_qu.resize(Mq, cfg.grid.count);
    for (int i = 0; i < Mq; ++i)
      for (int g = 0; g < cfg.grid.count; ++g)
        kernel_qu(i, g) = cfg.interaction(basis.rule().nodes[i] - pts[g]) * du;
    kernel_uu.resize(cfg.grid.count, cfg.grid.count);
    for (int g = 0; g < cfg.grid.count; ++g)
      for (int h = 0; h < cfg.grid.count; ++h)
        kernel_uu(g, h) = cfg.interaction(pts[g] - pts[h]) * du;
    eigenvalues.resize(basis.degree() + 1);
    for (int k = 0; k <= basis.degree(); ++k) eigenvalues[k] = 2.0 * k + 1.0;
  }

  Eigen::VectorXd density_on_grid(const OrthonormalSystem& sys) const {
    const Eigen::MatrixXcd psi = grid_table.transpose() * sys.states;
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(psi.rows());
    for (int j = 0; j < sys.size(); ++j)
      rho += sys.weights[j].real() * psi.col(j).cwiseAbs2();
    return rho;
  }
};

// Potential half-step at the quadrature nodes followed by re-analysis.
// Returns the worst relative round-trip residual over the states.
double phase_half_step(const Basis1D& basis, OrthonormalSystem& sys,
                       const StepWorkspace& ws, double half_dt,
                       const Eigen::VectorXd& rho_grid) {
  const Eigen::VectorXd v = ws.kernel_qu * rho_grid;
  const int M = basis.rule().size();
  Eigen::Map<const Eigen::VectorXd> dw(basis.rule().dweights.data(), M);
  Eigen::VectorXcd phase(M);
  for (int i = 0; i < M; ++i) phase[i] = std::polar(1.0, -v[i] * half_dt);

  Eigen::MatrixXcd psi = basis.table().transpose() * sys.states;
  psi = phase.asDiagonal() * psi;
  const Eigen::MatrixXcd coeffs = basis.table() * (dw.asDiagonal() * psi);
  const Eigen::MatrixXcd back = basis.table().transpose() * coeffs;
  double worst = 0.0;
  for (int j = 0; j < sys.size(); ++j) {
    const double num = (dw.array() * (back.col(j) - psi.col(j)).array().abs2()).sum();
    const double den = (dw.array() * psi.col(j).array().abs2()).sum();
    if (den > 0.0) worst = std::max(worst, std::sqrt(num / den));
  }
  sys.states = coeffs;
  return worst;
}

}  // namespace

void strang_step(const Basis1D& basis, OrthonormalSystem& sys,
                 const HartreeConfig& config) {
  config.validate();
  if (sys.idx.dim != 1 || sys.idx.max_degree != basis.degree())
    throw ShapeError("strang_step: system must span the full 1-d basis range");
  StepWorkspace ws(basis, config);
  const double r1 =
      phase_half_step(basis, sys, ws, 0.5 * config.dt, ws.density_on_grid(sys));
  Eigen::VectorXcd lin(basis.degree() + 1);
  for (int k = 0; k <= basis.degree(); ++k)
    lin[k] = std::polar(1.0, -config.dt * ws.eigenvalues[k]);
  sys.states = lin.asDiagonal() * sys.states;
  const double r2 =
      phase_half_step(basis, sys, ws, 0.5 * config.dt, ws.density_on_grid(sys));
  const double resid = std::max(r1, r2);
  if (resid > config.band_limit_tol)
    throw BandLimitError("strang step round-trip residual " +
                         std::to_string(resid) + " above tolerance");
}

double hartree_energy(const Basis1D& basis, const OrthonormalSystem& sys,
                      const HartreeConfig& config) {
  StepWorkspace ws(basis, config);
  double lin = 0.0;
  for (int j = 0; j < sys.size(); ++j)
    lin += sys.weights[j].real() *
           (ws.eigenvalues.array() * sys.states.col(j).array().abs2()).sum();
  const Eigen::VectorXd rho = ws.density_on_grid(sys);
  const double inter =
      0.5 * rho.dot(ws.kernel_uu * rho) * config.grid.spacing();
  return lin + inter;
}

HartreeResult evolve_hartree(const Basis1D& basis, OrthonormalSystem initial,
                             const HartreeConfig& config) {
  config.validate();
  if (initial.idx.dim != 1)
    throw ParameterError("evolve_hartree: dim 1 systems only");
  if (initial.idx.max_degree > basis.degree())
    throw ShapeError("evolve_hartree: system degree exceeds basis");

  // Work over the full basis degree range so the spectral step is diagonal.
  if (initial.idx.max_degree < basis.degree()) {
    const MultiIndexSet full = MultiIndexSet::make(1, basis.degree());
    Eigen::MatrixXcd lifted =
        Eigen::MatrixXcd::Zero(full.size(), initial.size());
    lifted.topRows(initial.idx.size()) = initial.states;
    initial.idx = full;
    initial.states = std::move(lifted);
  }

  StepWorkspace ws(basis, config);
  HartreeResult result;
  result.state = std::move(initial);
  auto& sys = result.state;

  const Eigen::MatrixXcd gram0 = sys.states.adjoint() * sys.states;
  Eigen::VectorXd mass0(sys.size());
  for (int j = 0; j < sys.size(); ++j) mass0[j] = sys.states.col(j).squaredNorm();

  Eigen::VectorXcd lin(basis.degree() + 1);
  for (int k = 0; k <= basis.degree(); ++k)
    lin[k] = std::polar(1.0, -config.dt * ws.eigenvalues[k]);

  auto diagnose = [&](int step, double resid) {
    StepDiagnostics d;
    d.step = step;
    d.time = step * config.dt;
    d.trace = 0.0;
    for (int j = 0; j < sys.size(); ++j)
      d.trace += sys.weights[j].real() * sys.states.col(j).squaredNorm();
    d.gram_drift = (sys.states.adjoint() * sys.states - gram0).norm();
    d.energy = hartree_energy(basis, sys, config);
    d.mass_drift = 0.0;
    for (int j = 0; j < sys.size(); ++j)
      d.mass_drift = std::max(
          d.mass_drift, std::abs(sys.states.col(j).squaredNorm() - mass0[j]));
    d.band_residual = resid;
    if (!std::isfinite(d.trace) || !std::isfinite(d.energy))
      throw InstabilityError("hartree evolution lost finiteness", step);
    result.diagnostics.push_back(d);
  };

  diagnose(0, 0.0);
  for (int step = 1; step <= config.steps; ++step) {
    const double r1 = phase_half_step(basis, sys, ws, 0.5 * config.dt,
                                      ws.density_on_grid(sys));
    sys.states = lin.asDiagonal() * sys.states;
    const double r2 = phase_half_step(basis, sys, ws, 0.5 * config.dt,
                                      ws.density_on_grid(sys));
    const double resid = std::max(r1, r2);
    if (resid > config.band_limit_tol)
      throw BandLimitError("strang step round-trip residual " +
                           std::to_string(resid) + " above tolerance");
    if (!sys.states.allFinite())
      throw InstabilityError("hartree evolution produced non-finite state", step);
    diagnose(step, resid);
  }
  return result;
}

}  // namespace hermite

#include "hermite/density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "hermite/errors.hpp"
#include "hermite/propagator.hpp"

namespace hermite {

namespace {

// mt19937_64 bits -> [0,1) without implementation-defined distributions.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller pair.
void normal_pair(std::mt19937_64& rng, double& a, double& b) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  a = r * std::cos(2.0 * M_PI * u2);
  b = r * std::sin(2.0 * M_PI * u2);
}

Eigen::MatrixXcd haar_frame(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXcd Z(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      double re, im;
      normal_pair(rng, re, im);
      Z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
  // Fix phases so the R diagonal is positive: unique factorization.
  for (int j = 0; j < cols; ++j) {
    const Complex d = qr.matrixQR()(j, j);
    const double ad = std::abs(d);
    if (ad > 0.0) Q.col(j) *= std::conj(d) / ad;
  }
  return Q;
}

}  // namespace

double OrthonormalSystem::orthonormality_defect() const {
  Eigen::MatrixXcd G = states.adjoint() * states;
  G -= Eigen::MatrixXcd::Identity(size(), size());
  return G.cwiseAbs().maxCoeff();
}

OrthonormalSystem random_orthonormal_system(int J, const MultiIndexSet& idx,
                                            std::uint64_t seed) {
  if (J < 1 || J > idx.size())
    throw ParameterError("random_orthonormal_system: need 1 <= J <= " +
                         std::to_string(idx.size()));
  OrthonormalSystem sys;
  sys.idx = idx;
  sys.weights = Eigen::VectorXcd::Ones(J);
  sys.states = haar_frame(idx.size(), J, seed);
  return sys;
}

void MixedNormSpec::validate(int dim) const {
  if (!(p >= 1.0) || !(q >= 1.0))
    throw ParameterError("mixed norm: exponents must be >= 1");
  const bool pf = std::isfinite(p), qf = std::isfinite(q);
  if (pf && qf) {
    const double rel = 2.0 / p + dim / q - dim;
    if (std::abs(rel) > 1e-12)
      throw ParameterError("mixed norm: 2/p + n/q = n violated by " +
                           std::to_string(rel));
  }
  if (!admissible(dim))
    throw ParameterError("mixed norm: q >= (n+1)/(n-1) is not admissible");
}

bool MixedNormSpec::admissible(int dim) const {
  if (dim <= 1) return true;  // no upper bound at n = 1
  return q < (dim + 1.0) / (dim - 1.0);
}

int default_time_count(int max_degree) { return 4 * max_degree + 3; }

namespace {

// Synthesized values of all evolved states on 1-d space nodes at one time:
// columns are the states.
Eigen::MatrixXcd evolved_values_1d(const Eigen::MatrixXd& table,
                                   const OrthonormalSystem& sys, double t) {
  const int K = sys.idx.max_degree;
  Eigen::VectorXcd phase(K + 1);
  for (int k = 0; k <= K; ++k) phase[k] = std::polar(1.0, -t * (2.0 * k + 1.0));
  return table.transpose() * (phase.asDiagonal() * sys.states);
}

}  // namespace

Eigen::VectorXd density(const OrthonormalSystem& sys, double t,
                        const QuadratureRule& space_rule) {
  if (sys.idx.dim == 1) {
    Eigen::MatrixXd table = hermite_table(sys.idx.max_degree, space_rule.nodes);
    Eigen::MatrixXcd V = evolved_values_1d(table, sys, t);
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(space_rule.size());
    for (int j = 0; j < sys.size(); ++j)
      rho += sys.weights[j].real() * V.col(j).cwiseAbs2();
    return rho;
  }
  // dim 2: synthesize each evolved state on the tensor grid.
  const int M = space_rule.size();
  Basis1D basis(sys.idx.max_degree, M);
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(M * M);
  for (int j = 0; j < sys.size(); ++j) {
    SpectralState st{sys.idx, sys.states.col(j)};
    evolve_spectral_inplace(st, t);
    rho += sys.weights[j].real() * synthesize(basis, st).cwiseAbs2();
  }
  return rho;
}

DensityField density_field(const OrthonormalSystem& sys, int time_count,
                           const QuadratureRule& space_rule) {
  if (time_count <= 0) time_count = default_time_count(sys.idx.max_degree);
  DensityField field;
  field.dim = sys.idx.dim;
  field.time_count = time_count;
  field.space_rule = space_rule;
  const Eigen::Index cols =
      sys.idx.dim == 1 ? space_rule.size()
                       : static_cast<Eigen::Index>(space_rule.size()) * space_rule.size();
  field.values.resize(time_count, cols);
  if (sys.idx.dim == 1) {
    Eigen::MatrixXd table = hermite_table(sys.idx.max_degree, space_rule.nodes);
    for (int i = 0; i < time_count; ++i) {
      Eigen::MatrixXcd V = evolved_values_1d(table, sys, field.time(i));
      Eigen::VectorXd rho = Eigen::VectorXd::Zero(space_rule.size());
      for (int j = 0; j < sys.size(); ++j)
        rho += sys.weights[j].real() * V.col(j).cwiseAbs2();
      field.values.row(i) = rho.transpose();
    }
  } else {
    for (int i = 0; i < time_count; ++i)
      field.values.row(i) = density(sys, field.time(i), space_rule).transpose();
  }
  return field;
}

Eigen::VectorXd DensityField::space_integrals() const {
  const int M = space_rule.size();
  Eigen::Map<const Eigen::VectorXd> dw(space_rule.dweights.data(), M);
  Eigen::VectorXd out(time_count);
  if (dim == 1) {
    out = values * dw;
  } else {
    Eigen::VectorXd dw2(M * M);
    for (int i1 = 0; i1 < M; ++i1)
      for (int i2 = 0; i2 < M; ++i2) dw2[i1 * M + i2] = dw[i1] * dw[i2];
    out = values * dw2;
  }
  return out;
}

double mixed_norm(const DensityField& field, const MixedNormSpec& spec) {
  spec.validate(field.dim);
  if (!field.values.allFinite())
    throw AccuracyError("mixed_norm: non-finite density values");
  const int M = field.space_rule.size();
  Eigen::Map<const Eigen::VectorXd> dw(field.space_rule.dweights.data(), M);
  Eigen::VectorXd dwall;
  if (field.dim == 1) {
    dwall = dw;
  } else {
    dwall.resize(M * M);
    for (int i1 = 0; i1 < M; ++i1)
      for (int i2 = 0; i2 < M; ++i2) dwall[i1 * M + i2] = dw[i1] * dw[i2];
  }

  const bool qinf = !std::isfinite(spec.q);
  const bool pinf = !std::isfinite(spec.p);
  Eigen::VectorXd lq(field.time_count);  // ||rho(t_i,.)||_q
  for (int i = 0; i < field.time_count; ++i) {
    const auto row = field.values.row(i);
    if (qinf) {
      lq[i] = row.maxCoeff();
    } else {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < row.size(); ++j)
        acc += dwall[j] * std::pow(std::max(row[j], 0.0), spec.q);
      lq[i] = std::pow(acc, 1.0 / spec.q);
    }
  }
  if (pinf) return lq.maxCoeff();
  double acc = 0.0;
  for (int i = 0; i < field.time_count; ++i) acc += std::pow(lq[i], spec.p);
  return std::pow(acc * field.dt(), 1.0 / spec.p);
}

double schatten_norm_diagonal(const Eigen::VectorXcd& weights, double r) {
  if (!(r >= 1.0)) throw ParameterError("schatten norm: r must be >= 1");
  if (!std::isfinite(r)) return weights.size() ? weights.cwiseAbs().maxCoeff() : 0.0;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < weights.size(); ++j)
    acc += std::pow(std::abs(weights[j]), r);
  return std::pow(acc, 1.0 / r);
}

double schatten_norm_matrix(const Eigen::MatrixXcd& a, double r) {
  if (!(r >= 1.0)) throw ParameterError("schatten norm: r must be >= 1");
  if (!a.allFinite()) throw AccuracyError("schatten norm: non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const Eigen::VectorXd s = svd.singularValues();
  if (!std::isfinite(r)) return s.size() ? s.maxCoeff() : 0.0;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) acc += std::pow(s[j], r);
  return std::pow(acc, 1.0 / r);
}

double strichartz_ratio(const DensityField& field, const OrthonormalSystem& sys,
                        const MixedNormSpec& spec) {
  const double denom =
      schatten_norm_diagonal(sys.weights, 2.0 * spec.q / (spec.q + 1.0));
  if (!(denom > 0.0))
    throw DegenerateSystemError("strichartz_ratio: zero Schatten denominator");
  return mixed_norm(field, spec) / denom;
}

std::vector<StrichartzRow> strichartz_sweep(int K, std::span<const int> J_list,
                                            int num_seeds, std::uint64_t seed0,
                                            double p, double q, int time_count,
                                            int workers) {
  if (J_list.empty() || num_seeds < 1)
    throw ParameterError("strichartz_sweep: empty sweep");
  const MultiIndexSet idx = MultiIndexSet::make(1, K);
  for (std::size_t m = 1; m < J_list.size(); ++m)
    if (J_list[m] <= J_list[m - 1])
      throw ParameterError("strichartz_sweep: J list must be strictly increasing");
  const int Jmax = J_list.back();
  if (Jmax > idx.size() || J_list.front() < 1)
    throw ParameterError("strichartz_sweep: J values must lie in [1, index-set size]");
  MixedNormSpec spec{p, q};
  spec.validate(1);
  if (time_count <= 0) time_count = default_time_count(K);
  const QuadratureRule rule = build_quadrature(2 * K + 1);
  const Eigen::MatrixXd table = hermite_table(K, rule.nodes);
  Eigen::Map<const Eigen::VectorXd> dw(rule.dweights.data(), rule.size());
  const double rcrit = 2.0 * q / (q + 1.0);

  std::vector<StrichartzRow> rows(static_cast<std::size_t>(num_seeds) *
                                  J_list.size());
  auto run_seed = [&](int s) {
    const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(s);
    const Eigen::MatrixXcd U = haar_frame(idx.size(), Jmax, seed);
    std::vector<double> tacc(J_list.size(), 0.0);
    Eigen::VectorXcd phase(K + 1);
    for (int i = 0; i < time_count; ++i) {
      const double t = -M_PI + 2.0 * M_PI * i / time_count;
      for (int k = 0; k <= K; ++k)
        phase[k] = std::polar(1.0, -t * (2.0 * k + 1.0));
      const Eigen::MatrixXcd V = table.transpose() * (phase.asDiagonal() * U);
      Eigen::VectorXd rho = Eigen::VectorXd::Zero(rule.size());
      std::size_t mark = 0;
      for (int j = 0; j < Jmax && mark < J_list.size(); ++j) {
        rho += V.col(j).cwiseAbs2();
        while (mark < J_list.size() && J_list[mark] == j + 1) {
          double acc = 0.0;
          for (int m = 0; m < rule.size(); ++m)
            acc += dw[m] * std::pow(rho[m], q);
          tacc[mark] += std::pow(std::pow(acc, 1.0 / q), p);
          ++mark;
        }
      }
    }
    for (std::size_t m = 0; m < J_list.size(); ++m) {
      const double mixed =
          std::pow(tacc[m] * 2.0 * M_PI / time_count, 1.0 / p);
      const double denom = std::pow(static_cast<double>(J_list[m]), 1.0 / rcrit);
      rows[s * J_list.size() + m] =
          StrichartzRow{seed, J_list[m], K, p, q, mixed / denom};
    }
  };

  workers = std::clamp(workers, 1, num_seeds);
  if (workers == 1) {
    for (int s = 0; s < num_seeds; ++s) run_seed(s);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int s = next.fetch_add(1); s < num_seeds; s = next.fetch_add(1))
          run_seed(s);
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

double sweep_log_slope(std::span<const StrichartzRow> rows, double r) {
  if (rows.empty()) throw ParameterError("sweep_log_slope: no rows");
  // Mean log-ratio per J, with the stored critical-exponent denominator
  // swapped for J^{1/r}.
  std::vector<int> Js;
  std::vector<double> sums, counts;
  for (const auto& row : rows) {
    const double rcrit = 2.0 * row.q / (row.q + 1.0);
    const double y = std::log(row.ratio) +
                     (1.0 / rcrit - 1.0 / r) * std::log(static_cast<double>(row.J));
    auto it = std::find(Js.begin(), Js.end(), row.J);
    if (it == Js.end()) {
      Js.push_back(row.J);
      sums.push_back(y);
      counts.push_back(1.0);
    } else {
      const auto i = static_cast<std::size_t>(it - Js.begin());
      sums[i] += y;
      counts[i] += 1.0;
    }
  }
  if (Js.size() < 2) throw ParameterError("sweep_log_slope: need >= 2 J values");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(Js.size());
  for (std::size_t i = 0; i < Js.size(); ++i) {
    const double x = std::log(static_cast<double>(Js[i]));
    const double y = sums[i] / counts[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hermite

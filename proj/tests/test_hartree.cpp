#include <doctest.h>

#include <cmath>

#include "hermite/errors.hpp"
#include "hermite/hartree.hpp"
#include "hermite/propagator.hpp"

using namespace hermite;

namespace {

HartreeConfig base_config(double dt, int steps, double w0 = 0.5) {
  HartreeConfig hc;
  hc.dt = dt;
  hc.steps = steps;
  hc.grid.radius = 12.0;
  hc.grid.count = 384;
  hc.interaction = InteractionKernel::gaussian(w0, 1.0);
  return hc;
}

// band-limited random system with decay headroom inside a degree-K basis
OrthonormalSystem smooth_system(int J, int init_degree, unsigned seed) {
  return random_orthonormal_system(J, MultiIndexSet::make(1, init_degree), seed);
}

}  // namespace

TEST_CASE("interaction kernels") {
  const auto g = InteractionKernel::gaussian(0.5, 1.0);
  CHECK(g(0.3) == doctest::Approx(0.5 * std::exp(-0.045)).epsilon(1e-14));
  CHECK(g(-0.3) == g(0.3));
  CHECK(g.l1_norm() == doctest::Approx(0.5 * std::sqrt(2 * M_PI)).epsilon(1e-13));

  // tabulated input is symmetrized and interpolated
  auto tab = InteractionKernel::tabulated({0.0, 1.0, 2.0, 3.0, 4.0}, 0.5);
  CHECK(tab(0.0) == 2.0);
  CHECK(tab(0.5) == tab(-0.5));
  CHECK(tab(0.25) == doctest::Approx(0.5 * (tab(0.0) + tab(0.5))).epsilon(1e-14));
  CHECK(tab(5.0) == 0.0);  // outside the table
  CHECK_THROWS_AS(InteractionKernel::tabulated({1.0, 2.0}, 0.5), ParameterError);
  CHECK_THROWS_AS(InteractionKernel::gaussian(1.0, 0.0), ParameterError);
}

TEST_CASE("convolution identities") {
  UniformGrid grid{12.0, 768};
  const auto pts = grid.points();

  // zero density
  const auto z = convolve(InteractionKernel::gaussian(1.0, 1.0), grid,
                          Eigen::VectorXd::Zero(grid.count));
  CHECK(z.cwiseAbs().maxCoeff() == 0.0);

  // near-delta kernel reproduces rho within 2% in sup norm
  const double sig = grid.spacing();
  const auto delta =
      InteractionKernel::gaussian(1.0 / (std::sqrt(2 * M_PI) * sig), sig);
  Eigen::VectorXd rho(grid.count);
  for (int i = 0; i < grid.count; ++i) rho[i] = std::exp(-pts[i] * pts[i]);
  const auto v = convolve(delta, grid, rho);
  CHECK((v - rho).cwiseAbs().maxCoeff() <= 0.02 * rho.maxCoeff());

  // gaussian * gaussian: variances add, centers shift
  const double s2 = 1.0, vv = 0.25, amp = 0.8, ctr = 0.4;
  const auto w = InteractionKernel::gaussian(0.5, std::sqrt(s2));
  Eigen::VectorXd g(grid.count);
  for (int i = 0; i < grid.count; ++i)
    g[i] = amp * std::exp(-(pts[i] - ctr) * (pts[i] - ctr) / (2 * vv));
  const auto conv = convolve(w, grid, g);
  for (int i = 0; i < grid.count; ++i) {
    const double want = 0.5 * amp * std::sqrt(2 * M_PI) * std::sqrt(s2 * vv) /
                        std::sqrt(s2 + vv) *
                        std::exp(-(pts[i] - ctr) * (pts[i] - ctr) / (2 * (s2 + vv)));
    CHECK(std::abs(conv[i] - want) <= 1e-6);
  }

  CHECK_THROWS_AS(convolve(w, grid, Eigen::VectorXd::Zero(7)), ShapeError);
}

TEST_CASE("config validation") {
  auto hc = base_config(1e-2, 100);
  hc.grid.radius = 4.0;
  CHECK_THROWS_AS(hc.validate(), ParameterError);
  hc = base_config(1e-2, 100000);  // dt * steps > 2 pi
  CHECK_THROWS_AS(hc.validate(), ParameterError);
  hc = base_config(-1e-2, 10);
  CHECK_THROWS_AS(hc.validate(), ParameterError);
}

TEST_CASE("splitting degenerates to the spectral flow at w = 0") {
  Basis1D basis(32);
  auto sys = smooth_system(2, 32, 3);
  const Eigen::MatrixXcd before = sys.states;
  auto hc = base_config(0.01, 1, 0.0);
  strang_step(basis, sys, hc);
  for (int j = 0; j < 2; ++j) {
    SpectralState st{sys.idx, before.col(j)};
    evolve_spectral_inplace(st, 0.01);
    CHECK((sys.states.col(j) - st.coeffs).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("single ground state: mass conserved per step") {
  Basis1D basis(32);
  OrthonormalSystem sys;
  sys.idx = MultiIndexSet::make(1, 32);
  sys.weights = Eigen::VectorXcd::Ones(1);
  sys.states = Eigen::MatrixXcd::Zero(sys.idx.size(), 1);
  sys.states(0, 0) = 1.0;
  auto hc = base_config(0.01, 1);
  for (int it = 0; it < 20; ++it) {
    const double before = sys.states.col(0).norm();
    strang_step(basis, sys, hc);
    CHECK(std::abs(sys.states.col(0).norm() - before) <= 1e-12);
  }
}

TEST_CASE("pairwise inner products survive the nonlinearity") {
  Basis1D basis(40);
  auto sys = smooth_system(2, 20, 7);
  // lift into the full basis range
  Eigen::MatrixXcd lifted = Eigen::MatrixXcd::Zero(41, 2);
  lifted.topRows(sys.idx.size()) = sys.states;
  sys.idx = MultiIndexSet::make(1, 40);
  sys.states = lifted;
  const Eigen::MatrixXcd gram0 = sys.states.adjoint() * sys.states;
  auto hc = base_config(0.01, 1);
  for (int it = 0; it < 50; ++it) strang_step(basis, sys, hc);
  CHECK((sys.states.adjoint() * sys.states - gram0).norm() <= 1e-10);
}

TEST_CASE("full run: linear reduction, pi-periodic return, conservation") {
  Basis1D basis(40);
  const auto sys = smooth_system(2, 20, 11);
  auto hc = base_config(M_PI / 400.0, 400, 0.0);
  const auto res = evolve_hartree(basis, sys, hc);

  // densities return to the initial profile after one period
  UniformGrid grid = hc.grid;
  const auto pts = grid.points();
  Eigen::MatrixXd table = hermite_table(40, pts);
  auto density_of = [&](const OrthonormalSystem& s) {
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(grid.count);
    const Eigen::MatrixXcd psi = table.transpose() * s.states;
    for (int j = 0; j < s.size(); ++j)
      rho += s.weights[j].real() * psi.col(j).cwiseAbs2();
    return rho;
  };
  OrthonormalSystem init = sys;
  Eigen::MatrixXcd lifted = Eigen::MatrixXcd::Zero(41, 2);
  lifted.topRows(init.idx.size()) = init.states;
  init.idx = MultiIndexSet::make(1, 40);
  init.states = lifted;
  CHECK((density_of(res.state) - density_of(init)).cwiseAbs().maxCoeff() <= 1e-8);

  for (const auto& d : res.diagnostics) {
    CHECK(std::abs(d.trace - 2.0) <= 1e-10);
    CHECK(d.mass_drift <= 1e-12);
  }
}

TEST_CASE("interacting run: trace constant and self-convergence order") {
  Basis1D basis(40);
  const auto sys = smooth_system(2, 20, 13);
  const double T = 0.5;

  auto run = [&](double dt) {
    auto hc = base_config(dt, static_cast<int>(std::lround(T / dt)));
    return evolve_hartree(basis, sys, hc);
  };
  const auto ref = run(T / 800.0);
  const auto a = run(T / 50.0);
  const auto b = run(T / 100.0);
  const double ea = (a.state.states - ref.state.states).norm();
  const double eb = (b.state.states - ref.state.states).norm();
  CHECK(ea / eb == doctest::Approx(4.0).epsilon(0.2));  // second order

  for (const auto& d : b.diagnostics) CHECK(std::abs(d.trace - 2.0) <= 1e-10);
}

TEST_CASE("band-limit monitor fires when the basis cannot hold the step") {
  Basis1D basis(24);
  auto sys = smooth_system(2, 24, 5);  // no decay headroom at all
  auto hc = base_config(0.05, 1, 4.0);
  hc.band_limit_tol = 1e-14;
  CHECK_THROWS_AS(strang_step(basis, sys, hc), BandLimitError);
}

#include <doctest.h>

#include <cmath>
#include <limits>

#include "hermite/density.hpp"
#include "hermite/errors.hpp"
#include "hermite/quadrature.hpp"

using namespace hermite;

namespace {

OrthonormalSystem ground_state_system(int K) {
  OrthonormalSystem sys;
  sys.idx = MultiIndexSet::make(1, K);
  sys.weights = Eigen::VectorXcd::Ones(1);
  sys.states = Eigen::MatrixXcd::Zero(sys.idx.size(), 1);
  sys.states(0, 0) = 1.0;
  return sys;
}

}  // namespace

TEST_CASE("random orthonormal systems") {
  const auto idx = MultiIndexSet::make(1, 8);
  const auto sys = random_orthonormal_system(2, idx, 7);
  CHECK(sys.orthonormality_defect() <= 1e-12);

  const auto again = random_orthonormal_system(2, idx, 7);
  CHECK(sys.states == again.states);  // determinism, bit for bit

  const auto full = random_orthonormal_system(idx.size(), idx, 3);
  CHECK(full.orthonormality_defect() <= 1e-10);
  Eigen::MatrixXcd right = full.states * full.states.adjoint();
  right -= Eigen::MatrixXcd::Identity(idx.size(), idx.size());
  CHECK(right.cwiseAbs().maxCoeff() <= 1e-10);  // square unitary

  CHECK_THROWS_AS(random_orthonormal_system(10, idx, 1), ParameterError);
}

TEST_CASE("ground-state density is stationary") {
  const auto sys = ground_state_system(16);
  const auto rule = build_quadrature(33);
  for (double t : {0.0, 0.4, 2.2}) {
    const auto rho = density(sys, t, rule);
    for (int i = 0; i < rule.size(); ++i) {
      const double want =
          std::exp(-rule.nodes[i] * rule.nodes[i]) / std::sqrt(M_PI);
      CHECK(std::abs(rho[i] - want) <= 1e-12);
    }
  }
}

TEST_CASE("zero weights give zero density") {
  auto sys = random_orthonormal_system(3, MultiIndexSet::make(1, 8), 5);
  sys.weights.setZero();
  const auto rho = density(sys, 0.4, build_quadrature(17));
  CHECK(rho.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("trace conservation across time") {
  const auto idx = MultiIndexSet::make(1, 16);
  const auto sys = random_orthonormal_system(4, idx, 21);
  const auto field = density_field(sys, 0, build_quadrature(33));
  const auto traces = field.space_integrals();
  for (int i = 0; i < field.time_count; ++i)
    CHECK(std::abs(traces[i] - 4.0) <= 1e-9);
  CHECK(field.values.minCoeff() >= -1e-12);  // positivity
}

TEST_CASE("mixed norm closed form for the ground state") {
  const auto sys = ground_state_system(16);
  const auto field = density_field(sys, 0, build_quadrature(65));
  const MixedNormSpec spec{3.0, 3.0};
  const double got = mixed_norm(field, spec);
  const double want = std::pow(2.0 / std::sqrt(3.0), 1.0 / 3.0);  // 1.0491150...
  CHECK(got == doctest::Approx(want).epsilon(1e-10));

  // homogeneity and the zero field
  DensityField scaled = field;
  scaled.values *= 2.5;
  CHECK(mixed_norm(scaled, spec) == doctest::Approx(2.5 * got).epsilon(1e-12));
  scaled.values.setZero();
  CHECK(mixed_norm(scaled, spec) == 0.0);

  // p = infinity: max over time of a stationary profile equals any slice
  const MixedNormSpec pinf{std::numeric_limits<double>::infinity(), 1.0};
  CHECK(mixed_norm(field, pinf) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mixed norm spec validation") {
  CHECK_THROWS_AS(mixed_norm(density_field(ground_state_system(4), 8,
                                           build_quadrature(9)),
                             MixedNormSpec{3.0, 2.0}),
                  ParameterError);  // 2/p + n/q != n
  MixedNormSpec bad{0.5, 3.0};
  CHECK_THROWS_AS(bad.validate(1), ParameterError);
  // n = 2: q must stay below (n+1)/(n-1) = 3
  MixedNormSpec q3{1.5, 3.0};
  CHECK(!q3.admissible(2));
  MixedNormSpec big{2.0 / (1.0 - 1.0 / 20.0) / 1.0, 20.0};
  CHECK(big.admissible(1));
  CHECK(big.quadrature_degraded());
}

TEST_CASE("time-grid refinement changes nothing measurable") {
  const auto idx = MultiIndexSet::make(1, 12);
  const auto sys = random_orthonormal_system(3, idx, 2);
  const auto rule = build_quadrature(25);
  const MixedNormSpec spec{3.0, 3.0};
  const double base = mixed_norm(density_field(sys, 0, rule), spec);
  const double fine =
      mixed_norm(density_field(sys, 2 * default_time_count(12), rule), spec);
  CHECK(std::abs(fine - base) / base <= 1e-4);
}

TEST_CASE("rotation invariance at equal weights") {
  const auto idx = MultiIndexSet::make(1, 10);
  const auto sys = random_orthonormal_system(3, idx, 13);
  // unitary mix of the columns from another random frame
  const auto qsys = random_orthonormal_system(3, MultiIndexSet::make(1, 2), 99);
  OrthonormalSystem mixed_sys = sys;
  mixed_sys.states = sys.states * qsys.states;
  const auto rule = build_quadrature(21);
  const auto a = density(sys, 0.7, rule);
  const auto b = density(mixed_sys, 0.7, rule);
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("diagonal and matrix Schatten norms") {
  Eigen::VectorXcd w1(3);
  w1 << 1.0, 0.0, 0.0;
  for (double r : {1.0, 2.0, 7.5}) CHECK(schatten_norm_diagonal(w1, r) == 1.0);

  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(6);
  CHECK(schatten_norm_diagonal(ones, 1.5) ==
        doctest::Approx(std::pow(6.0, 1.0 / 1.5)).epsilon(1e-14));

  Eigen::VectorXcd pyth(2);
  pyth << 3.0, 4.0;
  CHECK(schatten_norm_diagonal(pyth, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(schatten_norm_diagonal(pyth, std::numeric_limits<double>::infinity()) ==
        4.0);
  CHECK_THROWS_AS(schatten_norm_diagonal(pyth, 0.7), ParameterError);

  CHECK(schatten_norm_matrix(Eigen::MatrixXcd::Identity(5, 5), 1.0) ==
        doctest::Approx(5.0).epsilon(1e-13));

  // rank one |u><v|
  Eigen::VectorXcd u(3), v(3);
  u << Complex(1, 1), Complex(0, 2), Complex(-1, 0);
  v << Complex(2, 0), Complex(1, -1), Complex(0, 3);
  const Eigen::MatrixXcd rank1 = u * v.adjoint();
  for (double r : {1.0, 2.0, 5.0})
    CHECK(schatten_norm_matrix(rank1, r) ==
          doctest::Approx(u.norm() * v.norm()).epsilon(1e-12));

  // diagonal consistency
  Eigen::VectorXcd d(3);
  d << 0.3, 1.7, 0.9;
  CHECK(schatten_norm_matrix(d.asDiagonal(), 1.5) ==
        doctest::Approx(schatten_norm_diagonal(d, 1.5)).epsilon(1e-12));
}

TEST_CASE("strichartz ratio basics") {
  const auto sys = ground_state_system(16);
  const auto field = density_field(sys, 0, build_quadrature(65));
  const MixedNormSpec spec{3.0, 3.0};
  const double ratio = strichartz_ratio(field, sys, spec);
  CHECK(ratio ==
        doctest::Approx(std::pow(2.0 / std::sqrt(3.0), 1.0 / 3.0)).epsilon(1e-10));

  // scaling the weights leaves the ratio unchanged
  OrthonormalSystem scaled = sys;
  scaled.weights *= 4.2;
  const auto sfield = density_field(scaled, 0, build_quadrature(65));
  CHECK(strichartz_ratio(sfield, scaled, spec) ==
        doctest::Approx(ratio).epsilon(1e-12));

  OrthonormalSystem zero = sys;
  zero.weights.setZero();
  const auto zfield = density_field(zero, 8, build_quadrature(17));
  CHECK_THROWS_AS(strichartz_ratio(zfield, zero, spec), DegenerateSystemError);
}

TEST_CASE("sweep determinism and worker independence") {
  const int Jlist[] = {1, 2, 4};
  const auto a = strichartz_sweep(16, Jlist, 5, 11, 3.0, 3.0, 0, 1);
  const auto b = strichartz_sweep(16, Jlist, 5, 11, 3.0, 3.0, 0, 2);
  REQUIRE(a.size() == 15);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].J == b[i].J);
    CHECK(a[i].ratio == b[i].ratio);  // identical bits regardless of workers
  }
  // J = 32 random vs J = 1: bounded by a small constant (theorem content)
  const int Jwide[] = {1, 32};
  const auto rows = strichartz_sweep(32, Jwide, 4, 5, 3.0, 3.0, 0, 2);
  double r1 = 0.0, r32 = 0.0;
  for (const auto& r : rows) (r.J == 1 ? r1 : r32) += r.ratio / 4.0;
  CHECK(r32 <= 3.0 * r1);
}

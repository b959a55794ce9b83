#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qst/dynamics.hpp"
#include "qst/model.hpp"
#include "support/oracles.hpp"

using namespace qst;

TEST_CASE("mode grid band edges for N=2") {
  const ModeGrid grid = mode_grid({2, 0, 0.1, 0.0});
  CHECK(grid.wavenumbers[0] == 0.0);
  CHECK(grid.wavenumbers[1] == doctest::Approx(std::numbers::pi));
  CHECK(grid.energies[0] == -1.0);
  CHECK(grid.energies[1] == doctest::Approx(1.0));
}

TEST_CASE("N=16 has a mode exactly resonant with Omega=0") {
  const ModeGrid grid = mode_grid({16, 8, 0.01, 0.0});
  CHECK(grid.wavenumbers[4] == doctest::Approx(std::numbers::pi / 2));
  CHECK(std::abs(grid.energies[4]) < 1e-15);
}

TEST_CASE("cosine sum symmetry: energies sum to zero") {
  const ModeGrid grid = mode_grid({30, 0, 0.0, 0.0});
  double sum = 0.0;
  for (double e : grid.energies) sum += e;
  CHECK(std::abs(sum) < 1e-13);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_hamiltonian({1, 0, 0.1, 0.0}), validation_error);
  CHECK_THROWS_AS(build_hamiltonian({8, -1, 0.1, 0.0}), validation_error);
  CHECK_THROWS_AS(build_hamiltonian({8, 9, 0.1, 0.0}), validation_error);
  CHECK_THROWS_AS(build_hamiltonian({8, 2, -0.1, 0.0}), validation_error);
  // L = 0 and L = N are both allowed.
  CHECK_NOTHROW(build_hamiltonian({8, 0, 0.1, 0.0}));
  CHECK_NOTHROW(build_hamiltonian({8, 8, 0.1, 0.0}));
}

TEST_CASE("g=0 decouples the impurities") {
  const ModelParams params{6, 2, 0.0, 0.7};
  const auto h = build_hamiltonian(params);
  CHECK(h.matrix.block(0, 2, 2, 6).isZero(0.0));
  CHECK(h.matrix.block(2, 0, 6, 2).isZero(0.0));
  const Spectrum spec = eigendecompose(h);
  // Spectrum = {Omega, Omega} union {eps_n}.
  std::vector<double> expected;
  for (double e : mode_grid(params).energies) expected.push_back(e);
  expected.push_back(0.7);
  expected.push_back(0.7);
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 8; ++i) {
    CHECK(spec.eigenvalues(i) == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("figure-2 parameters give the expected coupling entries") {
  const auto h = build_hamiltonian({16, 8, 0.01, 0.0});
  REQUIRE(h.dimension() == 18);
  for (int i = 2; i < 18; ++i) {
    CHECK(h.matrix(i, 0) == std::complex<double>(-0.0025, 0.0));
  }
}

TEST_CASE("Hamiltonian is exactly Hermitian for random parameters") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> gdist(0.0, 2.0), odist(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + int(rng() % 14);
    const ModelParams params{n, int(rng() % (n + 1)), gdist(rng), odist(rng)};
    const auto h = build_hamiltonian(params);
    for (int i = 0; i < h.dimension(); ++i) {
      for (int j = 0; j < h.dimension(); ++j) {
        // Bit-equal conjugate transpose, not merely close.
        CHECK(h.matrix(i, j).real() == h.matrix(j, i).real());
        CHECK(h.matrix(i, j).imag() == -h.matrix(j, i).imag());
      }
    }
  }
}

TEST_CASE("exchange symmetry A<->B with k -> -k") {
  // The exchange that commutes with H is A<->B combined with k_n -> k_{N-n}
  // and the mode phase e^{-i k_n L} (reflection about the midpoint).  The bare
  // permutation alone is not a symmetry for L > 0.
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> gdist(0.0, 2.0), odist(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + int(rng() % 10);
    const ModelParams params{n, int(rng() % (n + 1)), gdist(rng), odist(rng)};
    const auto h = build_hamiltonian(params);
    const auto grid = mode_grid(params);
    const int dim = n + 2;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    u(0, 1) = 1.0;
    u(1, 0) = 1.0;
    for (int i = 0; i < n; ++i) {
      const int j = (n - i) % n;
      const double phase = -grid.wavenumbers[i] * params.distance;
      u(2 + j, 2 + i) = std::complex<double>(std::cos(phase), std::sin(phase));
    }
    CHECK((u * h.matrix * u.adjoint() - h.matrix).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("eigenvalues match the characteristic-polynomial oracle") {
  const ModelParams params{4, 1, 1.0, 0.5};
  const auto h = build_hamiltonian(params);
  const auto oracle = qst_test::poly_eigenvalues(h.matrix);
  const Spectrum spec = eigendecompose(h);
  REQUIRE(oracle.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(spec.eigenvalues(i) - oracle[i]) < 1e-10);
  }
}

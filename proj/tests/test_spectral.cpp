#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qst/dynamics.hpp"
#include "qst/spectral.hpp"

using namespace qst;
using std::complex;

TEST_CASE("lambda_sum vanishes at g=0") {
  const ModelParams params{8, 3, 0.0, 0.0};
  CHECK(lambda_sum(0, 2.0, params) == 0.0);
  CHECK(lambda_sum(5, complex<double>(0.3, 0.4), params) == complex<double>(0.0));
}

TEST_CASE("lambda_sum hand-checked value") {
  // N=4: eps = {-1, 0, 1, 0}; (1/4)(1/3 + 1/2 + 1/1 + 1/2) at omega=2.
  const ModelParams params{4, 0, 1.0, 0.0};
  CHECK(lambda_sum(0, 2.0, params) ==
        doctest::Approx(0.25 * (1.0 / 3.0 + 0.5 + 1.0 + 0.5)).epsilon(1e-14));
}

TEST_CASE("lambda_sum approaches the continuum residue integral") {
  // Lambda_6(1.5) -> g^2 (Omega - sqrt(Omega^2-1))^6 / sqrt(Omega^2-1).
  const ModelParams params{2000, 0, 0.05, 0.0};
  const double omega = 1.5;
  const double r = std::sqrt(omega * omega - 1.0);
  const double expected = 0.05 * 0.05 * std::pow(omega - r, 6) / r;
  CHECK(expected == doctest::Approx(6.94e-6).epsilon(1e-3));
  CHECK(std::abs(lambda_sum(6, omega, params) - expected) < 1e-9);
}

TEST_CASE("lambda_sum collides with channel energies") {
  const ModelParams params{4, 0, 0.5, 0.0};
  CHECK_THROWS_AS(lambda_sum(0, 1.0, params), pole_collision);
  try {
    lambda_sum(0, 0.0, params);
    FAIL("expected pole_collision");
  } catch (const pole_collision& e) {
    CHECK(std::abs(e.energy()) < 1e-12);
  }
}

TEST_CASE("lambda_sum symmetries") {
  const ModelParams params{12, 0, 0.3, 0.0};
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> odist(1.1, 3.0), idist(0.1, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = int(rng() % 13);
    const complex<double> omega(odist(rng), idist(rng));
    // d <-> -d
    CHECK(std::abs(lambda_sum(d, omega, params) - lambda_sum(-d, omega, params)) <=
          1e-14);
    // Lambda(conj omega) = conj Lambda(omega)
    CHECK(std::abs(lambda_sum(d, std::conj(omega), params) -
                   std::conj(lambda_sum(d, omega, params))) <= 1e-14);
  }
}

TEST_CASE("K root selection") {
  CHECK(k_root(2.0) == doctest::Approx(-2.0 + std::sqrt(3.0)).epsilon(1e-14));
  CHECK(k_root(-1.5) == doctest::Approx(1.5 - std::sqrt(1.25)).epsilon(1e-14));
  CHECK(std::abs(k_root(1.0000001)) < 1.0);
  CHECK_THROWS_AS(k_root(0.5), validation_error);
}

TEST_CASE("lambda_closed equals lambda_sum outside the band") {
  SUBCASE("hand examples") {
    const ModelParams p4{4, 0, 1.0, 0.0};
    CHECK(lambda_closed(0, 2.0, p4) ==
          doctest::Approx(lambda_sum(0, 2.0, p4)).epsilon(1e-12));
    const ModelParams p30{30, 0, 0.05, 0.0};
    CHECK(lambda_closed(6, -1.5, p30) ==
          doctest::Approx(lambda_sum(6, -1.5, p30)).epsilon(1e-12));
  }
  SUBCASE("100 random (omega, d, N) triples") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> odist(1.001, 4.0), gdist(0.05, 1.5);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + int(rng() % 30);
      const ModelParams params{n, 0, gdist(rng), 0.0};
      const int d = int(rng() % (n + 1));
      const double omega = (rng() % 2 ? 1.0 : -1.0) * odist(rng);
      const double closed = lambda_closed(d, omega, params);
      const double summed = lambda_sum(d, omega, params);
      // The absolute floor covers large d, where the k-sum cancels down to
      // values near machine epsilon times the summand scale g^2.
      CHECK(std::abs(closed - summed) <= 1e-10 * std::abs(summed) + 1e-13);
    }
  }
  SUBCASE("rejects in-band omega") {
    CHECK_THROWS_AS(lambda_closed(0, 0.5, ModelParams{4, 0, 0.1, 0.0}),
                    validation_error);
  }
}

TEST_CASE("d_pm basics") {
  SUBCASE("g=0 gives omega - Omega") {
    const ModelParams params{6, 2, 0.0, 0.7};
    const auto [dp, dm] = d_pm(1.9, params);
    CHECK(dp == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(dm == doctest::Approx(1.2).epsilon(1e-14));
  }
  SUBCASE("L=0 dark factor: D- = omega - Omega exactly") {
    const ModelParams params{8, 0, 0.4, 0.3};
    for (double omega : {1.7, -1.4, 0.123}) {
      const auto [dp, dm] = d_pm(omega, params);
      CHECK(dm == omega - 0.3);
      CHECK(dp != dm);
    }
  }
  SUBCASE("factorization identity") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> odist(-2.5, 2.5);
    const ModelParams params{4, 2, 0.1, 1.5};
    int tested = 0;
    while (tested < 30) {
      const double omega = odist(rng);
      double l0, ll;
      try {
        l0 = lambda_sum(0, omega, params);
        ll = lambda_sum(2, omega, params);
      } catch (const pole_collision&) {
        continue;
      }
      const auto [dp, dm] = d_pm(omega, params);
      const double lhs = dp * dm;
      const double rhs = (omega - 1.5 - l0) * (omega - 1.5 - l0) - ll * ll;
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
      ++tested;
    }
  }
}

TEST_CASE("gamma form of the spectral factors") {
  SUBCASE("g=0 reduces to cos(gamma) - cos(Gamma)") {
    const ModelParams params{9, 4, 0.0, -std::cos(1.1)};
    const auto [gp, gm] = d_pm_gamma(complex<double>(0.8, 0.0), params);
    CHECK(gp.real() == doctest::Approx(std::cos(0.8) - std::cos(1.1)).epsilon(1e-14));
    CHECK(gm == gp);
    const auto [zp, zm] = d_pm_gamma(complex<double>(1.1, 0.0), params);
    CHECK(std::abs(zp) < 1e-14);
  }
  SUBCASE("pullback matches d_pm at random in-band points") {
    const ModelParams params{16, 3, 0.07, 0.3};
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> gdist(0.05, std::numbers::pi - 0.05);
    int tested = 0;
    while (tested < 20) {
      const double gamma = gdist(rng);
      const double omega = -std::cos(gamma);
      std::pair<double, double> direct;
      std::pair<complex<double>, complex<double>> viagamma;
      try {
        direct = d_pm(omega, params);
        viagamma = d_pm_gamma(complex<double>(gamma, 0.0), params);
      } catch (const pole_collision&) {
        continue;
      }
      // Overall sign convention: gamma form equals -D_pm.
      CHECK(std::abs(viagamma.first.real() + direct.first) <=
            1e-10 * std::max(1.0, std::abs(direct.first)));
      CHECK(std::abs(viagamma.second.real() + direct.second) <=
            1e-10 * std::max(1.0, std::abs(direct.second)));
      ++tested;
    }
  }
  SUBCASE("near-resonance expansion value") {
    // Gamma = pi/2, N=16, L=8, g=0.01, gamma = Gamma + 0.005: the minus factor
    // follows the small-delta expansion
    //   -delta sin(Gamma) + (g^2/sin Gamma)[cot(delta N/2)(1 - cos(Gamma L))
    //                                        - sin(Gamma L)].
    const ModelParams params{16, 8, 0.01, 0.0};
    const double gamma_big = std::numbers::pi / 2;
    const double delta = 0.005;
    const double cos_gl = std::cos(gamma_big * 8);  // = 1
    const double sin_gl = std::sin(gamma_big * 8);  // = 0
    const double expansion =
        -delta + 0.01 * 0.01 *
                     ((1.0 - cos_gl) / std::tan(0.5 * delta * 16) - sin_gl);
    const auto [gp, gm] =
        d_pm_gamma(complex<double>(gamma_big + delta, 0.0), params);
    // Leading order only: the neglected terms are O(g^2 delta N).
    CHECK(std::abs(gm.real() - expansion) <= 1e-5);
  }
  SUBCASE("pole collisions are reported") {
    const ModelParams params{16, 8, 0.01, 0.0};
    // gamma N/2 = pi at gamma = pi/8 (an unperturbed mode).
    CHECK_THROWS_AS(
        d_pm_gamma(complex<double>(std::numbers::pi / 8, 0.0), params),
        pole_collision);
  }
}

TEST_CASE("find_poles requires g > 0") {
  CHECK_THROWS_AS(find_poles(ModelParams{4, 1, 0.0, 0.5}), validation_error);
}

TEST_CASE("g -> 0 poles cluster at Omega and the coupled energies") {
  const ModelParams params{4, 1, 1e-6, 0.5};
  const PoleSet set = find_poles(params);
  const ModeGrid grid = mode_grid(params);
  for (const Pole& p : set.poles) {
    double dist = std::abs(p.omega - 0.5);
    for (double e : grid.energies) dist = std::min(dist, std::abs(p.omega - e));
    CHECK(dist < 1e-5);
  }
  CHECK(set.completeness() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("poles coincide with impurity-weight eigenvalues") {
  for (const ModelParams& params :
       {ModelParams{4, 2, 0.1, 1.5}, ModelParams{16, 8, 0.01, 0.0},
        ModelParams{9, 4, 0.15, -0.6}, ModelParams{12, 12, 0.2, 0.5}}) {
    const PoleSet set = find_poles(params);
    const Spectrum spec = eigendecompose(build_hamiltonian(params));
    for (const Pole& p : set.poles) {
      double best = 1e300;
      for (Eigen::Index j = 0; j < spec.eigenvalues.size(); ++j) {
        best = std::min(best, std::abs(p.omega - spec.eigenvalues(j)));
      }
      CHECK(best < 1e-8);
    }
    for (Eigen::Index j = 0; j < spec.eigenvalues.size(); ++j) {
      const double impurity_weight = std::norm(spec.eigenvectors(0, j)) +
                                     std::norm(spec.eigenvectors(1, j));
      if (impurity_weight <= 1e-6) continue;
      double best = 1e300;
      for (const Pole& p : set.poles) {
        best = std::min(best, std::abs(p.omega - spec.eigenvalues(j)));
      }
      CHECK(best < 1e-8);
    }
    CHECK(set.completeness() == doctest::Approx(1.0).epsilon(1e-8));
    for (const Pole& p : set.poles) CHECK(p.residue_weight > 0.0);
  }
}

TEST_CASE("weak off-resonance out-of-band pole pair follows the one-step iteration") {
  const ModelParams params{30, 6, 0.05, 1.5};
  const PoleSet set = find_poles(params);
  const double l0 = lambda_sum(0, 1.5, params);
  const double ll = lambda_sum(6, 1.5, params);
  double best_p = 1e300, best_m = 1e300;
  for (const Pole& p : set.poles) {
    if (p.parity == Parity::plus) {
      best_p = std::min(best_p, std::abs(p.omega - (1.5 + l0 + ll)));
    } else {
      best_m = std::min(best_m, std::abs(p.omega - (1.5 + l0 - ll)));
    }
  }
  const double tol = 10.0 * std::pow(0.05, 4);
  CHECK(best_p < tol);
  CHECK(best_m < tol);
}

TEST_CASE("reconstruction from a hand-built decoupled pole set") {
  // g = 0: both parity factors are omega - Omega; a_A(t) = e^{-i Omega t}.
  PoleSet set;
  set.params = ModelParams{4, 0, 0.0, 0.8};
  set.poles = {Pole{0.8, Parity::plus, 1.0}, Pole{0.8, Parity::minus, 1.0}};
  const std::vector<double> times{0.0, 1.0, 5.5};
  const auto [a_a, a_b] = reconstruct_amplitudes(set, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const complex<double> expected(std::cos(0.8 * times[i]),
                                   -std::sin(0.8 * times[i]));
    CHECK(std::abs(a_a[i] - expected) < 1e-14);
    CHECK(std::abs(a_b[i]) < 1e-14);
  }
}

TEST_CASE("reconstruction matches the eigendecomposition propagator") {
  const ModelParams params{8, 3, 0.2, 1.5};
  const PoleSet set = find_poles(params);
  const auto [a0, b0] = reconstruct_amplitudes(set, {0.0});
  CHECK(std::abs(a0[0] - 1.0) < 1e-8);
  CHECK(std::abs(b0[0]) < 1e-8);

  std::mt19937 rng(59);
  std::uniform_real_distribution<double> tdist(0.0, 1e3);
  std::vector<double> times;
  for (int i = 0; i < 50; ++i) times.push_back(tdist(rng));
  std::sort(times.begin(), times.end());
  const auto [a_a, a_b] = reconstruct_amplitudes(set, times);
  const auto traj = evolve(params, SingleExcitationState::on_a(params), times, true);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(a_a[i] - (*traj.amplitudes)(0, Eigen::Index(i))) <= 1e-6);
    CHECK(std::abs(a_b[i] - (*traj.amplitudes)(1, Eigen::Index(i))) <= 1e-6);
  }
}

TEST_CASE("incomplete pole sets are rejected before the time loop") {
  PoleSet set;
  set.params = ModelParams{4, 0, 0.1, 0.8};
  set.poles = {Pole{0.8, Parity::plus, 1.0}};
  CHECK_THROWS_AS(reconstruct_amplitudes(set, {0.0}), numerical_error);
}

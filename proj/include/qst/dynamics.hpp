#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qst/model.hpp"

namespace qst {

// Complex amplitudes in basis order [A, B, k_0 ... k_{N-1}], unit norm.
struct SingleExcitationState {
  Eigen::VectorXcd amplitudes;

  explicit SingleExcitationState(Eigen::VectorXcd amps);

  // Unit vector on impurity A, |psi_in> = c_A^dag |0>.
  static SingleExcitationState on_a(const ModelParams& params);
  static SingleExcitationState on_b(const ModelParams& params);

  int dimension() const { return static_cast<int>(amplitudes.size()); }
};

// Eigenvalues ascending; eigenvector columns orthonormal, phase-fixed so the
// largest-magnitude component of each column is real positive.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> p_a;
  std::vector<double> p_b;
  std::vector<double> p_chan;
  // Full amplitude snapshots, one column per sample, kept only on request.
  std::optional<Eigen::MatrixXcd> amplitudes;

  std::size_t size() const { return times.size(); }
};

struct Occupations {
  double p_a = 0;
  double p_b = 0;
  double p_chan = 0;
};

Spectrum eigendecompose(const HamiltonianMatrix& h);

// Exact propagation psi(t) = sum_j e^{-i E_j t} <v_j|psi0> v_j; cost per
// sample is independent of t, so arbitrarily late times are fine.
Trajectory evolve(const ModelParams& params, const SingleExcitationState& initial,
                  const std::vector<double>& times, bool store_amplitudes = false);

// Same, reusing a precomputed spectrum of the params' Hamiltonian.
Trajectory evolve(const Spectrum& spectrum, const SingleExcitationState& initial,
                  const std::vector<double>& times, bool store_amplitudes = false);

Occupations occupation_probabilities(const SingleExcitationState& state);

}  // namespace qst

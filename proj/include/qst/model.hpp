#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qst/errors.hpp"

namespace qst {

// Two impurities (A, B) with on-site energy Omega, coupled with strength g to
// an N-mode tight-binding channel with dispersion eps_k = -cos k.  Units are
// fixed: half-bandwidth w = 1, lattice constant a = 1, hbar = 1; all times in
// units of 1/w.
struct ModelParams {
  int n_modes = 2;             // N
  int distance = 0;            // L, lattice sites between the attachment points
  double coupling = 0.0;       // g >= 0
  double impurity_energy = 0;  // Omega

  void validate() const;
};

// Channel wavenumbers k_n = 2 pi n / N and energies eps_n = -cos k_n,
// n = 0 ... N-1.
struct ModeGrid {
  std::vector<double> wavenumbers;
  std::vector<double> energies;
};

// Single-excitation Hamiltonian in the fixed basis order [A, B, k_0 ... k_{N-1}].
struct HamiltonianMatrix {
  Eigen::MatrixXcd matrix;  // (N+2) x (N+2), Hermitian by construction

  int dimension() const { return static_cast<int>(matrix.rows()); }
};

ModeGrid mode_grid(const ModelParams& params);

HamiltonianMatrix build_hamiltonian(const ModelParams& params);

}  // namespace qst

#include "qst/model.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace qst {

void ModelParams::validate() const {
  if (n_modes < 2) {
    throw validation_error("n_modes must be >= 2, got " + std::to_string(n_modes));
  }
  if (distance < 0 || distance > n_modes) {
    throw validation_error("distance must satisfy 0 <= L <= N, got L=" +
                           std::to_string(distance) + " with N=" +
                           std::to_string(n_modes));
  }
  if (!(coupling >= 0) || !std::isfinite(coupling)) {
    throw validation_error("coupling must be finite and >= 0");
  }
  if (!std::isfinite(impurity_energy)) {
    throw validation_error("impurity_energy must be finite");
  }
}

ModeGrid mode_grid(const ModelParams& params) {
  params.validate();
  const int n = params.n_modes;
  ModeGrid grid;
  grid.wavenumbers.resize(n);
  grid.energies.resize(n);
  for (int i = 0; i < n; ++i) {
    const double k = 2.0 * std::numbers::pi * i / n;
    grid.wavenumbers[i] = k;
    grid.energies[i] = -std::cos(k);
  }
  return grid;
}

HamiltonianMatrix build_hamiltonian(const ModelParams& params) {
  params.validate();
  const int n = params.n_modes;
  const int dim = n + 2;
  const double gn = params.coupling / std::sqrt(static_cast<double>(n));
  const ModeGrid grid = mode_grid(params);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  h(0, 0) = params.impurity_energy;
  h(1, 1) = params.impurity_energy;
  for (int i = 0; i < n; ++i) {
    const int row = 2 + i;
    h(row, row) = grid.energies[i];
    const std::complex<double> phase(std::cos(grid.wavenumbers[i] * params.distance),
                                     std::sin(grid.wavenumbers[i] * params.distance));
    h(row, 0) = -gn;
    h(row, 1) = -gn * phase;
    h(0, row) = std::conj(h(row, 0));
    h(1, row) = std::conj(h(row, 1));
  }
  return HamiltonianMatrix{std::move(h)};
}

}  // namespace qst

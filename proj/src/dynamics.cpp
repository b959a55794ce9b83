#include "qst/dynamics.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace qst {

namespace {

constexpr double kNormTol = 1e-12;

void check_times(const std::vector<double>& times) {
  if (times.empty()) {
    throw validation_error("time grid is empty");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) {
      throw validation_error("time grid contains a non-finite value");
    }
    if (i > 0 && times[i] < times[i - 1]) {
      throw validation_error("time grid must be ascending");
    }
  }
}

}  // namespace

SingleExcitationState::SingleExcitationState(Eigen::VectorXcd amps)
    : amplitudes(std::move(amps)) {
  if (amplitudes.size() < 4) {
    throw validation_error("state must have dimension N+2 >= 4");
  }
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "state norm^2 deviates from 1 by " << std::abs(norm2 - 1.0);
    throw validation_error(msg.str());
  }
}

SingleExcitationState SingleExcitationState::on_a(const ModelParams& params) {
  params.validate();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(params.n_modes + 2);
  v(0) = 1.0;
  return SingleExcitationState(std::move(v));
}

SingleExcitationState SingleExcitationState::on_b(const ModelParams& params) {
  params.validate();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(params.n_modes + 2);
  v(1) = 1.0;
  return SingleExcitationState(std::move(v));
}

Spectrum eigendecompose(const HamiltonianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigensolver failed on a " << h.dimension() << "x" << h.dimension()
        << " Hamiltonian";
    throw numerical_error(msg.str());
  }
  Spectrum spec{solver.eigenvalues(), solver.eigenvectors()};
  // Phase convention: largest-magnitude component of each column real positive.
  for (Eigen::Index j = 0; j < spec.eigenvectors.cols(); ++j) {
    Eigen::Index imax = 0;
    spec.eigenvectors.col(j).cwiseAbs().maxCoeff(&imax);
    const std::complex<double> pivot = spec.eigenvectors(imax, j);
    if (std::abs(pivot) > 0) {
      spec.eigenvectors.col(j) *= std::conj(pivot) / std::abs(pivot);
    }
  }
  return spec;
}

Trajectory evolve(const Spectrum& spectrum, const SingleExcitationState& initial,
                  const std::vector<double>& times, bool store_amplitudes) {
  check_times(times);
  if (spectrum.eigenvalues.size() != initial.dimension()) {
    throw validation_error("state dimension does not match spectrum dimension");
  }
  const Eigen::Index dim = spectrum.eigenvalues.size();
  const Eigen::VectorXcd coeffs = spectrum.eigenvectors.adjoint() * initial.amplitudes;

  Trajectory traj;
  traj.times = times;
  traj.p_a.reserve(times.size());
  traj.p_b.reserve(times.size());
  traj.p_chan.reserve(times.size());
  if (store_amplitudes) {
    traj.amplitudes.emplace(dim, static_cast<Eigen::Index>(times.size()));
  }

  Eigen::VectorXcd phased(dim);
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double t = times[s];
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double phi = -spectrum.eigenvalues(j) * t;
      phased(j) = coeffs(j) * std::complex<double>(std::cos(phi), std::sin(phi));
    }
    const Eigen::VectorXcd psi = spectrum.eigenvectors * phased;
    const double pa = std::norm(psi(0));
    const double pb = std::norm(psi(1));
    const double pc = psi.tail(dim - 2).squaredNorm();
    traj.p_a.push_back(pa);
    traj.p_b.push_back(pb);
    traj.p_chan.push_back(pc);
    if (store_amplitudes) {
      traj.amplitudes->col(static_cast<Eigen::Index>(s)) = psi;
    }
  }
  return traj;
}

Trajectory evolve(const ModelParams& params, const SingleExcitationState& initial,
                  const std::vector<double>& times, bool store_amplitudes) {
  params.validate();
  const Spectrum spec = eigendecompose(build_hamiltonian(params));
  return evolve(spec, initial, times, store_amplitudes);
}

Occupations occupation_probabilities(const SingleExcitationState& state) {
  Occupations occ;
  occ.p_a = std::norm(state.amplitudes(0));
  occ.p_b = std::norm(state.amplitudes(1));
  occ.p_chan = state.amplitudes.tail(state.dimension() - 2).squaredNorm();
  return occ;
}

}  // namespace qst

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qst/dynamics.hpp"
#include "qst/model.hpp"
#include "qst/regimes.hpp"
#include "qst/spectral.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "two-impurity quantum channel model: exact dynamics, spectral "
            "analysis, and regime predictors";

  py::register_exception<qst::validation_error>(m, "ValidationError",
                                                PyExc_ValueError);
  py::register_exception<qst::numerical_error>(m, "NumericalError",
                                               PyExc_RuntimeError);
  py::register_exception<qst::regime_error>(m, "RegimeError", PyExc_ValueError);

  py::class_<qst::ModelParams>(m, "ModelParams")
      .def(py::init([](int n, int l, double g, double omega) {
             qst::ModelParams p{n, l, g, omega};
             p.validate();
             return p;
           }),
           py::arg("n_modes"), py::arg("distance"), py::arg("coupling"),
           py::arg("impurity_energy"))
      .def_readonly("n_modes", &qst::ModelParams::n_modes)
      .def_readonly("distance", &qst::ModelParams::distance)
      .def_readonly("coupling", &qst::ModelParams::coupling)
      .def_readonly("impurity_energy", &qst::ModelParams::impurity_energy)
      .def("__repr__", [](const qst::ModelParams& p) {
        return "ModelParams(n_modes=" + std::to_string(p.n_modes) +
               ", distance=" + std::to_string(p.distance) +
               ", coupling=" + std::to_string(p.coupling) +
               ", impurity_energy=" + std::to_string(p.impurity_energy) + ")";
      });

  py::class_<qst::ModeGrid>(m, "ModeGrid")
      .def_readonly("wavenumbers", &qst::ModeGrid::wavenumbers)
      .def_readonly("energies", &qst::ModeGrid::energies);

  m.def("mode_grid", &qst::mode_grid, py::arg("params"));
  m.def(
      "build_hamiltonian",
      [](const qst::ModelParams& p) { return qst::build_hamiltonian(p).matrix; },
      py::arg("params"), "single-excitation Hamiltonian, basis [A, B, k_0...]");

  py::class_<qst::Spectrum>(m, "Spectrum")
      .def_readonly("eigenvalues", &qst::Spectrum::eigenvalues)
      .def_readonly("eigenvectors", &qst::Spectrum::eigenvectors);

  m.def(
      "eigendecompose",
      [](const qst::ModelParams& p) {
        return qst::eigendecompose(qst::build_hamiltonian(p));
      },
      py::arg("params"));

  py::class_<qst::Trajectory>(m, "Trajectory")
      .def_readonly("times", &qst::Trajectory::times)
      .def_readonly("p_a", &qst::Trajectory::p_a)
      .def_readonly("p_b", &qst::Trajectory::p_b)
      .def_readonly("p_chan", &qst::Trajectory::p_chan)
      .def_property_readonly("amplitudes", [](const qst::Trajectory& t) -> py::object {
        if (!t.amplitudes) return py::none();
        return py::cast(*t.amplitudes);
      });

  m.def(
      "evolve",
      [](const qst::ModelParams& p, const std::vector<double>& times,
         py::object initial, bool store_amplitudes) {
        if (initial.is_none()) {
          return qst::evolve(p, qst::SingleExcitationState::on_a(p), times,
                             store_amplitudes);
        }
        Eigen::VectorXcd amps = initial.cast<Eigen::VectorXcd>();
        return qst::evolve(p, qst::SingleExcitationState(std::move(amps)), times,
                           store_amplitudes);
      },
      py::arg("params"), py::arg("times"), py::arg("initial") = py::none(),
      py::arg("store_amplitudes") = false,
      "exact evolution; initial defaults to the unit vector on impurity A");

  m.def(
      "occupation_probabilities",
      [](const Eigen::VectorXcd& amps) {
        const auto occ = qst::occupation_probabilities(
            qst::SingleExcitationState(amps));
        return py::make_tuple(occ.p_a, occ.p_b, occ.p_chan);
      },
      py::arg("state"));

  m.def(
      "lambda_sum",
      [](int d, std::complex<double> omega, const qst::ModelParams& p) {
        return qst::lambda_sum(d, omega, p);
      },
      py::arg("d"), py::arg("omega"), py::arg("params"));
  m.def("lambda_closed", &qst::lambda_closed, py::arg("d"), py::arg("omega"),
        py::arg("params"));
  m.def("d_pm", &qst::d_pm, py::arg("omega"), py::arg("params"));
  m.def("d_pm_gamma", &qst::d_pm_gamma, py::arg("gamma"), py::arg("params"));

  py::enum_<qst::Parity>(m, "Parity")
      .value("plus", qst::Parity::plus)
      .value("minus", qst::Parity::minus);

  py::class_<qst::Pole>(m, "Pole")
      .def_readonly("omega", &qst::Pole::omega)
      .def_readonly("parity", &qst::Pole::parity)
      .def_readonly("residue_weight", &qst::Pole::residue_weight);

  py::class_<qst::PoleSet>(m, "PoleSet")
      .def_readonly("poles", &qst::PoleSet::poles)
      .def("completeness", &qst::PoleSet::completeness);

  m.def("find_poles", &qst::find_poles, py::arg("params"));
  m.def("reconstruct_amplitudes", &qst::reconstruct_amplitudes, py::arg("poles"),
        py::arg("times"));

  py::enum_<qst::Regime>(m, "Regime")
      .value("WeakOffResonance", qst::Regime::WeakOffResonance)
      .value("WeakResonantDiscrete", qst::Regime::WeakResonantDiscrete)
      .value("WeakResonantDiffusive", qst::Regime::WeakResonantDiffusive)
      .value("StrongCoupling", qst::Regime::StrongCoupling)
      .value("Crossover", qst::Regime::Crossover);

  py::class_<qst::RabiPrediction>(m, "RabiPrediction")
      .def_readonly("omega_plus", &qst::RabiPrediction::omega_plus)
      .def_readonly("omega_minus", &qst::RabiPrediction::omega_minus)
      .def_readonly("omega_plus_continuum", &qst::RabiPrediction::omega_plus_continuum)
      .def_readonly("omega_minus_continuum",
                    &qst::RabiPrediction::omega_minus_continuum)
      .def("p_a", &qst::RabiPrediction::p_a)
      .def("p_b", &qst::RabiPrediction::p_b)
      .def("rabi_period", &qst::RabiPrediction::rabi_period);

  py::enum_<qst::ResonantFlag>(m, "ResonantFlag")
      .value("discrete", qst::ResonantFlag::discrete)
      .value("diffusive", qst::ResonantFlag::diffusive);

  py::class_<qst::ResonantPrediction>(m, "ResonantPrediction")
      .def_readonly("gamma_big", &qst::ResonantPrediction::gamma_big)
      .def_readonly("delta_roots", &qst::ResonantPrediction::delta_roots)
      .def_readonly("delta_closed", &qst::ResonantPrediction::delta_closed)
      .def_readonly("flag", &qst::ResonantPrediction::flag)
      .def_readonly("t_star", &qst::ResonantPrediction::t_star)
      .def("p_a", &qst::ResonantPrediction::p_a)
      .def("p_b", &qst::ResonantPrediction::p_b);

  py::class_<qst::StrongPrediction>(m, "StrongPrediction")
      .def_readonly("fast_freq", &qst::StrongPrediction::fast_freq)
      .def_readonly("slow_freq", &qst::StrongPrediction::slow_freq)
      .def("p_a", &qst::StrongPrediction::p_a)
      .def("p_b", &qst::StrongPrediction::p_b)
      .def("channel_weight", &qst::StrongPrediction::channel_weight);

  py::class_<qst::ClassifierThresholds>(m, "ClassifierThresholds")
      .def(py::init<>())
      .def_readwrite("discrete", &qst::ClassifierThresholds::discrete)
      .def_readwrite("diffusive", &qst::ClassifierThresholds::diffusive)
      .def_readwrite("strong", &qst::ClassifierThresholds::strong)
      .def_readwrite("resonance_tol", &qst::ClassifierThresholds::resonance_tol);

  py::class_<qst::RegimeReport>(m, "RegimeReport")
      .def_readonly("regime", &qst::RegimeReport::regime)
      .def_readonly("g_sqrt_n", &qst::RegimeReport::g_sqrt_n)
      .def_readonly("abs_omega", &qst::RegimeReport::abs_omega)
      .def_readonly("resonance_offset", &qst::RegimeReport::resonance_offset);

  m.def("predict_weak_offres", &qst::predict_weak_offres, py::arg("params"));
  m.def("predict_weak_resonant", &qst::predict_weak_resonant, py::arg("params"),
        py::arg("resonance_tolerance") = 1e-9);
  m.def("predict_strong", &qst::predict_strong, py::arg("params"));
  m.def("classify_regime", &qst::classify_regime, py::arg("params"),
        py::arg("thresholds") = qst::ClassifierThresholds{});

  py::class_<qst::TransferMetrics>(m, "TransferMetrics")
      .def_readonly("max_p_b", &qst::TransferMetrics::max_p_b)
      .def_readonly("t_at_max", &qst::TransferMetrics::t_at_max)
      .def("p_b_at", &qst::TransferMetrics::p_b_at);

  m.def("transfer_metrics", &qst::transfer_metrics, py::arg("traj"));
}

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dicke/classify.hpp"
#include "dicke/dynamics.hpp"
#include "dicke/eigensolver.hpp"
#include "dicke/entanglement.hpp"
#include "dicke/hamiltonian.hpp"
#include "dicke/recurrence.hpp"
#include "dicke/sweep.hpp"
#include "dicke/version.hpp"

namespace py = pybind11;
using namespace dicke;

PYBIND11_MODULE(_dicke, m) {
    m.doc() = "Spectrum, entanglement structure, and trapping states of the "
              "two-qubit Dicke model and its ion-trap variant.";
    m.attr("__version__") = kVersion;

    py::enum_<Parity>(m, "Parity")
        .value("positive", Parity::positive)
        .value("negative", Parity::negative);
    py::enum_<Model>(m, "Model")
        .value("dicke", Model::dicke)
        .value("variant", Model::variant);
    py::enum_<QubitLabel>(m, "QubitLabel")
        .value("ee", QubitLabel::ee)
        .value("gg", QubitLabel::gg)
        .value("ge", QubitLabel::ge)
        .value("eg", QubitLabel::eg);
    py::enum_<TrapKind>(m, "TrapKind")
        .value("singlet_pairs", TrapKind::singlet_pairs)
        .value("phi_minus_pairs", TrapKind::phi_minus_pairs);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("omega0", &ModelParams::omega0)
        .def_readwrite("g", &ModelParams::g)
        .def_readwrite("drive_x", &ModelParams::drive_x)
        .def_readwrite("drive_y", &ModelParams::drive_y)
        .def_readwrite("dipole", &ModelParams::dipole)
        .def_readwrite("model", &ModelParams::model);

    py::class_<BathMode>(m, "BathMode")
        .def(py::init<double, double, int>(), py::arg("frequency") = 1.0,
             py::arg("coupling") = 1.0, py::arg("truncation") = 2)
        .def_readwrite("frequency", &BathMode::frequency)
        .def_readwrite("coupling", &BathMode::coupling)
        .def_readwrite("truncation", &BathMode::truncation);

    py::class_<EnvironmentParams>(m, "EnvironmentParams")
        .def(py::init<>())
        .def_readwrite("qubit_modes", &EnvironmentParams::qubit_modes)
        .def_readwrite("field_modes", &EnvironmentParams::field_modes);

    py::class_<BasisState>(m, "BasisState")
        .def_readonly("photon", &BasisState::photon)
        .def_readonly("label", &BasisState::label);

    py::class_<ParityBasis>(m, "ParityBasis")
        .def_static("enumerate", &ParityBasis::enumerate, py::arg("parity"),
                    py::arg("size"))
        .def_property_readonly("size", &ParityBasis::size)
        .def_property_readonly("parity", &ParityBasis::parity)
        .def_property_readonly("rung_count", &ParityBasis::rung_count)
        .def_property_readonly("max_photon", &ParityBasis::max_photon)
        .def("state", &ParityBasis::state, py::return_value_policy::copy)
        .def("index_of", &ParityBasis::index_of);

    m.def("to_bell", [](double ge, double eg) { return to_bell(ge, eg); });

    m.def(
        "build_parity_hamiltonian",
        [](const ModelParams& p, const ParityBasis& b) {
            return build_parity_hamiltonian(p, b).to_dense();
        },
        "Parity-subspace Hamiltonian, returned dense", py::arg("params"),
        py::arg("basis"));
    m.def("build_dense_hamiltonian", &build_dense_hamiltonian, py::arg("params"),
          py::arg("photon_levels"), py::arg("n_qubits") = 2,
          py::arg("matching") = Matching{});
    m.def("build_composite_hamiltonian", &build_composite_hamiltonian,
          py::arg("params"), py::arg("env"), py::arg("photon_levels"));

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("eigenvectors", &Spectrum::eigenvectors);

    m.def("eigh", [](const Eigen::MatrixXd& h) {
        const Spectrum s = eigh(h);
        return py::make_tuple(s.eigenvalues, s.eigenvectors);
    });

    py::class_<ConvergeOptions>(m, "ConvergeOptions")
        .def(py::init<>())
        .def_readwrite("tol_lambda", &ConvergeOptions::tol_lambda)
        .def_readwrite("tol_vector", &ConvergeOptions::tol_vector)
        .def_readwrite("s_start", &ConvergeOptions::s_start)
        .def_readwrite("s_step", &ConvergeOptions::s_step)
        .def_readwrite("s_max", &ConvergeOptions::s_max);

    py::class_<ConvergedSpectrum>(m, "ConvergedSpectrum")
        .def_readonly("spectrum", &ConvergedSpectrum::spectrum)
        .def_readonly("parity", &ConvergedSpectrum::parity)
        .def_readonly("n_requested", &ConvergedSpectrum::n_requested)
        .def_readonly("n_converged", &ConvergedSpectrum::n_converged)
        .def_readonly("delta_lambda", &ConvergedSpectrum::delta_lambda)
        .def_readonly("delta_vector", &ConvergedSpectrum::delta_vector)
        .def_readonly("final_size", &ConvergedSpectrum::final_size)
        .def_readonly("converged", &ConvergedSpectrum::converged)
        .def("basis", &ConvergedSpectrum::basis);

    m.def("converge", &converge, py::arg("params"), py::arg("parity"),
          py::arg("n_states"), py::arg("options") = ConvergeOptions{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<XState>(m, "XState")
        .def_readonly("r_ee", &XState::r_ee)
        .def_readonly("r_psi", &XState::r_psi)
        .def_readonly("r_gg", &XState::r_gg)
        .def_readonly("r_eg", &XState::r_eg)
        .def_readonly("r_sing", &XState::r_sing)
        .def("to_density_matrix", &XState::to_density_matrix);

    m.def("reduce_to_qubits", &reduce_to_qubits);
    m.def("concurrence", py::overload_cast<const XState&>(&concurrence));
    m.def("concurrence_bruteforce", &concurrence_bruteforce);
    m.def("mutual_information",
          py::overload_cast<const Eigen::Matrix4cd&>(&mutual_information));
    m.def("mandel_q", [](const Eigen::VectorXd& v, const ParityBasis& b) {
        return mandel_q(v, b);
    });

    py::class_<SingletEigenpair>(m, "SingletEigenpair")
        .def_readonly("photon", &SingletEigenpair::photon)
        .def_readonly("eigenvalue", &SingletEigenpair::eigenvalue)
        .def_readonly("parity", &SingletEigenpair::parity)
        .def_readonly("state", &SingletEigenpair::state)
        .def_readonly("residual", &SingletEigenpair::residual);

    m.def("singlet_eigenpair", &singlet_eigenpair, py::arg("n"), py::arg("params"),
          py::arg("verify_size") = 0);
    m.def("variant_trapped_eigenpair", &variant_trapped_eigenpair, py::arg("n"),
          py::arg("params"), py::arg("verify_size") = 0);

    py::enum_<RecurrenceStatus>(m, "RecurrenceStatus")
        .value("ok", RecurrenceStatus::ok)
        .value("singlet_input", RecurrenceStatus::singlet_input)
        .value("pole_proximate", RecurrenceStatus::pole_proximate)
        .value("coupling_off", RecurrenceStatus::coupling_off);

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("status", &ResidualReport::status)
        .def_readonly("residual", &ResidualReport::residual);

    m.def("recurrence_residual", &recurrence_residual);
    m.def("reconstruct_from_f1", &reconstruct_from_f1);
    m.def("extract_f1", &extract_f1);

    m.def("evolve", &evolve, py::arg("hamiltonian"), py::arg("psi0"),
          py::arg("times"), py::call_guard<py::gil_scoped_release>());

    py::class_<FidelityPoint>(m, "FidelityPoint")
        .def_readonly("t", &FidelityPoint::t)
        .def_readonly("qubit_fidelity", &FidelityPoint::qubit_fidelity)
        .def_readonly("field_mean_n", &FidelityPoint::field_mean_n)
        .def_readonly("qubit_purity", &FidelityPoint::qubit_purity);

    py::class_<TrappingState>(m, "TrappingState")
        .def(py::init<>())
        .def_readwrite("photon", &TrappingState::photon)
        .def_readwrite("qubit_mode_occupations", &TrappingState::qubit_mode_occupations)
        .def_readwrite("field_mode_occupations", &TrappingState::field_mode_occupations)
        .def_readwrite("kind", &TrappingState::kind)
        .def_readwrite("field_alpha", &TrappingState::field_alpha);

    m.def("trapping_fidelity", &trapping_fidelity, py::arg("params"), py::arg("env"),
          py::arg("trap"), py::arg("times"), py::arg("photon_levels") = 8,
          py::call_guard<py::gil_scoped_release>());

    py::class_<MultiqubitTrapReport>(m, "MultiqubitTrapReport")
        .def_readonly("eigenvalue", &MultiqubitTrapReport::eigenvalue)
        .def_readonly("eigen_residual", &MultiqubitTrapReport::eigen_residual)
        .def_readonly("spin_norms", &MultiqubitTrapReport::spin_norms);

    m.def("verify_multiqubit_traps", &verify_multiqubit_traps, py::arg("n_qubits"),
          py::arg("params"), py::arg("matching") = Matching{}, py::arg("photon") = 1,
          py::arg("photon_levels") = 4);
    m.def("multiqubit_trap_state", &multiqubit_trap_state);
    m.def("all_matchings", &all_matchings);
}

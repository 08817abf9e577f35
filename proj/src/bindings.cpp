// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition
//
// pybind11 bindings for the main operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aepd/decomp.hpp"
#include "aepd/farfield.hpp"
#include "aepd/geometry.hpp"
#include "aepd/metrics.hpp"
#include "aepd/mom.hpp"
#include "aepd/runner.hpp"
#include "aepd/scenario.hpp"

namespace py = pybind11;
using namespace aepd;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Active element pattern estimation for planar arrays via directional "
              "decomposition";

    py::register_exception<InvalidParameterError>(m, "InvalidParameterError", PyExc_ValueError);
    py::register_exception<NumericalFailureError>(m, "NumericalFailureError",
                                                  PyExc_ArithmeticError);
    py::register_exception<SizeGuardError>(m, "SizeGuardError", PyExc_RuntimeError);

    py::enum_<Axis>(m, "Axis").value("U", Axis::U).value("V", Axis::V);

    py::enum_<CurrentContext>(m, "CurrentContext")
        .value("ISOLATED", CurrentContext::Isolated)
        .value("ARRAY_1D_U", CurrentContext::Array1dU)
        .value("ARRAY_1D_V", CurrentContext::Array1dV)
        .value("ARRAY_2D", CurrentContext::Array2d)
        .value("ESTIMATED_2D", CurrentContext::Estimated2d);

    py::class_<ArrayLattice>(m, "ArrayLattice")
        .def_readonly("nx", &ArrayLattice::nx)
        .def_readonly("ny", &ArrayLattice::ny)
        .def_readonly("dx_wavelengths", &ArrayLattice::dx_wavelengths)
        .def_readonly("dy_wavelengths", &ArrayLattice::dy_wavelengths)
        .def_readonly("frequency_hz", &ArrayLattice::frequency_hz)
        .def_property_readonly("element_positions",
                               [](const ArrayLattice& lat) {
                                   Eigen::MatrixXd pos(lat.port_count(), 3);
                                   for (int k = 0; k < lat.port_count(); ++k)
                                       pos.row(k) = lat.element_positions[k].transpose();
                                   return pos;
                               })
        .def_property_readonly("wavelength", &ArrayLattice::wavelength)
        .def_property_readonly("port_count", &ArrayLattice::port_count);

    py::class_<ElementMesh>(m, "ElementMesh")
        .def_readonly("feed_index", &ElementMesh::feed_index)
        .def_property_readonly("size", &ElementMesh::size)
        .def_property_readonly("segment_midpoints", [](const ElementMesh& e) {
            Eigen::MatrixXd mid(e.size(), 3);
            for (int s = 0; s < e.size(); ++s)
                mid.row(s) = e.segments[s].midpoint.transpose();
            return mid;
        });

    py::class_<PortTermination>(m, "PortTermination")
        .def(py::init([](cplx z_load, double v_source) {
                 PortTermination t;
                 t.z_load = z_load;
                 t.v_source = v_source;
                 return t;
             }),
             py::arg("z_load") = cplx(50.0, 0.0), py::arg("v_source") = 1.0)
        .def_readwrite("z_load", &PortTermination::z_load)
        .def_readwrite("v_source", &PortTermination::v_source);

    py::class_<CurrentDistribution>(m, "CurrentDistribution")
        .def_readonly("values", &CurrentDistribution::values)
        .def_readonly("n_elements", &CurrentDistribution::n_elements)
        .def_readonly("segments_per_element", &CurrentDistribution::segments_per_element)
        .def_readonly("excited_port", &CurrentDistribution::excited_port)
        .def_readonly("context", &CurrentDistribution::context);

    py::class_<ImpedanceMatrix>(m, "ImpedanceMatrix")
        .def_readonly("z", &ImpedanceMatrix::z)
        .def_readonly("frequency_hz", &ImpedanceMatrix::frequency_hz);

    py::class_<AxisTransferSet>(m, "AxisTransferSet")
        .def_readonly("axis", &AxisTransferSet::axis)
        .def_readonly("n", &AxisTransferSet::n)
        .def_readonly("m", &AxisTransferSet::m)
        .def_readonly("per_mesh", &AxisTransferSet::per_mesh);

    py::class_<TransferMatrix2D>(m, "TransferMatrix2D")
        .def_readonly("nx", &TransferMatrix2D::nx)
        .def_readonly("ny", &TransferMatrix2D::ny)
        .def_readonly("m", &TransferMatrix2D::m)
        .def_readonly("per_mesh", &TransferMatrix2D::per_mesh);

    py::class_<AngleSample>(m, "AngleSample")
        .def(py::init([](double theta, double phi) { return AngleSample{theta, phi}; }),
             py::arg("theta_deg"), py::arg("phi_deg"))
        .def_readonly("theta_deg", &AngleSample::theta_deg)
        .def_readonly("phi_deg", &AngleSample::phi_deg);

    py::class_<AngleGrid>(m, "AngleGrid")
        .def_readonly("samples", &AngleGrid::samples)
        .def_property_readonly("size", &AngleGrid::size)
        .def_static("theta_sweep", &AngleGrid::theta_sweep, py::arg("theta_min_deg"),
                    py::arg("theta_max_deg"), py::arg("step_deg"), py::arg("phi_cuts_deg"));

    py::class_<FarFieldPattern>(m, "FarFieldPattern")
        .def_readonly("grid", &FarFieldPattern::grid)
        .def_readonly("e_theta", &FarFieldPattern::e_theta)
        .def_readonly("e_phi", &FarFieldPattern::e_phi)
        .def_readonly("frequency_hz", &FarFieldPattern::frequency_hz)
        .def_readonly("peak_normalized", &FarFieldPattern::peak_normalized);

    py::class_<CurrentSpectrum>(m, "CurrentSpectrum")
        .def_readonly("nx", &CurrentSpectrum::nx)
        .def_readonly("ny", &CurrentSpectrum::ny)
        .def_readonly("db", &CurrentSpectrum::db);

    py::class_<MseReport>(m, "MseReport")
        .def_readonly("steering_theta_deg", &MseReport::steering_theta_deg)
        .def_readonly("steering_phi_deg", &MseReport::steering_phi_deg)
        .def_readonly("mse_db2", &MseReport::mse_db2)
        .def_readonly("region_samples", &MseReport::region_samples)
        .def_readonly("region_theta_min_deg", &MseReport::region_theta_min_deg)
        .def_readonly("region_theta_max_deg", &MseReport::region_theta_max_deg);

    // geometry
    m.def("build_lattice", &build_lattice, py::arg("nx"), py::arg("ny"),
          py::arg("dx_wavelengths"), py::arg("dy_wavelengths"), py::arg("frequency_hz"));
    m.def("port_index", &port_index, py::arg("u"), py::arg("v"), py::arg("lattice"));
    m.def("inverse_port_index", &inverse_port_index, py::arg("k"), py::arg("lattice"));
    m.def("discretize_dipole", &discretize_dipole, py::arg("length_m"), py::arg("radius_m"),
          py::arg("m"));

    // mom
    m.def("fill_impedance_matrix",
          [](const ArrayLattice& lat, const ElementMesh& element) {
              return fill_impedance_matrix(place_elements(element, lat.element_positions),
                                           lat.frequency_hz);
          },
          py::arg("lattice"), py::arg("element"));
    m.def("solve_isolated", &solve_isolated, py::arg("element"), py::arg("frequency_hz"),
          py::arg("v_source") = 1.0);
    m.def("solve_1d_array", &solve_1d_array, py::arg("axis"), py::arg("lattice"),
          py::arg("element"), py::arg("termination"));
    m.def("solve_2d_oracle", &solve_2d_oracle, py::arg("lattice"), py::arg("element"),
          py::arg("termination"));

    // decomp
    m.def("build_axis_transfer", &build_axis_transfer, py::arg("j_iso"), py::arg("j_axis"),
          py::arg("axis") = Axis::U);
    m.def("kron_expand", &kron_expand, py::arg("cu"), py::arg("cv"));
    m.def("estimate_currents_2d", &estimate_currents_2d, py::arg("j_iso"), py::arg("c2d"),
          py::arg("port_k"));
    m.def("estimate_all_ports", &estimate_all_ports, py::arg("j_iso"), py::arg("cu"),
          py::arg("cv"));

    // farfield
    m.def("radiate",
          [](const CurrentDistribution& currents, const ArrayLattice& lat,
             const ElementMesh& element, const AngleGrid& grid) {
              return radiate(currents, place_elements(element, lat.element_positions), grid,
                             lat.frequency_hz);
          },
          py::arg("currents"), py::arg("lattice"), py::arg("element"), py::arg("grid"));
    m.def("radiate_isolated",
          [](const CurrentDistribution& currents, const ElementMesh& element,
             const AngleGrid& grid, double frequency_hz) {
              return radiate(currents, {element}, grid, frequency_hz);
          },
          py::arg("currents"), py::arg("element"), py::arg("grid"), py::arg("frequency_hz"));
    m.def("peak_normalize", &peak_normalize, py::arg("pattern"));
    m.def("normalized_db", &normalized_db, py::arg("pattern"), py::arg("floor_db") = kDbFloor);
    m.def("synthesize", &synthesize, py::arg("aeps"), py::arg("weights"));
    m.def("steering_weights", &steering_weights, py::arg("lattice"), py::arg("theta0_deg"),
          py::arg("phi0_deg"), py::arg("taper") = Eigen::VectorXd());
    m.def("hann_taper", &hann_taper, py::arg("lattice"));
    m.def("pmm_isolated", &pmm_isolated, py::arg("isolated_pattern"), py::arg("lattice"),
          py::arg("weights"));

    // metrics
    m.def("current_spectrum", &current_spectrum, py::arg("currents"), py::arg("nx"),
          py::arg("ny"));
    m.def("main_lobe_mse", &main_lobe_mse, py::arg("reference"), py::arg("test"),
          py::arg("theta0_deg"), py::arg("phi0_deg"));
}

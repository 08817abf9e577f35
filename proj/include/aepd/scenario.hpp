// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#ifndef AEPD_SCENARIO_HPP
#define AEPD_SCENARIO_HPP

#include <string>
#include <utility>
#include <vector>

#include "aepd/geometry.hpp"
#include "aepd/mom.hpp"
#include "aepd/types.hpp"

namespace aepd {

/// Fully resolved, validated run description. Parsed from a plain key = value
/// config file; every run is deterministic given one of these.
struct Scenario {
    int nx = 3;
    int ny = 3;
    double dx_wavelengths = 0.14;
    double dy_wavelengths = 0.12;
    double frequency_hz = 10e9;
    double dipole_length_wavelengths = 0.47;
    double wire_radius_wavelengths = 0.001;
    int segments_per_element = 11;
    cplx load_impedance_ohms{50.0, 0.0};

    std::vector<double> steer_thetas_deg{0.0};
    double steer_phi_deg = 0.0;
    std::string amplitude_taper = "none"; // none | hann
    double grid_step_deg = 0.5;
    int uv_grid_points = 101;
    std::string output_dir = "out";
    std::string mode; // optional in config; the CLI subcommand decides

    std::vector<std::pair<int, int>> bench_sizes{{3, 3}, {5, 4}, {7, 5}, {9, 7}};
    int bench_repeats = 2;

    ArrayLattice lattice() const;
    ElementMesh element() const;
    PortTermination termination() const;
};

/// Parses and validates a config file; throws InvalidParameterError with a
/// field-level message on any problem.
Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text);

} // namespace aepd

#endif // AEPD_SCENARIO_HPP

// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#ifndef AEPD_RUNNER_HPP
#define AEPD_RUNNER_HPP

#include <string>
#include <vector>

#include "aepd/decomp.hpp"
#include "aepd/farfield.hpp"
#include "aepd/metrics.hpp"
#include "aepd/scenario.hpp"

namespace aepd {

struct RunOptions {
    std::string out_dir;             // empty -> scenario.output_dir
    bool dump_z = false;             // debug dumps of Z, currents, transfer magnitudes
    double grid_step_deg = 0.0;      // 0 -> scenario.grid_step_deg
};

/// Everything the decomposed (proposed) path produces for one scenario.
struct DecompositionResult {
    CurrentDistribution j_iso;
    std::vector<CurrentDistribution> j_axis_u;
    std::vector<CurrentDistribution> j_axis_v;
    AxisTransferSet cu;
    AxisTransferSet cv;
    std::vector<CurrentDistribution> estimated; // one per port
};

DecompositionResult run_decomposition(const Scenario& sc);

/// Per-port comparison numbers between oracle and estimated AEPs.
struct PortError {
    int port = 0;
    double max_mag_err_db = 0.0;
    double max_phase_err_deg = 0.0;
};

struct CompareSummary {
    std::vector<PortError> port_errors;
    double spectrum_max_pixel_dev_db = 0.0;
    std::vector<int> six_ports; // Fig.-4-style selection, 1-based
};

/// Ports at the corner/edge/center lattice positions used for the six-port
/// AEP comparison.
std::vector<int> six_port_selection(const ArrayLattice& lattice);

void run_oracle(const Scenario& sc, const RunOptions& opt);
void run_estimate(const Scenario& sc, const RunOptions& opt);
CompareSummary run_compare(const Scenario& sc, const RunOptions& opt);
void run_synthesize(const Scenario& sc, const RunOptions& opt);
ScalingReport run_bench(const Scenario& sc, const RunOptions& opt);

} // namespace aepd

#endif // AEPD_RUNNER_HPP

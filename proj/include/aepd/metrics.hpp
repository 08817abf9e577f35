// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#ifndef AEPD_METRICS_HPP
#define AEPD_METRICS_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aepd/decomp.hpp"
#include "aepd/farfield.hpp"
#include "aepd/geometry.hpp"
#include "aepd/mom.hpp"

namespace aepd {

/// Per-element current magnitude averaged over segments and over all port
/// excitations, in dB normalized to the grid peak. grid(u-1, v-1) layout.
struct CurrentSpectrum {
    int nx = 0;
    int ny = 0;
    Eigen::MatrixXd db;
};

CurrentSpectrum current_spectrum(const std::vector<CurrentDistribution>& currents, int nx, int ny);

struct MseReport {
    double steering_theta_deg = 0.0;
    double steering_phi_deg = 0.0;
    double mse_db2 = 0.0;
    int region_samples = 0;
    double region_theta_min_deg = 0.0;
    double region_theta_max_deg = 0.0;
    std::string method;
};

/// Mean squared error of peak-normalized dB magnitudes over the main-lobe
/// region of the reference pattern in the phi = phi0 cut. The region is the
/// reference's strongest lobe bracketed by its first local minima, with a
/// +/-10 degree fallback window when a side is not bracketed.
MseReport main_lobe_mse(const FarFieldPattern& reference, const FarFieldPattern& test,
                        double theta0_deg, double phi0_deg);

/// Same metric over an explicit set of grid sample indices.
double mse_over_region(const FarFieldPattern& reference, const FarFieldPattern& test,
                       const std::vector<int>& region);

struct ScalingSample {
    int nx = 0;
    int ny = 0;
    long unknowns_decomp = 0;
    long unknowns_oracle = 0;
    double t_fill_decomp_ms = 0.0;
    double t_solve_decomp_ms = 0.0; // factorization + solves + decomposition algebra
    double t_decomp_ms = 0.0;
    double t_fill_oracle_ms = 0.0;
    double t_solve_oracle_ms = 0.0;
    double t_oracle_ms = 0.0;
    double speedup = 0.0;
};

struct ScalingReport {
    std::vector<ScalingSample> samples;
    double decomp_exponent = 0.0; // log-log slope of total time vs nx*ny
    double oracle_exponent = 0.0;
};

struct BenchParams {
    double dx_wavelengths = 0.14;
    double dy_wavelengths = 0.12;
    double frequency_hz = 10e9;
    PortTermination termination;
    int repeats = 2; // min-of-k after one discarded warm-up
};

/// Wall-clock comparison of the decomposed path (two 1-D solves + transfer
/// algebra) against the full 2-D oracle path over a ladder of array sizes.
ScalingReport scaling_benchmark(const std::vector<std::pair<int, int>>& sizes,
                                const ElementMesh& element, const BenchParams& params);

} // namespace aepd

#endif // AEPD_METRICS_HPP

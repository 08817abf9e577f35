// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#ifndef AEPD_DECOMP_HPP
#define AEPD_DECOMP_HPP

#include <vector>

#include <Eigen/Dense>

#include "aepd/geometry.hpp"
#include "aepd/mom.hpp"
#include "aepd/types.hpp"

namespace aepd {

// Relative threshold below which an isolated-element current is considered
// degenerate for the per-mesh normalization.
inline constexpr double kDivisionGuard = 1e-9;

/// Per-mesh coupling coefficients of one 1-D axis array.
///
/// per_mesh[s](i, k) relates the current on segment s of element i (0-based)
/// to the excitation of port k+1, normalized by the isolated-element current
/// on the same segment. The isolated-current matrix is taken as diagonal, so
/// the normalization is a per-segment scalar division.
struct AxisTransferSet {
    Axis axis = Axis::U;
    int n = 0; // axis length
    int m = 0; // segments per element
    std::vector<Eigen::MatrixXcd> per_mesh;
};

/// Full 2-D transfer matrix, one (nx*ny) x (nx*ny) block per mesh segment,
/// row/column order u-major to match the port index map.
struct TransferMatrix2D {
    int nx = 0;
    int ny = 0;
    int m = 0;
    std::vector<Eigen::MatrixXcd> per_mesh;
};

AxisTransferSet build_axis_transfer(const CurrentDistribution& j_iso,
                                    const std::vector<CurrentDistribution>& j_axis,
                                    Axis axis = Axis::U);

TransferMatrix2D kron_expand(const AxisTransferSet& cu, const AxisTransferSet& cv);

CurrentDistribution estimate_currents_2d(const CurrentDistribution& j_iso,
                                         const TransferMatrix2D& c2d, int port_k);

/// All-ports estimation without materializing the Kronecker blocks.
std::vector<CurrentDistribution> estimate_all_ports(const CurrentDistribution& j_iso,
                                                    const AxisTransferSet& cu,
                                                    const AxisTransferSet& cv);

} // namespace aepd

#endif // AEPD_DECOMP_HPP

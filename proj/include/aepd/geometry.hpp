// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#ifndef AEPD_GEOMETRY_HPP
#define AEPD_GEOMETRY_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aepd/types.hpp"

namespace aepd {

/// Rectangular nx-by-ny lattice of element positions on the z = 0 plane.
/// Ports are numbered u-major: k = (u-1)*ny + v, u in [1,nx], v in [1,ny].
struct ArrayLattice {
    int nx = 0;
    int ny = 0;
    double dx_wavelengths = 0.0;
    double dy_wavelengths = 0.0;
    double frequency_hz = 0.0;
    std::vector<Eigen::Vector3d> element_positions; // meters, length nx*ny

    double wavelength() const { return kSpeedOfLight / frequency_hz; }
    int port_count() const { return nx * ny; }
};

ArrayLattice build_lattice(int nx, int ny, double dx_wavelengths, double dy_wavelengths,
                           double frequency_hz);

/// k = (u-1)*ny + v, all 1-based.
int port_index(int u, int v, const ArrayLattice& lattice);
std::pair<int, int> inverse_port_index(int k, const ArrayLattice& lattice);

struct WireSegment {
    Eigen::Vector3d midpoint; // meters
    Eigen::Vector3d tangent;  // unit vector
    double length = 0.0;      // meters
    double radius = 0.0;      // meters

    Eigen::Vector3d end_lo() const { return midpoint - 0.5 * length * tangent; }
    Eigen::Vector3d end_hi() const { return midpoint + 0.5 * length * tangent; }
};

/// One antenna element discretized into thin-wire segments with a single
/// delta-gap feed segment.
struct ElementMesh {
    std::vector<WireSegment> segments;
    int feed_index = -1; // 0-based segment index

    int size() const { return static_cast<int>(segments.size()); }
};

/// Uniformly split z-directed center-fed dipole centered at the origin.
/// m must be odd so the feed lands on the center segment.
ElementMesh discretize_dipole(double length_m, double radius_m, int m);

/// Copies of `element` translated to each lattice position (port order).
std::vector<ElementMesh> place_elements(const ElementMesh& element,
                                        const std::vector<Eigen::Vector3d>& positions);

} // namespace aepd

#endif // AEPD_GEOMETRY_HPP

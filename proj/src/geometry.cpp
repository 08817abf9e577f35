// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#include "aepd/geometry.hpp"

#include <string>

namespace aepd {

ArrayLattice build_lattice(int nx, int ny, double dx_wavelengths, double dy_wavelengths,
                           double frequency_hz)
{
    if (nx < 1 || ny < 1)
        throw InvalidParameterError("build_lattice: element counts must be >= 1 (got " +
                                    std::to_string(nx) + "x" + std::to_string(ny) + ")");
    if (dx_wavelengths <= 0.0 || dy_wavelengths <= 0.0)
        throw InvalidParameterError("build_lattice: spacings must be positive");
    if (frequency_hz <= 0.0)
        throw InvalidParameterError("build_lattice: frequency must be positive");

    ArrayLattice lattice;
    lattice.nx = nx;
    lattice.ny = ny;
    lattice.dx_wavelengths = dx_wavelengths;
    lattice.dy_wavelengths = dy_wavelengths;
    lattice.frequency_hz = frequency_hz;

    const double lam = lattice.wavelength();
    lattice.element_positions.reserve(static_cast<size_t>(nx) * ny);
    for (int u = 1; u <= nx; ++u)
        for (int v = 1; v <= ny; ++v)
            lattice.element_positions.emplace_back((u - 1) * dx_wavelengths * lam,
                                                   (v - 1) * dy_wavelengths * lam, 0.0);
    return lattice;
}

int port_index(int u, int v, const ArrayLattice& lattice)
{
    if (u < 1 || u > lattice.nx || v < 1 || v > lattice.ny)
        throw InvalidParameterError("port_index: (u,v)=(" + std::to_string(u) + "," +
                                    std::to_string(v) + ") out of range for " +
                                    std::to_string(lattice.nx) + "x" + std::to_string(lattice.ny));
    return (u - 1) * lattice.ny + v;
}

std::pair<int, int> inverse_port_index(int k, const ArrayLattice& lattice)
{
    if (k < 1 || k > lattice.port_count())
        throw InvalidParameterError("inverse_port_index: k=" + std::to_string(k) +
                                    " out of range [1," + std::to_string(lattice.port_count()) +
                                    "]");
    const int u = (k - 1) / lattice.ny + 1;
    const int v = (k - 1) % lattice.ny + 1;
    return {u, v};
}

ElementMesh discretize_dipole(double length_m, double radius_m, int m)
{
    if (length_m <= 0.0)
        throw InvalidParameterError("discretize_dipole: length must be positive");
    if (m < 3 || m % 2 == 0)
        throw InvalidParameterError("discretize_dipole: segment count must be odd and >= 3 (got " +
                                    std::to_string(m) + ")");
    const double seg_len = length_m / m;
    if (radius_m <= 0.0 || radius_m >= length_m / (2.0 * m))
        throw InvalidParameterError(
            "discretize_dipole: wire radius violates thin-wire validity (need 0 < radius < "
            "length/(2m))");

    ElementMesh mesh;
    mesh.segments.reserve(m);
    for (int s = 0; s < m; ++s) {
        WireSegment seg;
        seg.midpoint = Eigen::Vector3d(0.0, 0.0, -0.5 * length_m + (s + 0.5) * seg_len);
        seg.tangent = Eigen::Vector3d(0.0, 0.0, 1.0);
        seg.length = seg_len;
        seg.radius = radius_m;
        mesh.segments.push_back(seg);
    }
    mesh.feed_index = (m - 1) / 2;
    return mesh;
}

std::vector<ElementMesh> place_elements(const ElementMesh& element,
                                        const std::vector<Eigen::Vector3d>& positions)
{
    std::vector<ElementMesh> placed;
    placed.reserve(positions.size());
    for (const auto& p : positions) {
        ElementMesh copy = element;
        for (auto& seg : copy.segments)
            seg.midpoint += p;
        placed.push_back(std::move(copy));
    }
    return placed;
}

} // namespace aepd

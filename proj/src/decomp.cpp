// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#include "aepd/decomp.hpp"

#include <string>

namespace aepd {

AxisTransferSet build_axis_transfer(const CurrentDistribution& j_iso,
                                    const std::vector<CurrentDistribution>& j_axis, Axis axis)
{
    if (j_iso.n_elements != 1)
        throw InvalidParameterError("build_axis_transfer: isolated distribution must have one "
                                    "element");
    const int m = j_iso.segments_per_element;
    const int n = static_cast<int>(j_axis.size());
    if (n < 1)
        throw InvalidParameterError("build_axis_transfer: empty axis solve");

    const double max_iso = j_iso.values.cwiseAbs().maxCoeff();
    for (int s = 0; s < m; ++s)
        if (std::abs(j_iso.values(s)) <= kDivisionGuard * max_iso)
            throw DegenerateNormalizationError(
                "build_axis_transfer: isolated current nearly vanishes at mesh index " +
                std::to_string(s));

    for (int k = 0; k < n; ++k) {
        if (j_axis[k].n_elements != n || j_axis[k].segments_per_element != m)
            throw InvalidParameterError("build_axis_transfer: axis solve " + std::to_string(k + 1) +
                                        " has inconsistent dimensions");
        if (j_axis[k].excited_port != k + 1)
            throw InvalidParameterError("build_axis_transfer: axis solves must cover ports 1..n "
                                        "in order");
    }

    AxisTransferSet set;
    set.axis = axis;
    set.n = n;
    set.m = m;
    set.per_mesh.resize(m);
    for (int s = 0; s < m; ++s) {
        Eigen::MatrixXcd c(n, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                c(i, k) = j_axis[k].at(i, s) / j_iso.values(s);
        set.per_mesh[s] = std::move(c);
    }
    return set;
}

TransferMatrix2D kron_expand(const AxisTransferSet& cu, const AxisTransferSet& cv)
{
    if (cu.m != cv.m)
        throw InvalidParameterError("kron_expand: mesh-count mismatch between axis sets");
    TransferMatrix2D out;
    out.nx = cu.n;
    out.ny = cv.n;
    out.m = cu.m;
    out.per_mesh.resize(out.m);
    const int n2 = out.nx * out.ny;
    for (int s = 0; s < out.m; ++s) {
        Eigen::MatrixXcd block(n2, n2);
        for (int ui = 0; ui < out.nx; ++ui)
            for (int vi = 0; vi < out.ny; ++vi)
                for (int uk = 0; uk < out.nx; ++uk)
                    for (int vk = 0; vk < out.ny; ++vk)
                        block(ui * out.ny + vi, uk * out.ny + vk) =
                            cu.per_mesh[s](ui, uk) * cv.per_mesh[s](vi, vk);
        out.per_mesh[s] = std::move(block);
    }
    return out;
}

CurrentDistribution estimate_currents_2d(const CurrentDistribution& j_iso,
                                         const TransferMatrix2D& c2d, int port_k)
{
    const int n2 = c2d.nx * c2d.ny;
    if (port_k < 1 || port_k > n2)
        throw InvalidParameterError("estimate_currents_2d: port " + std::to_string(port_k) +
                                    " outside range [1," + std::to_string(n2) + "]");
    if (j_iso.segments_per_element != c2d.m)
        throw InvalidParameterError("estimate_currents_2d: mesh-count mismatch");

    CurrentDistribution est;
    est.values.resize(static_cast<Eigen::Index>(n2) * c2d.m);
    est.n_elements = n2;
    est.segments_per_element = c2d.m;
    est.excited_port = port_k;
    est.context = CurrentContext::Estimated2d;
    for (int i = 0; i < n2; ++i)
        for (int s = 0; s < c2d.m; ++s)
            est.values(static_cast<Eigen::Index>(i) * c2d.m + s) =
                j_iso.values(s) * c2d.per_mesh[s](i, port_k - 1);
    return est;
}

std::vector<CurrentDistribution> estimate_all_ports(const CurrentDistribution& j_iso,
                                                    const AxisTransferSet& cu,
                                                    const AxisTransferSet& cv)
{
    if (cu.m != cv.m || j_iso.segments_per_element != cu.m)
        throw InvalidParameterError("estimate_all_ports: mesh-count mismatch");
    const int nx = cu.n;
    const int ny = cv.n;
    const int n2 = nx * ny;
    const int m = cu.m;

    std::vector<CurrentDistribution> out;
    out.reserve(n2);
    for (int k = 1; k <= n2; ++k) {
        const int uk = (k - 1) / ny;
        const int vk = (k - 1) % ny;
        CurrentDistribution est;
        est.values.resize(static_cast<Eigen::Index>(n2) * m);
        est.n_elements = n2;
        est.segments_per_element = m;
        est.excited_port = k;
        est.context = CurrentContext::Estimated2d;
        for (int ui = 0; ui < nx; ++ui)
            for (int vi = 0; vi < ny; ++vi) {
                const Eigen::Index base =
                    (static_cast<Eigen::Index>(ui) * ny + vi) * m;
                for (int s = 0; s < m; ++s)
                    est.values(base + s) = j_iso.values(s) * cu.per_mesh[s](ui, uk) *
                                           cv.per_mesh[s](vi, vk);
            }
        out.push_back(std::move(est));
    }
    return out;
}

} // namespace aepd

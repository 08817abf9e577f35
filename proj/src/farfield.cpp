// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#include "aepd/farfield.hpp"

#include <cmath>
#include <string>

namespace aepd {

AngleGrid AngleGrid::theta_sweep(double theta_min_deg, double theta_max_deg, double step_deg,
                                 const std::vector<double>& phi_cuts_deg)
{
    if (step_deg <= 0.0 || theta_max_deg < theta_min_deg || phi_cuts_deg.empty())
        throw InvalidParameterError("AngleGrid::theta_sweep: invalid sweep parameters");
    const int n = static_cast<int>(std::llround((theta_max_deg - theta_min_deg) / step_deg)) + 1;
    AngleGrid grid;
    grid.samples.reserve(static_cast<size_t>(n) * phi_cuts_deg.size());
    for (double phi : phi_cuts_deg)
        for (int i = 0; i < n; ++i)
            grid.samples.push_back({theta_min_deg + i * step_deg, phi});
    return grid;
}

bool same_grid(const AngleGrid& a, const AngleGrid& b)
{
    if (a.samples.size() != b.samples.size())
        return false;
    for (size_t i = 0; i < a.samples.size(); ++i)
        if (a.samples[i].theta_deg != b.samples[i].theta_deg ||
            a.samples[i].phi_deg != b.samples[i].phi_deg)
            return false;
    return true;
}

Direction direction_of(const AngleSample& sample)
{
    const double th = deg2rad(sample.theta_deg);
    const double ph = deg2rad(sample.phi_deg);
    const double st = std::sin(th), ct = std::cos(th);
    const double sp = std::sin(ph), cp = std::cos(ph);
    Direction d;
    d.u_hat = Eigen::Vector3d(st * cp, st * sp, ct);
    d.theta_hat = Eigen::Vector3d(ct * cp, ct * sp, -st);
    d.phi_hat = Eigen::Vector3d(-sp, cp, 0.0);
    return d;
}

double FarFieldPattern::peak_magnitude() const
{
    double peak = 0.0;
    for (int i = 0; i < grid.size(); ++i)
        peak = std::max(peak, magnitude(i));
    return peak;
}

FarFieldPattern radiate(const CurrentDistribution& currents,
                        const std::vector<ElementMesh>& placed, const AngleGrid& grid,
                        double frequency_hz)
{
    if (grid.size() == 0)
        throw InvalidParameterError("radiate: empty angle grid");
    if (static_cast<int>(placed.size()) != currents.n_elements)
        throw InvalidParameterError("radiate: element count mismatch between currents and "
                                    "geometry");

    const double k0 = 2.0 * std::numbers::pi * frequency_hz / kSpeedOfLight;

    FarFieldPattern pat;
    pat.grid = grid;
    pat.frequency_hz = frequency_hz;
    pat.e_theta = Eigen::VectorXcd::Zero(grid.size());
    pat.e_phi = Eigen::VectorXcd::Zero(grid.size());

    for (int a = 0; a < grid.size(); ++a) {
        const Direction dir = direction_of(grid.samples[a]);
        cplx eth(0.0, 0.0), eph(0.0, 0.0);
        for (int i = 0; i < currents.n_elements; ++i) {
            const auto& segs = placed[i].segments;
            if (static_cast<int>(segs.size()) != currents.segments_per_element)
                throw InvalidParameterError("radiate: segment count mismatch at element " +
                                            std::to_string(i));
            for (int s = 0; s < currents.segments_per_element; ++s) {
                const WireSegment& seg = segs[s];
                const cplx moment = currents.at(i, s) * seg.length;
                const cplx phase = std::exp(cplx(0.0, k0 * dir.u_hat.dot(seg.midpoint)));
                // theta_hat and phi_hat are already transverse to u_hat, so
                // the dyadic projector reduces to direct projections.
                eth += dir.theta_hat.dot(seg.tangent) * moment * phase;
                eph += dir.phi_hat.dot(seg.tangent) * moment * phase;
            }
        }
        pat.e_theta(a) = eth;
        pat.e_phi(a) = eph;
    }
    return pat;
}

FarFieldPattern peak_normalize(const FarFieldPattern& pattern)
{
    const double peak = pattern.peak_magnitude();
    if (peak <= 0.0)
        throw NumericalFailureError("peak_normalize: pattern is identically zero");
    FarFieldPattern out = pattern;
    out.e_theta /= peak;
    out.e_phi /= peak;
    out.peak_normalized = true;
    return out;
}

std::vector<double> normalized_db(const FarFieldPattern& pattern, double floor_db)
{
    const FarFieldPattern norm = pattern.peak_normalized ? pattern : peak_normalize(pattern);
    std::vector<double> db(norm.grid.size());
    const double mag_floor = std::pow(10.0, floor_db / 20.0);
    for (int i = 0; i < norm.grid.size(); ++i)
        db[i] = 20.0 * std::log10(std::max(norm.magnitude(i), mag_floor));
    return db;
}

FarFieldPattern synthesize(const std::vector<FarFieldPattern>& aeps, const Eigen::VectorXcd& w)
{
    if (aeps.empty() || static_cast<int>(aeps.size()) != w.size())
        throw InvalidParameterError("synthesize: AEP count must match weight count");
    if (w.cwiseAbs().maxCoeff() == 0.0)
        throw InvalidParameterError("synthesize: all-zero excitation");
    for (size_t k = 1; k < aeps.size(); ++k)
        if (!same_grid(aeps[k].grid, aeps[0].grid))
            throw InvalidParameterError("synthesize: AEP grids differ at port " +
                                        std::to_string(k + 1));

    FarFieldPattern out;
    out.grid = aeps[0].grid;
    out.frequency_hz = aeps[0].frequency_hz;
    out.e_theta = Eigen::VectorXcd::Zero(out.grid.size());
    out.e_phi = Eigen::VectorXcd::Zero(out.grid.size());
    for (size_t k = 0; k < aeps.size(); ++k) {
        out.e_theta += w(static_cast<Eigen::Index>(k)) * aeps[k].e_theta;
        out.e_phi += w(static_cast<Eigen::Index>(k)) * aeps[k].e_phi;
    }
    return out;
}

Eigen::VectorXcd steering_weights(const ArrayLattice& lattice, double theta0_deg, double phi0_deg,
                                  const Eigen::VectorXd& taper)
{
    if (taper.size() != 0 && taper.size() != lattice.port_count())
        throw InvalidParameterError("steering_weights: taper length mismatch");
    const double k0 = 2.0 * std::numbers::pi / lattice.wavelength();
    const double st = std::sin(deg2rad(theta0_deg));
    const double cp = std::cos(deg2rad(phi0_deg));
    const double sp = std::sin(deg2rad(phi0_deg));

    Eigen::VectorXcd w(lattice.port_count());
    for (int k = 0; k < lattice.port_count(); ++k) {
        const Eigen::Vector3d& r = lattice.element_positions[k];
        const double phase = -k0 * (r.x() * st * cp + r.y() * st * sp);
        const double amp = taper.size() ? taper(k) : 1.0;
        w(k) = amp * std::exp(cplx(0.0, phase));
    }
    return w;
}

Eigen::VectorXd hann_taper(const ArrayLattice& lattice)
{
    auto axis_window = [](int idx, int n) {
        if (n == 1)
            return 1.0;
        // Hann raised above zero at the edges so no element is switched off.
        return 0.1 + 0.9 * 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * idx / (n - 1.0)));
    };
    Eigen::VectorXd t(lattice.port_count());
    for (int k = 0; k < lattice.port_count(); ++k) {
        const int u = k / lattice.ny;
        const int v = k % lattice.ny;
        t(k) = axis_window(u, lattice.nx) * axis_window(v, lattice.ny);
    }
    return t;
}

FarFieldPattern pmm_isolated(const FarFieldPattern& isolated, const ArrayLattice& lattice,
                             const Eigen::VectorXcd& w)
{
    if (w.size() != lattice.port_count())
        throw InvalidParameterError("pmm_isolated: weight length mismatch");
    const double k0 = 2.0 * std::numbers::pi / lattice.wavelength();

    FarFieldPattern out;
    out.grid = isolated.grid;
    out.frequency_hz = isolated.frequency_hz;
    out.e_theta = Eigen::VectorXcd::Zero(out.grid.size());
    out.e_phi = Eigen::VectorXcd::Zero(out.grid.size());
    for (int a = 0; a < out.grid.size(); ++a) {
        const Direction dir = direction_of(out.grid.samples[a]);
        cplx af(0.0, 0.0);
        for (int k = 0; k < lattice.port_count(); ++k)
            af += w(k) * std::exp(cplx(0.0, k0 * dir.u_hat.dot(lattice.element_positions[k])));
        out.e_theta(a) = isolated.e_theta(a) * af;
        out.e_phi(a) = isolated.e_phi(a) * af;
    }
    return out;
}

} // namespace aepd

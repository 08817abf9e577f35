// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#ifndef AEPD_FARFIELD_HPP
#define AEPD_FARFIELD_HPP

#include <vector>

#include <Eigen/Dense>

#include "aepd/geometry.hpp"
#include "aepd/mom.hpp"
#include "aepd/types.hpp"

namespace aepd {

// Clamp for normalized magnitudes before taking logs, keeps exact pattern
// nulls finite in dB space.
inline constexpr double kDbFloor = -300.0;

struct AngleSample {
    double theta_deg = 0.0; // polar angle from the z axis
    double phi_deg = 0.0;
};

struct AngleGrid {
    std::vector<AngleSample> samples;

    int size() const { return static_cast<int>(samples.size()); }

    /// theta sweep [theta_min, theta_max] in `step` increments for each phi
    /// cut, cut-major ordering.
    static AngleGrid theta_sweep(double theta_min_deg, double theta_max_deg, double step_deg,
                                 const std::vector<double>& phi_cuts_deg);
};

bool same_grid(const AngleGrid& a, const AngleGrid& b);

/// Propagation and polarization unit vectors for one sample.
struct Direction {
    Eigen::Vector3d u_hat;
    Eigen::Vector3d theta_hat;
    Eigen::Vector3d phi_hat;
};

Direction direction_of(const AngleSample& sample);

/// Complex far-field samples, theta and phi polarization components.
/// Raw patterns omit the constant -j*omega*mu/(4*pi) prefactor; comparisons
/// are done on peak-normalized values where it cancels.
struct FarFieldPattern {
    AngleGrid grid;
    Eigen::VectorXcd e_theta;
    Eigen::VectorXcd e_phi;
    double frequency_hz = 0.0;
    bool peak_normalized = false;

    double magnitude(int i) const
    {
        return std::sqrt(std::norm(e_theta(i)) + std::norm(e_phi(i)));
    }
    double peak_magnitude() const;
};

/// Far-field radiation integral over all wire segments with the transverse
/// projector of the free-space dyadic Green's function. Phase convention
/// exp(+j k0 u.r) with time dependence exp(+j omega t).
FarFieldPattern radiate(const CurrentDistribution& currents,
                        const std::vector<ElementMesh>& placed, const AngleGrid& grid,
                        double frequency_hz);

FarFieldPattern peak_normalize(const FarFieldPattern& pattern);

/// Normalized magnitude in dB per grid sample, clamped at floor_db.
std::vector<double> normalized_db(const FarFieldPattern& pattern, double floor_db = kDbFloor);

/// Pointwise weighted sum of AEPs (the array pattern).
FarFieldPattern synthesize(const std::vector<FarFieldPattern>& aeps, const Eigen::VectorXcd& w);

/// Phase-only steering weights toward (theta0, phi0), optional amplitude
/// taper multiplied in (entries in port order; empty = uniform).
Eigen::VectorXcd steering_weights(const ArrayLattice& lattice, double theta0_deg, double phi0_deg,
                                  const Eigen::VectorXd& taper = Eigen::VectorXd());

/// Separable Hann amplitude taper in port order.
Eigen::VectorXd hann_taper(const ArrayLattice& lattice);

/// Pattern-multiplication baseline: isolated element pattern times the array
/// factor; ignores coupling and truncation entirely.
FarFieldPattern pmm_isolated(const FarFieldPattern& isolated, const ArrayLattice& lattice,
                             const Eigen::VectorXcd& w);

} // namespace aepd

#endif // AEPD_FARFIELD_HPP

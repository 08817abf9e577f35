// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#ifndef AEPD_MOM_HPP
#define AEPD_MOM_HPP

#include <vector>

#include <Eigen/Dense>
#include <Eigen/LU>

#include "aepd/geometry.hpp"
#include "aepd/types.hpp"

namespace aepd {

// Dense-solve guard for the 2-D oracle path.
inline constexpr int kOracleUnknownGuard = 20000;

enum class CurrentContext { Isolated, Array1dU, Array1dV, Array2d, Estimated2d };

enum class Axis { U, V };

/// Complex current coefficients, one per wire segment, element-major:
/// values[i*m + s] is segment s of element i (0-based).
struct CurrentDistribution {
    Eigen::VectorXcd values; // amperes
    int n_elements = 0;
    int segments_per_element = 0;
    int excited_port = 1; // 1-based
    CurrentContext context = CurrentContext::Isolated;

    cplx at(int element, int segment) const
    {
        return values(static_cast<Eigen::Index>(element) * segments_per_element + segment);
    }
};

struct ImpedanceMatrix {
    Eigen::MatrixXcd z; // ohms
    double frequency_hz = 0.0;
};

struct PortTermination {
    cplx z_load{50.0, 0.0}; // ohms at every non-excited feed
    double v_source = 1.0;  // volts, delta-gap at the excited feed
};

/// Pulse-basis point-matching thin-wire MoM fill over all placed segments.
/// Global unknown index = element*m + segment.
ImpedanceMatrix fill_impedance_matrix(const std::vector<ElementMesh>& placed, double frequency_hz);

/// Global row indices of the feed segments, in port order.
std::vector<int> feed_rows(const std::vector<ElementMesh>& placed);

struct LoadedSystem {
    Eigen::MatrixXcd z;
    Eigen::VectorXcd v;
};

/// Adds z_load to the diagonal at every non-excited feed and builds the
/// delta-gap excitation vector. excited_port is 1-based.
LoadedSystem apply_terminations(const ImpedanceMatrix& z, const std::vector<int>& feeds,
                                int excited_port, const PortTermination& termination);

/// Direct dense solve with residual and conditioning checks.
Eigen::VectorXcd solve_currents(const LoadedSystem& system);

/// Fill-once/factor-once solver for all port excitations of one geometry.
///
/// The factored matrix carries z_load at every feed; removing the load at the
/// excited feed is a rank-1 update, and for a single-feed excitation the
/// Sherman-Morrison correction collapses to a scalar rescale of the solution.
class ArraySolver {
public:
    ArraySolver(ImpedanceMatrix z, std::vector<int> feeds, PortTermination termination,
                bool check_residuals = true);

    CurrentDistribution solve_port(int k, int n_elements, int segments_per_element,
                                   CurrentContext context) const;

    const ImpedanceMatrix& impedance() const { return z_; }
    int port_count() const { return static_cast<int>(feeds_.size()); }

private:
    ImpedanceMatrix z_;
    std::vector<int> feeds_;
    PortTermination termination_;
    bool check_residuals_;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_; // of z_ with loads at all feeds
};

CurrentDistribution solve_isolated(const ElementMesh& element, double frequency_hz,
                                   double v_source = 1.0);

std::vector<CurrentDistribution> solve_1d_array(Axis axis, const ArrayLattice& lattice,
                                                const ElementMesh& element,
                                                const PortTermination& termination);

std::vector<CurrentDistribution> solve_2d_oracle(const ArrayLattice& lattice,
                                                 const ElementMesh& element,
                                                 const PortTermination& termination);

/// The 1-D sub-lattice used by the decomposition (nx x 1 for U, 1 x ny for V).
ArrayLattice axis_lattice(Axis axis, const ArrayLattice& lattice);

} // namespace aepd

#endif // AEPD_MOM_HPP

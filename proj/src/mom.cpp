// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#include "aepd/mom.hpp"

#include <array>
#include <cmath>
#include <string>

namespace aepd {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGaussX = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussW = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

struct FlatSegment {
    Eigen::Vector3d mid;
    Eigen::Vector3d tan;
    Eigen::Vector3d lo;
    Eigen::Vector3d hi;
    double len = 0.0;
    double radius = 0.0;
    int element = -1;
};

std::vector<FlatSegment> flatten(const std::vector<ElementMesh>& placed)
{
    std::vector<FlatSegment> flat;
    size_t total = 0;
    for (const auto& e : placed)
        total += e.segments.size();
    flat.reserve(total);
    for (int i = 0; i < static_cast<int>(placed.size()); ++i) {
        for (const auto& s : placed[i].segments) {
            if (std::abs(s.tangent.norm() - 1.0) > 1e-12)
                throw InvalidParameterError("fill_impedance_matrix: segment tangent not unit norm");
            if (s.length <= 0.0)
                throw InvalidParameterError("fill_impedance_matrix: non-positive segment length");
            flat.push_back(
                {s.midpoint, s.tangent, s.end_lo(), s.end_hi(), s.length, s.radius, i});
        }
    }
    return flat;
}

// Point-to-point Green's function value exp(-jkR)/R with the reduced
// thin-wire kernel (radius folded into R) on the source wire itself.
cplx green_point(const Eigen::Vector3d& p, const Eigen::Vector3d& q, double k0, bool same_wire,
                 double radius)
{
    double r2 = (p - q).squaredNorm();
    if (same_wire)
        r2 += radius * radius;
    const double r = std::sqrt(r2);
    if (r < 1e-15)
        throw SingularGeometryError("green_point: coincident source and observation points");
    return std::exp(cplx(0.0, -k0 * r)) / r;
}

// Integral of exp(-jkR)/R over a source segment, observation at p.
// Static 1/R part integrated analytically, remainder by Gauss quadrature.
cplx segment_potential(const Eigen::Vector3d& p, const FlatSegment& src, double k0, bool same_wire)
{
    const Eigen::Vector3d d = p - src.mid;
    const double zeta = d.dot(src.tan);
    double rho2 = d.squaredNorm() - zeta * zeta;
    if (rho2 < 0.0)
        rho2 = 0.0;
    if (same_wire)
        rho2 += src.radius * src.radius;
    const double h = 0.5 * src.len;
    if (rho2 < 1e-24 && std::abs(zeta) < h + 1e-15)
        throw SingularGeometryError("segment_potential: observation point on a foreign wire axis");

    const double rho = std::sqrt(rho2);
    const double static_part = std::asinh((zeta + h) / rho) - std::asinh((zeta - h) / rho);

    cplx smooth(0.0, 0.0);
    for (size_t q = 0; q < kGaussX.size(); ++q) {
        const double s = h * kGaussX[q];
        const double r = std::sqrt(rho2 + (zeta - s) * (zeta - s));
        // (exp(-jkR) - 1)/R is bounded near R = 0
        smooth += kGaussW[q] * (std::exp(cplx(0.0, -k0 * r)) - 1.0) / r;
    }
    smooth *= h;
    return smooth + static_part;
}

} // namespace

ImpedanceMatrix fill_impedance_matrix(const std::vector<ElementMesh>& placed, double frequency_hz)
{
    if (placed.empty())
        throw InvalidParameterError("fill_impedance_matrix: no elements");
    if (frequency_hz <= 0.0)
        throw InvalidParameterError("fill_impedance_matrix: frequency must be positive");

    const auto flat = flatten(placed);
    const int n = static_cast<int>(flat.size());

    // Coincidence check across distinct elements.
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (flat[a].element != flat[b].element &&
                (flat[a].mid - flat[b].mid).norm() < flat[a].radius)
                throw SingularGeometryError("fill_impedance_matrix: segments of elements " +
                                            std::to_string(flat[a].element) + " and " +
                                            std::to_string(flat[b].element) + " coincide");

    const double omega = 2.0 * std::numbers::pi * frequency_hz;
    const double k0 = omega / kSpeedOfLight;
    const cplx jw_mu(0.0, omega * kMu0 / (4.0 * std::numbers::pi));
    const cplx inv_jw_eps = 1.0 / cplx(0.0, omega * kEps0 * 4.0 * std::numbers::pi);

    ImpedanceMatrix zm;
    zm.frequency_hz = frequency_hz;
    zm.z.resize(n, n);

    for (int a = 0; a < n; ++a) {
        const FlatSegment& obs = flat[a];
        for (int b = 0; b < n; ++b) {
            const FlatSegment& src = flat[b];
            const bool same_wire = obs.element == src.element;

            // Vector-potential term, testing by midpoint rule over segment a.
            const cplx vec_term = jw_mu * obs.tan.dot(src.tan) * obs.len *
                                  segment_potential(obs.mid, src, k0, same_wire);

            // Scalar-potential term from the pulse end charges, tested as the
            // potential difference across segment a.
            const cplx scal_term =
                inv_jw_eps * (green_point(obs.hi, src.hi, k0, same_wire, src.radius) -
                              green_point(obs.hi, src.lo, k0, same_wire, src.radius) -
                              green_point(obs.lo, src.hi, k0, same_wire, src.radius) +
                              green_point(obs.lo, src.lo, k0, same_wire, src.radius));

            zm.z(a, b) = vec_term + scal_term;
        }
    }
    return zm;
}

std::vector<int> feed_rows(const std::vector<ElementMesh>& placed)
{
    std::vector<int> rows;
    rows.reserve(placed.size());
    int offset = 0;
    for (const auto& e : placed) {
        if (e.feed_index < 0 || e.feed_index >= e.size())
            throw InvalidParameterError("feed_rows: element has no valid feed segment");
        rows.push_back(offset + e.feed_index);
        offset += e.size();
    }
    return rows;
}

LoadedSystem apply_terminations(const ImpedanceMatrix& z, const std::vector<int>& feeds,
                                int excited_port, const PortTermination& termination)
{
    if (excited_port < 1 || excited_port > static_cast<int>(feeds.size()))
        throw InvalidParameterError("apply_terminations: excited port " +
                                    std::to_string(excited_port) + " outside port range [1," +
                                    std::to_string(feeds.size()) + "]");
    if (termination.z_load.real() < 0.0)
        throw InvalidParameterError("apply_terminations: load resistance must be non-negative");

    LoadedSystem sys;
    sys.z = z.z;
    sys.v = Eigen::VectorXcd::Zero(z.z.rows());
    for (int p = 0; p < static_cast<int>(feeds.size()); ++p) {
        if (feeds[p] < 0 || feeds[p] >= z.z.rows())
            throw InvalidParameterError("apply_terminations: feed row out of range");
        if (p + 1 != excited_port)
            sys.z(feeds[p], feeds[p]) += termination.z_load;
    }
    sys.v(feeds[excited_port - 1]) = termination.v_source;
    return sys;
}

namespace {

void check_solution(const Eigen::MatrixXcd& z, const Eigen::VectorXcd& v,
                    const Eigen::VectorXcd& x, const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu)
{
    const auto udiag = lu.matrixLU().diagonal().cwiseAbs();
    const double umax = udiag.maxCoeff();
    const double umin = udiag.minCoeff();
    if (umin == 0.0 || umax / umin > 1e14)
        throw NumericalFailureError(
            "solve_currents: impedance matrix singular or ill-conditioned (condition estimate " +
            std::to_string(umin == 0.0 ? 1e300 : umax / umin) + ")");
    const double rel_res = (z * x - v).norm() / v.norm();
    if (rel_res > 1e-10)
        throw NumericalFailureError("solve_currents: relative residual " +
                                    std::to_string(rel_res) + " exceeds 1e-10");
}

} // namespace

Eigen::VectorXcd solve_currents(const LoadedSystem& system)
{
    if (system.v.norm() == 0.0)
        throw InvalidParameterError("solve_currents: zero excitation vector");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system.z);
    Eigen::VectorXcd x = lu.solve(system.v);
    check_solution(system.z, system.v, x, lu);
    return x;
}

ArraySolver::ArraySolver(ImpedanceMatrix z, std::vector<int> feeds, PortTermination termination,
                         bool check_residuals)
    : z_(std::move(z)), feeds_(std::move(feeds)), termination_(termination),
      check_residuals_(check_residuals)
{
    if (termination_.z_load.real() < 0.0)
        throw InvalidParameterError("ArraySolver: load resistance must be non-negative");
    Eigen::MatrixXcd loaded = z_.z;
    for (int row : feeds_)
        loaded(row, row) += termination_.z_load;
    lu_.compute(loaded);
    const auto udiag = lu_.matrixLU().diagonal().cwiseAbs();
    if (udiag.minCoeff() == 0.0 || udiag.maxCoeff() / udiag.minCoeff() > 1e14)
        throw NumericalFailureError("ArraySolver: loaded impedance matrix is ill-conditioned");
}

CurrentDistribution ArraySolver::solve_port(int k, int n_elements, int segments_per_element,
                                            CurrentContext context) const
{
    if (k < 1 || k > port_count())
        throw InvalidParameterError("solve_port: port " + std::to_string(k) +
                                    " outside range [1," + std::to_string(port_count()) + "]");
    const int f = feeds_[k - 1];
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(z_.z.rows());
    rhs(f) = termination_.v_source;
    Eigen::VectorXcd x = lu_.solve(rhs);

    // Remove the load at the excited feed: a rank-1 update whose
    // Sherman-Morrison correction is a scalar rescale for this rhs.
    const cplx denom = 1.0 - termination_.z_load * x(f) / termination_.v_source;
    if (std::abs(denom) < 1e-14)
        throw NumericalFailureError("solve_port: degenerate load removal at port " +
                                    std::to_string(k));
    x /= denom;

    if (check_residuals_) {
        const LoadedSystem sys = apply_terminations(z_, feeds_, k, termination_);
        check_solution(sys.z, sys.v, x, lu_);
    }

    CurrentDistribution dist;
    dist.values = std::move(x);
    dist.n_elements = n_elements;
    dist.segments_per_element = segments_per_element;
    dist.excited_port = k;
    dist.context = context;
    return dist;
}

CurrentDistribution solve_isolated(const ElementMesh& element, double frequency_hz,
                                   double v_source)
{
    std::vector<ElementMesh> placed{element};
    ImpedanceMatrix z = fill_impedance_matrix(placed, frequency_hz);
    PortTermination term;
    term.v_source = v_source;
    ArraySolver solver(std::move(z), feed_rows(placed), term);
    return solver.solve_port(1, 1, element.size(), CurrentContext::Isolated);
}

ArrayLattice axis_lattice(Axis axis, const ArrayLattice& lattice)
{
    if (axis == Axis::U)
        return build_lattice(lattice.nx, 1, lattice.dx_wavelengths, lattice.dy_wavelengths,
                             lattice.frequency_hz);
    return build_lattice(1, lattice.ny, lattice.dx_wavelengths, lattice.dy_wavelengths,
                         lattice.frequency_hz);
}

namespace {

std::vector<CurrentDistribution> solve_all_ports(const ArrayLattice& lattice,
                                                 const ElementMesh& element,
                                                 const PortTermination& termination,
                                                 CurrentContext context)
{
    const auto placed = place_elements(element, lattice.element_positions);
    ImpedanceMatrix z = fill_impedance_matrix(placed, lattice.frequency_hz);
    ArraySolver solver(std::move(z), feed_rows(placed), termination);
    std::vector<CurrentDistribution> out;
    out.reserve(lattice.port_count());
    for (int k = 1; k <= lattice.port_count(); ++k)
        out.push_back(solver.solve_port(k, lattice.port_count(), element.size(), context));
    return out;
}

} // namespace

std::vector<CurrentDistribution> solve_1d_array(Axis axis, const ArrayLattice& lattice,
                                                const ElementMesh& element,
                                                const PortTermination& termination)
{
    const ArrayLattice sub = axis_lattice(axis, lattice);
    return solve_all_ports(sub, element, termination,
                           axis == Axis::U ? CurrentContext::Array1dU
                                           : CurrentContext::Array1dV);
}

std::vector<CurrentDistribution> solve_2d_oracle(const ArrayLattice& lattice,
                                                 const ElementMesh& element,
                                                 const PortTermination& termination)
{
    const long unknowns = static_cast<long>(lattice.port_count()) * element.size();
    if (unknowns > kOracleUnknownGuard)
        throw SizeGuardError("solve_2d_oracle: " + std::to_string(unknowns) +
                             " unknowns exceed the dense-solve guard of " +
                             std::to_string(kOracleUnknownGuard) +
                             "; the 2-D oracle is desk-scale only");
    return solve_all_ports(lattice, element, termination, CurrentContext::Array2d);
}

} // namespace aepd

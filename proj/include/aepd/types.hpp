// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#ifndef AEPD_TYPES_HPP
#define AEPD_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aepd {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi; // H/m
inline constexpr double kEps0 = 1.0 / (kMu0 * kSpeedOfLight * kSpeedOfLight);

// Error taxonomy; the CLI maps these onto exit codes.
struct InvalidParameterError : std::runtime_error {
    explicit InvalidParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularGeometryError : InvalidParameterError {
    explicit SingularGeometryError(const std::string& msg) : InvalidParameterError(msg) {}
};

struct DegenerateRegionError : InvalidParameterError {
    explicit DegenerateRegionError(const std::string& msg) : InvalidParameterError(msg) {}
};

struct NumericalFailureError : std::runtime_error {
    explicit NumericalFailureError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateNormalizationError : NumericalFailureError {
    explicit DegenerateNormalizationError(const std::string& msg) : NumericalFailureError(msg) {}
};

struct SizeGuardError : std::runtime_error {
    explicit SizeGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

} // namespace aepd

#endif // AEPD_TYPES_HPP

// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#include "aepd/scenario.hpp"

#include <fstream>
#include <sstream>

namespace aepd {

ArrayLattice Scenario::lattice() const
{
    return build_lattice(nx, ny, dx_wavelengths, dy_wavelengths, frequency_hz);
}

ElementMesh Scenario::element() const
{
    const double lam = kSpeedOfLight / frequency_hz;
    return discretize_dipole(dipole_length_wavelengths * lam, wire_radius_wavelengths * lam,
                             segments_per_element);
}

PortTermination Scenario::termination() const
{
    PortTermination t;
    t.z_load = load_impedance_ohms;
    return t;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s)
{
    std::istringstream iss(s);
    std::vector<std::string> out;
    std::string tok;
    while (iss >> tok)
        out.push_back(tok);
    return out;
}

double parse_double(const std::string& key, const std::string& value)
{
    try {
        size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw InvalidParameterError("config field '" + key + "': cannot parse number from '" +
                                    value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value)
{
    const double d = parse_double(key, value);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw InvalidParameterError("config field '" + key + "': expected an integer, got '" +
                                    value + "'");
    return i;
}

} // namespace

Scenario parse_scenario_text(const std::string& text)
{
    Scenario sc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParameterError("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw InvalidParameterError("config field '" + key + "': empty value");

        if (key == "nx")
            sc.nx = parse_int(key, value);
        else if (key == "ny")
            sc.ny = parse_int(key, value);
        else if (key == "dx_wavelengths")
            sc.dx_wavelengths = parse_double(key, value);
        else if (key == "dy_wavelengths")
            sc.dy_wavelengths = parse_double(key, value);
        else if (key == "frequency_hz")
            sc.frequency_hz = parse_double(key, value);
        else if (key == "dipole_length_wavelengths")
            sc.dipole_length_wavelengths = parse_double(key, value);
        else if (key == "wire_radius_wavelengths")
            sc.wire_radius_wavelengths = parse_double(key, value);
        else if (key == "segments_per_element")
            sc.segments_per_element = parse_int(key, value);
        else if (key == "load_impedance_ohms") {
            const auto toks = tokens(value);
            if (toks.size() != 2)
                throw InvalidParameterError(
                    "config field 'load_impedance_ohms': expected two numbers (real imag)");
            sc.load_impedance_ohms =
                cplx(parse_double(key, toks[0]), parse_double(key, toks[1]));
        } else if (key == "steer_thetas_deg") {
            sc.steer_thetas_deg.clear();
            for (const auto& t : tokens(value))
                sc.steer_thetas_deg.push_back(parse_double(key, t));
        } else if (key == "steer_phi_deg")
            sc.steer_phi_deg = parse_double(key, value);
        else if (key == "amplitude_taper") {
            if (value != "none" && value != "hann")
                throw InvalidParameterError(
                    "config field 'amplitude_taper': expected 'none' or 'hann', got '" + value +
                    "'");
            sc.amplitude_taper = value;
        } else if (key == "grid_step_deg")
            sc.grid_step_deg = parse_double(key, value);
        else if (key == "uv_grid_points")
            sc.uv_grid_points = parse_int(key, value);
        else if (key == "output_dir")
            sc.output_dir = value;
        else if (key == "mode") {
            if (value != "oracle" && value != "estimate" && value != "compare" &&
                value != "synthesize" && value != "bench")
                throw InvalidParameterError("config field 'mode': unknown mode '" + value + "'");
            sc.mode = value;
        } else if (key == "bench_sizes") {
            sc.bench_sizes.clear();
            for (const auto& t : tokens(value)) {
                const auto x = t.find('x');
                if (x == std::string::npos)
                    throw InvalidParameterError(
                        "config field 'bench_sizes': expected entries like '3x3', got '" + t +
                        "'");
                sc.bench_sizes.emplace_back(parse_int(key, t.substr(0, x)),
                                            parse_int(key, t.substr(x + 1)));
            }
        } else if (key == "bench_repeats")
            sc.bench_repeats = parse_int(key, value);
        else
            throw InvalidParameterError("config line " + std::to_string(lineno) +
                                        ": unknown field '" + key + "'");
    }

    // Field-level validation before any solve.
    if (sc.nx < 1 || sc.ny < 1)
        throw InvalidParameterError("config field 'nx'/'ny': element counts must be >= 1");
    if (sc.dx_wavelengths <= 0.0 || sc.dy_wavelengths <= 0.0)
        throw InvalidParameterError("config field 'dx_wavelengths'/'dy_wavelengths': spacings "
                                    "must be positive");
    if (sc.frequency_hz <= 0.0)
        throw InvalidParameterError("config field 'frequency_hz': must be positive");
    if (sc.dipole_length_wavelengths <= 0.0)
        throw InvalidParameterError("config field 'dipole_length_wavelengths': must be positive");
    if (sc.segments_per_element < 3 || sc.segments_per_element % 2 == 0)
        throw InvalidParameterError(
            "config field 'segments_per_element': must be odd and >= 3");
    if (sc.wire_radius_wavelengths <= 0.0 ||
        sc.wire_radius_wavelengths >=
            sc.dipole_length_wavelengths / (2.0 * sc.segments_per_element))
        throw InvalidParameterError("config field 'wire_radius_wavelengths': violates thin-wire "
                                    "validity (need 0 < radius < length/(2m))");
    if (sc.load_impedance_ohms.real() < 0.0)
        throw InvalidParameterError(
            "config field 'load_impedance_ohms': real part must be non-negative");
    if (sc.grid_step_deg <= 0.0)
        throw InvalidParameterError("config field 'grid_step_deg': must be positive");
    if (sc.uv_grid_points < 2)
        throw InvalidParameterError("config field 'uv_grid_points': must be >= 2");
    if (sc.steer_thetas_deg.empty())
        throw InvalidParameterError("config field 'steer_thetas_deg': must be nonempty");
    if (sc.bench_repeats < 1)
        throw InvalidParameterError("config field 'bench_repeats': must be >= 1");
    for (auto [bx, by] : sc.bench_sizes)
        if (bx < 1 || by < 1)
            throw InvalidParameterError("config field 'bench_sizes': sizes must be >= 1x1");
    return sc;
}

Scenario parse_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidParameterError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

} // namespace aepd

// SPDX-License-Identifier: Apache-2.0
//
// aepd - active element pattern estimation via directional decomposition

#include "aepd/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace aepd {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw InvalidParameterError("cannot open output file '" + path.string() + "'");
    return out;
}

double effective_grid_step(const Scenario& sc, const RunOptions& opt)
{
    return opt.grid_step_deg > 0.0 ? opt.grid_step_deg : sc.grid_step_deg;
}

fs::path effective_out_dir(const Scenario& sc, const RunOptions& opt)
{
    fs::path dir = opt.out_dir.empty() ? sc.output_dir : opt.out_dir;
    fs::create_directories(dir);
    return dir;
}

AngleGrid cut_grid(const Scenario& sc, const RunOptions& opt)
{
    return AngleGrid::theta_sweep(-90.0, 90.0, effective_grid_step(sc, opt), {0.0, 90.0});
}

void write_manifest(const Scenario& sc, const RunOptions& opt, const std::string& mode,
                    const fs::path& dir)
{
    nlohmann::json j;
    j["mode"] = mode;
    j["nx"] = sc.nx;
    j["ny"] = sc.ny;
    j["dx_wavelengths"] = sc.dx_wavelengths;
    j["dy_wavelengths"] = sc.dy_wavelengths;
    j["frequency_hz"] = sc.frequency_hz;
    j["dipole_length_wavelengths"] = sc.dipole_length_wavelengths;
    j["wire_radius_wavelengths"] = sc.wire_radius_wavelengths;
    j["segments_per_element"] = sc.segments_per_element;
    j["load_impedance_ohms"] = {sc.load_impedance_ohms.real(), sc.load_impedance_ohms.imag()};
    j["steer_thetas_deg"] = sc.steer_thetas_deg;
    j["steer_phi_deg"] = sc.steer_phi_deg;
    j["amplitude_taper"] = sc.amplitude_taper;
    j["grid_step_deg"] = effective_grid_step(sc, opt);
    j["uv_grid_points"] = sc.uv_grid_points;
    j["dump_z"] = opt.dump_z;
    if (mode == "bench") {
        auto sizes = nlohmann::json::array();
        for (auto [bx, by] : sc.bench_sizes)
            sizes.push_back(std::to_string(bx) + "x" + std::to_string(by));
        j["bench_sizes"] = sizes;
        j["bench_repeats"] = sc.bench_repeats;
    }
    open_out(dir / "run_manifest.json") << j.dump(2) << "\n";
}

void write_pattern_csv(const fs::path& path, const FarFieldPattern& pattern)
{
    auto out = open_out(path);
    out << "theta_deg,phi_deg,re_Etheta,im_Etheta,re_Ephi,im_Ephi,mag_db_normalized\n";
    const auto db = normalized_db(pattern);
    for (int i = 0; i < pattern.grid.size(); ++i) {
        const auto& s = pattern.grid.samples[i];
        out << fmt(s.theta_deg) << ',' << fmt(s.phi_deg) << ','
            << fmt(pattern.e_theta(i).real()) << ',' << fmt(pattern.e_theta(i).imag()) << ','
            << fmt(pattern.e_phi(i).real()) << ',' << fmt(pattern.e_phi(i).imag()) << ','
            << fmt(db[i]) << "\n";
    }
}

void write_spectrum_csv(const fs::path& path, const CurrentSpectrum& spec)
{
    auto out = open_out(path);
    out << "u,v,mag_db\n";
    for (int u = 1; u <= spec.nx; ++u)
        for (int v = 1; v <= spec.ny; ++v)
            out << u << ',' << v << ',' << fmt(spec.db(u - 1, v - 1)) << "\n";
}

void dump_matrix_csv(const fs::path& path, const Eigen::MatrixXcd& m)
{
    auto out = open_out(path);
    out << "row,col,re,im\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out << r << ',' << c << ',' << fmt(m(r, c).real()) << ',' << fmt(m(r, c).imag())
                << "\n";
}

void dump_currents_csv(const fs::path& path, const std::vector<CurrentDistribution>& currents)
{
    auto out = open_out(path);
    out << "row,col,re,im\n";
    for (size_t k = 0; k < currents.size(); ++k)
        for (Eigen::Index i = 0; i < currents[k].values.size(); ++i)
            out << i << ',' << k << ',' << fmt(currents[k].values(i).real()) << ','
                << fmt(currents[k].values(i).imag()) << "\n";
}

void dump_transfer_csv(const fs::path& path, const AxisTransferSet& set)
{
    auto out = open_out(path);
    out << "mesh,element,port,magnitude_db\n";
    for (int s = 0; s < set.m; ++s)
        for (int i = 0; i < set.n; ++i)
            for (int k = 0; k < set.n; ++k)
                out << s + 1 << ',' << i + 1 << ',' << k + 1 << ','
                    << fmt(20.0 * std::log10(std::max(std::abs(set.per_mesh[s](i, k)), 1e-300)))
                    << "\n";
}

double wrap_deg(double d)
{
    while (d > 180.0)
        d -= 360.0;
    while (d < -180.0)
        d += 360.0;
    return d;
}

PortError port_error(int port, const FarFieldPattern& oracle, const FarFieldPattern& estimated)
{
    const auto db_o = normalized_db(oracle);
    const auto db_e = normalized_db(estimated);
    PortError err;
    err.port = port;
    for (size_t i = 0; i < db_o.size(); ++i)
        err.max_mag_err_db = std::max(err.max_mag_err_db, std::abs(db_o[i] - db_e[i]));
    // Phase is only meaningful where the pattern carries energy.
    for (size_t i = 0; i < db_o.size(); ++i) {
        if (db_o[i] < -40.0)
            continue;
        const double d = wrap_deg(rad2deg(std::arg(oracle.e_theta(static_cast<Eigen::Index>(i))) -
                                          std::arg(estimated.e_theta(static_cast<Eigen::Index>(i)))));
        err.max_phase_err_deg = std::max(err.max_phase_err_deg, std::abs(d));
    }
    return err;
}

std::string steer_label(double theta_deg)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+05.1f", theta_deg);
    return buf;
}

struct UvGrid {
    AngleGrid grid;
    std::vector<std::pair<double, double>> uv;
};

UvGrid build_uv_grid(int points)
{
    UvGrid g;
    for (int iu = 0; iu < points; ++iu) {
        const double u = -1.0 + 2.0 * iu / (points - 1);
        for (int iv = 0; iv < points; ++iv) {
            const double v = -1.0 + 2.0 * iv / (points - 1);
            const double r = std::hypot(u, v);
            if (r > 1.0)
                continue;
            g.grid.samples.push_back(
                {rad2deg(std::asin(std::min(r, 1.0))), rad2deg(std::atan2(v, u))});
            g.uv.emplace_back(u, v);
        }
    }
    return g;
}

void write_uv_error_csv(const fs::path& path, const UvGrid& uvg, const std::vector<double>& db_ref,
                        const std::vector<double>& db_test)
{
    auto out = open_out(path);
    out << "u,v,mag_db\n";
    for (size_t i = 0; i < uvg.uv.size(); ++i)
        out << fmt(uvg.uv[i].first) << ',' << fmt(uvg.uv[i].second) << ','
            << fmt(std::abs(db_ref[i] - db_test[i])) << "\n";
}

CurrentDistribution combine_currents(const std::vector<CurrentDistribution>& per_port,
                                     const Eigen::VectorXcd& w)
{
    CurrentDistribution sum = per_port.front();
    sum.values = w(0) * per_port[0].values;
    for (size_t k = 1; k < per_port.size(); ++k)
        sum.values += w(static_cast<Eigen::Index>(k)) * per_port[k].values;
    return sum;
}

} // namespace

DecompositionResult run_decomposition(const Scenario& sc)
{
    const ArrayLattice lattice = sc.lattice();
    const ElementMesh element = sc.element();
    const PortTermination term = sc.termination();

    DecompositionResult res;
    res.j_iso = solve_isolated(element, sc.frequency_hz);
    res.j_axis_u = solve_1d_array(Axis::U, lattice, element, term);
    res.j_axis_v = solve_1d_array(Axis::V, lattice, element, term);
    res.cu = build_axis_transfer(res.j_iso, res.j_axis_u, Axis::U);
    res.cv = build_axis_transfer(res.j_iso, res.j_axis_v, Axis::V);
    res.estimated = estimate_all_ports(res.j_iso, res.cu, res.cv);
    return res;
}

std::vector<int> six_port_selection(const ArrayLattice& lattice)
{
    const int cu = (lattice.nx + 1) / 2;
    const int cv = (lattice.ny + 1) / 2;
    std::vector<int> ports = {port_index(1, 1, lattice),           port_index(cu, 1, lattice),
                              port_index(lattice.nx, 1, lattice),  port_index(1, cv, lattice),
                              port_index(cu, cv, lattice),
                              port_index(lattice.nx, lattice.ny, lattice)};
    return ports;
}

void run_oracle(const Scenario& sc, const RunOptions& opt)
{
    const fs::path dir = effective_out_dir(sc, opt);
    write_manifest(sc, opt, "oracle", dir);

    const ArrayLattice lattice = sc.lattice();
    const ElementMesh element = sc.element();
    const auto placed = place_elements(element, lattice.element_positions);
    const auto oracle = solve_2d_oracle(lattice, element, sc.termination());
    const AngleGrid grid = cut_grid(sc, opt);

    for (int k = 1; k <= lattice.port_count(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "aep_oracle_port_%03d.csv", k);
        write_pattern_csv(dir / name, radiate(oracle[k - 1], placed, grid, sc.frequency_hz));
    }
    write_spectrum_csv(dir / "current_spectrum_oracle.csv",
                       current_spectrum(oracle, lattice.nx, lattice.ny));
    if (opt.dump_z) {
        dump_matrix_csv(dir / "z_oracle.csv",
                        fill_impedance_matrix(placed, sc.frequency_hz).z);
        dump_currents_csv(dir / "currents_oracle.csv", oracle);
    }
}

void run_estimate(const Scenario& sc, const RunOptions& opt)
{
    const fs::path dir = effective_out_dir(sc, opt);
    write_manifest(sc, opt, "estimate", dir);

    const ArrayLattice lattice = sc.lattice();
    const ElementMesh element = sc.element();
    const auto placed = place_elements(element, lattice.element_positions);
    const DecompositionResult res = run_decomposition(sc);
    const AngleGrid grid = cut_grid(sc, opt);

    for (int k = 1; k <= lattice.port_count(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "aep_estimated_port_%03d.csv", k);
        write_pattern_csv(dir / name,
                          radiate(res.estimated[k - 1], placed, grid, sc.frequency_hz));
    }
    write_spectrum_csv(dir / "current_spectrum_estimated.csv",
                       current_spectrum(res.estimated, lattice.nx, lattice.ny));
    if (opt.dump_z) {
        dump_transfer_csv(dir / "transfer_u.csv", res.cu);
        dump_transfer_csv(dir / "transfer_v.csv", res.cv);
        dump_currents_csv(dir / "currents_estimated.csv", res.estimated);
    }
}

CompareSummary run_compare(const Scenario& sc, const RunOptions& opt)
{
    const fs::path dir = effective_out_dir(sc, opt);
    write_manifest(sc, opt, "compare", dir);

    const ArrayLattice lattice = sc.lattice();
    const ElementMesh element = sc.element();
    const auto placed = place_elements(element, lattice.element_positions);
    const auto oracle = solve_2d_oracle(lattice, element, sc.termination());
    const DecompositionResult res = run_decomposition(sc);
    const AngleGrid grid = cut_grid(sc, opt);

    CompareSummary summary;
    for (int k = 1; k <= lattice.port_count(); ++k) {
        const FarFieldPattern pat_o = radiate(oracle[k - 1], placed, grid, sc.frequency_hz);
        const FarFieldPattern pat_e =
            radiate(res.estimated[k - 1], placed, grid, sc.frequency_hz);
        char name[64];
        std::snprintf(name, sizeof name, "aep_oracle_port_%03d.csv", k);
        write_pattern_csv(dir / name, pat_o);
        std::snprintf(name, sizeof name, "aep_estimated_port_%03d.csv", k);
        write_pattern_csv(dir / name, pat_e);
        summary.port_errors.push_back(port_error(k, pat_o, pat_e));
    }

    const CurrentSpectrum spec_o = current_spectrum(oracle, lattice.nx, lattice.ny);
    const CurrentSpectrum spec_e = current_spectrum(res.estimated, lattice.nx, lattice.ny);
    write_spectrum_csv(dir / "current_spectrum_oracle.csv", spec_o);
    write_spectrum_csv(dir / "current_spectrum_estimated.csv", spec_e);
    summary.spectrum_max_pixel_dev_db = (spec_o.db - spec_e.db).cwiseAbs().maxCoeff();

    {
        auto out = open_out(dir / "aep_error_summary.csv");
        out << "port,u,v,max_mag_err_db,max_phase_err_deg\n";
        for (const auto& e : summary.port_errors) {
            const auto [u, v] = inverse_port_index(e.port, lattice);
            out << e.port << ',' << u << ',' << v << ',' << fmt(e.max_mag_err_db) << ','
                << fmt(e.max_phase_err_deg) << "\n";
        }
    }

    summary.six_ports = six_port_selection(lattice);
    {
        auto out = open_out(dir / "six_ports.csv");
        out << "slot,u,v,port\n";
        for (size_t s = 0; s < summary.six_ports.size(); ++s) {
            const auto [u, v] = inverse_port_index(summary.six_ports[s], lattice);
            out << s + 1 << ',' << u << ',' << v << ',' << summary.six_ports[s] << "\n";
        }
    }

    {
        nlohmann::json j;
        j["spectrum_max_pixel_dev_db"] = summary.spectrum_max_pixel_dev_db;
        double max_mag = 0.0, max_phase = 0.0;
        for (const auto& e : summary.port_errors) {
            max_mag = std::max(max_mag, e.max_mag_err_db);
            max_phase = std::max(max_phase, e.max_phase_err_deg);
        }
        j["max_mag_err_db"] = max_mag;
        j["max_phase_err_deg"] = max_phase;
        open_out(dir / "compare_summary.json") << j.dump(2) << "\n";
    }

    if (opt.dump_z) {
        dump_matrix_csv(dir / "z_oracle.csv",
                        fill_impedance_matrix(placed, sc.frequency_hz).z);
        dump_currents_csv(dir / "currents_oracle.csv", oracle);
        dump_currents_csv(dir / "currents_estimated.csv", res.estimated);
        dump_transfer_csv(dir / "transfer_u.csv", res.cu);
        dump_transfer_csv(dir / "transfer_v.csv", res.cv);
    }
    return summary;
}

void run_synthesize(const Scenario& sc, const RunOptions& opt)
{
    const fs::path dir = effective_out_dir(sc, opt);
    write_manifest(sc, opt, "synthesize", dir);

    const ArrayLattice lattice = sc.lattice();
    const ElementMesh element = sc.element();
    const auto placed = place_elements(element, lattice.element_positions);
    const std::vector<ElementMesh> placed_iso{element};
    const auto oracle = solve_2d_oracle(lattice, element, sc.termination());
    const DecompositionResult res = run_decomposition(sc);

    const AngleGrid grid = cut_grid(sc, opt);
    const UvGrid uvg = build_uv_grid(sc.uv_grid_points);
    const FarFieldPattern iso_cut = radiate(res.j_iso, placed_iso, grid, sc.frequency_hz);
    const FarFieldPattern iso_uv = radiate(res.j_iso, placed_iso, uvg.grid, sc.frequency_hz);

    const Eigen::VectorXd taper =
        sc.amplitude_taper == "hann" ? hann_taper(lattice) : Eigen::VectorXd();

    auto mse_csv = open_out(dir / "mse_vs_steering.csv");
    mse_csv << "theta0_deg,method,mse_db2,region_samples,region_theta_min_deg,"
               "region_theta_max_deg\n";

    for (double theta0 : sc.steer_thetas_deg) {
        const Eigen::VectorXcd w = steering_weights(lattice, theta0, sc.steer_phi_deg, taper);
        const std::string label = steer_label(theta0);

        // Synthesis commutes with radiation, so combine currents first.
        const FarFieldPattern f_oracle =
            radiate(combine_currents(oracle, w), placed, grid, sc.frequency_hz);
        const FarFieldPattern f_prop =
            radiate(combine_currents(res.estimated, w), placed, grid, sc.frequency_hz);
        const FarFieldPattern f_pmm = pmm_isolated(iso_cut, lattice, w);

        write_pattern_csv(dir / ("pattern_oracle_steer_" + label + ".csv"), f_oracle);
        write_pattern_csv(dir / ("pattern_proposed_steer_" + label + ".csv"), f_prop);
        write_pattern_csv(dir / ("pattern_pmm_steer_" + label + ".csv"), f_pmm);

        const FarFieldPattern n_oracle = peak_normalize(f_oracle);
        MseReport mse_prop =
            main_lobe_mse(n_oracle, peak_normalize(f_prop), theta0, sc.steer_phi_deg);
        mse_prop.method = "proposed";
        MseReport mse_pmm =
            main_lobe_mse(n_oracle, peak_normalize(f_pmm), theta0, sc.steer_phi_deg);
        mse_pmm.method = "pmm-isolated";
        for (const MseReport* r : {&mse_prop, &mse_pmm})
            mse_csv << fmt(theta0) << ',' << r->method << ',' << fmt(r->mse_db2) << ','
                    << r->region_samples << ',' << fmt(r->region_theta_min_deg) << ','
                    << fmt(r->region_theta_max_deg) << "\n";

        const auto db_o = normalized_db(
            radiate(combine_currents(oracle, w), placed, uvg.grid, sc.frequency_hz));
        const auto db_p = normalized_db(
            radiate(combine_currents(res.estimated, w), placed, uvg.grid, sc.frequency_hz));
        const auto db_m = normalized_db(pmm_isolated(iso_uv, lattice, w));
        write_uv_error_csv(dir / ("uv_error_proposed_steer_" + label + ".csv"), uvg, db_o, db_p);
        write_uv_error_csv(dir / ("uv_error_pmm_steer_" + label + ".csv"), uvg, db_o, db_m);
    }
}

ScalingReport run_bench(const Scenario& sc, const RunOptions& opt)
{
    const fs::path dir = effective_out_dir(sc, opt);
    write_manifest(sc, opt, "bench", dir);

    BenchParams params;
    params.dx_wavelengths = sc.dx_wavelengths;
    params.dy_wavelengths = sc.dy_wavelengths;
    params.frequency_hz = sc.frequency_hz;
    params.termination = sc.termination();
    params.repeats = sc.bench_repeats;

    const ScalingReport report = scaling_benchmark(sc.bench_sizes, sc.element(), params);

    {
        auto out = open_out(dir / "bench.csv");
        out << "nx,ny,unknowns_decomp,unknowns_oracle,t_decomp_ms,t_oracle_ms,speedup\n";
        for (const auto& s : report.samples)
            out << s.nx << ',' << s.ny << ',' << s.unknowns_decomp << ',' << s.unknowns_oracle
                << ',' << fmt(s.t_decomp_ms) << ',' << fmt(s.t_oracle_ms) << ','
                << fmt(s.speedup) << "\n";
    }
    {
        auto out = open_out(dir / "bench_summary.txt");
        out << "size   unk_dec  unk_ora  fill_dec_ms  solve_dec_ms  fill_ora_ms  solve_ora_ms  "
               "speedup\n";
        char line[256];
        for (const auto& s : report.samples) {
            std::snprintf(line, sizeof line,
                          "%2dx%-2d  %7ld  %7ld  %11.3f  %12.3f  %11.3f  %12.3f  %7.2f\n", s.nx,
                          s.ny, s.unknowns_decomp, s.unknowns_oracle, s.t_fill_decomp_ms,
                          s.t_solve_decomp_ms, s.t_fill_oracle_ms, s.t_solve_oracle_ms,
                          s.speedup);
            out << line;
        }
        out << "fitted exponent (total time vs element count): decomposed "
            << fmt(report.decomp_exponent) << ", oracle " << fmt(report.oracle_exponent) << "\n";
    }
    return report;
}

} // namespace aepd

# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python bindings: one thin pass over every exposed
operation, checking shapes and a few frozen physical facts."""

import math

import numpy as np
import pytest

FREQ = 10e9
C0 = 299792458.0
LAM = C0 / FREQ


@pytest.fixture(scope="module")
def lattice(core):
    return core.build_lattice(3, 3, 0.14, 0.12, FREQ)


@pytest.fixture(scope="module")
def element(core):
    return core.discretize_dipole(0.47 * LAM, 0.001 * LAM, 11)


@pytest.fixture(scope="module")
def grid(core):
    return core.AngleGrid.theta_sweep(-90.0, 90.0, 2.0, [0.0, 90.0])


def test_lattice_and_ports(core, lattice):
    assert lattice.port_count == 9
    assert lattice.element_positions.shape == (9, 3)
    assert math.isclose(lattice.wavelength, LAM)
    assert core.port_index(3, 3, lattice) == 9
    assert core.inverse_port_index(9, lattice) == (3, 3)
    with pytest.raises(ValueError):
        core.build_lattice(0, 3, 0.14, 0.12, FREQ)


def test_element_mesh(core, element):
    assert element.size == 11
    assert element.feed_index == 5
    assert element.segment_midpoints.shape == (11, 3)


def test_isolated_solve(core, element):
    j = core.solve_isolated(element, FREQ)
    assert j.values.shape == (11,)
    zin = 1.0 / j.values[element.feed_index]
    assert 30.0 < zin.real < 70.0  # coarse delta-gap mesh reads low


def test_impedance_matrix(core, lattice, element):
    zm = core.fill_impedance_matrix(lattice, element)
    assert zm.z.shape == (99, 99)
    rel = np.abs(zm.z - zm.z.T).max() / np.abs(zm.z).max()
    assert rel < 1e-8


def test_full_pipeline(core, lattice, element, grid):
    term = core.PortTermination()
    j_iso = core.solve_isolated(element, FREQ)
    lat_u = core.build_lattice(3, 1, 0.14, 0.12, FREQ)
    lat_v = core.build_lattice(1, 3, 0.14, 0.12, FREQ)
    ju = core.solve_1d_array(core.Axis.U, lat_u, element, term)
    jv = core.solve_1d_array(core.Axis.V, lat_v, element, term)
    cu = core.build_axis_transfer(j_iso, ju, core.Axis.U)
    cv = core.build_axis_transfer(j_iso, jv, core.Axis.V)
    assert cu.n == 3 and cu.m == 11
    est = core.estimate_all_ports(j_iso, cu, cv)
    assert len(est) == 9
    assert est[0].context == core.CurrentContext.ESTIMATED_2D

    oracle = core.solve_2d_oracle(lattice, element, term)
    assert len(oracle) == 9

    # estimated currents track the oracle closely on this well-conditioned case
    spec_o = core.current_spectrum(oracle, 3, 3)
    spec_e = core.current_spectrum(est, 3, 3)
    assert np.abs(spec_o.db - spec_e.db).max() < 0.5

    # expanded Kronecker path agrees with the fused path
    c2d = core.kron_expand(cu, cv)
    one = core.estimate_currents_2d(j_iso, c2d, 5)
    assert np.abs(one.values - est[4].values).max() < 1e-12 * np.abs(est[4].values).max()


def test_radiation_and_synthesis(core, lattice, element, grid):
    term = core.PortTermination()
    oracle = core.solve_2d_oracle(lattice, element, term)
    aeps = [core.radiate(d, lattice, element, grid) for d in oracle]
    assert aeps[0].e_theta.shape == (grid.size,)

    w = core.steering_weights(lattice, 15.0, 0.0)
    assert w.shape == (9,)
    assert np.allclose(np.abs(w), 1.0)
    taper = core.hann_taper(lattice)
    wt = core.steering_weights(lattice, 15.0, 0.0, taper)
    assert np.allclose(np.abs(wt), taper)

    pat = core.peak_normalize(core.synthesize(aeps, w))
    assert pat.peak_normalized
    db = core.normalized_db(pat)
    assert max(db) == pytest.approx(0.0, abs=1e-9)

    j_iso = core.solve_isolated(element, FREQ)
    iso = core.radiate_isolated(j_iso, element, grid, FREQ)
    pmm = core.peak_normalize(core.pmm_isolated(iso, lattice, w))
    r_pmm = core.main_lobe_mse(pat, pmm, 15.0, 0.0)
    assert math.isfinite(r_pmm.mse_db2)
    assert r_pmm.region_samples > 0


def test_size_guard(core, element):
    big = core.build_lattice(50, 50, 0.14, 0.12, FREQ)
    with pytest.raises(RuntimeError):
        core.solve_2d_oracle(big, element, core.PortTermination())

"""Setup builders, machine states and region bookkeeping."""

import dataclasses

import numpy as np
import pytest

from crookslab.errors import (
    IndexOutOfLadder,
    InvalidParameter,
    NotEigenstate,
    ProfileNotFlat,
    RegionLeak,
)
from crookslab.model import (
    SIGMA_Z,
    MachineState,
    build_ladder_setup,
    build_lattice_setup,
    gaussian_packet,
    ladder_packet,
    machine_eigenstate,
    ramp_profile,
    random_region_state,
    region_indices,
    validate_setup,
)


def test_machine_state_validation():
    with pytest.raises(InvalidParameter):
        MachineState(vector=np.array([1.0, 1.0]))  # norm sqrt(2)
    with pytest.raises(InvalidParameter):
        MachineState(vector=np.eye(2))  # not 1-D
    psi = MachineState(vector=np.array([0.6, 0.8j]), label="probe")
    assert psi.dim == 2
    rho = psi.density()
    assert abs(np.trace(rho) - 1.0) < 1e-15
    np.testing.assert_allclose(rho[0, 1], 0.6 * (-0.8j), atol=1e-15)


def test_ladder_setup_structure(ladder):
    assert ladder.kind == "ladder"
    assert ladder.dim_machine == 12 and ladder.dim_system == 2
    # control-major: rung energies repeat once per control value
    np.testing.assert_allclose(np.diag(ladder.h_m).real, list(range(6)) * 2, atol=0)
    np.testing.assert_allclose(np.diag(ladder.pi_i).real, [1] * 6 + [0] * 6, atol=0)
    np.testing.assert_allclose(np.diag(ladder.pi_f).real, [0] * 6 + [1] * 6, atol=0)
    np.testing.assert_allclose(ladder.h_s_i, np.diag([0.0, 1.0]), atol=0)
    np.testing.assert_allclose(ladder.h_s_f, np.diag([0.0, 2.0]), atol=0)
    assert ladder.params["n_rungs"] == 6
    # joint excited state in region f: rung 4 -> energy 4 + 2
    joint = np.diag(ladder.h_total).real
    assert joint[(6 + 4) * 2 + 1] == pytest.approx(6.0)
    validate_setup(ladder)


def test_ladder_setup_rejects_bad_parameters():
    with pytest.raises(InvalidParameter):
        build_ladder_setup(1, 1.0, 1.0, 2.0)
    with pytest.raises(InvalidParameter):
        build_ladder_setup(4, 0.0, 1.0, 2.0)
    with pytest.raises(InvalidParameter):
        build_ladder_setup(4, 1.0, -1.0, 2.0)


def test_validate_setup_catches_tampering(ladder):
    bad = dataclasses.replace(ladder, h_total=ladder.h_total + np.eye(24) * 1e-3)
    with pytest.raises(InvalidParameter):
        validate_setup(bad)
    skew = dataclasses.replace(ladder, pi_i=ladder.pi_i * 0.5)
    with pytest.raises(InvalidParameter):
        validate_setup(skew)


def test_region_helpers(ladder):
    np.testing.assert_array_equal(region_indices(ladder, "i"), np.arange(6))
    np.testing.assert_array_equal(region_indices(ladder, "f"), np.arange(6, 12))
    with pytest.raises(InvalidParameter):
        ladder.region_projector("middle")
    np.testing.assert_allclose(ladder.h_system("i"), ladder.h_s_i, atol=0)
    np.testing.assert_allclose(ladder.h_system("f"), ladder.h_s_f, atol=0)


def test_ramp_profile_values():
    prof = ramp_profile(7, 2, 5, 1.0, 4.0)
    np.testing.assert_allclose(prof, [1.0, 1.0, 1.0, 2.0, 3.0, 4.0, 4.0], atol=1e-15)
    with pytest.raises(InvalidParameter):
        ramp_profile(7, 5, 2, 1.0, 4.0)


def test_lattice_setup_structure():
    prof = ramp_profile(8, 2, 5, 0.0, 0.5)
    setup = build_lattice_setup(8, 1.0, prof, 2, 5)
    assert setup.kind == "lattice"
    assert setup.dim_machine == 8
    # hopping off-diagonals
    assert setup.h_m[0, 1] == pytest.approx(-1.0)
    assert setup.h_m[1, 0] == pytest.approx(-1.0)
    assert setup.h_m[0, 2] == 0.0
    # interaction is E(x) sigma_z, so (site, ground) sees -E(x)
    assert setup.h_int[2 * 6, 2 * 6] == pytest.approx(-prof[6])
    assert setup.h_int[2 * 6 + 1, 2 * 6 + 1] == pytest.approx(+prof[6])
    np.testing.assert_allclose(setup.h_s_i, 0.0 * SIGMA_Z, atol=0)
    np.testing.assert_allclose(setup.h_s_f, 0.5 * SIGMA_Z, atol=0)
    validate_setup(setup)


def test_lattice_setup_requires_flat_plateaus():
    prof = ramp_profile(8, 2, 5, 0.0, 0.5)
    bent = prof.copy()
    bent[0] = 0.1
    with pytest.raises(ProfileNotFlat):
        build_lattice_setup(8, 1.0, bent, 2, 5)
    bent = prof.copy()
    bent[7] = 0.4
    with pytest.raises(ProfileNotFlat):
        build_lattice_setup(8, 1.0, bent, 2, 5)
    with pytest.raises(InvalidParameter):
        build_lattice_setup(8, 1.0, prof[:5], 2, 5)


def test_gaussian_packet_shape_and_leak():
    psi = gaussian_packet(40, center=10.0, width=2.0, momentum=0.5)
    assert abs(np.linalg.norm(psi.vector) - 1.0) < 1e-12
    x = np.arange(40, dtype=float)
    ref = np.exp(-((x - 10.0) ** 2) / (4.0 * 2.0**2)) * np.exp(1j * 0.5 * x)
    ref /= np.linalg.norm(ref)
    np.testing.assert_allclose(psi.vector, ref, atol=1e-12)
    assert psi.label == "packet[c=10;w=2;k=0.5]"
    assert psi.region_leak is None

    with pytest.raises(RegionLeak) as err:
        gaussian_packet(40, center=10.0, width=2.0, momentum=0.5, region=(9, 11))
    assert err.value.leak > 0.1

    wide = gaussian_packet(40, center=10.0, width=1.0, momentum=0.0, region=(0, 25))
    assert wide.region_leak is not None and wide.region_leak < 1e-8


def test_gaussian_packet_rejects_bad_geometry():
    with pytest.raises(InvalidParameter):
        gaussian_packet(10, center=4.0, width=0.0, momentum=0.0)
    with pytest.raises(InvalidParameter):
        gaussian_packet(10, center=12.0, width=1.0, momentum=0.0)


def test_machine_eigenstate_on_ladder(ladder):
    e3 = machine_eigenstate(ladder, "i", 3)
    np.testing.assert_allclose(ladder.h_m @ e3.vector, 3.0 * e3.vector, atol=1e-12)
    assert abs(abs(e3.vector[3]) - 1.0) < 1e-12
    assert e3.label == "E[i;3]"
    assert e3.region_leak == 0.0
    f2 = machine_eigenstate(ladder, "f", 2)
    np.testing.assert_allclose(ladder.h_m @ f2.vector, 2.0 * f2.vector, atol=1e-12)
    assert abs(abs(f2.vector[6 + 2]) - 1.0) < 1e-12
    with pytest.raises(IndexOutOfLadder):
        machine_eigenstate(ladder, "i", 6)


def test_machine_eigenstate_refuses_lattice():
    prof = ramp_profile(8, 2, 5, 0.0, 0.5)
    setup = build_lattice_setup(8, 1.0, prof, 2, 5)
    # hopping connects the region to the ramp, so region eigenstates are undefined
    with pytest.raises(NotEigenstate):
        machine_eigenstate(setup, "i", 0)


def test_ladder_packet_support(ladder):
    psi = ladder_packet(ladder, "f", center=2.5, width=1.0, momentum=0.3)
    assert np.all(psi.vector[:6] == 0.0)
    assert abs(np.linalg.norm(psi.vector) - 1.0) < 1e-12
    assert psi.label.startswith("packet[f;")
    assert psi.region_leak == 0.0


def test_random_region_state_is_seeded(ladder):
    a = random_region_state(ladder, "i", np.random.default_rng(5))
    b = random_region_state(ladder, "i", np.random.default_rng(5))
    np.testing.assert_array_equal(a.vector, b.vector)
    assert np.all(a.vector[6:] == 0.0)
    assert abs(np.linalg.norm(a.vector) - 1.0) < 1e-12
    c = random_region_state(ladder, "f", np.random.default_rng(5), label="probe")
    assert c.label == "probe"
    assert np.all(c.vector[:6] == 0.0)

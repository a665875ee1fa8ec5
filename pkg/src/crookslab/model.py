"""Hamiltonian builders and machine states for driven two-level systems.

Two laboratory archetypes are provided.  The ladder setup couples a control
qubit (regions "i" and "f") to a uniform energy ladder and a two-level
system: the interaction re-labels the system gap according to the control
region, and a commuting unitary moves excitations between regions with the
ladder absorbing the energy mismatch.  The lattice setup replaces the
control by the position of a particle hopping on a chain: the system gap
follows a site-dependent level-splitting profile E(x) that is flat on both
ends and ramps in between, so a wave packet crossing the ramp drags the
system gap from its initial to its final value.

Conventions.  The system qubit basis is ordered (ground, excited) and the
level-splitting operator sigma_z is represented as diag(-1, +1) in that
order.  Machine factors come first in every tensor product.  Units have
hbar = k_B = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    IndexOutOfLadder,
    InvalidParameter,
    NotEigenstate,
    ProfileNotFlat,
    RegionLeak,
)
from .linalg import (
    HilbertSpace,
    commutator_norm,
    eig_hermitian,
    is_hermitian,
    is_projector,
    max_abs,
    tensor,
)
from .policy import DEFAULT_POLICY, NumericPolicy

__all__ = [
    "SIGMA_Z",
    "MachineState",
    "Setup",
    "validate_setup",
    "build_ladder_setup",
    "ramp_profile",
    "build_lattice_setup",
    "gaussian_packet",
    "machine_eigenstate",
    "ladder_packet",
    "random_region_state",
    "region_indices",
]

# Basis order (ground, excited); see module docstring.
SIGMA_Z = np.diag([-1.0 + 0.0j, 1.0 + 0.0j])


@dataclass(frozen=True)
class MachineState:
    """Unit-norm amplitude vector over the machine factor.

    ``region_leak`` records the tail mass found outside the declared region
    at construction time (None when no region was declared).
    """

    vector: np.ndarray
    label: str = ""
    region_leak: float | None = None

    def __post_init__(self):
        vec = np.asarray(self.vector, dtype=complex)
        if vec.ndim != 1:
            raise InvalidParameter("machine state must be a 1-D amplitude vector")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > DEFAULT_POLICY.norm_tol:
            raise InvalidParameter(f"machine state norm {norm!r} is not 1 within {DEFAULT_POLICY.norm_tol}")
        object.__setattr__(self, "vector", vec)

    @property
    def dim(self) -> int:
        return self.vector.shape[0]

    def density(self) -> np.ndarray:
        return np.outer(self.vector, self.vector.conj())


@dataclass(frozen=True)
class Setup:
    """A machine+system laboratory: Hamiltonians, regions, and their sum.

    H_total = H_M(x)1_S + 1_M(x)H_S + H_int, with the region projectors
    Pi_i, Pi_f acting on the machine factor alone.  Within each region the
    effective system Hamiltonian is h_s_i / h_s_f.
    """

    kind: str
    space: HilbertSpace
    h_m: np.ndarray
    h_s: np.ndarray
    h_s_i: np.ndarray
    h_s_f: np.ndarray
    h_int: np.ndarray
    pi_i: np.ndarray
    pi_f: np.ndarray
    h_total: np.ndarray
    params: dict = field(default_factory=dict)

    @property
    def dim_machine(self) -> int:
        return self.space.dim_of("machine")

    @property
    def dim_system(self) -> int:
        return self.space.dim_of("system")

    def region_projector(self, region: str) -> np.ndarray:
        if region == "i":
            return self.pi_i
        if region == "f":
            return self.pi_f
        raise InvalidParameter(f"region must be 'i' or 'f', got {region!r}")

    def h_system(self, region: str) -> np.ndarray:
        return self.h_s_i if region == "i" else self.h_s_f if region == "f" else self.region_projector(region)


def validate_setup(setup: Setup, policy: NumericPolicy = DEFAULT_POLICY) -> None:
    """Check the Setup invariants; raise InvalidParameter on violation."""
    d_m, d_s = setup.dim_machine, setup.dim_system
    scale = max(1.0, max_abs(setup.h_total))
    if not is_hermitian(setup.h_total, policy.hermitian_tol * scale):
        raise InvalidParameter("H_total is not Hermitian")
    recomposed = tensor(setup.h_m, np.eye(d_s)) + tensor(np.eye(d_m), setup.h_s) + setup.h_int
    if max_abs(setup.h_total - recomposed) > policy.projector_tol * scale:
        raise InvalidParameter("H_total does not equal H_M + H_S + H_int")
    for name, pi in (("Pi_i", setup.pi_i), ("Pi_f", setup.pi_f)):
        if not is_projector(pi, policy.projector_tol):
            raise InvalidParameter(f"{name} is not an orthogonal projector")
    if max_abs(setup.pi_i @ setup.pi_f) > policy.projector_tol:
        raise InvalidParameter("region projectors are not mutually orthogonal")
    # Region identity: inside region k the system sees h_s_k on the nose.
    eye_s = np.eye(d_s)
    for pi, h_k in ((setup.pi_i, setup.h_s_i), (setup.pi_f, setup.h_s_f)):
        p_full = tensor(pi, eye_s)
        inside = p_full @ setup.h_total @ p_full
        declared = tensor(pi, h_k) + tensor(pi @ setup.h_m @ pi, eye_s)
        if max_abs(inside - declared) > policy.region_invariant_tol:
            raise InvalidParameter("region effective Hamiltonian differs from the declared one")


def build_ladder_setup(
    n_rungs: int,
    spacing: float,
    eps_i: float,
    eps_f: float,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> Setup:
    """Control qubit (x) uniform ladder machine, coupled to a qubit system.

    The control carries no energy of its own; regions are its basis states.
    System gap is eps_i in region i and eps_f in region f (ground level 0).
    Machine ordering is control-major: index = control*n_rungs + rung.
    """
    if n_rungs < 2:
        raise InvalidParameter("n_rungs must be at least 2")
    if spacing <= 0.0:
        raise InvalidParameter("ladder spacing must be positive")
    if eps_i < 0.0 or eps_f < 0.0:
        raise InvalidParameter("system gaps must be non-negative")
    n = int(n_rungs)
    h_w = np.diag(spacing * np.arange(n, dtype=float)).astype(complex)
    eye_w = np.eye(n)
    h_m = tensor(np.eye(2), h_w)
    pi_i = tensor(np.diag([1.0, 0.0]), eye_w)
    pi_f = tensor(np.diag([0.0, 1.0]), eye_w)
    h_s_i = np.diag([0.0, float(eps_i)]).astype(complex)
    h_s_f = np.diag([0.0, float(eps_f)]).astype(complex)
    h_s = np.zeros((2, 2), dtype=complex)
    h_int = tensor(pi_i, h_s_i) + tensor(pi_f, h_s_f)
    h_total = tensor(h_m, np.eye(2)) + tensor(np.eye(2 * n), h_s) + h_int
    setup = Setup(
        kind="ladder",
        space=HilbertSpace.of(("machine", 2 * n), ("system", 2)),
        h_m=h_m,
        h_s=h_s,
        h_s_i=h_s_i,
        h_s_f=h_s_f,
        h_int=h_int,
        pi_i=pi_i,
        pi_f=pi_f,
        h_total=h_total,
        params={"n_rungs": n, "spacing": float(spacing), "eps_i": float(eps_i), "eps_f": float(eps_f)},
    )
    validate_setup(setup, policy)
    return setup


def ramp_profile(n_sites: int, x_i: int, x_f: int, e_i: float, e_f: float) -> np.ndarray:
    """Level-splitting profile: e_i up to x_i, linear ramp, e_f from x_f on."""
    if not 0 <= x_i < x_f <= n_sites - 1:
        raise InvalidParameter("need 0 <= x_i < x_f <= n_sites-1")
    x = np.arange(n_sites, dtype=float)
    t = np.clip((x - x_i) / (x_f - x_i), 0.0, 1.0)
    return e_i + (e_f - e_i) * t


def build_lattice_setup(
    n_sites: int,
    hop: float,
    e_profile: Sequence[float],
    x_i: int,
    x_f: int,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> Setup:
    """Particle on a chain whose position sets the system's level splitting.

    H_M is the real hopping Hamiltonian -hop*sum(|x><x+1| + h.c.);
    H_int = sum_x E(x)|x><x| (x) sigma_z.  The profile must be constant on
    the plateaus x <= x_i and x >= x_f so each region has a well-defined
    effective system Hamiltonian E_k*sigma_z.
    """
    if n_sites < 2:
        raise InvalidParameter("n_sites must be at least 2")
    if hop <= 0.0:
        raise InvalidParameter("hop must be positive")
    profile = np.asarray(e_profile, dtype=float)
    if profile.shape != (n_sites,):
        raise InvalidParameter("E_profile must provide one energy per site")
    if not 0 <= x_i < x_f <= n_sites - 1:
        raise InvalidParameter("need 0 <= x_i < x_f <= n_sites-1")
    if np.any(profile[: x_i + 1] != profile[x_i]):
        raise ProfileNotFlat(f"E_profile is not constant on sites <= x_i={x_i}")
    if np.any(profile[x_f:] != profile[x_f]):
        raise ProfileNotFlat(f"E_profile is not constant on sites >= x_f={x_f}")
    e_i, e_f = float(profile[x_i]), float(profile[x_f])

    h_m = np.zeros((n_sites, n_sites), dtype=complex)
    idx = np.arange(n_sites - 1)
    h_m[idx, idx + 1] = -hop
    h_m[idx + 1, idx] = -hop
    pi_i = np.diag((np.arange(n_sites) <= x_i).astype(float)).astype(complex)
    pi_f = np.diag((np.arange(n_sites) >= x_f).astype(float)).astype(complex)
    h_s = np.zeros((2, 2), dtype=complex)
    h_s_i = e_i * SIGMA_Z
    h_s_f = e_f * SIGMA_Z
    h_int = tensor(np.diag(profile).astype(complex), SIGMA_Z)
    h_total = tensor(h_m, np.eye(2)) + tensor(np.eye(n_sites), h_s) + h_int
    setup = Setup(
        kind="lattice",
        space=HilbertSpace.of(("machine", n_sites), ("system", 2)),
        h_m=h_m,
        h_s=h_s,
        h_s_i=h_s_i,
        h_s_f=h_s_f,
        h_int=h_int,
        pi_i=pi_i,
        pi_f=pi_f,
        h_total=h_total,
        params={
            "n_sites": int(n_sites),
            "hop": float(hop),
            "x_i": int(x_i),
            "x_f": int(x_f),
            "e_i": e_i,
            "e_f": e_f,
            "e_profile": tuple(float(v) for v in profile),
        },
    )
    validate_setup(setup, policy)
    return setup


def region_indices(setup: Setup, region: str, policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Machine basis indices spanned by the region projector.

    Requires the projector to be diagonal 0/1 in the machine basis, which
    holds for both builders.
    """
    pi = setup.region_projector(region)
    diag = np.real(np.diag(pi))
    if max_abs(pi - np.diag(diag)) > policy.projector_tol:
        raise InvalidParameter("region projector is not diagonal in the machine basis")
    return np.where(diag > 0.5)[0]


def gaussian_packet(
    space,
    center: float,
    width: float,
    momentum: float,
    region: tuple[int, int] | None = None,
    policy: NumericPolicy = DEFAULT_POLICY,
    label: str | None = None,
) -> MachineState:
    """Normalized Gaussian wave packet over machine sites.

    Amplitudes are exp(-(x-center)^2/(4*width^2)) * exp(i*momentum*x).
    ``space`` may be a site count, a HilbertSpace, or a Setup.  When a
    ``region`` (lo, hi) of intended support is declared, the tail mass
    outside it is recorded on the state and must not exceed
    policy.region_leak_tol.
    """
    if isinstance(space, Setup):
        n = space.dim_machine
    elif isinstance(space, HilbertSpace):
        n = space.dim_of("machine")
    else:
        n = int(space)
    if width <= 0.0:
        raise InvalidParameter("packet width must be positive")
    if not 0 <= center <= n - 1:
        raise InvalidParameter(f"packet center {center} outside sites 0..{n - 1}")
    x = np.arange(n, dtype=float)
    amps = np.exp(-((x - center) ** 2) / (4.0 * width**2)) * np.exp(1j * momentum * x)
    amps /= np.linalg.norm(amps)
    leak = None
    if region is not None:
        lo, hi = region
        inside = np.zeros(n, dtype=bool)
        inside[lo : hi + 1] = True
        leak = float(np.sum(np.abs(amps[~inside]) ** 2))
        if leak > policy.region_leak_tol:
            raise RegionLeak(
                f"packet(center={center}, width={width}) leaks {leak:.3e} outside sites {lo}..{hi}"
                f" (threshold {policy.region_leak_tol:.1e})",
                leak=leak,
            )
    if label is None:
        label = f"packet[c={center:g};w={width:g};k={momentum:g}]"
    return MachineState(vector=amps, label=label, region_leak=leak)


def machine_eigenstate(
    setup: Setup,
    region: str,
    index: int,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> MachineState:
    """The ``index``-th machine eigenstate supported in a region.

    Defined only when H_M commutes with the region projector (ladder setup);
    the lattice hopping term connects regions to the ramp, so there packets
    must be used instead.
    """
    pi = setup.region_projector(region)
    scale = max(1.0, max_abs(setup.h_m))
    if commutator_norm(setup.h_m, pi) > policy.region_invariant_tol * scale:
        raise NotEigenstate(
            f"H_M does not commute with the region-{region} projector; "
            "use wave packets for this setup"
        )
    sites = region_indices(setup, region, policy)
    if not 0 <= index < sites.size:
        raise IndexOutOfLadder(f"eigenstate index {index} outside 0..{sites.size - 1} for region {region}")
    sub = setup.h_m[np.ix_(sites, sites)]
    dec = eig_hermitian(sub, policy)
    vec = np.zeros(setup.dim_machine, dtype=complex)
    vec[sites] = dec.eigenvectors[:, index]
    residual = max_abs(setup.h_m @ vec - dec.eigenvalues[index] * vec)
    if residual > policy.region_invariant_tol * scale:
        raise NotEigenstate(f"region-restricted vector misses H_M eigenstate by {residual:.3e}")
    return MachineState(vector=vec, label=f"E[{region};{index}]", region_leak=0.0)


def ladder_packet(
    setup: Setup,
    region: str,
    center: float,
    width: float,
    momentum: float = 0.0,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> MachineState:
    """Gaussian superposition over the rungs of one ladder region."""
    sites = region_indices(setup, region, policy)
    inner = gaussian_packet(sites.size, center, width, momentum, policy=policy)
    vec = np.zeros(setup.dim_machine, dtype=complex)
    vec[sites] = inner.vector
    label = f"packet[{region};c={center:g};w={width:g};k={momentum:g}]"
    return MachineState(vector=vec, label=label, region_leak=0.0)


def random_region_state(
    setup: Setup,
    region: str,
    rng: np.random.Generator,
    label: str | None = None,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> MachineState:
    """Haar-like random machine state supported on one region."""
    sites = region_indices(setup, region, policy)
    amps = rng.standard_normal(sites.size) + 1j * rng.standard_normal(sites.size)
    amps /= np.linalg.norm(amps)
    vec = np.zeros(setup.dim_machine, dtype=complex)
    vec[sites] = amps
    return MachineState(vector=vec, label=label or f"random[{region}]", region_leak=0.0)

"""Energy-conserving evolutions and the forward/reverse transition protocol.

The forward experiment prepares the machine in phi_i (the temperature-paired
version of psi_i) next to a system thermal state gamma(H_S^i), applies an
energy-conserving, time-reversal-invariant unitary V, and measures the
machine against psi_f.  The reverse experiment prepares the reversed
phi_f alongside gamma(H_S^f) and measures against the reversed psi_i.
The ratio of the two outcome probabilities is the subject of the coherent
Crooks equality checked in :mod:`crookslab.verify`.

V is either exp(-i*H_total*t) (autonomous variant) or assembled from
arbitrary unitaries acting within degenerate eigenspaces of H_total
(externally controlled variant).  Blocks are chosen complex symmetric in
the reversal basis, which makes V time-reversal invariant by construction.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    CrooksLabError,
    InvalidParameter,
    NoConvergence,
    NoDegeneracyWarning,
    PreconditionViolated,
    RegionLeak,
)
from .linalg import commutator_norm, eig_hermitian, func_hermitian, group_degenerate, max_abs
from .model import MachineState, Setup
from .policy import DEFAULT_POLICY, NumericPolicy
from .reversal import ReversalBasis, reverse, reverse_state
from .thermal import gibbs_state, pair_state

__all__ = [
    "DesignatedSwap",
    "EvolutionSpec",
    "ProtocolRun",
    "MachineChannel",
    "autonomous_unitary",
    "energy_conserving_unitary",
    "make_run",
    "forward_probability",
    "reverse_probability",
    "induced_channel",
]


@dataclass(frozen=True)
class DesignatedSwap:
    """Deterministic two-level rotations inside resonant blocks.

    Pairs every region-i basis state with the resonant region-f basis state
    carrying the same system label, in ascending order, and rotates each
    pair by ``angle`` (pi/2 swaps completely, with a phase i on the moved
    amplitude).
    """

    angle: float = np.pi / 2.0


@dataclass(frozen=True)
class EvolutionSpec:
    """How V is generated: autonomous flight time or external block recipe."""

    kind: str
    time: float | None = None
    block_seed: int | DesignatedSwap | None = None

    def __post_init__(self):
        if self.kind not in ("autonomous", "external"):
            raise InvalidParameter(f"evolution kind must be 'autonomous' or 'external', got {self.kind!r}")
        if self.kind == "autonomous":
            if self.time is None or self.time < 0.0:
                raise InvalidParameter("autonomous evolution needs time >= 0")
        else:
            if not isinstance(self.block_seed, (int, np.integer, DesignatedSwap)):
                raise InvalidParameter("external evolution needs an integer block seed or a DesignatedSwap")


@dataclass(frozen=True)
class ProtocolRun:
    """Immutable bundle of everything one Crooks comparison needs.

    phi_i, phi_f are derived from psi_i, psi_f by the temperature-dependent
    pairing exp(-H_M/2T); the reverse experiment additionally reverses its
    states in ``basis``.
    """

    setup: Setup
    v: np.ndarray
    T: float
    psi_i: MachineState
    psi_f: MachineState
    phi_i: MachineState
    phi_f: MachineState
    basis: ReversalBasis
    evolution_kind: str = "external"


def autonomous_unitary(
    setup: Setup,
    time: float,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> np.ndarray:
    """V = exp(-i*H_total*time); commutes with H_total by construction."""
    if time < 0.0:
        raise InvalidParameter("evolution time must be non-negative")
    return func_hermitian(setup.h_total, lambda w: np.exp(-1j * w * time), policy)


def _reversal_frame(
    h: np.ndarray,
    basis: ReversalBasis,
    policy: NumericPolicy,
) -> np.ndarray:
    """H_total expressed in reversal coordinates, verified real symmetric."""
    b = basis.basis
    h_rev = h if basis.is_identity else b.conj().T @ h @ b
    scale = max(1.0, max_abs(h))
    if max_abs(h_rev.imag) > policy.tr_invariance_tol * scale:
        raise InvalidParameter("H_total is not time-reversal invariant in the declared basis")
    h_real = np.real(h_rev)
    return 0.5 * (h_real + h_real.T)


def _symmetric_block_unitary(h_block: np.ndarray) -> np.ndarray:
    """exp(i*h) for real symmetric h: unitary and complex symmetric."""
    hw, hq = np.linalg.eigh(0.5 * (h_block + h_block.T))
    return (hq * np.exp(1j * hw)) @ hq.T


def _designated_swap(
    setup: Setup,
    hr: np.ndarray,
    angle: float,
    policy: NumericPolicy,
) -> np.ndarray:
    dim = hr.shape[0]
    if max_abs(hr - np.diag(np.diag(hr))) > policy.degeneracy_tol * max(1.0, max_abs(hr)):
        raise InvalidParameter("designated swaps need H_total diagonal in the reversal basis")
    energies = np.real(np.diag(hr))
    dim_s = setup.dim_system
    in_i = np.real(np.diag(setup.pi_i)) > 0.5
    in_f = np.real(np.diag(setup.pi_f)) > 0.5
    order = np.argsort(energies, kind="stable")
    blocks = group_degenerate(energies[order], policy.degeneracy_tol)

    v = np.eye(dim, dtype=complex)
    c, s = np.cos(angle), np.sin(angle)
    n_pairs = 0
    for block in blocks:
        members = np.sort(order[block])
        for sys_label in range(dim_s):
            same_sys = members[members % dim_s == sys_label]
            from_i = [k for k in same_sys if in_i[k // dim_s]]
            from_f = [k for k in same_sys if in_f[k // dim_s]]
            for a, b in zip(from_i, from_f):
                v[a, a] = v[b, b] = c
                v[a, b] = v[b, a] = 1j * s
                n_pairs += 1
    if n_pairs == 0:
        warnings.warn(
            "no resonant pairs connect the regions; V is the identity and "
            "inter-region transition probabilities vanish",
            NoDegeneracyWarning,
        )
    return v


def _random_blocks(
    hr: np.ndarray,
    seed: int,
    policy: NumericPolicy,
) -> np.ndarray:
    try:
        w, q = np.linalg.eigh(hr)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed: {exc}") from exc
    blocks = group_degenerate(w, policy.degeneracy_tol)
    if all(block.size == 1 for block in blocks):
        warnings.warn(
            "every energy eigenspace is one-dimensional; V is diagonal and "
            "allows no transitions",
            NoDegeneracyWarning,
        )
    rng = np.random.default_rng(seed)
    v = np.zeros(hr.shape, dtype=complex)
    for block in blocks:
        qb = q[:, block]
        h_block = rng.standard_normal((block.size, block.size))
        u_block = _symmetric_block_unitary(0.5 * (h_block + h_block.T))
        v += qb @ u_block @ qb.T
    return v


def energy_conserving_unitary(
    setup: Setup,
    spec: EvolutionSpec,
    basis: ReversalBasis | None = None,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> np.ndarray:
    """Assemble V from unitaries confined to degenerate eigenspaces of H_total.

    Each block unitary is complex symmetric in the reversal basis, so V is
    time-reversal invariant; block confinement makes [H_total, V] vanish up
    to the degeneracy grouping tolerance.  Warns NoDegeneracyWarning when
    the construction cannot move anything.
    """
    if spec.kind != "external":
        raise InvalidParameter("energy_conserving_unitary expects an external EvolutionSpec")
    if basis is None:
        basis = ReversalBasis.computational(setup.h_total.shape[0])
    hr = _reversal_frame(setup.h_total, basis, policy)
    if isinstance(spec.block_seed, DesignatedSwap):
        v = _designated_swap(setup, hr, spec.block_seed.angle, policy)
    else:
        v = _random_blocks(hr, int(spec.block_seed), policy)
    if basis.is_identity:
        return v
    b = basis.basis
    return b @ v @ b.conj().T


def _as_machine_state(value, label: str) -> MachineState:
    if isinstance(value, MachineState):
        return value
    return MachineState(vector=np.asarray(value, dtype=complex), label=label)


def make_run(
    setup: Setup,
    v: np.ndarray,
    T: float,
    psi_i,
    psi_f,
    basis: ReversalBasis | None = None,
    evolution_kind: str = "external",
    policy: NumericPolicy = DEFAULT_POLICY,
) -> ProtocolRun:
    """Validate the V invariants and derive the temperature-paired states."""
    if T <= 0.0:
        raise InvalidParameter("temperature must be positive")
    if basis is None:
        basis = ReversalBasis.computational(setup.h_total.shape[0])
    psi_i = _as_machine_state(psi_i, "psi_i")
    psi_f = _as_machine_state(psi_f, "psi_f")

    failures: list[str] = []
    vv = v.conj().T @ v
    unit_defect = max_abs(vv - np.eye(v.shape[0]))
    if unit_defect > policy.unitarity_tol:
        failures.append(f"V unitarity defect {unit_defect:.3e} > {policy.unitarity_tol:.1e}")
    comm = commutator_norm(setup.h_total, v)
    comm_bound = policy.commutator_tol * max(1.0, max_abs(setup.h_total)) * max(1.0, max_abs(v))
    if comm > comm_bound:
        failures.append(f"[H_total, V] = {comm:.3e} > {comm_bound:.1e}")
    tr_defect = max_abs(reverse(v, basis) - v)
    if tr_defect > policy.tr_invariance_tol:
        failures.append(f"V time-reversal defect {tr_defect:.3e} > {policy.tr_invariance_tol:.1e}")
    if failures:
        raise PreconditionViolated(failures)

    phi_i = pair_state(psi_i, setup.h_m, T, policy)
    phi_f = pair_state(psi_f, setup.h_m, T, policy)
    return ProtocolRun(
        setup=setup,
        v=v,
        T=float(T),
        psi_i=psi_i,
        psi_f=psi_f,
        phi_i=phi_i,
        phi_f=phi_f,
        basis=basis,
        evolution_kind=evolution_kind,
    )


def _check_region_support(
    setup: Setup,
    vec: np.ndarray,
    region: str,
    role: str,
    policy: NumericPolicy,
) -> None:
    pi = setup.region_projector(region)
    leak = 1.0 - float(np.real(vec.conj() @ (pi @ vec)))
    if leak > policy.region_leak_tol:
        raise RegionLeak(
            f"{role} state carries mass {leak:.3e} outside region {region}"
            f" (threshold {policy.region_leak_tol:.1e})",
            leak=leak,
        )


def _transition(
    setup: Setup,
    v: np.ndarray,
    prepared: np.ndarray,
    gamma_s: np.ndarray,
    measured: np.ndarray,
    policy: NumericPolicy,
) -> float:
    rho = np.kron(np.outer(prepared, prepared.conj()), gamma_s)
    evolved = v @ rho @ v.conj().T
    proj = np.kron(np.outer(measured, measured.conj()), np.eye(setup.dim_system))
    p = float(np.real(np.trace(proj @ evolved)))
    if p < -policy.probability_tol or p > 1.0 + policy.probability_tol:
        raise CrooksLabError(f"transition probability {p!r} falls outside [0, 1]")
    return min(max(p, 0.0), 1.0)


def forward_probability(run: ProtocolRun, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Probability to find psi_f after V acts on phi_i (x) gamma(H_S^i)."""
    _check_region_support(run.setup, run.phi_i.vector, "i", "forward prepared", policy)
    _check_region_support(run.setup, run.psi_f.vector, "f", "forward measured", policy)
    gamma = gibbs_state(run.setup.h_s_i, run.T, policy)
    return _transition(run.setup, run.v, run.phi_i.vector, gamma, run.psi_f.vector, policy)


def reverse_probability(run: ProtocolRun, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Probability to find the reversed psi_i after V acts on the reversed phi_f (x) gamma(H_S^f)."""
    prepared = reverse_state(run.phi_f.vector, run.basis)
    measured = reverse_state(run.psi_i.vector, run.basis)
    _check_region_support(run.setup, prepared, "f", "reverse prepared", policy)
    _check_region_support(run.setup, measured, "i", "reverse measured", policy)
    gamma = gibbs_state(run.setup.h_s_f, run.T, policy)
    return _transition(run.setup, run.v, prepared, gamma, measured, policy)


@dataclass(frozen=True)
class MachineChannel:
    """The machine-side channel rho -> Tr_S[V(rho (x) gamma)V^dag] in Kraus form."""

    kraus: tuple[np.ndarray, ...]
    dim: int
    which: str
    T: float

    def __call__(self, rho_m: np.ndarray) -> np.ndarray:
        rho_m = np.asarray(rho_m, dtype=complex)
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for k in self.kraus:
            out += k @ rho_m @ k.conj().T
        return out

    def apply(self, rho_m: np.ndarray) -> np.ndarray:
        return self(rho_m)

    def choi(self) -> np.ndarray:
        """sum_jk |j><k| (x) E(|j><k|), input factor first."""
        c = np.zeros((self.dim**2, self.dim**2), dtype=complex)
        for k in self.kraus:
            w = k.T.reshape(-1)
            c += np.outer(w, w.conj())
        return c

    def trace_preservation_defect(self) -> float:
        acc = np.zeros((self.dim, self.dim), dtype=complex)
        for k in self.kraus:
            acc += k.conj().T @ k
        return max_abs(acc - np.eye(self.dim))

    def choi_min_eigenvalue(self) -> float:
        w = np.linalg.eigvalsh(self.choi())
        return float(w[0])


def induced_channel(
    setup: Setup,
    v: np.ndarray,
    which: str,
    T: float,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> MachineChannel:
    """Kraus form of the thermal operation the protocol induces on the machine.

    ``which`` selects the bath: gamma(H_S^i) for "forward", gamma(H_S^f)
    for "reverse"; V is common to both directions.
    """
    if which not in ("forward", "reverse"):
        raise InvalidParameter(f"which must be 'forward' or 'reverse', got {which!r}")
    h_sys = setup.h_s_i if which == "forward" else setup.h_s_f
    gamma = gibbs_state(h_sys, T, policy)
    dec = eig_hermitian(gamma, policy)
    weights = np.clip(np.real(dec.eigenvalues), 0.0, None)
    d_m, d_s = setup.dim_machine, setup.dim_system
    v_r = np.asarray(v, dtype=complex).reshape(d_m, d_s, d_m, d_s)
    kraus = []
    for s in range(d_s):
        if weights[s] == 0.0:
            continue
        # (1 (x) <t|) V (1 (x) |u_s>), one Kraus operator per output level t
        block = np.tensordot(v_r, dec.eigenvectors[:, s], axes=([3], [0]))
        for t in range(d_s):
            kraus.append(np.sqrt(weights[s]) * block[:, t, :])
    return MachineChannel(kraus=tuple(kraus), dim=d_m, which=which, T=float(T))

"""Thermodynamic quantities for finite quantum systems.

Units: hbar = k_B = 1, so temperature carries energy units and beta = 1/T.
Everything Boltzmann-weighted is evaluated in log space with a max-shift, so
results stay finite even when the temperature is far below the spectral
width of the Hamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSupport, InvalidParameter
from .linalg import eig_hermitian, group_degenerate, max_abs
from .policy import DEFAULT_POLICY, NumericPolicy

__all__ = [
    "ThermalQuantities",
    "log_partition",
    "partition_function",
    "free_energy",
    "gibbs_state",
    "e_tilde",
    "gibbs_map",
    "pair_state",
    "dephase",
    "thermal_quantities",
]


@dataclass(frozen=True)
class ThermalQuantities:
    """Partition function and free energy of a Hamiltonian plus, when a
    state is supplied, their state-dependent generalisations."""

    Z: float
    F: float
    Z_tilde: float | None = None
    E_tilde: float | None = None


def _check_temperature(T: float) -> float:
    T = float(T)
    if not T > 0:
        raise InvalidParameter(f"temperature must be positive, got {T}")
    return T


def _log_sum_exp(log_terms: np.ndarray) -> float:
    m = float(np.max(log_terms))
    return m + float(np.log(np.sum(np.exp(log_terms - m))))


def log_partition(h: np.ndarray, T: float, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """ln Z = ln Tr[exp(-H/T)], computed with the max-shift trick."""
    T = _check_temperature(T)
    w = eig_hermitian(h, policy).eigenvalues
    return _log_sum_exp(-w / T)


def partition_function(h: np.ndarray, T: float, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    return float(np.exp(log_partition(h, T, policy)))


def free_energy(h: np.ndarray, T: float, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Equilibrium free energy F = -T ln Tr[exp(-H/T)]."""
    T = _check_temperature(T)
    return -T * log_partition(h, T, policy)


def gibbs_state(h: np.ndarray, T: float, policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Thermal state exp(-H/T) / Z: positive, unit trace, commutes with H."""
    T = _check_temperature(T)
    dec = eig_hermitian(h, policy)
    w = dec.eigenvalues
    p = np.exp(-(w - w.min()) / T)
    p /= p.sum()
    u = dec.eigenvectors
    return (u * p) @ u.conj().T


def _energy_weights(rho: np.ndarray, h: np.ndarray, policy: NumericPolicy) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of ``h`` and the populations of ``rho`` on them.

    ``rho`` may be a density matrix or a pure-state vector; tiny negative
    populations from roundoff are clipped to zero.
    """
    dec = eig_hermitian(h, policy)
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 1:
        amp = dec.eigenvectors.conj().T @ rho
        q = np.abs(amp) ** 2
    else:
        q = np.real(np.einsum("ij,jk,ki->i", dec.eigenvectors.conj().T, rho, dec.eigenvectors))
    return dec.eigenvalues, np.maximum(q, 0.0)


def e_tilde(
    rho: np.ndarray,
    h: np.ndarray,
    T: float,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> float:
    """Boltzmann-weighted energy scale -T ln Tr[exp(-H/T) rho].

    Equals the eigenvalue on an energy eigenstate, is bounded above by the
    average energy, and depends only on the energy populations of the state.
    ``rho`` may be a density matrix or a pure-state vector.
    """
    T = _check_temperature(T)
    w, q = _energy_weights(rho, h, policy)
    support = q > 0.0
    if not np.any(support):
        raise DegenerateSupport("state has no weight on any energy eigenspace")
    log_terms = -w[support] / T + np.log(q[support])
    return -T * _log_sum_exp(log_terms)


def gibbs_map(
    rho: np.ndarray,
    h: np.ndarray,
    T: float,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> np.ndarray:
    """Conjugate ``rho`` by exp(-H/2T) and renormalize.

    A non-dephasing thermal rescaling: energy eigenstates are fixed points,
    the maximally mixed state goes to the thermal state, and an equal
    superposition of eigenstates goes to the pure state with thermal
    populations.
    """
    T = _check_temperature(T)
    dec = eig_hermitian(h, policy)
    w, u = dec.eigenvalues, dec.eigenvectors
    half = np.exp(-(w - w.min()) / (2.0 * T))
    rho_e = u.conj().T @ np.asarray(rho, dtype=complex) @ u
    g = half[:, None] * rho_e * half[None, :]
    norm = float(np.real(np.trace(g)))
    if norm <= 0.0:
        raise DegenerateSupport("Boltzmann-weighted trace of the state vanished")
    g /= norm
    return u @ g @ u.conj().T


def pair_state(psi, h_m: np.ndarray, T: float, policy: NumericPolicy = DEFAULT_POLICY):
    """Normalized exp(-H_M/2T) |psi>: the pure-state form of the Gibbs map.

    Energy eigenstates pass through unchanged, global phase included.
    Accepts a bare vector or a model.MachineState and returns the same kind.
    """
    T = _check_temperature(T)
    from .model import MachineState  # local import: model sits above thermal

    vec = psi.vector if isinstance(psi, MachineState) else np.asarray(psi, dtype=complex)
    dec = eig_hermitian(h_m, policy)
    w, u = dec.eigenvalues, dec.eigenvectors
    amp = u.conj().T @ vec
    amp = np.exp(-(w - w.min()) / (2.0 * T)) * amp
    norm = float(np.linalg.norm(amp))
    if norm <= 0.0:
        raise DegenerateSupport("exp(-H/2T)|psi> underflowed to the zero vector")
    out = u @ (amp / norm)
    if isinstance(psi, MachineState):
        return MachineState(vector=out, label=f"paired({psi.label})")
    return out


def dephase(
    rho: np.ndarray,
    h: np.ndarray,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> np.ndarray:
    """Project out coherences between distinct energies of ``h``.

    Uses spectral projectors over degenerate blocks, so the result does not
    depend on any eigenvector choice inside a degenerate eigenspace.
    """
    dec = eig_hermitian(h, policy)
    u = dec.eigenvectors
    rho_e = u.conj().T @ np.asarray(rho, dtype=complex) @ u
    out = np.zeros_like(rho_e)
    for block in group_degenerate(dec.eigenvalues, policy.degeneracy_tol):
        sl = np.ix_(block, block)
        out[sl] = rho_e[sl]
    return u @ out @ u.conj().T


def thermal_quantities(
    h: np.ndarray,
    T: float,
    rho: np.ndarray | None = None,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> ThermalQuantities:
    """Bundle Z and F, plus the state-dependent Z-tilde and E-tilde when a
    state is given."""
    T = _check_temperature(T)
    ln_z = log_partition(h, T, policy)
    if rho is None:
        return ThermalQuantities(Z=float(np.exp(ln_z)), F=-T * ln_z)
    et = e_tilde(rho, h, T, policy)
    return ThermalQuantities(
        Z=float(np.exp(ln_z)),
        F=-T * ln_z,
        Z_tilde=float(np.exp(-et / T)),
        E_tilde=et,
    )

"""Residual checks for the coherent Crooks equality and its companions.

Every check computes both sides of one identity and reports the residual in
log space, which keeps tolerances scale-free when free-energy differences
are large compared to T:

* coherent Crooks: ln(P_fwd/P_rev) vs (delta_E_tilde - delta_F)/T;
* classical limit: the same with eigenstate energies replacing E_tilde;
* off-diagonal: the coherence transition amplitudes q_+/q_- vs the
  classical ratio (phases reported separately, never silently dropped);
* global invariance: Tr[rho_f V e^{-H/2T} rho_i e^{-H/2T} V^dag] under
  (rho_i, rho_f) -> (reversed rho_f, reversed rho_i);
* factorisability: does e^{-H_MS/2T} split across the machine/system cut
  on region-supported states.

Checks never weaken themselves to pass: when a probability underflows the
comparison is vacuous and reported as status "NA" rather than as success.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CrooksLabError,
    NotEigenstate,
    PreconditionViolated,
    VacuousRatio,
)
from .linalg import commutator_norm, eig_hermitian, func_hermitian, max_abs, tensor
from .model import MachineState, Setup, machine_eigenstate
from .policy import DEFAULT_POLICY, NumericPolicy
from .protocol import ProtocolRun, forward_probability, induced_channel, reverse_probability
from .reversal import ReversalBasis, is_tr_invariant, reverse
from .thermal import e_tilde, free_energy

__all__ = [
    "CrooksReport",
    "OffDiagonalReport",
    "GlobalInvarianceReport",
    "check_coherent_crooks",
    "check_classical_limit",
    "check_off_diagonal",
    "check_global_invariance",
    "factorisability_residual",
]


@dataclass(frozen=True)
class CrooksReport:
    """Both sides of the fluctuation ratio for one run, in log space.

    status is "exact-variant" for externally controlled evolutions (the
    equality must hold to machine precision), "autonomous-approximate" for
    autonomous flights (residual is the finding, not a failure), and "NA"
    when a probability underflowed and the ratio is vacuous.
    """

    p_fwd: float
    p_rev: float
    lhs_log: float
    delta_e_tilde: float
    delta_f: float
    rhs_log: float
    residual: float
    factorisability_residual: float
    status: str
    classical_rhs_gap: float | None = None


@dataclass(frozen=True)
class OffDiagonalReport:
    """Coherence transition amplitudes and their log-ratio residual."""

    delta: int
    q_plus: complex
    q_minus: complex
    lhs_log: float
    rhs_log: float
    residual: float
    phase: float


@dataclass(frozen=True)
class GlobalInvarianceReport:
    """Q before and after the state swap, with the tolerance actually used."""

    q_forward: complex
    q_swapped: complex
    residual: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.bound


def _delta_f(setup: Setup, T: float, policy: NumericPolicy) -> float:
    return free_energy(setup.h_s_f, T, policy) - free_energy(setup.h_s_i, T, policy)


def factorisability_residual(
    setup: Setup,
    psi: MachineState,
    region: str,
    T: float,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> float:
    """How far e^{-H_MS/2T} is from splitting across the cut on |psi>.

    Compares e^{-H_MS/2T}(|psi><psi| (x) 1_S)e^{-H_MS/2T} against
    e^{-H_M/2T}|psi><psi|e^{-H_M/2T} (x) e^{-H_S^k/T} in max norm,
    normalized by the left side.  Spectra are shifted to start at zero
    before exponentiating; the shift multiplies both sides by the same
    factor and cancels in the ratio.
    """
    h_k = setup.h_system(region)
    shift_m = float(np.min(np.real(eig_hermitian(setup.h_m, policy).eigenvalues)))
    shift_s = float(np.min(np.real(eig_hermitian(h_k, policy).eigenvalues)))
    half_full = func_hermitian(
        setup.h_total, lambda w: np.exp(-(w - shift_m - shift_s) / (2.0 * T)), policy
    )
    half_m = func_hermitian(setup.h_m, lambda w: np.exp(-(w - shift_m) / (2.0 * T)), policy)
    full_s = func_hermitian(h_k, lambda w: np.exp(-(w - shift_s) / T), policy)
    proj = psi.density()
    lhs = half_full @ tensor(proj, np.eye(setup.dim_system)) @ half_full
    rhs = tensor(half_m @ proj @ half_m, full_s)
    return float(max_abs(lhs - rhs) / max_abs(lhs))


def _ratio_report(
    run: ProtocolRun,
    rhs_log: float,
    delta_e_tilde: float,
    delta_f: float,
    policy: NumericPolicy,
    classical_rhs_gap: float | None = None,
) -> CrooksReport:
    p_fwd = forward_probability(run, policy)
    p_rev = reverse_probability(run, policy)
    fact = max(
        factorisability_residual(run.setup, run.psi_i, "i", run.T, policy),
        factorisability_residual(run.setup, run.psi_f, "f", run.T, policy),
    )
    if p_fwd < policy.prob_floor or p_rev < policy.prob_floor:
        return CrooksReport(
            p_fwd=p_fwd,
            p_rev=p_rev,
            lhs_log=float("nan"),
            delta_e_tilde=delta_e_tilde,
            delta_f=delta_f,
            rhs_log=rhs_log,
            residual=float("nan"),
            factorisability_residual=fact,
            status="NA",
            classical_rhs_gap=classical_rhs_gap,
        )
    lhs_log = float(np.log(p_fwd) - np.log(p_rev))
    status = "exact-variant" if run.evolution_kind == "external" else "autonomous-approximate"
    return CrooksReport(
        p_fwd=p_fwd,
        p_rev=p_rev,
        lhs_log=lhs_log,
        delta_e_tilde=delta_e_tilde,
        delta_f=delta_f,
        rhs_log=rhs_log,
        residual=abs(lhs_log - rhs_log),
        factorisability_residual=fact,
        status=status,
        classical_rhs_gap=classical_rhs_gap,
    )


def check_coherent_crooks(run: ProtocolRun, policy: NumericPolicy = DEFAULT_POLICY) -> CrooksReport:
    """ln(P_fwd/P_rev) against (delta_E_tilde - delta_F)/T for one run."""
    d_et = float(
        e_tilde(run.psi_i.vector, run.setup.h_m, run.T, policy)
        - e_tilde(run.psi_f.vector, run.setup.h_m, run.T, policy)
    )
    d_f = _delta_f(run.setup, run.T, policy)
    rhs_log = (d_et - d_f) / run.T
    return _ratio_report(run, rhs_log, d_et, d_f, policy)


def _eigen_energy(h: np.ndarray, psi: MachineState, policy: NumericPolicy) -> float:
    energy = float(np.real(psi.vector.conj() @ (h @ psi.vector)))
    residual = float(np.linalg.norm(h @ psi.vector - energy * psi.vector))
    if residual > policy.region_invariant_tol * max(1.0, max_abs(h)):
        raise NotEigenstate(f"state {psi.label!r} misses an H_M eigenstate by {residual:.3e}")
    return energy


def check_classical_limit(run: ProtocolRun, policy: NumericPolicy = DEFAULT_POLICY) -> CrooksReport:
    """Eigenstate form of the ratio: rhs_log = ((E_i - E_f) - delta_F)/T.

    Also recomputes the coherent right-hand side and insists the two agree
    (E_tilde collapses to the eigenvalue on eigenstates).
    """
    e_i = _eigen_energy(run.setup.h_m, run.psi_i, policy)
    e_f = _eigen_energy(run.setup.h_m, run.psi_f, policy)
    d_f = _delta_f(run.setup, run.T, policy)
    rhs_log = ((e_i - e_f) - d_f) / run.T
    d_et = float(
        e_tilde(run.psi_i.vector, run.setup.h_m, run.T, policy)
        - e_tilde(run.psi_f.vector, run.setup.h_m, run.T, policy)
    )
    coherent_rhs = (d_et - d_f) / run.T
    gap = abs(rhs_log - coherent_rhs)
    if gap > policy.classical_agreement_tol * max(1.0, abs(rhs_log)):
        raise CrooksLabError(
            f"eigenstate right-hand sides disagree by {gap:.3e}; "
            "E_tilde did not collapse to the eigenvalue"
        )
    return _ratio_report(run, rhs_log, d_et, d_f, policy, classical_rhs_gap=gap)


def check_off_diagonal(
    setup: Setup,
    v: np.ndarray,
    T: float,
    i: int,
    f: int,
    delta: int,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> OffDiagonalReport:
    """Coherence transport ratio q_+^delta / q_-^delta against the classical ratio.

    q_+ propagates |E_i><E_{i+delta}| through the forward channel (system
    bath gamma(H_S^i)) and takes the (E_f, E_{f+delta}) matrix element;
    q_- propagates |E_{f+delta}><E_f| through the reverse channel (bath
    gamma(H_S^f)).  Each direction carries its own preparation bath, the
    same pairing Eqs. 3-4 use; at delta = 0 the ratio reduces to the
    eigenstate transition ratio.  The ratio should be real positive; its
    phase is reported, not discarded.
    """
    e_i = machine_eigenstate(setup, "i", i, policy)
    e_i_d = machine_eigenstate(setup, "i", i + delta, policy)
    e_f = machine_eigenstate(setup, "f", f, policy)
    e_f_d = machine_eigenstate(setup, "f", f + delta, policy)
    energy_i = float(np.real(e_i.vector.conj() @ (setup.h_m @ e_i.vector)))
    energy_f = float(np.real(e_f.vector.conj() @ (setup.h_m @ e_f.vector)))

    fwd = induced_channel(setup, v, "forward", T, policy)
    rev = induced_channel(setup, v, "reverse", T, policy)
    evolved_fwd = fwd(np.outer(e_i.vector, e_i_d.vector.conj()))
    q_plus = complex(e_f.vector.conj() @ evolved_fwd @ e_f_d.vector)
    evolved_rev = rev(np.outer(e_f_d.vector, e_f.vector.conj()))
    q_minus = complex(e_i_d.vector.conj() @ evolved_rev @ e_i.vector)

    if abs(q_plus) < policy.prob_floor or abs(q_minus) < policy.prob_floor:
        raise VacuousRatio(
            f"coherence amplitudes vanish (|q_+|={abs(q_plus):.3e}, |q_-|={abs(q_minus):.3e}); "
            "the ratio constraint is vacuous here"
        )
    log_ratio = np.log(q_plus / q_minus)
    lhs_log = float(np.real(log_ratio))
    phase = float(abs(np.imag(log_ratio)))
    d_f = _delta_f(setup, T, policy)
    rhs_log = ((energy_i - energy_f) - d_f) / T
    return OffDiagonalReport(
        delta=int(delta),
        q_plus=q_plus,
        q_minus=q_minus,
        lhs_log=lhs_log,
        rhs_log=rhs_log,
        residual=abs(lhs_log - rhs_log),
        phase=phase,
    )


def check_global_invariance(
    h: np.ndarray,
    v: np.ndarray,
    rho_i: np.ndarray,
    rho_f: np.ndarray,
    T: float,
    basis: ReversalBasis,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> GlobalInvarianceReport:
    """Invariance of Q = Tr[rho_f V e^{-H/2T} rho_i e^{-H/2T} V^dag].

    Swapping (rho_i, rho_f) -> (reverse(rho_f), reverse(rho_i)) must leave
    Q unchanged whenever H and V are reversal-invariant and commute.  The
    Boltzmann factor is evaluated with the spectrum shifted to start at
    zero; both sides scale by the same factor, so the comparison stands.
    """
    scale_h = max(1.0, max_abs(h))
    scale_v = max(1.0, max_abs(v))
    failures: list[str] = []
    if not is_tr_invariant(h, basis, policy.tr_invariance_tol * scale_h):
        failures.append("H is not time-reversal invariant in the declared basis")
    if not is_tr_invariant(v, basis, policy.tr_invariance_tol * scale_v):
        failures.append("V is not time-reversal invariant in the declared basis")
    comm = commutator_norm(h, v)
    if comm > policy.commutator_tol * scale_h * scale_v:
        failures.append(f"[H, V] = {comm:.3e} exceeds tolerance")
    if failures:
        raise PreconditionViolated(failures)

    shift = float(np.min(np.real(eig_hermitian(h, policy).eigenvalues)))
    half = func_hermitian(h, lambda w: np.exp(-(w - shift) / (2.0 * T)), policy)

    def q_value(r_i: np.ndarray, r_f: np.ndarray) -> complex:
        return complex(np.trace(r_f @ v @ half @ r_i @ half @ v.conj().T))

    q_fwd = q_value(rho_i, rho_f)
    q_swapped = q_value(reverse(rho_f, basis), reverse(rho_i, basis))
    residual = abs(q_fwd - q_swapped)
    bound = policy.global_invariance_rel * abs(q_fwd) + policy.global_invariance_abs
    return GlobalInvarianceReport(q_forward=q_fwd, q_swapped=q_swapped, residual=residual, bound=bound)

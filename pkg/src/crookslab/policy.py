"""Centralized numeric tolerances.

Every tolerance used anywhere in the package lives in one record so that a
run can tighten or loosen the whole stack coherently (see ``scaled``) or
override individual entries (``dataclasses.replace`` or ``with_overrides``).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class NumericPolicy:
    # linear-algebra kernel
    hermitian_tol: float = 1e-10        # max |A - A^dag| accepted as Hermitian
    reconstruction_tol: float = 1e-10   # eigendecomposition residual, relative to max |A|
    unitarity_tol: float = 1e-10
    trace_tol: float = 1e-12            # partial trace / density-matrix trace preservation
    positivity_tol: float = 1e-10       # eigenvalue floor for positivity checks

    # model construction
    projector_tol: float = 1e-12        # projector idempotence/orthogonality
    region_invariant_tol: float = 1e-10  # block-restricted Hamiltonian identity
    norm_tol: float = 1e-12             # state normalization
    region_leak_tol: float = 1e-8       # mass allowed outside a declared region

    # evolution unitaries
    commutator_tol: float = 1e-9        # [H, V], relative to |H| |V| scale
    tr_invariance_tol: float = 1e-9     # |V^T - V| in the reversal basis
    degeneracy_tol: float = 1e-9        # eigenvalue grouping, relative to max(1, |H|)
    involution_tol: float = 1e-12       # reverse(reverse(x)) == x

    # probabilities and equality checks
    probability_tol: float = 1e-12      # tolerated excursion outside [0, 1]
    prob_floor: float = 1e-300          # below this a ratio is vacuous
    residual_tol: float = 1e-9          # log-space equality residual (exact variants)
    phase_tol: float = 1e-9             # imaginary part of a log ratio
    classical_agreement_tol: float = 1e-12  # two right-hand-side forms on eigenstates
    factorisability_tol: float = 1e-10  # exact-variant factorisation residual
    global_invariance_rel: float = 1e-11
    global_invariance_abs: float = 1e-14
    choi_tol: float = 1e-10             # Choi positivity / trace preservation
    gibbs_preservation_tol: float = 1e-10
    channel_agreement_tol: float = 1e-12  # channel route vs full-space route

    def scaled(self, factor: float) -> "NumericPolicy":
        """Multiply every tolerance by ``factor`` (the probability floor is kept)."""
        updates = {
            f.name: getattr(self, f.name) * factor
            for f in dataclasses.fields(self)
            if f.name != "prob_floor"
        }
        return dataclasses.replace(self, **updates)

    def with_overrides(self, **overrides: float) -> "NumericPolicy":
        """Return a copy with the named tolerances replaced."""
        return dataclasses.replace(self, **overrides)


DEFAULT_POLICY = NumericPolicy()

"""Time reversal as transposition in a declared basis.

The transpose (equivalently, complex conjugation on Hermitian operators) is
the reversal map: it is linear, hence friendlier than an antiunitary, and on
a motional state it flips the momentum while leaving the position profile
alone.  Which basis the transpose is taken in is physics, not convention, so
it is always carried explicitly as a ``ReversalBasis``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter
from .linalg import is_unitary, max_abs
from .policy import DEFAULT_POLICY, NumericPolicy

__all__ = ["ReversalBasis", "reverse", "reverse_state", "is_tr_invariant"]


@dataclass(frozen=True)
class ReversalBasis:
    """Unitary whose columns define the basis the transpose is taken in."""

    basis: np.ndarray
    description: str = ""

    def __post_init__(self):
        if not is_unitary(self.basis, DEFAULT_POLICY.unitarity_tol):
            raise InvalidParameter("reversal basis must be unitary")

    @classmethod
    def computational(cls, dim: int, description: str = "computational product basis") -> "ReversalBasis":
        return cls(basis=np.eye(dim, dtype=complex), description=description)

    @property
    def is_identity(self) -> bool:
        return bool(max_abs(self.basis - np.eye(self.basis.shape[0])) == 0.0)


def reverse(sigma: np.ndarray, basis: ReversalBasis) -> np.ndarray:
    """Transpose ``sigma`` in the declared basis: B (B^dag sigma B)^T B^dag.

    An involution that preserves Hermiticity and spectra.
    """
    sigma = np.asarray(sigma, dtype=complex)
    if basis.is_identity:
        return sigma.T.copy()
    b = basis.basis
    return b @ (b.conj().T @ sigma @ b).T @ b.conj().T


def reverse_state(psi: np.ndarray, basis: ReversalBasis) -> np.ndarray:
    """Reversal of a pure state: conjugate its coordinates in the basis.

    Satisfies reverse(|psi><psi|) == |out><out| for the returned vector.
    """
    psi = np.asarray(psi, dtype=complex)
    if basis.is_identity:
        return psi.conj()
    b = basis.basis
    return b @ (b.conj().T @ psi).conj()


def is_tr_invariant(
    a: np.ndarray,
    basis: ReversalBasis,
    tol: float = DEFAULT_POLICY.tr_invariance_tol,
) -> bool:
    """True iff ``a`` equals its reversal within ``tol`` (max norm)."""
    return max_abs(reverse(a, basis) - np.asarray(a, dtype=complex)) <= tol

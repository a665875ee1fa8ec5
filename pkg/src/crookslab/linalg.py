"""Dense complex linear algebra for finite-dimensional quantum systems.

Operators, states and unitaries are plain square ``numpy`` arrays of complex
dtype in row-major layout.  Nothing here assumes Hermiticity, unitarity or
positivity silently: each is a checkable predicate with an explicit
tolerance, and the operations that require a property check it first.

The Kronecker convention is left-factor-major throughout: for ``tensor(A, B)``
the composite index is ``i_A * dim_B + i_B`` (the ``numpy.kron`` convention).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, UnknownFactor
from .policy import DEFAULT_POLICY, NumericPolicy

__all__ = [
    "HilbertSpace",
    "EigenDecomposition",
    "max_abs",
    "is_hermitian",
    "is_unitary",
    "is_positive_semidefinite",
    "is_projector",
    "eig_hermitian",
    "func_hermitian",
    "tensor",
    "partial_trace",
    "commutator_norm",
]


@dataclass(frozen=True)
class HilbertSpace:
    """An ordered tensor factorization with named finite-dimensional factors."""

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.factors]
        if len(set(names)) != len(names):
            raise ValueError(f"factor names must be unique, got {names}")
        for name, dim in self.factors:
            if dim < 1:
                raise ValueError(f"factor {name!r} has non-positive dimension {dim}")

    @classmethod
    def of(cls, *factors: tuple[str, int]) -> "HilbertSpace":
        return cls(tuple(factors))

    @property
    def dim(self) -> int:
        out = 1
        for _, d in self.factors:
            out *= d
        return out

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.factors)

    def dim_of(self, name: str) -> int:
        for fname, d in self.factors:
            if fname == name:
                return d
        raise UnknownFactor(f"no factor named {name!r} in {self.names}")

    def index_of(self, name: str) -> int:
        for k, (fname, _) in enumerate(self.factors):
            if fname == name:
                return k
        raise UnknownFactor(f"no factor named {name!r} in {self.names}")


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors`` holds the
    corresponding orthonormal eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def max_abs(a: np.ndarray) -> float:
    """Largest absolute entry (max norm); 0 for empty input."""
    return float(np.max(np.abs(a))) if a.size else 0.0


def _as_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_POLICY.hermitian_tol) -> bool:
    a = _as_square(a)
    return max_abs(a - a.conj().T) <= tol


def is_unitary(a: np.ndarray, tol: float = DEFAULT_POLICY.unitarity_tol) -> bool:
    a = _as_square(a)
    return max_abs(a.conj().T @ a - np.eye(a.shape[0])) <= tol


def is_positive_semidefinite(a: np.ndarray, tol: float = DEFAULT_POLICY.positivity_tol) -> bool:
    a = _as_square(a)
    if not is_hermitian(a, tol):
        return False
    w = np.linalg.eigvalsh((a + a.conj().T) / 2)
    return float(w.min()) >= -tol if w.size else True

def is_projector(a: np.ndarray, tol: float = DEFAULT_POLICY.projector_tol) -> bool:
    a = _as_square(a)
    return is_hermitian(a, tol) and max_abs(a @ a - a) <= tol


def eig_hermitian(a: np.ndarray, policy: NumericPolicy = DEFAULT_POLICY) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises NotHermitian when ``max|a - a^dag|`` exceeds the policy tolerance
    and NoConvergence when the underlying solver gives up.
    """
    a = _as_square(a)
    dev = max_abs(a - a.conj().T)
    if dev > policy.hermitian_tol:
        raise NotHermitian(
            f"max |A - A^dag| = {dev:.3e} exceeds tolerance {policy.hermitian_tol:.3e}"
        )
    # work on the exactly-Hermitian part so roundoff in the input cannot leak
    # into complex eigenvalues
    sym = (a + a.conj().T) / 2
    try:
        w, u = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return EigenDecomposition(eigenvalues=w, eigenvectors=u)


def func_hermitian(
    a: np.ndarray,
    f: Callable[[np.ndarray], np.ndarray],
    policy: NumericPolicy = DEFAULT_POLICY,
) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    ``f`` maps real eigenvalues to complex values; it may be vectorized over
    a numpy array or act on scalars.  Returns ``U f(diag w) U^dag``.
    """
    dec = eig_hermitian(a, policy)
    w = dec.eigenvalues
    try:
        vals = np.asarray(f(w), dtype=complex)
        if vals.shape != w.shape:
            raise TypeError
    except TypeError:
        vals = np.array([f(x) for x in w], dtype=complex)
    u = dec.eigenvectors
    return (u * vals) @ u.conj().T


def tensor(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more operators, left factor major."""
    if not ops:
        raise ValueError("tensor() needs at least one operator")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def partial_trace(
    a: np.ndarray,
    space: HilbertSpace,
    keep: str | Sequence[str],
) -> np.ndarray:
    """Trace out every factor of ``space`` except ``keep``.

    ``keep`` is a factor name or a sequence of factor names; kept factors
    retain their order in ``space``.  Trace-preserving: the result's trace
    equals the input's.
    """
    a = _as_square(a)
    if a.shape[0] != space.dim:
        raise DimensionMismatch(
            f"matrix dimension {a.shape[0]} != space dimension {space.dim}"
        )
    keep_names = (keep,) if isinstance(keep, str) else tuple(keep)
    keep_idx = sorted(space.index_of(name) for name in keep_names)
    if not keep_idx:
        raise UnknownFactor("keep must name at least one factor")

    dims = space.dims
    n = len(dims)
    t = a.reshape(dims + dims)
    row = list(range(n))
    col = list(range(n, 2 * n))
    for k in range(n):
        if k not in keep_idx:
            col[k] = row[k]  # contract this factor
    out_sub = [row[k] for k in keep_idx] + [col[k] for k in keep_idx]
    kept_dim = 1
    for k in keep_idx:
        kept_dim *= dims[k]
    return np.einsum(t, row + col, out_sub).reshape(kept_dim, kept_dim)


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    """Max-norm of [a, b]."""
    return max_abs(a @ b - b @ a)


def group_degenerate(
    eigenvalues: np.ndarray,
    tol: float = DEFAULT_POLICY.degeneracy_tol,
) -> list[np.ndarray]:
    """Group an ascending eigenvalue list into degenerate blocks.

    Neighbours closer than ``tol * max(1, max|w|)`` land in the same block
    (transitively).  Returns index arrays, one per block, in spectral order.
    """
    w = np.asarray(eigenvalues, dtype=float)
    if w.size == 0:
        return []
    gap = tol * max(1.0, float(np.max(np.abs(w))))
    blocks: list[np.ndarray] = []
    start = 0
    for k in range(1, w.size):
        if w[k] - w[k - 1] > gap:
            blocks.append(np.arange(start, k))
            start = k
    blocks.append(np.arange(start, w.size))
    return blocks

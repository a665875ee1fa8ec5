#!/usr/bin/env python3
# Q(rho_i, rho_f) = Tr[rho_f V e^{-H/2T} rho_i e^{-H/2T} V+] is invariant
# under swapping the states with their time reverses.  This is the structural
# fact behind the Crooks pairing; it needs [H, V] = 0 and both H and V
# reversal-invariant, and nothing else, so it holds for arbitrary densities.

import numpy as np

from crookslab import (
    PreconditionViolated,
    ReversalBasis,
    check_global_invariance,
    eig_hermitian,
)

rng = np.random.default_rng(2)
dim = 6
basis = ReversalBasis.computational(dim)


def random_density(n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


h = rng.standard_normal((dim, dim))
h = (h + h.T) / 2  # real symmetric: time-reversal invariant as an operator
dec = eig_hermitian(h)
# energy-conserving and reversal-invariant: phases on the eigenbasis,
# assembled as Q e^{i theta} Q^T with real orthogonal Q (complex symmetric)
v = dec.eigenvectors @ np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, dim))) @ dec.eigenvectors.T

for trial in range(5):
    r = check_global_invariance(h, v, random_density(dim), random_density(dim), T=1.3, basis=basis)
    print(f"trial {trial}: Q = {r.q_forward:+.12f}  swapped = {r.q_swapped:+.12f}  "
          f"residual = {r.residual:.2e}  (bound {r.bound:.2e})")

# a real rotation inside a degenerate eigenspace still commutes with H but is
# not complex symmetric, so the premise check must throw
h_deg = np.diag([0.0, 0.0, 1.0, 2.0, 3.0, 4.0])
c, s = np.cos(0.7), np.sin(0.7)
v_bad = np.eye(dim, dtype=complex)
v_bad[:2, :2] = [[c, -s], [s, c]]
try:
    check_global_invariance(h_deg, v_bad, random_density(dim), random_density(dim), 1.3, basis)
    print("reversal-breaking V was accepted (should not happen)")
except PreconditionViolated as exc:
    print(f"\nreversal-breaking V rejected: {exc}")

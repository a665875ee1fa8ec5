#!/usr/bin/env python3
"""Effective potential energy E~ and the Gibbs map on a single qutrit.

E~_rho(H, T) = -T ln Tr[exp(-H/T) rho] interpolates between the bare
eigenvalue (eigenstates) and free energy plus ln d (maximally mixed).
The Gibbs map conjugates a state by exp(-H/2T) and renormalizes; it fixes
eigenstates, thermalizes the maximally mixed state, and keeps coherences
alive, which is what separates it from plain dephasing.
"""

import numpy as np

from crookslab import dephase, e_tilde, eig_hermitian, free_energy, gibbs_map, gibbs_state, max_abs

T = 1.0
H = np.diag([0.0, 1.0, 2.5]).astype(complex)
dim = 3

print(f"qutrit, H = diag(0, 1, 2.5), T = {T}")
print(f"free energy F = {free_energy(H, T):+.6f}")
print()

print("E~ on reference states:")
for k in range(dim):
    e = np.zeros(dim, dtype=complex)
    e[k] = 1.0
    val = e_tilde(np.outer(e, e.conj()), H, T)
    print(f"  eigenstate |{k}>        E~ = {val:+.6f}   (bare energy {H[k, k].real:+.1f})")

mixed = np.eye(dim) / dim
print(f"  maximally mixed 1/3   E~ = {e_tilde(mixed, H, T):+.6f}   (F + T ln 3 = {free_energy(H, T) + T * np.log(3):+.6f})")

flat = np.ones(dim, dtype=complex) / np.sqrt(dim)
rho_flat = np.outer(flat, flat.conj())
print(f"  equal superposition   E~ = {e_tilde(rho_flat, H, T):+.6f}   (below <H> = {np.trace(H @ rho_flat).real:+.6f})")
print()

# the map sends the equal superposition to the coherent thermal state:
# same populations as gamma(H, T) but with every off-diagonal element kept
out = gibbs_map(rho_flat, H, T)
gamma = gibbs_state(H, T)
print("Gibbs map of the equal superposition:")
print(f"  populations match gamma(H,T) to {max_abs(np.diag(out) - np.diag(gamma)):.2e}")
print(f"  largest surviving coherence |rho_01| = {abs(out[0, 1]):.6f}")
print(f"  dephasing it reproduces gamma(H,T) to {max_abs(dephase(out, H) - gamma):.2e}")
print()

# on the thermal family the map halves the temperature
for temp in (0.5, 1.0, 4.0):
    drift = max_abs(gibbs_map(gibbs_state(H, temp), H, temp) - gibbs_state(H, temp / 2))
    print(f"  G[gamma(T={temp:3.1f})] = gamma(T={temp / 2:3.2f})   deviation {drift:.2e}")

# E~ never exceeds <H>, and the gap closes like var(E)/2T
rng = np.random.default_rng(7)
a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
rho = a @ a.conj().T
rho /= np.trace(rho).real
avg = np.trace(H @ rho).real
print()
print(f"random density, <H> = {avg:+.6f}")
for temp in (0.5, 2.0, 8.0, 32.0):
    print(f"  T = {temp:4.1f}   <H> - E~ = {avg - e_tilde(rho, H, temp):.6f}")

#!/usr/bin/env python3
"""Off-diagonal transition amplitudes obey the same fluctuation ratio.

q_+ tracks how the coherence |E_i><E_{i+delta}| propagates through the
forward channel, q_- the reversed coherence through the reverse channel.
Their magnitude ratio reproduces exp(((E_i - E_f) - dF)/T) and the relative
phase vanishes, degree of coherence delta = 0, 1, 2 alike.  delta = 0 is
exactly the classical two-point ratio.
"""

from crookslab import (
    DesignatedSwap,
    EvolutionSpec,
    build_ladder_setup,
    check_classical_limit,
    check_off_diagonal,
    energy_conserving_unitary,
    machine_eigenstate,
    make_run,
)

setup = build_ladder_setup(n_rungs=6, spacing=1.0, eps_i=1.0, eps_f=2.0)
v = energy_conserving_unitary(setup, EvolutionSpec("external", block_seed=DesignatedSwap()))
i, f = 3, 2

for T in (0.2, 1.0, 5.0):
    classical = check_classical_limit(
        make_run(setup, v, T, machine_eigenstate(setup, "i", i), machine_eigenstate(setup, "f", f))
    )
    print(f"T = {T}   classical ln(p_f/p_r) = {classical.lhs_log:+.10f}")
    for delta in (0, 1, 2):
        r = check_off_diagonal(setup, v, T, i, f, delta)
        print(
            f"  delta = {delta}   |q+| = {abs(r.q_plus):.8f}   |q-| = {abs(r.q_minus):.8f}"
            f"   ln|q+/q-| = {r.lhs_log:+.10f}   residual = {r.residual:.2e}   phase = {r.phase:.2e}"
        )
    print()

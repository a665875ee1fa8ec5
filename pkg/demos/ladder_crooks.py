#!/usr/bin/env python3
# Coherent Crooks equality on the two-region ladder, eigenstates and packets.
#
# The machine is a control qubit times a uniform ladder; flipping the control
# from region i to region f changes the system gap from eps_i to eps_f, and a
# designated swap moves the joint state only inside degenerate eigenspaces of
# H_total, so every quantum of system energy is drawn from the ladder.

import numpy as np

from crookslab import (
    DesignatedSwap,
    EvolutionSpec,
    build_ladder_setup,
    check_coherent_crooks,
    energy_conserving_unitary,
    ladder_packet,
    machine_eigenstate,
    make_run,
)

setup = build_ladder_setup(n_rungs=6, spacing=1.0, eps_i=1.0, eps_f=2.0)
v = energy_conserving_unitary(setup, EvolutionSpec("external", block_seed=DesignatedSwap()))

print("pair".ljust(34), "T".rjust(5), "p_fwd".rjust(10), "p_rev".rjust(10),
      "ln(p_f/p_r)".rjust(13), "(dE~-dF)/T".rjust(13), "residual".rjust(10))

for psi_i, psi_f in (
    (machine_eigenstate(setup, "i", 3), machine_eigenstate(setup, "f", 2)),
    (machine_eigenstate(setup, "i", 2), machine_eigenstate(setup, "f", 2)),
    (ladder_packet(setup, "i", center=3.0, width=1.2), ladder_packet(setup, "f", center=2.0, width=1.0)),
):
    for T in (0.2, 1.0, 5.0):
        run = make_run(setup, v, T, psi_i, psi_f)
        r = check_coherent_crooks(run)
        label = f"{psi_i.label} -> {psi_f.label}"
        print(label.ljust(34), f"{T:5.1f}", f"{r.p_fwd:10.6f}", f"{r.p_rev:10.6f}",
              f"{r.lhs_log:13.8f}", f"{r.rhs_log:13.8f}", f"{r.residual:10.2e}")
    print()

# the equality is about the ratio, so a partial swap rescales both
# probabilities by sin^2(theta) and leaves the residual at machine precision
print("partial swaps, eigenstate pair E[i;3] -> E[f;2] at T = 1:")
psi_i = machine_eigenstate(setup, "i", 3)
psi_f = machine_eigenstate(setup, "f", 2)
for theta in (np.pi / 6, np.pi / 4, np.pi / 3, np.pi / 2):
    v_theta = energy_conserving_unitary(
        setup, EvolutionSpec("external", block_seed=DesignatedSwap(angle=theta))
    )
    r = check_coherent_crooks(make_run(setup, v_theta, 1.0, psi_i, psi_f))
    print(f"  theta = {theta:8.6f}   p_fwd = {r.p_fwd:.6f}   residual = {r.residual:.2e}")

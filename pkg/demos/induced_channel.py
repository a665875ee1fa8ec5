#!/usr/bin/env python3
# Tracing out the system bath leaves a channel on the machine alone.
# When the protocol conserves energy exactly and the system gap returns to
# where it started, that channel is a thermal operation: completely positive,
# trace preserving, and it fixes the machine's own Gibbs state.

import numpy as np

from crookslab import (
    DesignatedSwap,
    EvolutionSpec,
    build_ladder_setup,
    energy_conserving_unitary,
    gibbs_state,
    induced_channel,
    machine_eigenstate,
    make_run,
    forward_probability,
    max_abs,
)

T = 1.0

for eps_i, eps_f in ((1.0, 1.0), (1.0, 2.0)):
    setup = build_ladder_setup(n_rungs=6, spacing=1.0, eps_i=eps_i, eps_f=eps_f)
    v = energy_conserving_unitary(setup, EvolutionSpec("external", block_seed=DesignatedSwap()))
    gamma_m = gibbs_state(setup.h_m, T)
    print(f"ladder with eps_i = {eps_i}, eps_f = {eps_f}")
    for which in ("forward", "reverse"):
        ch = induced_channel(setup, v, which, T)
        drift = max_abs(ch(gamma_m) - gamma_m)
        print(f"  {which:8s} channel: {len(ch.kraus)} Kraus ops, "
              f"Choi min eigenvalue {ch.choi_min_eigenvalue():+.2e}, "
              f"trace defect {ch.trace_preservation_defect():.2e}, "
              f"Gibbs drift {drift:.2e}")
    print()

# the channel route and the full-space route compute the same probability
setup = build_ladder_setup(n_rungs=6, spacing=1.0, eps_i=1.0, eps_f=2.0)
v = energy_conserving_unitary(setup, EvolutionSpec("external", block_seed=DesignatedSwap()))
psi_i = machine_eigenstate(setup, "i", 3)
psi_f = machine_eigenstate(setup, "f", 2)
run = make_run(setup, v, T, psi_i, psi_f)
p_full = forward_probability(run)
ch = induced_channel(setup, v, "forward", T)
p_channel = float(np.real(
    psi_f.vector.conj() @ ch(np.outer(run.phi_i.vector, run.phi_i.vector.conj())) @ psi_f.vector
))
print(f"forward probability, full space  {p_full:.15f}")
print(f"forward probability, via channel {p_channel:.15f}")
print(f"difference {abs(p_full - p_channel):.2e}")

#!/usr/bin/env python3
"""Drive the scenario runner from Python instead of the command line.

Same machinery as `crookslab run`: parse a TOML scenario, execute every
(check, temperature, pair) combination, emit CSV or JSON lines.  Rows come
back as plain dataclasses, so ad hoc analysis needs no file round trip.
"""

from collections import Counter

from crookslab import run_scenario, sweep_scenario, emit

rows = run_scenario("ladder_eigenstate.scn")
print(f"ladder_eigenstate: {len(rows)} rows, all passed: {all(r.passed for r in rows)}")
print("rows per check:", dict(Counter(r.check for r in rows)))

worst = max((r for r in rows if r.residual is not None), key=lambda r: r.residual)
print(f"worst residual {worst.residual:.2e} ({worst.check}, T = {worst.T}, pair {worst.pair})")
print()

# identical seeds, identical bytes: reports are reproducible artifacts
a = run_scenario("ladder_superposition.scn")
b = run_scenario("ladder_superposition.scn")
assert [(r.pair, r.residual) for r in a] == [(r.pair, r.residual) for r in b]
print(f"ladder_superposition: {len(a)} rows twice, byte-identical")
print()

# sweeps expand the [sweep] table into variants, names tagged with the point
rows = sweep_scenario("ladder_eigenstate.scn")
print("sweep variants:", sorted({r.scenario for r in rows}))
print()

emit(rows[:4], format="csv")

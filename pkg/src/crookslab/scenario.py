"""Declarative scenario runner: TOML in, report rows out.

A scenario file names a setup, an evolution, a list of machine state pairs,
a temperature sweep, and the checks to run.  ``run_scenario`` turns one
file into a flat list of :class:`ReportRow`, one row per
(check, temperature, pair), emitted in declaration order.  Everything is
deterministic given the file and the seed: random states draw from seed
sequences derived from the scenario seed and the pair ordinal, never from
global state.

Unknown keys anywhere in the file are rejected (SchemaViolation naming the
key) so that typos cannot silently drop a tolerance override or a check.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from itertools import product
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .errors import (
    ConfigParse,
    CrooksLabError,
    SchemaViolation,
    ScenarioError,
    VacuousRatio,
)
from .model import (
    MachineState,
    Setup,
    build_ladder_setup,
    build_lattice_setup,
    gaussian_packet,
    ladder_packet,
    machine_eigenstate,
    ramp_profile,
    random_region_state,
    region_indices,
)
from .policy import DEFAULT_POLICY, NumericPolicy
from .protocol import (
    DesignatedSwap,
    EvolutionSpec,
    autonomous_unitary,
    energy_conserving_unitary,
    make_run,
)
from .reversal import ReversalBasis
from .verify import (
    check_classical_limit,
    check_coherent_crooks,
    check_global_invariance,
    check_off_diagonal,
    factorisability_residual,
)

__all__ = ["Scenario", "ReportRow", "CHECKS", "load_scenario", "run_scenario", "sweep_scenario", "emit"]

CHECKS = {
    "crooks": "coherent Crooks equality: ln(P_fwd/P_rev) vs (dE_tilde - dF)/T",
    "classical": "eigenstate limit: ln(P_fwd/P_rev) vs ((E_i - E_f) - dF)/T",
    "offdiag": "coherence transport ratio q_+/q_- vs the classical ratio",
    "global": "invariance of Tr[rho_f V e^{-H/2T} rho_i e^{-H/2T} V^dag] under reversal swap",
    "factorisability": "does e^{-H_MS/2T} split across the machine/system cut on the pair states",
}

CSV_HEADER = "scenario,check,T,pair,p_fwd,p_rev,lhs_log,rhs_log,residual,status"


@dataclass(frozen=True)
class PairSpec:
    """One prepared/measured state pair, before resolution against a setup."""

    label: str
    prepare: dict
    measure: dict
    time: float | None
    ordinal: int


@dataclass(frozen=True)
class EvolutionConfig:
    kind: str
    style: str = "swap"
    angle: float = float(np.pi / 2.0)
    seed: int | None = None
    time: float | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    setup_kind: str
    setup_params: dict
    evolution: EvolutionConfig
    temperatures: tuple[float, ...]
    pairs: tuple[PairSpec, ...]
    checks: tuple[str, ...]
    seed: int
    tolerances: dict
    offdiag: dict | None
    sweep: dict


@dataclass(frozen=True)
class ReportRow:
    """One check outcome; `passed` feeds the exit code and is not serialized."""

    scenario: str
    check: str
    T: float
    pair: str
    p_fwd: float | None
    p_rev: float | None
    lhs_log: float | None
    rhs_log: float | None
    residual: float | None
    status: str
    passed: bool = True


# ---------------------------------------------------------------------------
# Parsing and schema validation


def _require(table: dict, key: str, kinds, where: str):
    if key not in table:
        raise SchemaViolation(f"{where}: missing required key '{key}'", key=f"{where}.{key}")
    value = table[key]
    if not isinstance(value, kinds) or isinstance(value, bool):
        raise SchemaViolation(f"{where}.{key}: wrong type {type(value).__name__}", key=f"{where}.{key}")
    return value


def _optional(table: dict, key: str, kinds, where: str, default):
    if key not in table:
        return default
    return _require(table, key, kinds, where)

def _reject_unknown(table: dict, allowed: set[str], where: str) -> None:
    for key in table:
        if key not in allowed:
            prefix = f"{where}: " if where else ""
            raise SchemaViolation(f"{prefix}unknown key '{key}'", key=f"{where}.{key}" if where else key)


def _number_list(value, where: str) -> list[float]:
    if not isinstance(value, list) or not value:
        raise SchemaViolation(f"{where}: expected a non-empty list of numbers", key=where)
    out = []
    for v in value:
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise SchemaViolation(f"{where}: expected numbers, found {type(v).__name__}", key=where)
        out.append(float(v))
    return out


_DESCRIPTOR_KEYS = {
    "eigenstate": {"kind", "index"},
    "gaussian": {"kind", "center", "width", "momentum"},
    "random": {"kind"},
}


def _parse_descriptor(table, where: str) -> dict:
    if not isinstance(table, dict):
        raise SchemaViolation(f"{where}: expected a table", key=where)
    kind = _require(table, "kind", str, where)
    if kind not in _DESCRIPTOR_KEYS:
        raise SchemaViolation(f"{where}.kind: unknown state kind '{kind}'", key=f"{where}.kind")
    _reject_unknown(table, _DESCRIPTOR_KEYS[kind], where)
    if kind == "eigenstate":
        _require(table, "index", int, where)
    elif kind == "gaussian":
        _require(table, "center", (int, float), where)
        _require(table, "width", (int, float), where)
        _optional(table, "momentum", (int, float), where, 0.0)
    return dict(table)


def _parse_setup(table: dict) -> tuple[str, dict]:
    kind = _require(table, "kind", str, "setup")
    if kind == "ladder":
        _reject_unknown(table, {"kind", "n_rungs", "spacing", "eps_i", "eps_f"}, "setup")
        params = {
            "n_rungs": _require(table, "n_rungs", int, "setup"),
            "spacing": float(_require(table, "spacing", (int, float), "setup")),
            "eps_i": float(_require(table, "eps_i", (int, float), "setup")),
            "eps_f": float(_require(table, "eps_f", (int, float), "setup")),
        }
    elif kind == "lattice":
        _reject_unknown(table, {"kind", "n_sites", "hop", "x_i", "x_f", "ramp", "e_profile"}, "setup")
        params = {
            "n_sites": _require(table, "n_sites", int, "setup"),
            "hop": float(_require(table, "hop", (int, float), "setup")),
            "x_i": _require(table, "x_i", int, "setup"),
            "x_f": _require(table, "x_f", int, "setup"),
        }
        if ("ramp" in table) == ("e_profile" in table):
            raise SchemaViolation("setup: give exactly one of 'ramp' or 'e_profile'", key="setup.ramp")
        if "ramp" in table:
            ramp = _number_list(table["ramp"], "setup.ramp")
            if len(ramp) != 2:
                raise SchemaViolation("setup.ramp: expected [e_i, e_f]", key="setup.ramp")
            params["ramp"] = tuple(ramp)
        else:
            params["e_profile"] = tuple(_number_list(table["e_profile"], "setup.e_profile"))
    else:
        raise SchemaViolation(f"setup.kind: unknown setup kind '{kind}'", key="setup.kind")
    return kind, params


def _parse_evolution(table: dict) -> EvolutionConfig:
    kind = _require(table, "kind", str, "evolution")
    if kind == "external":
        _reject_unknown(table, {"kind", "style", "angle", "seed"}, "evolution")
        style = _optional(table, "style", str, "evolution", "swap")
        if style not in ("swap", "random"):
            raise SchemaViolation(f"evolution.style: unknown style '{style}'", key="evolution.style")
        return EvolutionConfig(
            kind=kind,
            style=style,
            angle=float(_optional(table, "angle", (int, float), "evolution", np.pi / 2.0)),
            seed=_optional(table, "seed", int, "evolution", None),
        )
    if kind == "autonomous":
        _reject_unknown(table, {"kind", "time"}, "evolution")
        time = _optional(table, "time", (int, float), "evolution", None)
        return EvolutionConfig(kind=kind, time=None if time is None else float(time))
    raise SchemaViolation(f"evolution.kind: unknown kind '{kind}'", key="evolution.kind")


def _parse_pairs(entries, where: str = "pairs") -> tuple[PairSpec, ...]:
    if not isinstance(entries, list) or not entries:
        raise SchemaViolation(f"{where}: expected a non-empty array of tables", key=where)
    pairs: list[PairSpec] = []
    ordinal = 0
    for pos, entry in enumerate(entries):
        here = f"{where}[{pos}]"
        if not isinstance(entry, dict):
            raise SchemaViolation(f"{here}: expected a table", key=here)
        _reject_unknown(entry, {"label", "prepare", "measure", "time", "count"}, here)
        prepare = _parse_descriptor(_require(entry, "prepare", dict, here), f"{here}.prepare")
        measure = _parse_descriptor(_require(entry, "measure", dict, here), f"{here}.measure")
        label = _optional(entry, "label", str, here, "")
        time = _optional(entry, "time", (int, float), here, None)
        count = _optional(entry, "count", int, here, 1)
        if count < 1:
            raise SchemaViolation(f"{here}.count: must be >= 1", key=f"{here}.count")
        for rep in range(count):
            suffix = f"#{rep:02d}" if count > 1 else ""
            pairs.append(
                PairSpec(
                    label=(label + suffix) if label else "",
                    prepare=prepare,
                    measure=measure,
                    time=None if time is None else float(time),
                    ordinal=ordinal,
                )
            )
            ordinal += 1
    return tuple(pairs)


_POLICY_FIELDS = set(NumericPolicy.__dataclass_fields__)


def _parse_tolerances(table: dict) -> dict:
    overrides = {}
    for key, value in table.items():
        if key not in _POLICY_FIELDS:
            raise SchemaViolation(f"tolerances: unknown tolerance '{key}'", key=f"tolerances.{key}")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SchemaViolation(f"tolerances.{key}: expected a number", key=f"tolerances.{key}")
        overrides[key] = float(value)
    return overrides


_TOP_KEYS = {
    "name",
    "seed",
    "checks",
    "temperatures",
    "setup",
    "evolution",
    "pairs",
    "offdiag",
    "tolerances",
    "sweep",
}


def _parse_scenario_dict(raw: dict, source: str) -> Scenario:
    _reject_unknown(raw, _TOP_KEYS, "")
    name = _require(raw, "name", str, "scenario") if "name" in raw else Path(source).stem
    checks = _optional(raw, "checks", list, "scenario", ["crooks"])
    for c in checks:
        if c not in CHECKS:
            raise SchemaViolation(f"checks: unknown check '{c}'", key="checks")
    temperatures = tuple(_number_list(_require(raw, "temperatures", list, "scenario"), "temperatures"))
    if any(t <= 0 for t in temperatures):
        raise SchemaViolation("temperatures: must be positive", key="temperatures")
    setup_kind, setup_params = _parse_setup(_require(raw, "setup", dict, "scenario"))
    evolution = _parse_evolution(_require(raw, "evolution", dict, "scenario"))
    pairs = _parse_pairs(_require(raw, "pairs", list, "scenario"))
    offdiag = None
    if "offdiag" in raw:
        table = _require(raw, "offdiag", dict, "scenario")
        _reject_unknown(table, {"i", "f", "deltas"}, "offdiag")
        offdiag = {
            "i": _require(table, "i", int, "offdiag"),
            "f": _require(table, "f", int, "offdiag"),
            "deltas": [int(d) for d in _optional(table, "deltas", list, "offdiag", [0, 1, 2])],
        }
    if "offdiag" in checks and offdiag is None:
        raise SchemaViolation("checks include 'offdiag' but no [offdiag] table is given", key="offdiag")
    tolerances = _parse_tolerances(_optional(raw, "tolerances", dict, "scenario", {}))
    sweep = _optional(raw, "sweep", dict, "scenario", {})
    for key, values in sweep.items():
        if not isinstance(values, list) or not values:
            raise SchemaViolation(f"sweep.{key}: expected a non-empty list", key=f"sweep.{key}")
    return Scenario(
        name=name,
        setup_kind=setup_kind,
        setup_params=setup_params,
        evolution=evolution,
        temperatures=temperatures,
        pairs=pairs,
        checks=tuple(checks),
        seed=_optional(raw, "seed", int, "scenario", 0),
        tolerances=tolerances,
        offdiag=offdiag,
        sweep=dict(sweep),
    )


def _bundled_path(name: str) -> Path | None:
    here = Path(__file__).parent / "scenarios" / name
    return here if here.is_file() else None


def load_scenario(path: str | Path) -> Scenario:
    """Parse and validate one scenario file (bundled names resolve too)."""
    p = Path(path)
    if not p.is_file():
        bundled = _bundled_path(p.name)
        if bundled is None:
            raise ConfigParse(f"no such scenario file: {path}")
        p = bundled
    try:
        raw = tomllib.loads(p.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise ConfigParse(f"{p}: {exc}") from exc
    return _parse_scenario_dict(raw, str(p))


# ---------------------------------------------------------------------------
# Resolution and execution


def _build_setup(scenario: Scenario, policy: NumericPolicy) -> Setup:
    params = scenario.setup_params
    if scenario.setup_kind == "ladder":
        return build_ladder_setup(
            params["n_rungs"], params["spacing"], params["eps_i"], params["eps_f"], policy
        )
    if "ramp" in params:
        profile = ramp_profile(
            params["n_sites"], params["x_i"], params["x_f"], params["ramp"][0], params["ramp"][1]
        )
    else:
        profile = np.asarray(params["e_profile"], dtype=float)
    return build_lattice_setup(
        params["n_sites"], params["hop"], profile, params["x_i"], params["x_f"], policy
    )


def _resolve_state(
    setup: Setup,
    descriptor: dict,
    region: str,
    rng: np.random.Generator,
    ordinal: int,
    policy: NumericPolicy,
) -> MachineState:
    kind = descriptor["kind"]
    if kind == "eigenstate":
        return machine_eigenstate(setup, region, descriptor["index"], policy)
    if kind == "random":
        return random_region_state(setup, region, rng, label=f"random[{region};{ordinal:02d}]", policy=policy)
    center = float(descriptor["center"])
    width = float(descriptor["width"])
    momentum = float(descriptor.get("momentum", 0.0))
    if setup.kind == "ladder":
        return ladder_packet(setup, region, center, width, momentum, policy)
    sites = region_indices(setup, region, policy)
    bounds = (int(sites[0]), int(sites[-1]))
    state = gaussian_packet(setup, center, width, momentum, region=bounds, policy=policy)
    return MachineState(
        vector=state.vector,
        label=f"packet[{region};c={center:g};w={width:g};k={momentum:g}]",
        region_leak=state.region_leak,
    )


def _pair_label(spec: PairSpec, psi_i: MachineState, psi_f: MachineState) -> str:
    return spec.label or f"{psi_i.label}->{psi_f.label}"


def _unitary_for(
    setup: Setup,
    scenario: Scenario,
    time: float | None,
    cache: dict,
    policy: NumericPolicy,
) -> np.ndarray:
    evo = scenario.evolution
    if evo.kind == "external":
        if "external" not in cache:
            if evo.style == "swap":
                block = DesignatedSwap(angle=evo.angle)
            else:
                block = evo.seed if evo.seed is not None else scenario.seed
            spec = EvolutionSpec(kind="external", block_seed=block)
            cache["external"] = energy_conserving_unitary(setup, spec, policy=policy)
        return cache["external"]
    if time is None:
        raise SchemaViolation(
            "autonomous evolution needs a time: set evolution.time or a per-pair time",
            key="evolution.time",
        )
    key = ("autonomous", float(time))
    if key not in cache:
        cache[key] = autonomous_unitary(setup, float(time), policy)
    return cache[key]


def _na_row(scenario: str, check: str, T: float, pair: str) -> ReportRow:
    return ReportRow(
        scenario=scenario,
        check=check,
        T=T,
        pair=pair,
        p_fwd=None,
        p_rev=None,
        lhs_log=None,
        rhs_log=None,
        residual=None,
        status="NA",
    )


def _check_rows_for_pair(
    scenario: Scenario,
    setup: Setup,
    check: str,
    T: float,
    spec: PairSpec,
    psi_i: MachineState,
    psi_f: MachineState,
    v_cache: dict,
    policy: NumericPolicy,
) -> list[ReportRow]:
    label = _pair_label(spec, psi_i, psi_f)
    evo_kind = scenario.evolution.kind
    time = spec.time if spec.time is not None else scenario.evolution.time

    if check in ("crooks", "classical"):
        v = _unitary_for(setup, scenario, time, v_cache, policy)
        run = make_run(setup, v, T, psi_i, psi_f, evolution_kind=evo_kind, policy=policy)
        report = check_coherent_crooks(run, policy) if check == "crooks" else check_classical_limit(run, policy)
        if report.status == "NA":
            return [_na_row(scenario.name, check, T, label)]
        passed = report.status != "exact-variant" or report.residual <= policy.residual_tol
        return [
            ReportRow(
                scenario=scenario.name,
                check=check,
                T=T,
                pair=label,
                p_fwd=report.p_fwd,
                p_rev=report.p_rev,
                lhs_log=report.lhs_log,
                rhs_log=report.rhs_log,
                residual=report.residual,
                status=report.status,
                passed=passed,
            )
        ]

    if check == "global":
        v = _unitary_for(setup, scenario, time, v_cache, policy)
        d_s = setup.dim_system
        mixer = np.eye(d_s, dtype=complex) / d_s
        rho_i = np.kron(psi_i.density(), mixer)
        rho_f = np.kron(psi_f.density(), mixer)
        basis = ReversalBasis.computational(setup.h_total.shape[0])
        report = check_global_invariance(setup.h_total, v, rho_i, rho_f, T, basis, policy)
        return [
            ReportRow(
                scenario=scenario.name,
                check=check,
                T=T,
                pair=label,
                p_fwd=None,
                p_rev=None,
                lhs_log=None,
                rhs_log=None,
                residual=report.residual,
                status="exact-variant",
                passed=report.passed,
            )
        ]

    # factorisability
    residual = max(
        factorisability_residual(setup, psi_i, "i", T, policy),
        factorisability_residual(setup, psi_f, "f", T, policy),
    )
    status = "exact-variant" if setup.kind == "ladder" else "autonomous-approximate"
    passed = status != "exact-variant" or residual <= policy.factorisability_tol
    return [
        ReportRow(
            scenario=scenario.name,
            check=check,
            T=T,
            pair=label,
            p_fwd=None,
            p_rev=None,
            lhs_log=None,
            rhs_log=None,
            residual=residual,
            status=status,
            passed=passed,
        )
    ]


def _offdiag_rows(
    scenario: Scenario,
    setup: Setup,
    T: float,
    v_cache: dict,
    policy: NumericPolicy,
) -> list[ReportRow]:
    conf = scenario.offdiag
    v = _unitary_for(setup, scenario, scenario.evolution.time, v_cache, policy)
    rows: list[ReportRow] = []
    for delta in conf["deltas"]:
        label = f"q[i={conf['i']};f={conf['f']};d={delta}]"
        try:
            report = check_off_diagonal(setup, v, T, conf["i"], conf["f"], delta, policy)
        except VacuousRatio:
            rows.append(_na_row(scenario.name, "offdiag", T, label))
            continue
        passed = report.residual <= policy.residual_tol and report.phase <= policy.phase_tol
        rows.append(
            ReportRow(
                scenario=scenario.name,
                check="offdiag",
                T=T,
                pair=label,
                p_fwd=abs(report.q_plus),
                p_rev=abs(report.q_minus),
                lhs_log=report.lhs_log,
                rhs_log=report.rhs_log,
                residual=report.residual,
                status="exact-variant",
                passed=passed,
            )
        )
    return rows


def run_parsed(scenario: Scenario, tol_scale: float = 1.0) -> list[ReportRow]:
    """Execute an already-parsed scenario; rows in declaration order."""
    policy = DEFAULT_POLICY.with_overrides(**scenario.tolerances)
    if tol_scale != 1.0:
        policy = policy.scaled(tol_scale)
    try:
        setup = _build_setup(scenario, policy)
        seeds = np.random.SeedSequence(scenario.seed).spawn(len(scenario.pairs))
        resolved = []
        for spec, seq in zip(scenario.pairs, seeds):
            prep_seq, meas_seq = seq.spawn(2)
            psi_i = _resolve_state(
                setup, spec.prepare, "i", np.random.default_rng(prep_seq), spec.ordinal, policy
            )
            psi_f = _resolve_state(
                setup, spec.measure, "f", np.random.default_rng(meas_seq), spec.ordinal, policy
            )
            resolved.append((spec, psi_i, psi_f))

        v_cache: dict = {}
        rows: list[ReportRow] = []
        for check in scenario.checks:
            for T in scenario.temperatures:
                if check == "offdiag":
                    rows.extend(_offdiag_rows(scenario, setup, T, v_cache, policy))
                    continue
                for spec, psi_i, psi_f in resolved:
                    rows.extend(
                        _check_rows_for_pair(
                            scenario, setup, check, T, spec, psi_i, psi_f, v_cache, policy
                        )
                    )
        return rows
    except ScenarioError:
        raise
    except CrooksLabError as exc:
        raise ScenarioError(scenario.name, exc) from exc


def run_scenario(path: str | Path, seed: int | None = None, tol_scale: float = 1.0) -> list[ReportRow]:
    """Parse and execute one scenario file."""
    scenario = load_scenario(path)
    if seed is not None:
        scenario = replace(scenario, seed=seed)
    return run_parsed(scenario, tol_scale)


# ---------------------------------------------------------------------------
# Parameter sweeps


def _set_dotted(params: Scenario, dotted: str, value) -> Scenario:
    head, _, rest = dotted.partition(".")
    if head == "setup" and rest in params.setup_params:
        new = dict(params.setup_params)
        new[rest] = value
        return replace(params, setup_params=new)
    if head == "evolution" and rest in EvolutionConfig.__dataclass_fields__:
        return replace(params, evolution=replace(params.evolution, **{rest: value}))
    if head == "seed" and not rest:
        return replace(params, seed=int(value))
    if head == "tolerances" and rest in _POLICY_FIELDS:
        new = dict(params.tolerances)
        new[rest] = float(value)
        return replace(params, tolerances=new)
    raise SchemaViolation(f"sweep: cannot vary '{dotted}'", key=f"sweep.{dotted}")


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def expand_sweep(scenario: Scenario) -> list[Scenario]:
    """Cartesian product of the [sweep] table, applied to the base scenario."""
    if not scenario.sweep:
        return [scenario]
    keys = list(scenario.sweep)
    variants = []
    for combo in product(*(scenario.sweep[k] for k in keys)):
        variant = replace(scenario, sweep={})
        tags = []
        for key, value in zip(keys, combo):
            variant = _set_dotted(variant, key, value)
            tags.append(f"{key}={_format_value(value)}")
        variants.append(replace(variant, name=f"{scenario.name}[{';'.join(tags)}]"))
    return variants


def _run_variant(args) -> list[ReportRow]:
    variant, tol_scale = args
    return run_parsed(variant, tol_scale)


def sweep_scenario(
    path: str | Path,
    seed: int | None = None,
    tol_scale: float = 1.0,
    jobs: int = 1,
) -> list[ReportRow]:
    """Run every point of the scenario's [sweep] grid, in grid order."""
    scenario = load_scenario(path)
    if seed is not None:
        scenario = replace(scenario, seed=seed)
    variants = expand_sweep(scenario)
    if jobs > 1 and len(variants) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_variant, [(v, tol_scale) for v in variants]))
    else:
        batches = [run_parsed(v, tol_scale) for v in variants]
    return [row for batch in batches for row in batch]


# ---------------------------------------------------------------------------
# Emission


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return format(value, ".17g")


def _csv_lines(rows: list[ReportRow]) -> list[str]:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    r.scenario,
                    r.check,
                    _fmt(r.T),
                    r.pair,
                    _fmt(r.p_fwd),
                    _fmt(r.p_rev),
                    _fmt(r.lhs_log),
                    _fmt(r.rhs_log),
                    _fmt(r.residual),
                    r.status,
                )
            )
        )
    return lines


def _jsonl_lines(rows: list[ReportRow]) -> list[str]:
    lines = []
    for r in rows:
        fields = [
            f'"scenario":"{r.scenario}"',
            f'"check":"{r.check}"',
            f'"T":{_fmt(r.T)}',
            f'"pair":"{r.pair}"',
            f'"p_fwd":{_fmt(r.p_fwd) or "null"}',
            f'"p_rev":{_fmt(r.p_rev) or "null"}',
            f'"lhs_log":{_fmt(r.lhs_log) or "null"}',
            f'"rhs_log":{_fmt(r.rhs_log) or "null"}',
            f'"residual":{_fmt(r.residual) or "null"}',
            f'"status":"{r.status}"',
        ]
        lines.append("{" + ",".join(fields) + "}")
    return lines


def emit(rows: list[ReportRow], format: str = "csv", out: str | Path | None = None) -> None:
    """Write rows as CSV or JSON lines to a path or standard output."""
    if format == "csv":
        lines = _csv_lines(rows)
    elif format == "json-lines":
        lines = _jsonl_lines(rows)
    else:
        raise ConfigParse(f"unknown output format: {format}")
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)

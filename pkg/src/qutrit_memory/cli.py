"""Scenario-file driven command line: run, sweep, spectrum, theory, selftest.

Scenario files are flat key = value documents; see parse_scenario. All CSV
output is byte-deterministic for a fixed scenario.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import algebra, analysis, evolve, selftest, theory
from .algebra import Pattern
from .errors import NumericalError, ValidationError
from .hamiltonian import AnnealSpec, MemorySet, Schedule

_SCHEDULES = {s.value: s for s in Schedule}

_DEFAULTS = {
    "schedule": "plain",
    "h": 2.0,
    "T": 300.0,
    "dt": 0.1,
    "gamma": 0.0,
    "help_scale": 1.0,
    "memory_scale": 1.0,
}


@dataclass(frozen=True)
class Scenario:
    name: str
    n: int
    patterns: tuple[Pattern, ...]
    probe: Pattern | None = None
    schedule: str = "plain"
    help_scale: float = 1.0
    memory_scale: float = 1.0
    h: float = 2.0
    T: float = 300.0
    dt: float = 0.1
    gamma: float = 0.0
    sweep_control: str | None = None
    sweep_values: tuple[float, ...] | None = None
    spectrum_samples: int | None = None


def _parse_trits(text: str, where: str) -> Pattern:
    try:
        values = tuple(int(part) for part in text.split(";"))
    except ValueError:
        raise ValidationError(f"{where}: cannot parse trit list {text!r}") from None
    for v in values:
        if v not in algebra.TRIT_VALUES:
            raise ValidationError(f"{where}: trit {v} not in {algebra.TRIT_VALUES}")
    return values


def _parse_floats(text: str, where: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ValidationError(f"{where}: cannot parse number list {text!r}") from None


_SCALAR_KEYS = {
    "name": str,
    "n": int,
    "schedule": str,
    "help_scale": float,
    "memory_scale": float,
    "h": float,
    "T": float,
    "dt": float,
    "gamma": float,
    "sweep_control": str,
    "spectrum_samples": int,
}


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    """Parse a flat key = value scenario document.

    Repeated `pattern` keys list the stored patterns; trit lists are
    semicolon-joined signed integers, e.g. `pattern = 0;1`. Sweep values
    are comma-separated. Unknown keys, out-of-range trits and duplicate
    patterns are rejected with the offending line number.
    """
    raw: dict[str, object] = {}
    patterns: list[Pattern] = []
    pattern_lines: dict[Pattern, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        where = f"{source}:{lineno}"
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValidationError(f"{where}: expected `key = value`, got {line!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key == "pattern":
            p = _parse_trits(value, where)
            if p in pattern_lines:
                raise ValidationError(
                    f"{where}: duplicate pattern {value!r} (first at line {pattern_lines[p]})"
                )
            pattern_lines[p] = lineno
            patterns.append(p)
        elif key == "probe":
            raw["probe"] = _parse_trits(value, where)
        elif key == "sweep_values":
            raw["sweep_values"] = _parse_floats(value, where)
        elif key in _SCALAR_KEYS:
            if key in raw:
                raise ValidationError(f"{where}: duplicate key {key!r}")
            try:
                raw[key] = _SCALAR_KEYS[key](value)
            except ValueError:
                raise ValidationError(f"{where}: bad value {value!r} for {key}") from None
        else:
            raise ValidationError(f"{where}: unknown key {key!r}")

    if not patterns:
        raise ValidationError(f"{source}: no stored patterns given")
    n = raw.pop("n", len(patterns[0]))
    for p in patterns:
        if len(p) != n:
            raise ValidationError(f"{source}: pattern {p} does not have length n = {n}")
    probe = raw.get("probe")
    if probe is not None and len(probe) != n:
        raise ValidationError(f"{source}: probe {probe} does not have length n = {n}")
    schedule = raw.get("schedule", _DEFAULTS["schedule"])
    if schedule not in _SCHEDULES:
        raise ValidationError(
            f"{source}: unknown schedule {schedule!r}; choose from {sorted(_SCHEDULES)}"
        )
    if raw.get("sweep_control") is not None and raw.get("sweep_values") is None:
        raise ValidationError(f"{source}: sweep_control given without sweep_values")
    if raw.get("sweep_values") is not None and raw.get("sweep_control") is None:
        raise ValidationError(f"{source}: sweep_values given without sweep_control")
    if probe is None:
        raw["gamma"] = 0.0

    merged = {**_DEFAULTS, **raw}
    merged.setdefault("name", "scenario")
    return Scenario(n=n, patterns=tuple(patterns), **merged)


def scenario_to_text(scenario: Scenario) -> str:
    """Serialize a scenario so that parse_scenario round-trips it."""
    lines = [f"name = {scenario.name}", f"n = {scenario.n}"]
    for p in scenario.patterns:
        lines.append(f"pattern = {pattern_string(p)}")
    if scenario.probe is not None:
        lines.append(f"probe = {pattern_string(scenario.probe)}")
    lines.append(f"schedule = {scenario.schedule}")
    for key in ("help_scale", "memory_scale", "h", "T", "dt", "gamma"):
        lines.append(f"{key} = {format_float(getattr(scenario, key))}")
    if scenario.sweep_control is not None:
        lines.append(f"sweep_control = {scenario.sweep_control}")
        lines.append(
            "sweep_values = " + ", ".join(format_float(v) for v in scenario.sweep_values)
        )
    if scenario.spectrum_samples is not None:
        lines.append(f"spectrum_samples = {scenario.spectrum_samples}")
    return "\n".join(lines) + "\n"


def build_spec(scenario: Scenario) -> AnnealSpec:
    return AnnealSpec(
        memory=MemorySet(scenario.patterns),
        probe=scenario.probe,
        gamma=scenario.gamma,
        field_h=scenario.h,
        total_time=scenario.T,
        dt=scenario.dt,
        schedule=_SCHEDULES[scenario.schedule],
        help_scale=scenario.help_scale,
        memory_scale=scenario.memory_scale,
    )


def format_float(value: float) -> str:
    """Shortest decimal that round-trips; integral values drop the trailing .0"""
    v = float(value)
    if v == 0.0:
        v = 0.0  # fold -0.0
    text = repr(v)
    return text[:-2] if text.endswith(".0") else text


def pattern_string(pattern: Pattern) -> str:
    return ";".join(str(t) for t in pattern)


def emit_csv(table) -> str:
    """Render a SweepTable or SpectrumTrace as deterministic CSV text."""
    if isinstance(table, analysis.SweepTable):
        rows = sorted(table.rows, key=lambda r: (r[0], algebra.basis_index(r[1])))
        lines = ["control,control_value,pattern,probability"]
        lines += [
            f"{table.control},{format_float(v)},{pattern_string(p)},{format_float(prob)}"
            for v, p, prob in rows
        ]
        return "\n".join(lines) + "\n"
    if isinstance(table, evolve.SpectrumTrace):
        dim = table.levels.shape[1]
        lines = ["t," + ",".join(f"E{k}" for k in range(1, dim + 1))]
        for t, row in zip(table.times, table.levels):
            lines.append(",".join([format_float(t)] + [format_float(e) for e in row]))
        return "\n".join(lines) + "\n"
    raise ValidationError(f"cannot emit CSV for {type(table).__name__}")


def probabilities_csv(spec: AnnealSpec, state: np.ndarray) -> str:
    patterns = list(spec.memory.patterns)
    if spec.probe is not None and spec.probe not in patterns:
        patterns.append(spec.probe)
    lines = ["pattern,probability"]
    for p in sorted(patterns, key=algebra.basis_index):
        lines.append(
            f"{pattern_string(p)},{format_float(evolve.pattern_probability(state, p))}"
        )
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse problems to exit code 1
        raise ValidationError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qutrit-memory", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario_command(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("scenario", help="path to a scenario file")
        p.add_argument("--out", metavar="DIR", help="write CSV into DIR instead of stdout")
        return p

    add_scenario_command("run", "single anneal; per-pattern probabilities")
    sweep_cmd = add_scenario_command("sweep", "anneal over the scenario's sweep grid")
    sweep_cmd.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    add_scenario_command("spectrum", "instantaneous eigenvalues along the schedule")

    theory_cmd = sub.add_parser("theory", help="closed-form predictions and constants")
    theory_cmd.add_argument("--h", type=float, required=True)
    theory_cmd.add_argument("--T", type=float, required=True)
    theory_cmd.add_argument("--gamma", type=float, default=None)
    theory_cmd.add_argument("--z-cutoff", type=float, default=None)

    selftest_cmd = sub.add_parser("selftest", help="run the acceptance checks")
    selftest_cmd.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    return parser


def _load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ValidationError(f"cannot read scenario {path}: {exc}") from exc
    return parse_scenario(text, source=path)


def _deliver(text: str, out_dir: str | None, filename: str) -> None:
    if out_dir is None:
        sys.stdout.write(text)
        return
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, filename)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    print(path)


def _cmd_run(args) -> int:
    scenario = _load_scenario(args.scenario)
    spec = build_spec(scenario)
    result = evolve.anneal(spec)
    _deliver(probabilities_csv(spec, result.final_state), args.out, f"{scenario.name}_run.csv")
    return 0


def _cmd_sweep(args) -> int:
    scenario = _load_scenario(args.scenario)
    if scenario.sweep_control is None:
        raise ValidationError(f"{args.scenario}: scenario has no sweep section")
    table = analysis.sweep(
        build_spec(scenario), scenario.sweep_control, scenario.sweep_values, jobs=args.jobs
    )
    _deliver(emit_csv(table), args.out, f"{scenario.name}_sweep.csv")
    return 0


def _cmd_spectrum(args) -> int:
    scenario = _load_scenario(args.scenario)
    samples = scenario.spectrum_samples or 301
    trace = evolve.instantaneous_spectrum(build_spec(scenario), samples)
    _deliver(emit_csv(trace), args.out, f"{scenario.name}_spectrum.csv")
    return 0


def _cmd_theory(args) -> int:
    h, total_time = args.h, args.T
    lines = [
        ("lone_probability", theory.lone_probability(h, total_time)),
        ("paired_hint_slope", theory.paired_hint_slope(h, total_time)),
        ("lone_hint_slope", theory.lone_hint_slope(h, total_time)),
        ("phase_frequency", theory.phase_frequency(h, total_time)),
        ("reconstructed_paired_slope", theory.reconstructed_paired_slope()),
        ("reconstructed_lone_slope", theory.reconstructed_lone_slope()),
        ("prefactor_from_integral", theory.prefactor_from_integral(args.z_cutoff)),
    ]
    if args.gamma is not None:
        lines += [
            ("paired_hint_probability", theory.paired_hint_probability(h, total_time, args.gamma)),
            ("lone_hint_probability", theory.lone_hint_probability(h, total_time, args.gamma)),
        ]
    for key, value in lines:
        print(f"{key} = {format_float(value)}")
    return 0


def _cmd_selftest(args) -> int:
    results = selftest.run_all(jobs=args.jobs)
    for result in results:
        print(result.line())
    failures = [r for r in results if not r.passed]
    if failures:
        _print_failures([(r.name, r.detail) for r in failures])
        return 2
    print("all criteria passed")
    return 0


def _print_failures(failures: list[tuple[str, str]]) -> None:
    payload = {"failures": [{"name": n, "detail": d} for n, d in failures]}
    print(json.dumps(payload), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "run": _cmd_run,
            "sweep": _cmd_sweep,
            "spectrum": _cmd_spectrum,
            "theory": _cmd_theory,
            "selftest": _cmd_selftest,
        }[args.command]
        return handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _print_failures([("validation", str(exc))])
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        _print_failures([("numerical", str(exc))])
        return 2


def console_main() -> None:  # console_scripts entry point
    sys.exit(main())

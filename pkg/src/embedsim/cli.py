"""Experiment runner: configure states, Hamiltonians and monotones from a
JSON document, run a workflow, emit machine-readable records.

Exit codes: 0 success, 2 config error, 3 numerical-integrity error, 4 I/O
error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass

import numpy as np

from .convexroof import RoofConfig, convex_roof_estimate, werner_state
from .embedding import embed_hamiltonian, embed_state
from .errors import ConfigError, NumericalIntegrityError
from .evolution import METHODS, evolve_enlarged, evolve_exact
from .measurement import ShotPlan, sample_monotone
from .monotones import (
    MONOTONE_PRESETS,
    MonotoneSpec,
    evaluate_monotone,
    expand_to_observables,
    tomography_baseline,
)
from .pauli import MixedState, PauliSum, PureState, expectation

WORKFLOWS = ("evolve", "monotone", "roof", "count")
PATH_AGREEMENT_ATOL = 1e-9


def bell_state() -> PureState:
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1.0 / np.sqrt(2.0)
    return PureState(v)


def ghz_state(n: int = 3) -> PureState:
    v = np.zeros(1 << n, dtype=complex)
    v[0] = v[-1] = 1.0 / np.sqrt(2.0)
    return PureState(v)


def w_state(n: int = 3) -> PureState:
    v = np.zeros(1 << n, dtype=complex)
    for q in range(n):
        v[1 << q] = 1.0 / np.sqrt(n)
    return PureState(v)


def product_state(n: int) -> PureState:
    v = np.zeros(1 << n, dtype=complex)
    v[0] = 1.0
    return PureState(v)


STATE_PRESETS = {
    "bell": lambda n=2: bell_state(),
    "ghz": ghz_state,
    "w": w_state,
    "product": product_state,
    "zero": product_state,
}


@dataclass(frozen=True)
class ExperimentConfig:
    workflow: str
    initial_state: PureState | None = None
    hamiltonian: PauliSum | None = None
    evolution_method: str = "exact"
    evolution_steps: int = 1
    times: tuple[float, ...] = (0.0,)
    monotone: MonotoneSpec | None = None
    shots: ShotPlan | None = None
    roof: RoofConfig | None = None
    mixed_state: MixedState | None = None
    n_qubits: int | None = None


@dataclass
class ResultRecord:
    t: float | None = None
    value_direct: float | None = None
    value_embedded: float | None = None
    value_sampled: float | None = None
    per_observable: list[float] | None = None
    per_observable_sampled: list[float] | None = None
    n_observables: int | None = None
    n_tomography: int | None = None
    duration_ms: float | None = None
    roof_value: float | None = None
    roof_k: int | None = None
    roof_iterations: int | None = None
    roof_converged: bool | None = None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _fail(field: str, message: str):
    raise ConfigError(f"config field '{field}': {message}")


def _parse_amplitude(entry) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return complex(entry[0], entry[1])
    _fail("initial_state", f"amplitude {entry!r} is not a number or [re, im] pair")


def _parse_state(raw, n_qubits: int | None) -> PureState:
    if isinstance(raw, str):
        if raw not in STATE_PRESETS:
            _fail("initial_state", f"unknown preset {raw!r}")
        try:
            return STATE_PRESETS[raw]() if n_qubits is None else STATE_PRESETS[raw](n_qubits)
        except (TypeError, ValueError) as exc:
            _fail("initial_state", str(exc))
    if isinstance(raw, list):
        amps = [_parse_amplitude(a) for a in raw]
        try:
            return PureState.from_amplitudes(amps, atol=1e-8)
        except ValueError as exc:
            _fail("initial_state", str(exc))
    _fail("initial_state", "expected a preset name or an amplitude list")


def _parse_monotone(raw, n_qubits: int | None) -> MonotoneSpec:
    if isinstance(raw, str):
        if raw not in MONOTONE_PRESETS:
            _fail("monotone", f"unknown preset {raw!r}")
        try:
            return (
                MONOTONE_PRESETS[raw]()
                if n_qubits is None
                else MONOTONE_PRESETS[raw](n_qubits)
            )
        except (TypeError, ValueError) as exc:
            _fail("monotone", str(exc))
    if isinstance(raw, dict):
        try:
            return MonotoneSpec.from_json(raw)
        except (KeyError, TypeError, ValueError) as exc:
            _fail("monotone", str(exc))
    _fail("monotone", "expected a preset name or a spec object")


def _parse_mixed_state(raw) -> MixedState:
    if not isinstance(raw, dict):
        _fail("mixed_state", "expected an object")
    try:
        if raw.get("preset") == "werner":
            return werner_state(float(raw["p"]))
        if "matrix" in raw:
            rows = [[_parse_amplitude(e) for e in row] for row in raw["matrix"]]
            return MixedState(np.array(rows, dtype=complex))
    except (KeyError, TypeError, ValueError) as exc:
        _fail("mixed_state", str(exc))
    _fail("mixed_state", "expected {'preset': 'werner', 'p': ...} or {'matrix': ...}")


def parse_config(raw: dict) -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config document must be a JSON object")
    workflow = raw.get("workflow")
    if workflow not in WORKFLOWS:
        _fail("workflow", f"expected one of {WORKFLOWS}, got {workflow!r}")

    n_qubits = raw.get("n_qubits")
    if n_qubits is not None and (not isinstance(n_qubits, int) or n_qubits < 1):
        _fail("n_qubits", "must be a positive integer")

    hamiltonian = None
    if raw.get("hamiltonian") is not None:
        try:
            hamiltonian = PauliSum.from_records(raw["hamiltonian"])
        except (KeyError, TypeError, ValueError) as exc:
            _fail("hamiltonian", str(exc))

    state = None
    if raw.get("initial_state") is not None:
        state = _parse_state(raw["initial_state"], n_qubits)
        if hamiltonian is not None and hamiltonian.n != state.n:
            _fail("hamiltonian", f"acts on {hamiltonian.n} qubits, state has {state.n}")
        n_qubits = state.n

    monotone = None
    if raw.get("monotone") is not None:
        monotone = _parse_monotone(raw["monotone"], n_qubits)
        if n_qubits is not None and monotone.n_qubits != n_qubits:
            _fail("monotone", f"spec is for {monotone.n_qubits} qubits, expected {n_qubits}")

    times = raw.get("times", [0.0])
    if not isinstance(times, list) or not all(
        isinstance(t, (int, float)) and np.isfinite(t) for t in times
    ):
        _fail("times", "must be a list of finite numbers")

    evolution = raw.get("evolution", {})
    method = evolution.get("method", "exact")
    steps = evolution.get("steps", 1)
    if method not in METHODS:
        _fail("evolution.method", f"expected one of {METHODS}")
    if not isinstance(steps, int) or steps < 1:
        _fail("evolution.steps", "must be a positive integer")

    shots = None
    if raw.get("shots") is not None:
        try:
            shots = ShotPlan(int(raw["shots"]["shots"]), int(raw["shots"].get("seed", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            _fail("shots", str(exc))

    roof = None
    if raw.get("roof") is not None:
        try:
            roof = RoofConfig(
                extra_terms=int(raw["roof"].get("extra_terms", 2)),
                max_iterations=int(raw["roof"].get("max_iterations", 500)),
                restarts=int(raw["roof"].get("restarts", 8)),
                tolerance=float(raw["roof"].get("tolerance", 1e-6)),
                seed=int(raw["roof"].get("seed", 0)),
                shots=shots if raw["roof"].get("use_shots") else None,
            )
        except (TypeError, ValueError) as exc:
            _fail("roof", str(exc))

    mixed = None
    if raw.get("mixed_state") is not None:
        mixed = _parse_mixed_state(raw["mixed_state"])

    return ExperimentConfig(
        workflow=workflow,
        initial_state=state,
        hamiltonian=hamiltonian,
        evolution_method=method,
        evolution_steps=steps,
        times=tuple(float(t) for t in times),
        monotone=monotone,
        shots=shots,
        roof=roof,
        mixed_state=mixed,
        n_qubits=n_qubits,
    )


def _require(config: ExperimentConfig, field: str):
    if getattr(config, field) is None:
        _fail(field, f"required for the {config.workflow!r} workflow")


def run(config: ExperimentConfig) -> list[ResultRecord]:
    if config.workflow == "count":
        _require(config, "monotone")
        start = time.perf_counter()
        record = ResultRecord(
            n_observables=len(expand_to_observables(config.monotone)),
            n_tomography=tomography_baseline(config.monotone.n_qubits),
            duration_ms=(time.perf_counter() - start) * 1e3,
        )
        return [record]

    if config.workflow == "roof":
        _require(config, "monotone")
        rho = config.mixed_state
        if rho is None:
            if config.initial_state is None:
                _fail("mixed_state", "roof workflow needs a mixed_state or initial_state")
            rho = MixedState.from_pure(config.initial_state)
        start = time.perf_counter()
        result = convex_roof_estimate(rho, config.monotone, config.roof or RoofConfig())
        return [
            ResultRecord(
                roof_value=result.value,
                roof_k=result.decomposition.size,
                roof_iterations=result.iterations,
                roof_converged=result.converged,
                n_observables=len(expand_to_observables(config.monotone)),
                n_tomography=tomography_baseline(config.monotone.n_qubits),
                duration_ms=(time.perf_counter() - start) * 1e3,
            )
        ]

    # evolve / monotone: trajectory of monotone values along the dynamics
    _require(config, "initial_state")
    _require(config, "monotone")
    if config.workflow == "evolve":
        _require(config, "hamiltonian")
    psi0 = config.initial_state
    spec = config.monotone
    h_tilde = embed_hamiltonian(config.hamiltonian) if config.hamiltonian else None
    observables = expand_to_observables(spec)
    records = []
    for t in config.times:
        start = time.perf_counter()
        if h_tilde is None or t == 0.0:
            psi_t = psi0
            tilde_t = embed_state(psi0)
        else:
            psi_t = PureState.from_amplitudes(
                evolve_exact(psi0.amplitudes, config.hamiltonian, t), atol=1e-8
            )
            tilde_t = evolve_enlarged(
                embed_state(psi0), h_tilde, t,
                method=config.evolution_method, steps=config.evolution_steps,
            )
        direct = evaluate_monotone(psi_t, spec, path="direct")
        embedded = evaluate_monotone(tilde_t, spec, path="embedded")
        if abs(direct.value - embedded.value) >= PATH_AGREEMENT_ATOL:
            raise NumericalIntegrityError(
                f"direct/embedded paths disagree at t={t}: "
                f"{direct.value} vs {embedded.value}"
            )
        record = ResultRecord(
            t=t,
            value_direct=direct.value,
            value_embedded=embedded.value,
            per_observable=[expectation(tilde_t, o) for o in observables],
            n_observables=len(observables),
            n_tomography=tomography_baseline(spec.n_qubits),
        )
        if config.shots is not None:
            sampled, per_obs = sample_monotone(tilde_t, spec, config.shots)
            record.value_sampled = sampled
            record.per_observable_sampled = list(per_obs)
        record.duration_ms = (time.perf_counter() - start) * 1e3
        records.append(record)
    return records


CSV_COLUMNS = (
    "t",
    "value_direct",
    "value_embedded",
    "value_sampled",
    "n_observables",
    "n_tomography",
    "duration_ms",
)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _render(records: list[ResultRecord], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in records], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(_csv_cell(getattr(r, col)) for col in CSV_COLUMNS)
        return buf.getvalue()
    raise ConfigError(f"unknown output format {fmt!r}")


def emit(records: list[ResultRecord], fmt: str = "json", destination: str | None = None):
    """Write records; file output is atomic (temp file + rename)."""
    text = _render(records, fmt)
    if destination is None or destination == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(destination))
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp_path, destination)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embedsim",
        description="Enlarged-space simulation of entanglement-monotone workflows",
    )
    parser.add_argument("--config", required=True, help="path to a JSON config")
    parser.add_argument("--output", default=None, help="output path (default: stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--seed", type=int, default=None, help="override all config seeds")
    parser.add_argument("--shots", type=int, default=None, help="override the shot count")
    return parser


def _apply_overrides(config: ExperimentConfig, seed, shots) -> ExperimentConfig:
    plan = config.shots
    if shots is not None:
        plan = ShotPlan(shots, plan.seed if plan else 0)
    if seed is not None and plan is not None:
        plan = ShotPlan(plan.shots, seed)
    roof = config.roof
    if seed is not None and roof is not None:
        roof = dataclasses.replace(roof, seed=seed)
    if roof is not None and roof.shots is not None:
        roof = dataclasses.replace(roof, shots=plan)
    return dataclasses.replace(config, shots=plan, roof=roof)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        config = _apply_overrides(parse_config(raw), args.seed, args.shots)
        records = run(config)
        emit(records, fmt=args.format, destination=args.output)
    except ConfigError as exc:
        print(f"embedsim: config error: {exc}", file=sys.stderr)
        return 2
    except NumericalIntegrityError as exc:
        print(f"embedsim: numerical-integrity error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"embedsim: i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    python -m charpoly compute --config run.json --out result.json
    python -m charpoly verify  --config run.json --suite all
    python -m charpoly sample  --config run.json --seed 42
    python -m charpoly rh      --config run.json

A run config is strict JSON: unknown fields are rejected and every error
names the offending field. Results go to ``--out`` (or the config's
``output_path``; ``-`` is standard output) as sorted-key JSON, written
atomically; a one-line summary goes to standard error.

Exit status: 0 success, 1 input or capability error, 2 result flagged as
numerically unreliable or a verification check failed (the result is
still written).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field, replace
from typing import Optional

from .correlators import SpectralArguments, correlation_general
from .errors import AccuracyError, CharpolyError, ConfigurationError, NumericError
from .oracles import McConfig, mc_gue_sample
from .orthopoly import OrthoBasis, build_basis
from .quadrature import Potential, build_quadrature
from .rh import bulk_points, jump_residual, normalization_residual, residual_report
from .suites import SUITES, passed, run_suite, suite_degree

__all__ = ["RunConfig", "load_config", "parse_config", "main", "EXIT_OK", "EXIT_INPUT",
           "EXIT_UNRELIABLE"]

EXIT_OK, EXIT_INPUT, EXIT_UNRELIABLE = 0, 1, 2
COMMANDS = ("compute", "verify", "sample", "rh")

_NUMERIC_DEFAULTS = {"target_tol": 1e-13, "points_per_panel": 20, "mc_samples": 100000,
                     "seed": 0}


@dataclass(frozen=True)
class RunConfig:
    command: str
    potential: Potential
    epsilons: tuple = ()
    mus: tuple = ()
    numeric: dict = field(default_factory=lambda: dict(_NUMERIC_DEFAULTS))
    suite: str = "all"
    rh_n: Optional[int] = None
    output_path: str = "-"

    @property
    def arguments(self) -> SpectralArguments:
        return SpectralArguments(self.epsilons, self.mus, self.potential.matrix_size)


def _fields(doc, where, allowed, required=()):
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{where}: expected an object")
    for key in doc:
        if key not in allowed:
            raise ConfigurationError(f"{where}.{key}: unknown field")
    for key in required:
        if key not in doc:
            raise ConfigurationError(f"{where}.{key}: missing")


def _complex(doc, where) -> complex:
    _fields(doc, where, ("re", "im"), ("re", "im"))
    for part in ("re", "im"):
        v = doc[part]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigurationError(f"{where}.{part}: expected a finite number")
    return complex(doc["re"], doc["im"])


def _positive(value, where, integer=False):
    ok_type = isinstance(value, int) if integer else isinstance(value, (int, float))
    if isinstance(value, bool) or not ok_type or not value > 0:
        kind = "a positive integer" if integer else "a positive number"
        raise ConfigurationError(f"{where}: expected {kind}")
    return value


def parse_config(doc) -> RunConfig:
    """Validate a decoded JSON document into a :class:`RunConfig`."""
    _fields(doc, "config", ("command", "potential", "arguments", "numeric", "suite", "rh",
                            "output_path"), ("potential",))
    command = doc.get("command", "compute")
    if command not in COMMANDS:
        raise ConfigurationError(f"config.command: expected one of {COMMANDS}")
    try:
        potential = Potential.from_json(doc["potential"])
    except (ConfigurationError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"config.potential: {exc}") from None

    args = doc.get("arguments", {})
    _fields(args, "config.arguments", ("epsilons", "mus"))
    points = {}
    for key in ("epsilons", "mus"):
        raw = args.get(key, [])
        if not isinstance(raw, list):
            raise ConfigurationError(f"config.arguments.{key}: expected a list")
        points[key] = tuple(_complex(p, f"config.arguments.{key}[{i}]")
                            for i, p in enumerate(raw))

    numeric = dict(_NUMERIC_DEFAULTS)
    given = doc.get("numeric", {})
    _fields(given, "config.numeric", tuple(_NUMERIC_DEFAULTS))
    for key, value in given.items():
        where = f"config.numeric.{key}"
        if key == "seed":
            if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < 2**64:
                raise ConfigurationError(f"{where}: expected an unsigned 64-bit integer")
        else:
            _positive(value, where, integer=key != "target_tol")
        numeric[key] = value

    suite = doc.get("suite", "all")
    if suite not in SUITES:
        raise ConfigurationError(f"config.suite: expected one of {SUITES}")
    rh = doc.get("rh", {})
    _fields(rh, "config.rh", ("n",))
    rh_n = rh.get("n")
    if rh_n is not None:
        _positive(rh_n, "config.rh.n", integer=True)
    output = doc.get("output_path", "-")
    if not isinstance(output, str) or not output:
        raise ConfigurationError("config.output_path: expected a path or '-'")
    return RunConfig(command, potential, points["epsilons"], points["mus"], numeric, suite,
                     rh_n, output)


def load_config(path: str) -> RunConfig:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"config: cannot read {path!r} ({exc.strerror})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config: invalid JSON ({exc.msg} at line {exc.lineno})") \
            from None
    return parse_config(doc)


def dumps(doc) -> str:
    """Canonical serialisation: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_output(doc, path: str):
    text = dumps(doc)
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".charpoly-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _rule_and_basis(config: RunConfig, degree: int, basis_path: Optional[str] = None):
    rule = build_quadrature(config.potential,
                            points_per_panel=config.numeric["points_per_panel"],
                            target_tol=config.numeric["target_tol"], max_degree=degree,
                            sensitive=config.epsilons)
    basis = None
    if basis_path and os.path.exists(basis_path):
        with open(basis_path, encoding="utf-8") as fh:
            basis = OrthoBasis.from_json(json.load(fh))
        if basis.potential != config.potential or basis.max_degree < degree:
            basis = None
    if basis is None:
        basis = build_basis(config.potential, degree, rule)
    return rule, basis


def cmd_compute(config: RunConfig, basis_path=None):
    args = config.arguments
    rule, basis = _rule_and_basis(config, args.matrix_size + args.L + 1, basis_path)
    result = correlation_general(basis, args, rule)
    status = EXIT_OK if result.reliable else EXIT_UNRELIABLE
    value = "overflow" if result.value is None else f"{result.value:.12g}"
    summary = f"compute: K = {value} (rcond {result.condition_estimate:.2e})"
    return result.to_json(), status, summary, basis


def cmd_verify(config: RunConfig, basis_path=None):
    args = config.arguments
    rule, basis = _rule_and_basis(config, suite_degree(args, config.rh_n), basis_path)
    checks = run_suite(config.suite, config.potential, args, rule, basis,
                       config.numeric["seed"], config.rh_n)
    ok = passed(checks)
    report = {"suite": config.suite, "passed": ok, "checks": checks}
    counts = {s: sum(c["status"] == s for c in checks) for s in ("pass", "fail", "skipped")}
    summary = (f"verify {config.suite}: {counts['pass']} passed, {counts['fail']} failed, "
               f"{counts['skipped']} skipped")
    return report, EXIT_OK if ok else EXIT_UNRELIABLE, summary, basis


def cmd_sample(config: RunConfig, basis_path=None):
    mc = McConfig(config.numeric["mc_samples"], config.numeric["seed"],
                  config.potential.matrix_size)
    est = mc_gue_sample(mc, config.arguments, config.potential)
    summary = f"sample: mean = {est.mean:.8g} +/- {est.std_error:.2g} ({est.samples} samples)"
    return est.to_json(), EXIT_OK, summary, None


def cmd_rh(config: RunConfig, basis_path=None):
    n = config.rh_n or 3
    rule, basis = _rule_and_basis(config, n + 1, basis_path)
    jump = [(x, n, jump_residual(basis, n, x, 1e-4, rule))
            for x in bulk_points(config.potential, 20)]
    radius = max(1e3, 10.0 * (1.0 + rule.truncation_radius))
    norm = [(radius * 2**j, n, normalization_residual(basis, n, radius * 2**j, rule))
            for j in range(4)]
    report = {"jump": residual_report("jump", jump),
              "normalization": residual_report("normalization", norm)}
    summary = (f"rh n={n}: max jump residual {max(r[2] for r in jump):.2e}, "
               f"normalization {norm[0][2]:.2e} at radius {radius:g}")
    return report, EXIT_OK, summary, basis


_COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "sample": cmd_sample, "rh": cmd_rh}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charpoly",
        description="Averages of characteristic polynomials in unitary-invariant ensembles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} command")
        p.add_argument("--config", required=True, help="run config JSON ('-' for stdin)")
        p.add_argument("--out", help="output path, '-' for stdout (overrides config)")
        p.add_argument("--seed", type=int, help="RNG seed (overrides config)")
        p.add_argument("--tol", type=float, help="quadrature target tolerance")
        p.add_argument("--suite", choices=SUITES, help="verification suite")
        p.add_argument("--dump-basis", metavar="PATH",
                       help="write the orthogonal-polynomial basis to PATH; reused when present")
    return parser


def _apply_overrides(config: RunConfig, ns) -> RunConfig:
    if "command" in ns and config.command != ns.command:
        config = replace(config, command=ns.command)
    numeric = dict(config.numeric)
    if ns.seed is not None:
        if not 0 <= ns.seed < 2**64:
            raise ConfigurationError("--seed: expected an unsigned 64-bit integer")
        numeric["seed"] = ns.seed
    if ns.tol is not None:
        numeric["target_tol"] = _positive(ns.tol, "--tol")
    config = replace(config, numeric=numeric)
    if ns.suite is not None:
        config = replace(config, suite=ns.suite)
    if ns.out is not None:
        config = replace(config, output_path=ns.out)
    return config


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        config = _apply_overrides(load_config(ns.config), ns)
        doc, status, summary, basis = _COMMANDS[config.command](config, ns.dump_basis)
        write_output(doc, config.output_path)
        if ns.dump_basis and basis is not None:
            write_output(basis.to_json(), ns.dump_basis)
    except (AccuracyError, NumericError) as exc:
        print(f"charpoly: numerical failure: {exc}", file=sys.stderr)
        return EXIT_UNRELIABLE
    except (CharpolyError, ValueError, IndexError) as exc:
        print(f"charpoly: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(summary, file=sys.stderr)
    return status


def run():
    """Console-script entry point."""
    sys.exit(main())

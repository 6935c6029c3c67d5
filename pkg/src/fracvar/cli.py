"""Command-line front end.

Every subcommand builds a :class:`~fracvar.wtf.WtfSpec` from ``--b``,
``--weight``, ``--wave`` and ``--signs`` (or a JSON ``--config`` file whose
keys are the long flag names; explicit flags win) and writes a CSV or JSON
report to stdout or ``--out``.

Exit codes: 0 success, 1 domain or contract error (including a failed
check), 2 capacity error, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

from ._numerics import set_threads
from .errors import CapacityError, FracvarError
from .ingest import load_csv, multiscale_variation
from .stochastic import enumerate_variation, exhaustive_bound_check, nonzero_certificate, z_moment
from .variation import (
    check_regime_bounds,
    estimate_variation_index,
    pth_variation,
    riesz_normalized_curve,
    variation_curve,
)
from .waves import certify_holder
from .weights import SUPER, verify_submultiplicative
from .wtf import WtfSpec, check_holder_bounds, eval_f, eval_f_grid, grid_csv

EXIT_OK, EXIT_DOMAIN, EXIT_CAPACITY, EXIT_USAGE = 0, 1, 2, 64

DEFAULTS = {
    "b": 2,
    "weight": "power:1",
    "wave": "triangular",
    "signs": "plus",
    "seed": 0,
    "p": 2.0,
    "t": "1",
    "n": 8,
    "n_min": None,
    "n_max": 10,
    "tol": None,
    "samples": 100_000,
    "trunc_n": 40,
    "pairs": 10_000,
    "p_grid": "1.1:4:0.05",
    "levels": None,
    "convention": "from_one",
    "output": None,
    "out": None,
    "threads": None,
    "regime_check": False,
    "input": None,
}

JSON_FIRST = {"regime", "index", "zmoment", "certify"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="JSON file supplying any of the flags")
    p.add_argument("--b", type=int, default=S, help="integer base (default 2)")
    p.add_argument("--weight", default=S, help="weight psi, e.g. power:0.5")
    p.add_argument("--wave", default=S,
                   help="wave phi: triangular[:gamma], sinecos:nu,rho or custom:path.csv")
    p.add_argument("--signs", default=S,
                   help="plus, minus, alternating, seeded:SEED or explicit:+,-,...")
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--output", choices=("csv", "json"), default=S)
    p.add_argument("--out", default=S, help="write the report here instead of stdout")
    p.add_argument("--threads", type=int, default=S)


def _build_parser() -> _Parser:
    S = argparse.SUPPRESS
    parser = _Parser(prog="fracvar",
                     description="p-th variation of Weierstrass-type functions")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def cmd(name, help_text, *flags):
        sp = sub.add_parser(name, help=help_text)
        _common(sp)
        for flag in flags:
            kind = {"--p": float, "--n": int, "--n-min": int, "--n-max": int,
                    "--tol": float, "--samples": int, "--trunc-n": int,
                    "--pairs": int, "--levels": int}.get(flag, str)
            sp.add_argument(flag, type=kind, default=S)
        return sp

    cmd("eval", "evaluate f(t)", "--t", "--tol")
    cmd("grid", "values f(k b^-n), k = 0..b^n", "--n")
    v = cmd("variation", "V^{p,t}_n for n = n-min..n-max", "--p", "--t", "--n-min", "--n-max")
    v.add_argument("--regime-check", action="store_true", default=S,
                   help="compare with the explicit finite-n bound at the critical exponent")
    cmd("riesz", "normalised Riesz variation against its plug-in bound",
        "--p", "--n-min", "--n-max")
    cmd("regime", "Sub / Critical / Super classification")
    cmd("index", "estimate the variation index q", "--p-grid", "--n-min", "--n-max")
    cmd("zmoment", "Monte Carlo E|Z|^p with truncation bound",
        "--p", "--samples", "--trunc-n", "--convention")
    cmd("certify", "sampled and exhaustive bound checks", "--pairs", "--n")
    cmd("oracle-check", "grid variation against digit-path enumeration",
        "--n", "--p", "--tol")
    cmd("ingest", "variation of a sampled path read from CSV",
        "--input", "--p", "--levels", "--p-grid")
    return parser


def _merge(ns: argparse.Namespace) -> dict:
    given = vars(ns)
    cfg = {}
    if "config" in given:
        try:
            raw = json.loads(Path(given["config"]).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise FracvarError(f"cannot read config: {exc}") from None
        if not isinstance(raw, dict):
            raise FracvarError("config must be a JSON object")
        for key, val in raw.items():
            key = key.lstrip("-").replace("-", "_")
            if key not in DEFAULTS:
                raise UsageError(f"unknown config key {key!r}")
            cfg[key] = val
    out = dict(DEFAULTS)
    out.update(cfg)
    out.update({k: v for k, v in given.items() if k != "config"})
    return out


def _spec(cfg: dict) -> WtfSpec:
    return WtfSpec.from_strings(int(cfg["b"]), str(cfg["weight"]), str(cfg["wave"]),
                                str(cfg["signs"]))


def _parse_p_grid(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    text = str(text)
    if ":" in text:
        lo, hi, step = (Fraction(v) for v in text.split(":"))
        if step <= 0 or hi < lo:
            raise FracvarError(f"bad p grid {text!r}")
        count = int((hi - lo) / step)
        return [float(lo + i * step) for i in range(count + 1)]
    return [float(v) for v in text.split(",") if v.strip()]


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _kv_csv(d: dict) -> str:
    return _csv(["key", "value"], [(k, d[k]) for k in sorted(d)])


def _bound_csv(report) -> str:
    return _csv(["n", "value", "bound", "margin"],
                [(n, v, bnd, mg) for (n, v), (_, bnd), (_, mg)
                 in zip(report.levels, report.bounds, report.margins)])


def _run_eval(cfg, fmt):
    spec = _spec(cfg)
    t = Fraction(str(cfg["t"]))
    tol = 1e-12 if cfg["tol"] is None else float(cfg["tol"])
    value, err = eval_f(spec, t, tol)
    row = {"t": str(t), "value": value, "err_bound": err}
    return (_json(row) if fmt == "json" else _csv(["t", "value", "err_bound"],
                                                  [(str(t), value, err)])), 0


def _run_grid(cfg, fmt):
    spec = _spec(cfg)
    n = int(cfg["n"])
    vals = eval_f_grid(spec, n)
    if fmt == "json":
        return _json({"b": spec.b, "n": n, "spec": spec.describe(),
                      "values": vals.tolist()}), 0
    return grid_csv(spec, n, vals), 0


def _run_variation(cfg, fmt):
    spec = _spec(cfg)
    p = float(cfg["p"])
    t = Fraction(str(cfg["t"]))
    n_min = 1 if cfg["n_min"] is None else int(cfg["n_min"])
    curve = variation_curve(spec, p, t, int(cfg["n_max"]), n_min)
    if cfg["regime_check"]:
        report = check_regime_bounds(spec, p, int(cfg["n_max"]), max(1, n_min))
        curve.bound_report = report
        code = 1 if report.passed is False else 0
        if fmt == "json":
            return curve.to_json(), code
        return _bound_csv(report), code
    return (curve.to_json() if fmt == "json" else curve.to_csv()), 0


def _run_riesz(cfg, fmt):
    spec = _spec(cfg)
    n_min = 1 if cfg["n_min"] is None else int(cfg["n_min"])
    curve = riesz_normalized_curve(spec, float(cfg["p"]), int(cfg["n_max"]), n_min)
    return (curve.to_json() if fmt == "json" else curve.to_csv()), 0


def _run_regime(cfg, fmt):
    spec = _spec(cfg)
    d = spec.regime.to_dict()
    return (_json(d) if fmt == "json" else _kv_csv(d)), 0


def _run_index(cfg, fmt):
    spec = _spec(cfg)
    n_max = int(cfg["n_max"])
    n_min = max(1, n_max - 8) if cfg["n_min"] is None else int(cfg["n_min"])
    est = estimate_variation_index(spec, _parse_p_grid(cfg["p_grid"]), (n_min, n_max))
    if fmt == "json":
        return _json(est.to_dict()), 0
    return _csv(["p", "slope"], est.table) + f"# q_hat={est.q_hat!r}\n", 0


def _run_zmoment(cfg, fmt):
    spec = _spec(cfg)
    est = z_moment(spec, float(cfg["p"]), int(cfg["samples"]), int(cfg["trunc_n"]),
                   int(cfg["seed"]), str(cfg["convention"]))
    return (est.to_json() if fmt == "json" else _kv_csv(asdict(est))), 0


def _run_certify(cfg, fmt):
    spec = _spec(cfg)
    pairs, seed = int(cfg["pairs"]), int(cfg["seed"])
    n = min(int(cfg["n"]), 12)
    checks = []
    for rep in (certify_holder(spec.phi, pairs, seed),
                verify_submultiplicative(spec.psi, pairs, seed),
                check_holder_bounds(spec, pairs, seed)):
        checks.append({"name": rep.name, "passed": rep.passed, "worst": rep.worst,
                       "limit": rep.limit, "samples": rep.samples})
    paths = exhaustive_bound_check(spec, n)
    checks.append({"name": "paths: " + paths.name, "passed": paths.passed,
                   "worst": paths.max_value, "limit": paths.bounds[-1][1] if paths.bounds else None,
                   "samples": n})
    if spec.regime.regime == SUPER and spec.signs.kind == "plus":
        try:
            cert = nonzero_certificate(spec)
            checks.append({"name": "nonzero", "passed": True, **cert.to_dict()})
        except FracvarError as exc:
            checks.append({"name": "nonzero", "passed": False, "reason": str(exc)})
    failed = any(c["passed"] is False for c in checks)
    if fmt == "json":
        return _json({"spec": spec.describe(), "checks": checks}), (1 if failed else 0)
    rows = [(c["name"], c["passed"], c.get("worst"), c.get("limit")) for c in checks]
    return _csv(["check", "passed", "worst", "limit"], rows), (1 if failed else 0)


def _run_oracle(cfg, fmt):
    spec = _spec(cfg)
    n, p = int(cfg["n"]), float(cfg["p"])
    tol = 1e-10 if cfg["tol"] is None else float(cfg["tol"])
    rows = []
    for m in range(1, n + 1):
        direct = pth_variation(eval_f_grid(spec, m), spec.b, p)
        enum = enumerate_variation(spec, p, m)
        scale = max(abs(direct), abs(enum))
        rel = 0.0 if scale == 0 else abs(direct - enum) / scale
        rows.append((m, direct, enum, rel))
    worst = max(r[3] for r in rows) if rows else 0.0
    ok = worst < tol
    if fmt == "json":
        return _json({"passed": ok, "tol": tol, "max_rel_err": worst,
                      "levels": [{"n": m, "direct": d, "enumerated": e, "rel_err": r}
                                 for m, d, e, r in rows]}), (0 if ok else 1)
    if fmt == "csv":
        return _csv(["n", "direct", "enumerated", "rel_err"], rows), (0 if ok else 1)
    line = f"PASS rel_err<{tol:g}" if ok else f"FAIL rel_err={worst!r} tol={tol:g}"
    return line + "\n", (0 if ok else 1)


def _run_ingest(cfg, fmt):
    if not cfg["input"]:
        raise UsageError("ingest needs --input")
    path = load_csv(cfg["input"], int(cfg["b"]))
    levels = path.n if cfg["levels"] is None else int(cfg["levels"])
    curve = multiscale_variation(path, float(cfg["p"]), levels)
    if fmt == "json":
        out = curve.to_dict()
        out["n"] = path.n
        if levels >= 3:
            lo = path.n - levels + 1
            est = estimate_variation_index(path, _parse_p_grid(cfg["p_grid"]),
                                           (lo, path.n), path.b)
            out["index"] = est.to_dict()
        return _json(out), 0
    return curve.to_csv(), 0


_RUNNERS = {
    "eval": _run_eval,
    "grid": _run_grid,
    "variation": _run_variation,
    "riesz": _run_riesz,
    "regime": _run_regime,
    "index": _run_index,
    "zmoment": _run_zmoment,
    "certify": _run_certify,
    "oracle-check": _run_oracle,
    "ingest": _run_ingest,
}


def run(argv=None) -> int:
    """Run one subcommand and return the exit code."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = _merge(ns)
    except UsageError:
        return EXIT_USAGE
    except FracvarError as exc:
        sys.stderr.write(f"fracvar: {exc}\n")
        return EXIT_DOMAIN
    command = ns.command
    fmt = cfg["output"]
    if fmt is None and command != "oracle-check":
        fmt = "json" if command in JSON_FIRST else "csv"
    try:
        set_threads(None if cfg["threads"] is None else int(cfg["threads"]))
        text, code = _RUNNERS[command](cfg, fmt)
    except UsageError as exc:
        sys.stderr.write(f"fracvar: {exc}\n")
        return EXIT_USAGE
    except CapacityError as exc:
        sys.stderr.write(f"fracvar: {exc}\n")
        return EXIT_CAPACITY
    except (FracvarError, ValueError, OSError) as exc:
        sys.stderr.write(f"fracvar: {exc}\n")
        return EXIT_DOMAIN
    finally:
        set_threads(None)
    if cfg["out"]:
        Path(cfg["out"]).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


"""Command-line front end producing JSON/CSV bound reports.

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""

import argparse
import csv
import io
import itertools
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from . import cloning, map_prepare, metrology, replication, signaling
from .circular import CircularDistribution

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


@dataclass
class BoundReport:
    task: str
    params: Dict[str, object]
    values: Dict[str, object]
    provenance: str
    passed: bool = field(default=True, repr=False)

    def flat(self) -> Dict[str, object]:
        row = {"task": self.task}
        row.update(self.params)
        row.update(self.values)
        row["provenance"] = self.provenance
        return row


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _fmt_csv(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(reports: List[BoundReport], fmt: str) -> str:
    rows = [r.flat() for r in reports]
    if fmt == "json":
        payload = rows[0] if len(rows) == 1 else rows
        return json.dumps(payload, indent=2) + "\n"
    fields: List[str] = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_fmt_csv(row[k]) if k in row else "" for k in fields])
    return buf.getvalue()


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:count`` with both endpoints included."""
    try:
        start, stop, count = text.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError:
        raise UsageError(f"bad grid {text!r}; expected start:stop:count")
    if count < 1:
        raise UsageError("grid count must be >= 1")
    return np.linspace(start, stop, count)


def parse_dist(text: str) -> CircularDistribution:
    """``uniform``, ``step:N``, ``diffusion:T``, ``truncated-step:N:K`` or ``fourier:p1,p2,...``."""
    name, _, arg = text.partition(":")
    try:
        if name == "uniform":
            return CircularDistribution.uniform()
        if name == "step":
            return metrology.ns_step_distribution(int(arg))
        if name == "diffusion":
            return metrology.diffusion_prior(float(arg))
        if name == "truncated-step":
            n, _, k = arg.partition(":")
            return metrology.ns_step_distribution(int(n)).truncated(int(k) if k else int(n))
        if name == "fourier":
            return CircularDistribution([float(x) for x in arg.split(",") if x])
    except ValueError as exc:
        raise UsageError(f"bad distribution {text!r}: {exc}")
    raise UsageError(f"unknown distribution {text!r}")


def _int_list(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


# ---------------------------------------------------------------- tasks


def task_clone_bound(n, m, erf=False, det=False, **_):
    values = {"value": cloning.ns_global_bound(n, m)}
    prov = "binomial-window-sum"
    if erf:
        values["erf_value"] = cloning.ns_bound_erf(n, m)
        values["gap"] = values["value"] - values["erf_value"]
        prov += "; erf-gaussian-approx"
    if det:
        if m % 2:
            raise UsageError("--det needs even --m")
        if m < 10 * n * n:
            print(f"warning: M={m} < 10 N^2, deterministic formula is asymptotic only",
                  file=sys.stderr)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            values["det_asymptotic"] = cloning.det_NtoM_asymptotic(n, m)
        prov += "; deterministic-asymptotic"
    return [BoundReport("clone-bound", {"n": n, "m": m}, values, prov)]


def task_clone_verify(n, m, grid=64, tol=1e-9, **_):
    bound = cloning.ns_global_bound(n, m)
    thetas = 2 * np.pi * np.arange(grid) / grid
    fids = [cloning.global_clone_fidelity(cloning.constructive_clone(n, m, th), th) for th in thetas]
    dev = float(np.max(np.abs(np.array(fids) - bound)))
    mix = cloning.verify_ns_mixture(n, m, 0.0, 0.37)
    ok = dev <= tol and mix <= max(tol, 1e-10)
    values = {"bound": bound, "min_fidelity": float(min(fids)), "max_deviation": dev,
              "mixture_distance": mix, "filter_success_prob": cloning.filter_success_prob(n, m),
              "passed": ok}
    return [BoundReport("clone-verify", {"n": n, "m": m, "grid": grid, "tol": tol}, values,
                        "constructive-cloner-attainment", passed=ok)]


def task_replicate_bound(n, m, **_):
    values = {"value": replication.ns_replication_bound(n, m)}
    return [BoundReport("replicate-bound", {"n": n, "m": m}, values,
                        "binomial-window-sum (replication)")]


def task_ml(n, probes=0, seed=0, tol=1e-9, **_):
    ratio = metrology.max_likelihood_ratio(metrology.ml_state(n))
    values = {"ml_ratio": ratio, "ml_density": ratio / (2 * math.pi), "bound": float(n + 1)}
    ok = True
    if probes:
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(probes):
            c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
            worst = max(worst, metrology.max_likelihood_ratio(c / np.linalg.norm(c)))
        values["random_max_ratio"] = worst
        ok = worst <= n + 1 + tol
        values["passed"] = ok
    params = {"n": n}
    if probes:
        params.update(probes=probes, seed=seed)
    return [BoundReport("ml", params, values, "flat-probe-likelihood", passed=ok)]


def task_align(n, quantum=False, **_):
    values = {"ns_fidelity": metrology.ns_alignment_fidelity_exact(n)}
    values["ns_scaled_error"] = n * n * (1 - values["ns_fidelity"])
    prov = "step-window-alignment"
    if quantum:
        q = metrology.quantum_alignment_fidelity(metrology.berry_wiseman_state(n))
        values["quantum_fidelity"] = q
        values["quantum_scaled_error"] = n * n * (1 - q)
        prov += "; sine-probe-alignment"
    return [BoundReport("align", {"n": n}, values, prov)]


def task_diffuse(n, t_grid="0.1:3:30", **_):
    reports = []
    for t in parse_grid(t_grid):
        t = float(t)
        th4 = metrology.jacobi_theta4(t)
        values = {"theta4": th4, "bound_error": metrology.diffused_bound_error(n, t),
                  "prior_error": metrology.prior_error(t)}
        reports.append(BoundReport("diffuse", {"n": n, "t": t}, values, "diffused-prior-theta4"))
    return reports


def task_mp(n, m, sigma=None, **_):
    sigma = m ** (1.0 / 3.0) if sigma is None else sigma
    fid = map_prepare.mp_fidelity(map_prepare.gaussian_state(m, sigma), map_prepare.mp_operator(n, m))
    bound = cloning.ns_global_bound(n, m)
    values = {"mp_fidelity": fid, "ns_bound": bound, "ratio": fid / bound,
              "mp_asymptotic": map_prepare.mp_asymptotic(n, m),
              "naive_mp": map_prepare.naive_mp_fidelity(n, m)}
    return [BoundReport("mp", {"n": n, "m": m, "sigma": float(sigma)}, values,
                        "banded-mp-operator")]


def task_signal_test(dist, n, tol=1e-10, **_):
    verdict = signaling.ns_compatible(parse_dist(dist), n, tol)
    values = {"compatible": verdict.compatible, "worst_k": verdict.worst_k,
              "worst_component": verdict.worst_component, "magnitude": verdict.magnitude}
    return [BoundReport("signal-test", {"dist": dist, "n": n, "tol": tol}, values,
                        "fourier-nullity", passed=verdict.compatible)]


TASKS = {
    "clone-bound": task_clone_bound,
    "clone-verify": task_clone_verify,
    "replicate-bound": task_replicate_bound,
    "ml": task_ml,
    "align": task_align,
    "diffuse": task_diffuse,
    "mp": task_mp,
    "signal-test": task_signal_test,
}

# sweepable tasks and the list-valued axes they accept
SWEEP_AXES = {
    "clone-bound": ("n", "m"),
    "replicate-bound": ("n", "m"),
    "ml": ("n",),
    "align": ("n",),
    "mp": ("n", "m", "sigma"),
}


def task_sweep(task, n=None, m=None, sigma=None, **opts):
    if task not in SWEEP_AXES:
        raise UsageError(f"task {task!r} cannot be swept; choose from {sorted(SWEEP_AXES)}")
    given = {"n": n, "m": m, "sigma": sigma}
    axes = [a for a in SWEEP_AXES[task] if given[a] is not None]
    missing = [a for a in SWEEP_AXES[task] if a != "sigma" and given[a] is None]
    if missing:
        raise UsageError(f"sweep of {task} needs --{' --'.join(missing)}")
    reports = []
    for combo in sorted(itertools.product(*(sorted(given[a]) for a in axes))):
        kwargs = dict(zip(axes, combo))
        try:
            reports.extend(TASKS[task](**kwargs))
        except ValueError as exc:
            raise UsageError(f"{task} {kwargs}: {exc}")
    return reports


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", default=None, help="write to PATH instead of stdout")
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="nsbounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("clone-bound", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--erf", action="store_true")
    p.add_argument("--det", action="store_true", help="also report the deterministic asymptotic value")

    p = sub.add_parser("clone-verify", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--grid", type=int, default=64)

    p = sub.add_parser("replicate-bound", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("ml", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--probes", type=int, default=0, help="random probes to check against N+1")

    p = sub.add_parser("align", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--quantum", action="store_true")

    p = sub.add_parser("diffuse", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-grid", dest="t_grid", default="0.1:3:30")

    p = sub.add_parser("mp", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sigma", type=float, default=None, help="defaults to M^(1/3)")

    p = sub.add_parser("signal-test", parents=[common])
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("sweep", parents=[common])
    p.add_argument("--task", required=True)
    p.add_argument("--n", type=_int_list)
    p.add_argument("--m", type=_int_list)
    p.add_argument("--sigma", type=_float_list)
    return parser


_DEFAULT_FORMAT = {"diffuse": "csv", "sweep": "csv"}
_DEFAULT_TOL = {"clone-verify": 1e-9, "ml": 1e-9, "signal-test": 1e-10}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        opts = vars(args).copy()
        command = opts.pop("command")
        fmt = opts.pop("format") or _DEFAULT_FORMAT.get(command, "json")
        out = opts.pop("out")
        if opts["tol"] is None:
            opts["tol"] = _DEFAULT_TOL.get(command, 1e-9)
        elif opts["tol"] <= 0:
            raise UsageError("--tol must be > 0")
        if command not in ("ml",):
            opts.pop("seed")
        handler = task_sweep if command == "sweep" else TASKS[command]
        try:
            reports = handler(**opts)
        except ValueError as exc:
            raise UsageError(str(exc))
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    text = render(reports, fmt)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def main():
    sys.exit(run())

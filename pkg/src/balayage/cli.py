"""Command-line front end: ``balayage <subcommand> ...``.

Every run writes its output atomically and prints a JSON manifest to stdout.
The manifest records the input hash, the arguments, tolerances and the package
version. It has no timestamps, so identical runs give identical manifests.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from ._numerics import DEFAULT_TOL
from .charge_model import ChargeDistribution, from_dict, geometric_grid, to_dict
from .errors import BalayageError
from .halfplane import GENERA, sweep_left, sweep_right
from .log_measures import interval_log_measure, lindelof_profile
from .potentials import PotentialField, j_iR
from .strip import StripSweepConfig, strip_pipeline_trace, sweep_strip
from .verification import CHECKS, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_list(text: str, n: int) -> list[float]:
    parts = [float(v) for v in text.split(",")]
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    return parts


def _window(text: str) -> list[float]:
    return _float_list(text, 4)


def _pair(text: str) -> list[float]:
    return _float_list(text, 2)


def _complex(text: str) -> complex:
    return complex(text.replace(" ", ""))


# ---------------------------------------------------------------------------
# I/O
# ---------------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write to a temporary file in the target directory, then rename over ``path``."""
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=os.path.dirname(target))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format(float(v), ".17g") for v in row])
    return buf.getvalue()


def _read_input(path: str) -> tuple[ChargeDistribution, str]:
    with open(path, "rb") as fh:
        raw = fh.read()
    return from_dict(json.loads(raw)), hashlib.sha256(raw).hexdigest()


def manifest(args: argparse.Namespace, input_hash: str | None, status: str) -> dict:
    skip = {"func", "in_path", "out", "needs_input"}
    params = {k: (str(v) if isinstance(v, complex) else v) for k, v in sorted(vars(args).items()) if k not in skip}
    body = {
        "subcommand": args.command,
        "input_sha256": input_hash,
        "params": params,
        "tolerances": {"quadrature": DEFAULT_TOL},
        "version": __version__,
        "numpy": np.__version__,
        "status": status,
    }
    body["manifest_sha256"] = hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()
    return body


# ---------------------------------------------------------------------------
# subcommands: each returns (output text, status)
# ---------------------------------------------------------------------------


def cmd_sweep_halfplane(args, nu):
    fn = sweep_right if args.side == "right" else sweep_left
    return dumps(to_dict(fn(nu, args.genus, args.r0))), "ok"


def cmd_sweep_strip(args, nu):
    cfg = StripSweepConfig(args.b, args.genus, args.r0)
    out = to_dict(sweep_strip(nu, cfg))
    if args.trace:
        out = {"result": out, "trace": [to_dict(s) for s in strip_pipeline_trace(nu, cfg)]}
    return dumps(out), "ok"


def cmd_logmeasure(args, nu):
    m = interval_log_measure(nu, args.r, args.R)
    return dumps({"r": m.r, "R": m.R, "right": m.right, "left": m.left, "sub": m.sub}), "ok"


def _grid(args):
    return geometric_grid(args.r_min, args.r_max, args.per_decade)


def cmd_lindelof(args, nu):
    prof = lindelof_profile(nu, args.kind, _grid(args))
    return csv_text(["r", "value"], zip(prof.r, prof.values)), "ok"


def cmd_potential_grid(args, nu):
    x0, x1, y0, y1 = args.window
    xs, ys = np.linspace(x0, x1, args.nx), np.linspace(y0, y1, args.ny)
    X, Y = np.meshgrid(xs, ys)
    vals = PotentialField(nu, args.kernel, args.rho0).evaluate(X + 1j * Y)
    return csv_text(["x", "y", "value"], zip(X.ravel(), Y.ravel(), vals.ravel())), "ok"


def cmd_jir(args, nu):
    fld = PotentialField(nu, args.kernel, args.rho0)
    R = math.inf if args.R is None else args.R
    return dumps({"r": args.r, "R": R if math.isfinite(R) else "inf", "value": j_iR(fld, args.r, R)}), "ok"


def cmd_verify(args, nu):
    cfg = StripSweepConfig(args.b, args.genus, args.r0)
    reports = run_checks(nu, cfg, args.check, args.w)
    ok = all(r.passed for r in reports)
    text = dumps({"passed": ok, "reports": [r.to_dict() for r in reports]})
    return text, "PASS" if ok else "FAIL"


def gen_config(seed: int, n_atoms: int, window=(-5.0, 5.0, -5.0, 5.0), mass_range=(0.5, 2.0)) -> dict:
    """Random atomic configuration; the same seed gives the same dictionary."""
    if n_atoms < 0:
        raise BalayageError("n_atoms must be nonnegative")
    x0, x1, y0, y1 = window
    rng = np.random.default_rng(seed)
    xs = rng.uniform(x0, x1, n_atoms)
    ys = rng.uniform(y0, y1, n_atoms)
    ms = rng.uniform(mass_range[0], mass_range[1], n_atoms)
    nu = ChargeDistribution.from_atoms(zip((complex(x, y) for x, y in zip(xs, ys)), ms))
    return to_dict(nu)


def cmd_gen_config(args, _nu):
    return dumps(gen_config(args.seed, args.n_atoms, args.window, args.mass_range)), "ok"


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="balayage", description="Balayage of planar charges onto half-planes and strips.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, needs_input=True, help=None):
        sp = sub.add_parser(name, help=help)
        if needs_input:
            sp.add_argument("--in", dest="in_path", required=True, help="charge distribution JSON")
        sp.add_argument("--out", required=True)
        sp.set_defaults(func=func, needs_input=needs_input)
        return sp

    sp = command("sweep-halfplane", cmd_sweep_halfplane, help="sweep out of a half-plane")
    sp.add_argument("--genus", choices=GENERA, default="01")
    sp.add_argument("--side", choices=("right", "left"), default="right")
    sp.add_argument("--r0", type=float, default=1.0)

    sp = command("sweep-strip", cmd_sweep_strip, help="sweep onto the strip |Re z| <= b")
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--genus", choices=GENERA, default="01")
    sp.add_argument("--r0", type=float, default=1.0)
    sp.add_argument("--trace", action="store_true", help="also write the five pipeline stages")

    sp = command("logmeasure", cmd_logmeasure, help="right/left logarithmic measures of an annulus")
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--R", type=float, required=True)

    sp = command("lindelof", cmd_lindelof, help="Lindelöf profile as CSV r,value")
    sp.add_argument("--kind", choices=("R", "iR", "full"), default="R")
    sp.add_argument("--r-min", type=float, default=1.0)
    sp.add_argument("--r-max", type=float, default=1e3)
    sp.add_argument("--per-decade", type=int, default=10)

    sp = command("potential-grid", cmd_potential_grid, help="potential on a grid as CSV x,y,value")
    sp.add_argument("--window", type=_window, required=True, help="x0,x1,y0,y1")
    sp.add_argument("--nx", type=int, default=21)
    sp.add_argument("--ny", type=int, default=21)
    sp.add_argument("--kernel", choices=("log", "genus1"), default="genus1")
    sp.add_argument("--rho0", type=float, default=1.0)

    sp = command("jir", cmd_jir, help="integral of the potential along the imaginary axis")
    sp.add_argument("--r", type=float, default=1.0)
    sp.add_argument("--R", type=float, default=None, help="upper radius (default: infinity)")
    sp.add_argument("--kernel", choices=("log", "genus1"), default="genus1")
    sp.add_argument("--rho0", type=float, default=1.0)

    sp = command("verify", cmd_verify, help="run diagnostics; exit 0 iff all pass")
    sp.add_argument("--check", choices=(*CHECKS, "all"), default="all")
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--genus", choices=GENERA, default="1")
    sp.add_argument("--r0", type=float, default=1.0)
    sp.add_argument("--w", type=_complex, default=1 + 0j, help="shift for the shift check")

    sp = command("gen-config", cmd_gen_config, needs_input=False, help="random atomic configuration")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--n-atoms", type=int, default=5)
    sp.add_argument("--window", type=_window, default=[-5.0, 5.0, -5.0, 5.0], help="x0,x1,y0,y1")
    sp.add_argument("--mass-range", type=_pair, default=[0.5, 2.0], help="lo,hi")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        nu, digest = _read_input(args.in_path) if args.needs_input else (None, None)
        text, status = args.func(args, nu)
    except (BalayageError, ValueError, OSError, KeyError) as exc:
        print(f"balayage {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    write_atomic(args.out, text)
    print(dumps(manifest(args, digest, status)), end="")
    return EXIT_FAIL if status == "FAIL" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

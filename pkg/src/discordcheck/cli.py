"""Command-line front end.

State files are JSON documents::

    {"dims": [m, n], "matrix": [[[re, im], ...], ...]}

with the ``mn x mn`` matrix stored row-major in the computational product
basis. Floats are written with Python's shortest round-trip repr, so loading
a written file reproduces every entry bit for bit.

Exit codes: 0 success (a violated inequality is a result, not an error),
1 input or validation error, 2 internal numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import hierarchy, measures, states
from .exceptions import DiscordCheckError, InvalidDim
from .linalg import ZERO_TOL, DensityMatrix, repartition

SCAN_COLUMNS = ["z", "m_part", "n_part", "d2", "d2_normalized", "neg_witness", "neg_trace", "eq4_lhs", "eq4_rhs", "violated"]
MEASURES_KEYS = [
    "dims",
    "seed",
    "tolerance",
    "negativity_witness",
    "negativity_trace",
    "n_negative",
    "gd2",
    "gd2_normalized",
    "optimizer_converged",
    "gd1_bounds",
]
CHECK_KEYS = ["inequality", "convention", "lhs", "rhs", "margin", "violated", "status", "dims", "seed", "details"]
INEQUALITY_ALIASES = {"eq3": "eq3_normalized", "eq4": "eq4_weak", "d1": "d1_vs_N"}

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


# -- state files ------------------------------------------------------------

def state_to_dict(rho: DensityMatrix) -> dict:
    X = np.asarray(rho.matrix)
    return {
        "dims": [rho.m, rho.n],
        "matrix": [[[float(v.real), float(v.imag)] for v in row] for row in X],
    }


def state_from_dict(doc: dict, dims=None) -> DensityMatrix:
    try:
        file_dims = [int(d) for d in doc["dims"]]
        arr = np.asarray(doc["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DiscordCheckError(f"malformed state file: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise DiscordCheckError(f"matrix must be a square array of [re, im] pairs, got shape {arr.shape}")
    rho = DensityMatrix(arr[..., 0] + 1j * arr[..., 1], tuple(file_dims))
    return rho if dims is None else repartition(rho, dims)


def write_state(rho: DensityMatrix, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(rho), fh)
        fh.write("\n")


def load_state(path: str, dims=None) -> DensityMatrix:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DiscordCheckError(f"{path}: not valid JSON ({exc})") from None
    return state_from_dict(doc, dims)


# -- formatting -------------------------------------------------------------

def parse_dims(text: str) -> tuple[int, int]:
    try:
        m, n = text.lower().split("x")
        return int(m), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MxN, e.g. 2x32, got {text!r}") from None


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = "x".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2)
    flat = _flatten(doc)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(flat.values())
        return buf.getvalue().rstrip("\n")
    width = max(len(k) for k in flat)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in flat.items())


# -- commands ---------------------------------------------------------------

def measures_report(rho: DensityMatrix, routes, seed: int = 0, tol: float = ZERO_TOL, starts: int = 20) -> dict:
    gd2, gd2n, converged = {}, {}, None
    for route in routes:
        if route == "closed_form" and rho.m != 2:
            continue
        est = measures.gd2(rho, route, seed=seed, starts=starts) if route == "optimizer" else measures.gd2(rho, route)
        gd2[route] = est.value
        gd2n[route] = measures.gd_normalized(est.value, rho.m) if rho.m >= 2 else None
        if route == "optimizer":
            converged = est.converged
    return {
        "dims": list(rho.dims),
        "seed": seed,
        "tolerance": tol,
        "negativity_witness": measures.negativity_witness(rho, tol),
        "negativity_trace": measures.negativity_trace(rho, tol),
        "n_negative": measures.count_negative_eigs(rho, tol),
        "gd2": gd2,
        "gd2_normalized": gd2n,
        "optimizer_converged": converged,
        "gd1_bounds": dict(measures.gd1_upper_bounds(rho, starts=starts, seed=seed, optimize="optimizer" in routes)),
    }


def cmd_measures(args) -> int:
    rho = load_state(args.state, args.repartition)
    routes = [r.strip() for r in args.routes.split(",") if r.strip()]
    for r in routes:
        if r not in measures.ROUTES:
            raise DiscordCheckError(f"unknown route {r!r}; expected some of {measures.ROUTES}")
    doc = measures_report(rho, routes, seed=args.seed, tol=args.tolerance, starts=args.starts)
    print(render(doc, args.format))
    return EXIT_OK


def cmd_check(args) -> int:
    rho = load_state(args.state, args.repartition)
    ineq = INEQUALITY_ALIASES.get(args.inequality, args.inequality)
    kw = {"starts": args.starts, "seed": args.seed}
    if ineq == "eq4_weak" and args.convention != "witness":
        raise DiscordCheckError("eq4 is defined with the witness convention only")
    rep = hierarchy.check(rho, ineq, args.convention, args.tolerance, **kw)
    doc = {
        "inequality": rep.inequality,
        "convention": rep.convention,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "margin": rep.margin,
        "violated": rep.violated,
        "status": rep.status,
        "dims": list(rho.dims),
        "seed": args.seed,
        "details": rep.details,
    }
    print(render(doc, args.format))
    return EXIT_OK


def scan_rows_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for r in rows:
        w.writerow(
            [repr(r.z), r.bipartition[0], r.bipartition[1], repr(r.d2), repr(r.d2_normalized), repr(r.neg_witness),
             repr(r.neg_trace), repr(r.eq4_lhs), repr(r.eq4_rhs), str(r.violated).lower()]
        )


def cmd_werner_scan(args) -> int:
    if args.steps < 1:
        raise DiscordCheckError(f"--steps must be >= 1, got {args.steps}")
    zs = np.linspace(args.z_from, args.z_to, args.steps) if args.steps > 1 else np.array([args.z_from])
    bip = args.bipartition or (args.m, args.m)
    rows = hierarchy.werner_scan(args.m, zs, bip, route=args.route, tol=args.tolerance, starts=args.starts, seed=args.seed)
    if args.out in (None, "-"):
        scan_rows_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            scan_rows_csv(rows, fh)
        n_viol = sum(r.violated for r in rows)
        print(f"wrote {len(rows)} rows to {args.out} ({n_viol} violated, seed {args.seed})", file=sys.stderr)
    return EXIT_OK


def _default_split(dim: int) -> tuple[int, int]:
    for m in range(2, dim + 1):
        if dim % m == 0:
            return m, dim // m
    return 1, dim


def make_state(args) -> DensityMatrix:
    fam = args.family
    if fam == "werner":
        return states.werner(args.m, args.z)
    if fam == "bell":
        return states.max_entangled(args.m)
    if fam == "cq":
        n = args.n or args.m
        probs = np.full(args.m, 1 / args.m) if args.probs is None else np.array([float(p) for p in args.probs.split(",")])
        rng = np.random.default_rng(args.seed)
        blocks = [states.random_density(n, None, rng) for _ in range(len(probs))]
        return states.cq_state(probs, blocks)
    if fam == "random":
        if args.dim is None:
            raise DiscordCheckError("--family random needs --dim")
        dims = args.split or _default_split(args.dim)
        if dims[0] * dims[1] != args.dim:
            raise InvalidDim(f"--split {dims} does not factor --dim {args.dim}")
        return states.random_state(dims, args.rank, args.seed)
    raise DiscordCheckError(f"unknown family {fam!r}")


def cmd_make_state(args) -> int:
    rho = make_state(args)
    if args.out in (None, "-"):
        json.dump(state_to_dict(rho), sys.stdout)
        sys.stdout.write("\n")
    else:
        write_state(rho, args.out)
    return EXIT_OK


def _matrix_pairs(X) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(X)]


def cmd_erratum_scan(args) -> int:
    dims = args.dims or [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)]
    rep = hierarchy.erratum_scan(dims, args.samples, seed=args.seed, tol=args.tolerance)
    doc = {
        "seed": rep.seed,
        "tolerance": rep.tol,
        "ok": rep.ok,
        "pairs": [
            {
                "dims": list(p.dims),
                "samples": p.samples,
                "max_negative": p.max_negative,
                "mn_minus_1": p.bound,
                "histogram": {str(k): v for k, v in p.histogram.items()},
                "counterexamples": [
                    {"sample": c["sample"], "matrix": _matrix_pairs(c["matrix"]), "pt_spectrum": c["pt_spectrum"].tolist()}
                    for c in p.counterexamples
                ],
            }
            for p in rep.pairs
        ],
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        lines = [f"seed {rep.seed}  tolerance {rep.tol}"]
        for p in doc["pairs"]:
            m, n = p["dims"]
            lines.append(
                f"{m}x{n}: samples={p['samples']} max n_-={p['max_negative']} (mn-1={p['mn_minus_1']}) "
                f"counterexamples={len(p['counterexamples'])} histogram={p['histogram']}"
            )
        print("\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="root seed for optimizer starts and random states")
    common.add_argument("--tolerance", type=float, default=ZERO_TOL, help="negative-eigenvalue threshold")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--starts", type=int, default=20, help="optimizer multi-start count")

    parser = argparse.ArgumentParser(prog="discordcheck", description="Negativity and geometric discord of bipartite states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", parents=[common], help="all measures for one state file")
    p.add_argument("state")
    p.add_argument("--routes", default="closed_form,optimizer,fixed_basis", help="comma-separated D2 routes")
    p.add_argument("--repartition", type=parse_dims, default=None, metavar="MxN")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("check", parents=[common], help="evaluate one inequality")
    p.add_argument("state")
    p.add_argument("--inequality", choices=sorted(INEQUALITY_ALIASES) + list(hierarchy.INEQUALITIES), required=True)
    p.add_argument("--convention", choices=measures.CONVENTIONS, default="witness")
    p.add_argument("--repartition", type=parse_dims, default=None, metavar="MxN")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("werner-scan", parents=[common], help="z-scan of the weak inequality on Werner states")
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--z-from", type=float, default=-1.0)
    p.add_argument("--z-to", type=float, default=0.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--bipartition", type=parse_dims, default=None, metavar="MxN")
    p.add_argument("--route", choices=measures.ROUTES, default=None)
    p.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_werner_scan)

    p = sub.add_parser("make-state", parents=[common], help="write a state file")
    p.add_argument("--family", choices=("werner", "bell", "cq", "random"), required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=None, help="B dimension for --family cq")
    p.add_argument("--z", type=float, default=-1.0)
    p.add_argument("--probs", default=None, help="comma-separated probabilities for --family cq")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--split", type=parse_dims, default=None, metavar="MxN", help="bipartition for --family random")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_make_state)

    p = sub.add_parser("erratum-scan", parents=[common], help="negative-eigenvalue counts on random states")
    p.add_argument("--dims", type=parse_dims, nargs="+", default=None, metavar="MxN")
    p.add_argument("--samples", type=int, default=10000)
    p.set_defaults(func=cmd_erratum_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for numerical failures here.
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (np.linalg.LinAlgError, FloatingPointError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

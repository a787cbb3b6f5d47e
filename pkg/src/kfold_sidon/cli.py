"""Command-line front end.

Exit codes: 0 success (or a set that verifies), 1 a set that fails
verification, 2 malformed input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Sequence

from . import __version__, kernels
from .bounds import THM12_MODES, group_bound, sidon_zn_bound, thm12_bound
from .construct import ConstructionParams, theorem14_construct
from .search import DILATE, JOBS_ENV, KFOLD, SearchTask, emit_table, max_set, table_rows
from .verify import INTERVAL, MODULAR, ResidueSet, verify_dilate_family, verify_kfold

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------


def cmd_construct(args) -> tuple[int, str]:
    params = ConstructionParams(args.p, args.t, args.k, args.M, args.r, args.i)
    return EXIT_OK, _dump(theorem14_construct(params).to_json())


def _load_set_file(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"set-file: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"set-file: not valid JSON ({exc})")


def _resolve_set(args) -> tuple[ResidueSet, list[int] | None]:
    """The set to verify, plus a coefficient list carried by a construct report."""
    carried = None
    if args.set_file:
        obj = _load_set_file(args.set_file)
        if "elements" in obj:
            if "modulus_or_limit" not in obj:
                raise InputError("set-file: missing field 'modulus_or_limit'")
            elems, n, ambient = obj["elements"], obj["modulus_or_limit"], obj.get("ambient", MODULAR)
        elif "set" in obj and "modulus" in obj:
            elems, n, ambient = obj["set"], obj["modulus"], MODULAR
            carried = obj.get("coefficients")
        else:
            raise InputError("set-file: expected fields 'elements' and 'modulus_or_limit'")
    else:
        if args.set is None:
            raise InputError("--set or --set-file is required")
        if (args.modulus is None) == (args.limit is None):
            raise InputError("give exactly one of --modulus (Z_N) or --limit (interval [1..N])")
        elems = args.set
        n, ambient = (args.modulus, MODULAR) if args.modulus is not None else (args.limit, INTERVAL)
    try:
        return ResidueSet(tuple(elems), int(n), ambient), carried
    except (TypeError, ValueError) as exc:
        raise InputError(f"set: {exc}")


def cmd_verify(args) -> tuple[int, str]:
    A, carried = _resolve_set(args)
    if args.k is not None and args.coeffs is not None:
        raise InputError("give --k or --coeffs, not both")
    try:
        if args.k is not None:
            result = verify_kfold(A, args.k)
            family = {"family": KFOLD, "k": args.k}
        else:
            coeffs = args.coeffs if args.coeffs is not None else carried
            if coeffs is None:
                raise InputError("--coeffs or --k is required")
            result = verify_dilate_family(A, coeffs)
            family = {"family": DILATE, "coefficients": list(coeffs)}
    except ValueError as exc:
        raise InputError(f"coeffs: {exc}")
    out = {"verdict": bool(result), **family, "set": A.to_json()}
    if not result:
        out["violation"] = result.to_json()
    return (EXIT_OK if result else EXIT_FAIL), _dump(out)


def _bound_reports(args) -> list[dict]:
    ck = args.ck if args.ck is not None else args.k
    which = args.which
    reports = []
    if which in ("group", "all"):
        reports.append(group_bound(args.N, args.k))
    if which in ("sidon_zn", "all"):
        reports.append(sidon_zn_bound(args.N))
    if which in ("thm12", "all"):
        modes = THM12_MODES if args.mode == "all" else (args.mode,)
        reports.extend(thm12_bound(args.N, args.k, ck, m) for m in modes)
    return [r.to_json() for r in reports]


def cmd_bounds(args) -> tuple[int, str]:
    try:
        reports = _bound_reports(args)
    except ValueError as exc:
        raise InputError(str(exc))
    if args.format == "csv":
        lines = ["name,mode,N,k,c_k,m,value,integer_cap"]
        for r in reports:
            p = r["parameters"]
            lines.append(
                f"{r['name']},{p.get('mode', '')},{p['N']},{p.get('k', 1)},{p.get('c_k', '')},"
                f"{p.get('m', '')},{r['value']!r},{r['integer_cap']}"
            )
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, _dump(reports)


def _task_kwargs(args) -> dict:
    if args.coeffs is not None and args.family != DILATE:
        raise InputError("--coeffs requires --family dilate")
    return {
        "ambient": args.ambient,
        "k": len(args.coeffs) if args.coeffs else args.k,
        "family": args.family,
        "coeffs": tuple(args.coeffs) if args.coeffs else None,
        "budget": args.budget,
    }


def cmd_search(args) -> tuple[int, str]:
    try:
        task = SearchTask(n=args.N, **_task_kwargs(args))
    except ValueError as exc:
        raise InputError(str(exc))
    return EXIT_OK, _dump(max_set(task).to_json())


def cmd_table(args) -> tuple[int, str]:
    kw = _task_kwargs(args)
    if args.N_min > args.N_max:
        raise InputError("--N-min exceeds --N-max")
    try:
        rows = table_rows(
            range(args.N_min, args.N_max + 1), kw["k"], kw["ambient"], kw["family"], kw["coeffs"], kw["budget"], args.jobs
        )
    except ValueError as exc:
        raise InputError(str(exc))
    if args.format == "json":
        return EXIT_OK, _dump(rows)
    return EXIT_OK, emit_table(rows)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kfold-sidon",
        description="Construct, verify, bound and search k-fold Sidon sets.",
        epilog=f"Kernel backend: {kernels.BACKEND} (set {kernels.ENV_FLAG}=0 for the numpy path). "
        f"{JOBS_ENV} sets the default worker count for 'table'.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--manifest", metavar="PATH", help="write a JSON run manifest to PATH")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="cycle-pruned Lindstrom set in Z_{q^2-1}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--M", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a set against a dilate family or the k-fold family")
    p.add_argument("--set", type=_int_list, help="comma-separated elements")
    p.add_argument("--set-file", help="JSON set file or construct report ('-' for stdin)")
    p.add_argument("--modulus", type=int, help="ambient Z_N")
    p.add_argument("--limit", type=int, help="ambient interval [1..N]")
    p.add_argument("--coeffs", type=_int_list, help="dilate coefficients c_1 < ... < c_k")
    p.add_argument("--k", type=int, help="full k-fold family instead of a dilate family")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="evaluate explicit upper bounds")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--ck", type=int, help="largest coefficient (default: k)")
    p.add_argument("--mode", choices=[*THM12_MODES, "all"], default="all")
    p.add_argument("--which", choices=["group", "sidon_zn", "thm12", "all"], default="all")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_bounds)

    for name, helptext in (("search", "exact maximum for one N"), ("table", "extremal table over a range of N")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--ambient", choices=[MODULAR, INTERVAL], default=MODULAR)
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--family", choices=[KFOLD, DILATE], default=KFOLD)
        p.add_argument("--coeffs", type=_int_list)
        p.add_argument("--budget", type=int, default=10**9, help="node limit per search")
        if name == "search":
            p.add_argument("--N", type=int, required=True)
            p.add_argument("--format", choices=["json"], default="json")
            p.set_defaults(func=cmd_search)
        else:
            p.add_argument("--N-min", type=int, default=1)
            p.add_argument("--N-max", type=int, required=True)
            p.add_argument("--jobs", type=int, help=f"worker processes (default: ${JOBS_ENV} or 1)")
            p.add_argument("--format", choices=["csv", "json"], default="csv")
            p.set_defaults(func=cmd_table)
    return parser


def _manifest(args, argv: Sequence[str], output: str, elapsed: float) -> dict:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
    replay = []
    skip = False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok == "--manifest":
            skip = True
            continue
        if tok.startswith("--manifest="):
            continue
        replay.append(tok)
    return {
        "subcommand": args.command,
        "parameters": params,
        "argv": replay,
        "version": __version__,
        "backend": kernels.BACKEND,
        "wall_clock_seconds": round(elapsed, 6),
        "output_sha256": hashlib.sha256(output.encode()).hexdigest(),
    }


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        code, output = args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(output)
    if args.manifest:
        with open(args.manifest, "w") as fh:
            json.dump(_manifest(args, argv, output, time.perf_counter() - start), fh, indent=2)
    return code


def main() -> None:
    sys.exit(run())

"""Command-line front end.

Exit codes: 0 success, 1 invariant violation, 2 parse/input error,
3 matroid axiom violation.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from importlib import resources
from pathlib import Path

from . import _bits
from .corpus import REPORTED_CODIM, named_matroids
from .ecodim import SubsetFamily, ec, ec_with, flacets
from .errors import AxiomViolation, MatroidError
from .io import (
    ParseError,
    essential_to_json,
    family_from_json,
    interval_ranks_from_json,
    load,
    matroid_from_json,
    permutation_from_json,
    permutation_to_json,
    poly_to_json,
    witness_from_json,
)
from .matroid import Matroid
from .positroid import (
    AffinePermutation,
    cyclic_rank_matrix,
    ec_positroid,
    essential_set,
    from_affine_permutation,
    is_positroid,
    length,
    positroid,
    positroid_from_interval_ranks,
    to_affine_permutation,
)
from .valuative import ec_from_s, s_poly, tutte
from . import verify as V

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_AXIOM = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def resolve_path(name: str) -> Path:
    """Use ``name`` if it exists, else fall back to the bundled corpus file of that name."""
    path = Path(name)
    if path.exists():
        return path
    stem = path.name if path.suffix else f"{path.name}.json"
    bundled = resources.files("expcodim") / "data" / stem
    if bundled.is_file():
        return Path(str(bundled))
    raise CliError(f"no such file: {name}", EXIT_PARSE)


def read_json(name: str):
    try:
        return load(resolve_path(name))
    except ParseError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc


def read_matroid(name: str) -> Matroid:
    return matroid_from_json(read_json(name))


def _sets(masks) -> list[list[int]]:
    return [list(_bits.elements(m)) for m in masks]


def _reported(M: Matroid, value: int) -> dict | None:
    for name, N in named_matroids().items():
        if N == M and name in REPORTED_CODIM:
            codim = REPORTED_CODIM[name]
            return {"name": name, "codim": codim, "source": "published", "equals_ec": codim == value}
    return None


def family_for(M: Matroid, spec: str) -> SubsetFamily:
    if spec == "powerset":
        return SubsetFamily.powerset(M.n)
    if spec == "flacets":
        return flacets(M)
    if spec.startswith("file:"):
        return family_from_json(read_json(spec[5:]))
    raise CliError(f"unknown family {spec!r}; use powerset, flacets or file:<path>", EXIT_PARSE)


# -- commands ------------------------------------------------------------------
def cmd_ec(args) -> tuple[dict, int]:
    M = read_matroid(args.input)
    report: dict = {"n": M.n, "k": M.k}
    if not args.family:
        value = ec(M)
        report["family"] = "canonical"
        report["ec"] = value
    else:
        values = {spec: ec_with(M, family_for(M, spec)) for spec in args.family}
        report["ec_by_family"] = values
        value = next(iter(values.values()))
        report["ec"] = value
        if len(values) > 1:
            report["all_equal"] = len(set(values.values())) == 1
    reported = _reported(M, value)
    if reported:
        report["reported_codim"] = reported
        if not reported["equals_ec"]:
            report["note"] = f"published codim: {reported['codim']}, ec != codim"
    return report, EXIT_OK


def _s_digest(M: Matroid) -> dict:
    s = s_poly(M)
    blob = json.dumps(poly_to_json(s), sort_keys=True).encode()
    return {"terms": len(s.terms), "sha256": hashlib.sha256(blob).hexdigest(), "ec_from_s": ec_from_s(s)}


def cmd_analyze(args) -> tuple[dict, int]:
    M = read_matroid(args.input)
    value = ec(M)
    report = {
        "n": M.n,
        "k": M.k,
        "components": _sets(M.connected_components()),
        "loops": list(_bits.elements(M.loops())),
        "coloops": list(_bits.elements(M.coloops())),
        "ec": value,
        "family": "flacets per component",
        "is_positroid": is_positroid(M),
    }
    if report["is_positroid"]:
        p = to_affine_permutation(cyclic_rank_matrix(M))
        report["affine_permutation"] = list(p.window)
        report["length"] = length(p)
        report["ec_equals_length"] = report["length"] == value
    if M.n <= 12:
        report["s_poly"] = _s_digest(M)
    reported = _reported(M, value)
    if reported:
        report["reported_codim"] = reported
        if not reported["equals_ec"]:
            report["note"] = f"published codim: {reported['codim']}, ec != codim"
    code = EXIT_OK
    if report.get("ec_equals_length") is False or report.get("s_poly", {}).get("ec_from_s", value) != value:
        code = EXIT_VIOLATION
    return report, code


def _parse_window(text: str) -> AffinePermutation:
    if Path(text).exists() or text.endswith(".json"):
        return permutation_from_json(read_json(text))
    try:
        return AffinePermutation(tuple(int(v) for v in text.split(",")))
    except ValueError as exc:
        raise CliError(f"invalid window {text!r}: {exc}", EXIT_PARSE) from exc


def _positroid_report(p: AffinePermutation) -> tuple[dict, int]:
    R = from_affine_permutation(p)
    M = positroid(p)
    ell = length(p)
    ec_val = ec(M)
    report = {
        "permutation": permutation_to_json(p),
        "k": R.k,
        "rank_matrix": [R.row(i) for i in range(1, p.n + 1)],
        "length": ell,
        "essential_set": essential_to_json(essential_set(p)),
        "ec": ec_val,
        "ec_intervals": ec_positroid(p),
        "ec_equals_length": ec_val == ell == ec_positroid(p),
    }
    return report, EXIT_OK if report["ec_equals_length"] else EXIT_VIOLATION


def cmd_positroid(args) -> tuple[dict, int]:
    if args.pcmd == "perm":
        return _positroid_report(_parse_window(args.window))
    if args.pcmd == "ranks":
        n, ranks, k = interval_ranks_from_json(read_json(args.input))
        M = positroid_from_interval_ranks(n, ranks, k)
        if not is_positroid(M):
            return {"is_positroid": False, "n": n, "k": M.k}, EXIT_VIOLATION
        return _positroid_report(to_affine_permutation(cyclic_rank_matrix(M)))
    res = V.suite_positroids(args.n, args.samples, seed=args.seed)
    summary = res.as_dict()
    total = res.notes["exhaustive"]
    summary["message"] = f"all {total} permutations: ec == length" if res.passed else "violation found"
    return summary, EXIT_OK if res.passed else EXIT_VIOLATION


def cmd_spoly(args) -> tuple[dict, int]:
    M = read_matroid(args.input)
    s = s_poly(M)
    report = poly_to_json(s)
    code = EXIT_OK
    if args.check_ec:
        a, b = ec_from_s(s), ec(M)
        report["check_ec"] = {"ec_from_s": a, "ec": b, "equal": a == b}
        code = EXIT_OK if a == b else EXIT_VIOLATION
    return report, code


def cmd_tutte(args) -> tuple[dict, int]:
    M = read_matroid(args.input)
    t = tutte(M, args.convention)
    report = poly_to_json(t)
    report["convention"] = args.convention
    if args.eval:
        try:
            x, y = (int(v) for v in args.eval.split(","))
        except ValueError as exc:
            raise CliError(f"--eval expects x,y integers, got {args.eval!r}", EXIT_PARSE) from exc
        report["value"] = t(x, y)
    return report, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    name = args.suite
    seed, samples = args.seed, args.samples
    if name == "axioms":
        res = V.suite_axioms(args.n or 5)
    elif name == "duality":
        res = V.suite_duality(args.n or 5, 100 if samples is None else samples, seed)
    elif name == "identities":
        res = V.suite_identities(1000 if samples is None else samples, seed, args.n or 6)
    elif name == "flacets":
        res = V.suite_flacets(args.n or 6, 100 if samples is None else samples, seed)
    elif name == "positroids":
        res = V.suite_positroids(args.n or 5, samples or 0, seed=seed)
    elif name == "svals":
        res = V.suite_svals(args.n or 6, 200 if samples is None else samples, seed)
    elif name == "valuation":
        path = args.witness or "delta24_split.json"
        res = V.suite_valuation(witness_from_json(read_json(path)))
    else:
        raise CliError(f"unknown suite {name!r}", EXIT_PARSE)
    return res.as_dict(), EXIT_OK if res.passed else EXIT_VIOLATION


# -- rendering -----------------------------------------------------------------
def render_text(report: dict) -> str:
    lines = []
    for key, val in report.items():
        if isinstance(val, (dict, list)):
            val = json.dumps(val)
        lines.append(f"{key}: {val}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")

    parser = argparse.ArgumentParser(prog="expcodim", description="Expected codimension of matroids.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ec", parents=[common], help="expected codimension of a matroid file")
    p.add_argument("input")
    p.add_argument("--family", action="append", help="powerset, flacets or file:<path>; repeatable")
    p.set_defaults(func=cmd_ec)

    p = sub.add_parser("analyze", parents=[common], help="full report for a matroid file")
    p.add_argument("input")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("positroid", help="positroid tools")
    psub = p.add_subparsers(dest="pcmd", required=True)
    q = psub.add_parser("perm", parents=[common], help="analyse a bounded affine permutation window")
    q.add_argument("window", help="comma-separated window such as 3,6,5,8,7,10, or a JSON file")
    q = psub.add_parser("ranks", parents=[common], help="positroid generated by cyclic interval ranks")
    q.add_argument("input")
    q = psub.add_parser("verify", parents=[common], help="check ec == length over permutations")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--samples", type=int, default=0, help="random samples at each of n+1, n+2, n+3")
    q.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_positroid)

    p = sub.add_parser("spoly", parents=[common], help="the polynomial s_M")
    p.add_argument("input")
    p.add_argument("--check-ec", action="store_true")
    p.set_defaults(func=cmd_spoly)

    p = sub.add_parser("tutte", parents=[common], help="Tutte polynomial s_M(x-1, y-1, 0)")
    p.add_argument("input")
    p.add_argument("--eval", help="evaluate at x,y")
    p.add_argument("--convention", choices=("nullity-first", "standard"), default="nullity-first")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", choices=V.SUITES)
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--witness")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except AxiomViolation as exc:
        print(f"axiom violation: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    except (ParseError, MatroidError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(json.dumps(report, indent=2) if args.json else render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())

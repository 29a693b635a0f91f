"""Command-line interface: JSON on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import config
from .errors import InsufficientTerms, InvalidInput, ResourceLimit

log = logging.getLogger("clustermethod")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def _range(text: str) -> tuple:
    """'a..b' or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return lo, hi


def _params(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidInput(f"parameter {item!r} must look like key=value")
        out[key] = int(value) if value.lstrip("-").isdigit() else value
    return out


def _patterns(text: str):
    from .perm import PatternSet

    return PatternSet(part for part in text.split("+") if part)


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


# -- commands -------------------------------------------------------------------


def cmd_avoid(args) -> int:
    from .perm import brute_avoiders
    from .series.power import avoiders

    pset = _patterns(args.pattern)
    lo, hi = args.n
    values = dict(zip(range(lo, hi + 1), avoiders(pset, hi, start=lo)))
    out = {"patterns": pset.canonical(), "alpha": {str(n): str(v) for n, v in values.items()}}
    code = EXIT_OK
    if args.brute:
        brute = {n: brute_avoiders(pset, n) for n in values}
        agree = brute == values
        out["brute"] = {str(n): str(v) for n, v in brute.items()}
        out["agree"] = agree
        code = EXIT_OK if agree else EXIT_FAILED
    _emit(out)
    return code


def cmd_clusters(args) -> int:
    from .cluster import cluster_polynomial, rec2143

    if args.feet:
        if args.pattern != "2143":
            raise InvalidInput("--feet is defined for the pattern 2143 only")
        table = {}
        for k in range(1, args.n):
            feet = rec2143(args.n, k)
            if feet.values:
                table[str(k)] = {str(ell): str(v) for ell, v in sorted(feet.values.items())}
        _emit({"pattern": "2143", "n": args.n, "feet": table})
        return EXIT_OK
    poly = cluster_polynomial(_patterns(args.pattern), args.n, method=args.method)
    _emit(poly.to_json())
    return EXIT_OK


_FAMILY_PATTERN = {
    "p1324": lambda p: "1324",
    "p12534": lambda p: "12534" if p.get("m", 5) == 5 else "123645",
    "p13254": lambda p: "13254" if p.get("m", 5) == 5 else "132465",
    "monotone": lambda p: "".join(str(i) for i in range(1, int(p["m"]) + 1)),
}


def _cor4_pattern(p: dict):
    from .perm import Permutation

    s, m = int(p["s"]), int(p["m"])
    return Permutation([*range(1, s), s + 1, s, *range(s + 2, m + 1)])


def _nonoverlap_pattern(p: dict):
    from .perm import all_patterns, is_non_overlapping

    m, b = int(p["m"]), int(p["b"])
    for sigma in all_patterns(m):
        if sigma[0] == 1 and sigma[-1] == b and is_non_overlapping(sigma):
            return sigma
    raise InvalidInput(f"no non-overlapping pattern of length {m} with first entry 1 and last entry {b}")


def _ode_target(args):
    from .perm import parse_pattern
    from .series.ode import CATALOG, builtin_ode, ode_for_pattern

    params = _params(args.param)
    if args.target in CATALOG:
        ode = builtin_ode(args.target, **params)
        if args.pattern:
            pattern = args.pattern
        elif "sigma" in params:
            pattern = str(params["sigma"])
        elif args.target in _FAMILY_PATTERN:
            pattern = _FAMILY_PATTERN[args.target](params)
        elif args.target == "cor4":
            pattern = _cor4_pattern(params)
        elif args.target == "nonoverlap_1b":
            pattern = _nonoverlap_pattern(params)
        else:
            raise InvalidInput(f"ODE {args.target!r} needs --pattern or sigma=...")
        return ode, parse_pattern(pattern)
    sigma = parse_pattern(args.target)
    return ode_for_pattern(sigma), sigma


def cmd_verify(args) -> int:
    kind = args.kind
    if kind == "ode":
        from .series.ode import verify_ode
        from .series.power import omega_series

        ode, sigma = _ode_target(args)
        report = verify_ode(ode, omega_series([sigma], args.N))
        _emit({"pattern": str(sigma), "equation": ode.format(), **report.to_json()})
        return EXIT_OK if report.passed else EXIT_FAILED
    if kind == "identity":
        from .series.identities import check_identity

        report = check_identity(args.name, args.N, **_params(args.param))
        _emit(report.to_json())
        return EXIT_OK if report.passed else EXIT_FAILED
    if kind == "pair":
        from .classify import verify_pair

        report = verify_pair(args.sigma, args.tau, args.n_max)
        _emit(report.to_json())
        return EXIT_OK if report.equal else EXIT_FAILED
    if kind == "dominance":
        from .analytics import dominance_report

        lo, hi = args.n if args.n else (2 * args.m, 16)
        report = dominance_report(args.m, lo, hi, brute_check=args.brute)
        _emit(report.to_json())
        return EXIT_OK if report.passed else EXIT_FAILED
    if kind == "blowup":
        from .analytics import verify_2413_blowup

        report = verify_2413_blowup(args.ell)
        _emit(report.to_json())
        return EXIT_OK if report.passed else EXIT_FAILED
    raise InvalidInput(f"unknown verification kind {kind!r}")


def cmd_classify(args) -> int:
    from .classify import partition

    result = partition(args.m, args.n_max, validate=args.validate)
    _emit(result.to_json())
    return EXIT_OK


def cmd_growth(args) -> int:
    from .analytics import growth_constant

    try:
        report = growth_constant(args.pattern, args.N, args.tol, args.N2)
    except InsufficientTerms as exc:
        _emit({"pattern": args.pattern, "error": "insufficient-terms", "detail": str(exc)})
        return EXIT_FAILED
    _emit(report.to_json())
    return EXIT_OK


def cmd_omega(args) -> int:
    from fractions import Fraction

    from .series.power import omega_series

    series = omega_series(_patterns(args.pattern), args.N)
    if args.u is not None:
        series = series.at(Fraction(args.u))
    out = series.to_json()
    out["text"] = series.format("z", "u")
    _emit(out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clustermethod", description="Consecutive pattern avoidance via the cluster method.")
    parser.add_argument("--config", help="JSON file with cap and cache settings")
    parser.add_argument("--cache-dir", help="directory for the cluster-polynomial cache")
    parser.add_argument("--threads", type=int)
    parser.add_argument("--brute-cap", type=int, help="largest n for any exhaustive enumeration")
    parser.add_argument("--extension-cap", type=int)
    parser.add_argument("--cluster-n-max", type=int)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("avoid", help="number of permutations avoiding a pattern")
    p.add_argument("pattern")
    p.add_argument("--n", type=_range, required=True, help="N or A..B")
    p.add_argument("--brute", action="store_true", help="cross-check by exhaustive enumeration")
    p.set_defaults(func=cmd_avoid)

    p = sub.add_parser("clusters", help="cluster polynomial r_n(t)")
    p.add_argument("pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--feet", action="store_true", help="2143 only: refine by feet below the first entry")
    p.add_argument("--method", choices=["auto", "poset", "transfer"], default="auto")
    p.set_defaults(func=cmd_clusters)

    p = sub.add_parser("verify", help="run a verification and exit 0/1")
    vs = p.add_subparsers(dest="kind", required=True)
    q = vs.add_parser("ode", help="catalog ODE (by name) or the ODE for a pattern")
    q.add_argument("target")
    q.add_argument("--N", type=int, default=None)
    q.add_argument("--pattern", help="series to test when target is a catalog name")
    q.add_argument("--param", action="append", help="key=value, e.g. m=4")
    q = vs.add_parser("identity")
    q.add_argument("name")
    q.add_argument("--N", type=int, default=None)
    q.add_argument("--param", action="append", help="key=value, e.g. s=3")
    q = vs.add_parser("pair")
    q.add_argument("sigma")
    q.add_argument("tau")
    q.add_argument("--n-max", type=int, default=18)
    q = vs.add_parser("dominance")
    q.add_argument("m", type=int)
    q.add_argument("--n", type=_range)
    q.add_argument("--brute", type=int, help="cross-check against brute force up to this n")
    q = vs.add_parser("blowup")
    q.add_argument("ell", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="strong c-Wilf classes of S_m")
    p.add_argument("m", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--validate", action="store_true", help="fingerprint every orbit member")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("growth", help="growth constant rho")
    p.add_argument("pattern")
    p.add_argument("--N", type=int, default=40)
    p.add_argument("--N2", type=int)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("omega", help="omega(u, z) as an exact series")
    p.add_argument("pattern")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--u", help="substitute a rational value for u")
    p.set_defaults(func=cmd_omega)
    return parser


def _configure(args) -> None:
    if args.config:
        try:
            config.apply(config.load_config(args.config))
        except (OSError, ValueError) as exc:
            raise InvalidInput(f"cannot read config {args.config}: {exc}") from None
    config.apply(
        {
            "cache_dir": args.cache_dir,
            "threads": args.threads,
            "brute_cap": args.brute_cap,
            "brute_avoid_cap": args.brute_cap,
            "extension_cap": args.extension_cap,
            "cluster_n_max": args.cluster_n_max,
        }
    )
    for name in ("N",):
        if getattr(args, name, 0) is None:
            setattr(args, name, config.settings.series_N)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        _configure(args)
        return args.func(args)
    except (InvalidInput, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Subcommands:
  kostka      K_{lambda,tau} by the alternating Kostant sum and/or SSYT counting
  kostant     Kostant partition function value
  truncate    a Jacobi-Trudi truncation g^k in the h, Schur or monomial basis
  jt          signed determinant terms and the positivity report for mu/nu
  lorentzian  Lorentzian check of a normalized truncation g^k_{mu/0}
  verify      acceptance sweeps, writes a JSON manifest

Exit codes: 0 pass, 2 usage or parse error, 3 mathematical assertion failure.
"""

import argparse
import json
import logging
import sys

from combinatorics import ConsistencyError, Partition, SkewShape, count_ssyt, parse_partition
from config import LOG_LEVELS, ConfigError, get_config
from jacobi_trudi import default_rank, jt_terms, positivity_report, truncation
from lorentzian import densify, is_lorentzian, normalize
from memo_cache import MemoCache
from sweeps import ALL_SUITES, SweepConfig, run_verify
from symfunc import h_to_schur, to_json, to_monomial
from weights import kostant_p, kostka, parse_weight

logger = logging.getLogger(__name__)

SCHEMA = 1
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ASSERTION = 3


def _emit(args: argparse.Namespace, document: dict, plain: str) -> None:
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **document}, indent=2))
    else:
        print(plain)


def _rank(args: argparse.Namespace, mu: Partition, nu: Partition) -> int:
    return args.n if args.n is not None else default_rank(mu, nu)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_kostka(args: argparse.Namespace) -> int:
    lam = parse_partition(args.lam)
    tau = parse_weight(args.tau, args.n)
    values = {}
    if args.oracle in ("both", "kostant"):
        values["kostant"] = kostka(lam, tau)
    if args.oracle in ("both", "ssyt"):
        values["ssyt"] = count_ssyt(SkewShape(lam), tau.entries)
    agree = len(set(values.values())) == 1
    lines = [f"{name}: {value}" for name, value in values.items()]
    if args.oracle == "both":
        lines.append("agree" if agree else "DISAGREE")
    _emit(
        args,
        {"lambda": str(lam), "tau": str(tau), "n": tau.rank, **values, "agree": agree},
        "\n".join(lines),
    )
    if not agree:
        logger.error(f"Kostka oracles disagree for lambda={lam}, tau={tau}: {values}")
        return EXIT_ASSERTION
    return EXIT_OK


def cmd_kostant(args: argparse.Namespace) -> int:
    v = parse_weight(args.weight)
    value = kostant_p(v)
    _emit(args, {"weight": str(v), "n": v.rank, "value": value}, str(value))
    return EXIT_OK


def cmd_truncate(args: argparse.Namespace) -> int:
    mu = parse_partition(args.mu)
    nu = parse_partition(args.nu)
    n = _rank(args, mu, nu)
    g = truncation(mu, nu, n, args.k)
    document = {"mu": str(mu), "nu": str(nu), "n": n, "k": args.k, "basis": args.basis}
    status = EXIT_OK
    if args.basis == "schur":
        poly = h_to_schur(g)
        nonneg = all(c >= 0 for _, c in poly.items())
        document["nonneg"] = nonneg
        plain_suffix = f"\nnonneg: {str(nonneg).lower()}"
        if not nonneg:
            logger.error(f"Negative Schur coefficient in g^{args.k} for {mu}/{nu}, n={n}")
            status = EXIT_ASSERTION
    else:
        poly = to_monomial(g) if args.basis == "monomial" else g
        plain_suffix = ""
    document["poly"] = to_json(poly)
    _emit(args, document, f"g^{args.k}[{mu}/{nu}] (n={n}) = {poly}{plain_suffix}")
    return status


def cmd_jt(args: argparse.Namespace) -> int:
    mu = parse_partition(args.mu)
    nu = parse_partition(args.nu)
    n = _rank(args, mu, nu)
    terms = jt_terms(mu, nu, n)
    report = positivity_report(mu, nu, n)
    lines = [f"Jacobi-Trudi terms for {mu}/{nu}, n={n}:"]
    for term in terms:
        lines.append(f"  w={term.w} l={term.length} sign={term.sign:+d} h[{term.hvector}] w.nu=({term.dotweight})")
    for row in report.rows:
        coeffs = ", ".join(f"s[{lam}]:{c}" for lam, c in row.schur_coefficients.items())
        lines.append(f"  k={row.k}: {coeffs} nonneg={str(row.all_nonnegative).lower()}")
    if report.telescoping_ok:
        lines.append("telescoping: ok")
    else:
        lines.append(f"telescoping: FAILED at k={','.join(str(k) for k in report.telescoping_failures)}")
    document = {
        "terms": [
            {
                "w": str(t.w),
                "length": t.length,
                "sign": t.sign,
                "hvector": str(t.hvector),
                "dotweight": str(t.dotweight),
            }
            for t in terms
        ],
        "report": report.to_dict(),
    }
    _emit(args, document, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_ASSERTION


def cmd_lorentzian(args: argparse.Namespace) -> int:
    mu = parse_partition(args.mu)
    n = args.n if args.n is not None else max(mu.length, 1)
    polynomial = normalize(densify(to_monomial(truncation(mu, Partition(), n, args.k))))
    result = is_lorentzian(polynomial)
    document = result.to_dict(mu=str(mu), k=args.k)
    plain = f"g^{args.k}[{mu}] (n={n}) lorentzian: {str(result.lorentzian).lower()}"
    if result.failed_condition:
        plain += f"\nfailed: {result.failed_condition.kind} {json.dumps(result.failed_condition.witness)}"
    print(json.dumps(document, indent=2) if args.format == "json" else plain)
    return EXIT_OK if result.lorentzian else EXIT_ASSERTION


def cmd_verify(args: argparse.Namespace) -> int:
    suites = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    config = SweepConfig(
        max_boxes=args.max_boxes,
        n=args.n,
        suites=suites,
        output=args.output,
        cache=args.cache or None,
        jobs=args.jobs,
        long=args.long,
    )
    manifest = run_verify(config)
    lines = [
        f"{suite}: {summary['cases']} cases, {summary['failures']} failures"
        for suite, summary in manifest["suites"].items()
    ]
    lines.append("PASS" if manifest["passed"] else "FAIL")
    if args.format == "json":
        print(json.dumps(manifest, indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK if manifest["passed"] else EXIT_ASSERTION


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    cfg = get_config()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json"), default="plain")
    common.add_argument("--cache", default=cfg.cache_path, help="memo cache file (env JT_CACHE_PATH)")
    common.add_argument("--jobs", type=int, default=cfg.jobs, help="sweep worker processes (env JT_JOBS)")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=cfg.log_level)

    parser = argparse.ArgumentParser(
        prog="jtcalc", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kostka", parents=[common], help="Kostka number by two oracles")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--oracle", choices=("both", "ssyt", "kostant"), default="both")
    p.set_defaults(handler=cmd_kostka)

    p = sub.add_parser("kostant", parents=[common], help="Kostant partition function")
    p.add_argument("--weight", required=True)
    p.set_defaults(handler=cmd_kostant)

    p = sub.add_parser("truncate", parents=[common], help="Jacobi-Trudi truncation g^k")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", default="")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--basis", choices=("h", "schur", "monomial"), default="h")
    p.set_defaults(handler=cmd_truncate)

    p = sub.add_parser("jt", parents=[common], help="determinant terms and positivity report")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", default="")
    p.add_argument("--n", type=int)
    p.set_defaults(handler=cmd_jt)

    p = sub.add_parser("lorentzian", parents=[common], help="Lorentzian check of normalized g^k")
    p.add_argument("--mu", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", "--vars", dest="n", type=int)
    p.set_defaults(handler=cmd_lorentzian)

    p = sub.add_parser("verify", parents=[common], help="acceptance sweeps")
    p.add_argument("--suites", default=",".join(ALL_SUITES))
    p.add_argument("--max-boxes", type=int, default=6)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--output")
    p.add_argument("--long", action="store_true", help="run the Lorentzian suite up to 9 boxes")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    cache = MemoCache(args.cache) if args.cache and args.command != "verify" else None
    if cache:
        cache.load()
    try:
        status = args.handler(args)
    except ConsistencyError as e:
        logger.error(f"Internal consistency failure: {e}")
        return EXIT_ASSERTION
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if cache:
        cache.save()
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``curvedim <command> ...``.

Exit codes: 0 success, 1 mismatch or refutation, 2 usage error, 3 undecided.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from collections.abc import Sequence

from . import reference_tables
from .core import DimensionResult, LinearSystem, expected_dim, virtual_dim
from .cremona import dim_quasi
from .degen import ProviderUnavailable, capital_D, evaluate_pair, search_witness
from .engine import Engine, MemoStore, Undecided, default_cache_path
from .oracle import OracleBudgetError, OracleConfig, generic_dim

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _oracle_config(args) -> OracleConfig:
    return OracleConfig(
        prime=getattr(args, "prime", None) or OracleConfig.prime,
        trials=getattr(args, "trials", None) or OracleConfig.trials,
        seed=getattr(args, "seed", None) if getattr(args, "seed", None) is not None else OracleConfig.seed,
    )


def _engine(args) -> Engine:
    memo = MemoStore(None) if args.no_cache else MemoStore(args.cache or default_cache_path())
    return Engine(oracle=_oracle_config(args), memo=memo)


def _save(engine: Engine) -> None:
    try:
        engine.memo.save()
    except OSError as exc:
        logging.getLogger(__name__).warning("could not save memo: %s", exc)


def _format_result(res: DimensionResult) -> str:
    return (
        f"dim={res.value} v={res.virtual} special={str(res.special).lower()} "
        f"provenance={res.provenance.source.value}"
    )


def cmd_dim(args) -> int:
    L = LinearSystem(args.d, args.m0, args.n, args.m)
    method = args.method
    if method == "oracle":
        res = generic_dim(L, _oracle_config(args))
        print(_format_result(res))
        return EXIT_OK if res.certified else EXIT_UNDECIDED
    if method == "cremona":
        res = dim_quasi(L)
        if res is None:
            print(f"no closed form applies to {L}", file=sys.stderr)
            return EXIT_UNDECIDED
        print(_format_result(res))
        return EXIT_OK
    engine = _engine(args)
    try:
        if method == "degen":
            if L.m0:
                print("--method degen needs a homogeneous system (m0 = 0)", file=sys.stderr)
                return EXIT_USAGE
            w = search_witness(L.d, L.n, L.m, engine.subsystem_dim, engine.offsets)
            if w is None:
                print(f"no degeneration witness for {L}", file=sys.stderr)
                return EXIT_UNDECIDED
            print(f"dim={w.l0} v={virtual_dim(L)} special=false provenance=degeneration witness=({w.a},{w.b})")
            return EXIT_OK
        res = engine.dim(L)
    except Undecided as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_UNDECIDED
    finally:
        _save(engine)
    print(_format_result(res))
    return EXIT_OK


def cmd_check(args) -> int:
    engine = _engine(args)
    try:
        cert = engine.check_conjecture(args.m, args.dmax, args.jobs)
    finally:
        _save(engine)
    if args.verbose:
        for r in cert.degree_reports:
            if r.rule == "low" and not r.checks:
                continue
            methods = " ".join(f"n={c.n}:{c.method}" for c in r.checks)
            flag = "ok" if r.resolved else "UNRESOLVED"
            print(f"d={r.d} {r.rule} {methods} {flag} {r.note}".rstrip())
    print(cert.summary())
    return {"verified": EXIT_OK, "refuted": EXIT_MISMATCH}.get(cert.status, EXIT_UNDECIDED)


def _table_rows(engine: Engine, m: int) -> list[tuple[int, int, int, int, str]]:
    rows = []
    for d in range(3 * m + 1, capital_D(m)):
        for n in engine.critical_systems(d, m):
            w = search_witness(d, n, m, engine.subsystem_dim, engine.offsets)
            rows.append((d, n, m, virtual_dim(LinearSystem.homogeneous(d, n, m)), f"({w.a},{w.b})" if w else "FAIL"))
    return rows


def cmd_table(args) -> int:
    if args.m < 2:
        print("table needs m >= 2", file=sys.stderr)
        return EXIT_USAGE
    engine = _engine(args)
    try:
        rows = _table_rows(engine, args.m)
        status = EXIT_OK
        published = {}
        if args.compare:
            for row in reference_tables.rows_for(args.m):
                check = engine.verify_row(row)
                pair = row[4]
                published[row[:3]] = (f"({pair[0]},{pair[1]})" if pair else "FAIL", check.passed)
                if not check.passed:
                    status = EXIT_MISMATCH
    finally:
        _save(engine)
    header = ["d", "n", "m", "v", "witness"] + (["published", "replay"] if args.compare else [])
    out = []
    for d, n, m, v, wit in rows:
        line = [d, n, m, v, wit]
        if args.compare:
            pub, ok = published.get((d, n, m), ("-", None))
            line += [pub, "-" if ok is None else ("ok" if ok else "MISMATCH")]
        out.append(line)
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(out)
    else:
        print(" ".join(f"{h:>9}" for h in header))
        for line in out:
            print(" ".join(f"{x!s:>9}" for x in line))
    return status


def cmd_verify_witness(args) -> int:
    L = LinearSystem(args.d, args.m0, args.n, args.m)
    engine = _engine(args)
    try:
        w = evaluate_pair(L, args.a, args.b, engine.subsystem_dim)
    except (ProviderUnavailable, ValueError) as exc:
        print(f"cannot evaluate ({args.a},{args.b}) on {L}: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    finally:
        _save(engine)
    for label, res in (("P", w.P), ("P_hat", w.P_hat), ("F", w.F), ("F_hat", w.F_hat)):
        print(f"{label:6} {str(res.system):22} dim={res.value:<5} provenance={res.provenance.tag}")
    e = expected_dim(L)
    print(f"rule={w.rule} l0={w.l0} e={e} {'ok' if w.succeeds else 'FAIL'}")
    return EXIT_OK if w.succeeds else EXIT_MISMATCH


def cmd_oracle(args) -> int:
    L = LinearSystem(args.d, args.m0, args.n, args.m)
    try:
        res = generic_dim(L, _oracle_config(args))
    except OracleBudgetError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_UNDECIDED
    print(res.provenance.payload.render())
    return EXIT_OK if res.certified else EXIT_UNDECIDED


def cmd_cache(args) -> int:
    path = args.path or default_cache_path()
    store = MemoStore(path)
    if args.clear:
        store.clear()
        print(f"cleared {path}")
    else:
        print(f"{path} entries={len(store)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvedim", description="Dimensions of plane linear systems with multiple points.")
    parser.add_argument("-v", "--verbose-log", action="store_true", help="enable debug logging")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="memo file (default: $CURVEDIM_CACHE or the XDG data dir)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the memo file")
    orc = argparse.ArgumentParser(add_help=False)
    orc.add_argument("--prime", type=int)
    orc.add_argument("--trials", type=int)
    orc.add_argument("--seed", type=int)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", parents=[common, orc], help="dimension of L(d, m0; n, m)")
    p.add_argument("d", type=_nonneg)
    p.add_argument("n", type=_nonneg)
    p.add_argument("m", type=_nonneg)
    p.add_argument("--m0", type=_nonneg, default=0)
    p.add_argument("--method", choices=["auto", "degen", "oracle", "cremona"], default="auto")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("check", parents=[common, orc], help="verify the conjecture for one multiplicity")
    p.add_argument("m", type=_nonneg)
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verbose", action="store_true", help="one line per degree")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", parents=[common, orc], help="middle-range critical systems with witnesses")
    p.add_argument("m", type=_nonneg)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("--compare", action="store_true", help="replay the published rows alongside")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify-witness", parents=[common, orc], help="evaluate one (a,b)-degeneration")
    for name in ("d", "n", "m", "a", "b"):
        p.add_argument(name, type=_nonneg)
    p.add_argument("--m0", type=_nonneg, default=0)
    p.set_defaults(func=cmd_verify_witness)

    p = sub.add_parser("oracle", parents=[orc], help="interpolation-rank certificate")
    for name in ("d", "m0", "n", "m"):
        p.add_argument(name, type=_nonneg)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("cache", help="inspect or clear the memo file")
    p.add_argument("--path", help="memo file (default: $CURVEDIM_CACHE or the XDG data dir)")
    p.add_argument("--clear", action="store_true")
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose_log else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

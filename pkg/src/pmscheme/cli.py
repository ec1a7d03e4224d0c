"""Batch command-line surface: verification suites, spectrum tables,
stability and isoperimetry reports, and the exact-table cache.

Reports are deterministic given the configuration and seed; JSON output uses
sorted keys and carries a schema_version field.  Exit codes: 0 all pass,
1 verification failure, 2 some requested work was skipped as out of scale.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from fractions import Fraction

import numpy as np

from . import cache as cache_io
from . import graphs as graphs_mod
from . import isoperimetry as iso
from .bounds import trace_identity_check
from .checks import CHECKS, CheckResult, RunConfig, run_checks
from .matchings import count_matchings, derangement_count_recurrence
from .partitions import Partition, enumerate_partitions
from .spherical import scheme_table, zonal_closed_form, zonal_eigenvalue

SCHEMA_VERSION = 1


def _json_default(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Partition):
        return obj.to_text()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def _emit_json(report: dict) -> None:
    print(json.dumps(report, default=_json_default, sort_keys=True, indent=2))


def _parse_n_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    n = int(text)
    return n, n


def _config_from_args(args) -> RunConfig:
    if getattr(args, "n", None) is not None:
        lo, hi = _parse_n_range(args.n)
    else:
        lo, hi = 1, args.max_n
    return RunConfig(
        n_lo=lo,
        n_hi=hi,
        seed=args.seed,
        trials=args.trials,
        cache_dir=args.cache_dir,
        parallelism=args.parallelism,
    )


# ---------------------------------------------------------------------------
# spectrum


def cmd_spectrum(args) -> int:
    lo, hi = _parse_n_range(args.n)
    reports = []
    exit_code = 0
    for n in range(lo, hi + 1):
        if n < 2 or n > 7:
            reports.append({"n": n, "mode": "skipped", "reason": "supported range is 2..7"})
            exit_code = max(exit_code, 2)
            continue
        if n == 7:
            eta_zonal = zonal_eigenvalue(7)
            identity_ok = eta_zonal * 12 == -derangement_count_recurrence(7)
            reports.append(
                {
                    "n": n,
                    "mode": "zonal_only",
                    "eta_top": derangement_count_recurrence(7),
                    "eta_zonal": eta_zonal,
                    "zonal_values": [
                        {"lambda": lam, "phi": zonal_closed_form(lam)}
                        for lam in enumerate_partitions(7)
                    ],
                    "min_eig_identity": identity_ok,
                }
            )
            if not identity_ok:
                exit_code = 1
            continue
        table = scheme_table(n, cache_dir=args.cache_dir, parallelism=args.parallelism)
        rows = [
            {"mu": mu, "multiplicity": f2, "eta": eta}
            for mu, f2, eta in table.eigenvalue_rows()
        ]
        d = derangement_count_recurrence(n)
        min_eig = table.eta[Partition([n - 1, 1])]
        checks = {
            "min_eig_identity": min_eig * 2 * (n - 1) == -d,
            "trace_identity": trace_identity_check(table)["ok"],
            "orthogonality": table.check_orthogonality(),
        }
        if n <= 5:
            expected = sorted(
                (e for mu, f2, e in ((m, f, v) for m, f, v in table.eigenvalue_rows()) for _ in range(f2)),
                reverse=True,
            )
            spec = graphs_mod.dense_spectrum(graphs_mod.matching_graph("derangement", n))
            checks["dense_cross_check"] = all(
                abs(a - b) <= 1e-8 for a, b in zip(spec, expected)
            )
        reports.append({"n": n, "mode": "full", "rows": rows, "checks": checks})
        if not all(checks.values()):
            exit_code = 1
    report = {"schema_version": SCHEMA_VERSION, "command": "spectrum", "tables": reports}
    if args.format == "json":
        _emit_json(report)
    elif args.format == "csv":
        print("n,mu,multiplicity,eta")
        for entry in reports:
            for row in entry.get("rows", []):
                print(f"{entry['n']},{row['mu'].to_text()},{row['multiplicity']},{row['eta']}")
    else:
        for entry in reports:
            if entry.get("mode") == "skipped":
                print(f"n={entry['n']}: skipped ({entry['reason']})")
                continue
            if entry.get("mode") == "zonal_only":
                print(
                    f"n={entry['n']} (zonal-only): eta_top={entry['eta_top']} "
                    f"eta_zonal={entry['eta_zonal']} "
                    f"min_eig_identity={'pass' if entry['min_eig_identity'] else 'FAIL'}"
                )
                continue
            print(f"n={entry['n']} eigenvalues of the derangement graph:")
            for row in entry["rows"]:
                print(
                    f"  mu={row['mu'].to_text():<14} f^2mu={row['multiplicity']:<8} "
                    f"eta={row['eta']}"
                )
            for name, okay in entry["checks"].items():
                print(f"  check {name}: {'pass' if okay else 'FAIL'}")
    return exit_code


# ---------------------------------------------------------------------------
# verify


def _result_to_dict(res: CheckResult) -> dict:
    return {
        "name": res.name,
        "passed": res.passed,
        "skipped": res.skipped,
        "details": res.details,
    }


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    only = args.only.split(",") if args.only else None
    results = run_checks(cfg, only)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "config": asdict(cfg),
        "results": [_result_to_dict(r) for r in results],
    }
    any_fail = any(not r.passed for r in results)
    any_skip = any(r.skipped for r in results)
    if args.format == "json":
        _emit_json(report)
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            extra = f" (skipped: {'; '.join(r.skipped)})" if r.skipped else ""
            print(f"{status} {r.name}{extra}")
        summary = "all checks passed" if not any_fail else "SOME CHECKS FAILED"
        print(summary)
    return 1 if any_fail else (2 if any_skip else 0)


# ---------------------------------------------------------------------------
# stability


def cmd_stability(args) -> int:
    cfg = _config_from_args(args)
    from .checks import check_stability

    res = check_stability(cfg)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "stability",
        "config": asdict(cfg),
        "result": _result_to_dict(res),
    }
    if args.format == "json":
        _emit_json(report)
    else:
        for row in res.details.get("exhaustive_search", []):
            print(
                f"n={row['n']}: {row['maximum_families']} maximum intersecting families "
                f"(expected {row['expected']}), all canonical: {row['all_canonical']}"
            )
        for row in res.details.get("scans", []):
            print(
                f"n={row['n']} {row['family']:<22} size={row['size']:<5} "
                f"edge={row['edge']} residue={row['residue']} "
                f"containment={row['containment']}"
            )
        print("PASS" if res.passed else "FAIL")
    return 0 if res.passed else 1


# ---------------------------------------------------------------------------
# isoperimetry


def cmd_isoperimetry(args) -> int:
    lo, hi = _parse_n_range(args.n)
    exit_code = 0
    entries = []
    for n in range(lo, hi + 1):
        if not 2 <= n <= 6:
            entries.append({"n": n, "skipped": "supported range is 2..6"})
            exit_code = max(exit_code, 2)
            continue
        entry: dict = {"n": n}
        entry["diameter"] = graphs_mod.diameter(graphs_mod.matching_graph("transposition", n))
        entry["diameter_ok"] = entry["diameter"] == n - 1
        if 3 <= n:
            block = graphs_mod.block_structure_check(n)
            entry["block_structure_ok"] = block["ok"]
        seq = iso.nice_partition_sequence(n)
        seq_rep = iso.verify_partition_sequence(
            seq, sample=None if n <= 4 else 5, seed=args.seed
        )
        entry["partition_sequence_ok"] = seq_rep["ok"]
        mc = iso.verify_mcdiarmid(n, args.trials, args.seed)
        entry["mcdiarmid"] = mc
        entry["ok"] = (
            entry["diameter_ok"]
            and entry.get("block_structure_ok", True)
            and entry["partition_sequence_ok"]
            and mc["all_pass"]
        )
        if not entry["ok"]:
            exit_code = 1
        entries.append(entry)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "isoperimetry",
        "seed": args.seed,
        "trials": args.trials,
        "entries": entries,
    }
    if args.format == "json":
        _emit_json(report)
    else:
        for entry in entries:
            if "skipped" in entry:
                print(f"n={entry['n']}: skipped ({entry['skipped']})")
                continue
            mc = entry["mcdiarmid"]
            print(
                f"n={entry['n']}: diameter={entry['diameter']} "
                f"blocks={'pass' if entry.get('block_structure_ok', True) else 'FAIL'} "
                f"sequence={'pass' if entry['partition_sequence_ok'] else 'FAIL'} "
                f"mcdiarmid={mc['checks']} checks "
                f"{'pass' if mc['all_pass'] else 'FAIL'}"
            )
    return exit_code


# ---------------------------------------------------------------------------
# cache


def cmd_cache(args) -> int:
    cache_dir = args.cache_dir
    if args.action == "build":
        lo, hi = _parse_n_range(args.n)
        for n in range(lo, hi + 1):
            if not 2 <= n <= 6:
                print(f"n={n}: skipped (cache builds cover 2..6)")
                continue
            table = scheme_table(n, parallelism=args.parallelism)
            path = cache_io.store_scheme_table(cache_dir, table)
            print(f"wrote {path}")
            ct = cache_io.cached_character_table(2 * n)
            path = cache_io.store_character_table(cache_dir, ct)
            print(f"wrote {path}")
        return 0
    if args.action == "inspect":
        records = cache_io.inspect_cache(cache_dir)
        if args.format == "json":
            _emit_json(
                {
                    "schema_version": SCHEMA_VERSION,
                    "command": "cache inspect",
                    "records": records,
                }
            )
        else:
            if not records:
                print("cache is empty")
            for rec in records:
                print(rec)
        return 0
    if args.action == "clear":
        removed = cache_io.clear_cache(cache_dir)
        print(f"removed {removed} cache files")
        return 0
    raise ValueError(f"unknown cache action {args.action!r}")


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--cache-dir", default=None, help="directory for exact-table CSV caches")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--parallelism", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmscheme",
        description="Exactly verified computations on the association scheme "
        "of perfect matchings of K_2n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalue table of the derangement graph")
    p.add_argument("--n", required=True, help="n or a range like 3..5 (full mode 2..6, zonal-only 7)")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run the named verification suites")
    p.add_argument("--n", default=None, help="n or a range like 8..12")
    p.add_argument("--max-n", type=int, default=4, help="upper n when --n is absent")
    p.add_argument("--only", default=None, help=f"comma-separated subset of {','.join(CHECKS)}")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stability", help="extremal search and best-edge scans")
    p.add_argument("--n", default=None, help="n or a range (exhaustive search caps at 4)")
    p.add_argument("--max-n", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("isoperimetry", help="partition sequences and the concentration bound")
    p.add_argument("--n", required=True, help="n or a range within 2..6")
    _add_common(p)
    p.set_defaults(func=cmd_isoperimetry)

    p = sub.add_parser("cache", help="build, inspect, or clear the exact-table cache")
    p.add_argument("action", choices=("build", "inspect", "clear"))
    p.add_argument("--n", default="2..5", help="n range for cache build")
    _add_common(p)
    p.set_defaults(func=cmd_cache)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cache_dir", None) is None and args.command == "cache":
        args.cache_dir = "pmscheme-cache"
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

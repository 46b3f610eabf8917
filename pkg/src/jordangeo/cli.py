"""Command-line front end: ``jordangeo verify`` and ``jordangeo tkk``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from jordangeo import checks, jordan, tkk
from jordangeo.rings import parse_ring

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("samples must be ≥ 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jordangeo", description="Exact checks for Jordan structures and their geometries.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run named checks on a family or geometry")
    v.add_argument("--ring", default="Q", help="Q, Qi, Zmod:p or dual:<ring>")
    v.add_argument("--target", help="full:n, sym:n, herm:n, skew:n, spin:d, rect:pxq, gras:ExF, lagr-*:n")
    v.add_argument("--checks", help="comma-separated check names (default: all that apply)")
    v.add_argument("--samples", type=_positive, default=100)
    v.add_argument("--seed", type=_seed, default=0)
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    v.add_argument("--json", action="store_true", help="print the JSON report instead of the table")
    v.add_argument("--list", action="store_true", help="list the registered checks and exit")

    t = sub.add_parser("tkk", help="build the 3-graded Lie algebra of a Jordan pair")
    t.add_argument("--ring", default="Q")
    t.add_argument("--target", required=True)
    t.add_argument("--out")
    return p


def _config(args) -> tuple:
    try:
        ring = parse_ring(args.ring)
    except ValueError as e:
        raise ConfigError(f"bad ring {args.ring!r}: {e}") from e
    if not args.target:
        raise ConfigError("--target is required")
    try:
        kind, obj = checks.build_target(args.target, ring)
    except ValueError as e:
        raise ConfigError(f"bad target {args.target!r}: {e}") from e
    if args.checks:
        names = [n.strip() for n in args.checks.split(",") if n.strip()]
        unknown = [n for n in names if n not in checks.REGISTRY]
        if unknown:
            raise ConfigError(f"unknown check(s): {', '.join(unknown)}")
        wrong = [n for n in names if checks.REGISTRY[n].kind != kind]
        if wrong:
            raise ConfigError(f"check(s) {', '.join(wrong)} do not run on {kind} {args.target}")
        # registry order, not command-line order
        names = [n for n in checks.REGISTRY if n in names]
    else:
        names = checks.applicable(kind)
    return ring, kind, obj, names


def _run_one(job: tuple):
    ring_spec, target, name, samples, seed = job
    kind, obj = checks.build_target(target, parse_ring(ring_spec))
    try:
        return checks.run_check(name, kind, obj, samples, seed)
    except checks.NotApplicable as e:
        return e


def run(args) -> tuple[dict, int]:
    ring, kind, obj, names = _config(args)
    jobs = [(args.ring, args.target, n, args.samples, args.seed) for n in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_run_one, jobs))
    else:
        outcomes = [_run_one(j) for j in jobs]
    results, skipped = [], []
    for n, o in zip(names, outcomes):
        if isinstance(o, checks.NotApplicable):
            if args.checks:
                raise ConfigError(f"{n}: {o}")
            skipped.append({"name": n, "reason": str(o)})
        else:
            results.append(o)
    report = {
        "schema": SCHEMA,
        "config": {"ring": ring.name, "target": obj.name, "checks": names, "samples": args.samples,
                   "seed": args.seed},
        "checks": [r.to_dict() for r in results],
        "skipped": skipped,
        "passed": all(r.ok for r in results) and bool(results),
    }
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def table(report: dict) -> str:
    rows = [("check", "target", "ring", "passed", "failed", "status")]
    for c in report["checks"]:
        status = "PASS" if c["failed"] == 0 and c["passed"] > 0 else "FAIL"
        rows.append((c["name"], c["target"], c["ring"], str(c["passed"]), str(c["failed"]), status))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    for s in report["skipped"]:
        lines.append(f"skipped {s['name']}: {s['reason']}")
    for c in report["checks"]:
        if c["name"] == "enumerate" and "points" in c["details"]:
            lines.append(f"enumerate: {c['details']['points']} points")
    lines.append("all checks passed" if report["passed"] else "FAILURES")
    return "\n".join(lines) + "\n"


def _write(path: str | None, text: str):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_verify(args) -> int:
    if args.list:
        sys.stdout.write("\n".join(checks.list_checks()) + "\n")
        return EXIT_OK
    report, code = run(args)
    text = dumps(report)
    _write(args.out, text)
    sys.stdout.write(text if args.json else table(report))
    return code


def cmd_tkk(args) -> int:
    try:
        ring = parse_ring(args.ring)
        J = jordan.parse_family(args.target, ring)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    summary = tkk.tkk_summary(J)
    summary["schema"] = SCHEMA
    text = dumps(summary)
    _write(args.out, text)
    sys.stdout.write(text)
    ok = all(summary[k]["pass"] for k in ("grading", "jacobi", "recover"))
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    try:
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_tkk(args)
    except ConfigError as e:
        sys.stderr.write(f"jordangeo: {e}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

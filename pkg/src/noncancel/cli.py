"""Command line entry point: scenario manifests, verification reports and rechecks.

Exit status is 0 when everything passes, 1 on a verification failure and 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .certs import recheck
from .scenarios import KINDS, ScenarioError, run_scenario, validate_scenario

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
U64 = 2 ** 64


class ManifestError(ValueError):
    """A manifest or report that cannot be used; maps to exit status 2."""


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def bundled_manifest() -> Path:
    return Path(str(resources.files("noncancel") / "data" / "paper.json"))


def _load_json(path: str | Path, what: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read {what} {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def load_manifest(path: str | Path) -> list[dict]:
    """Scenarios of a manifest, validated; the file is either a list or ``{"scenarios": [...]}``."""
    data = _load_json(path, "manifest")
    if isinstance(data, dict):
        data = data.get("scenarios", [])
    if not isinstance(data, list):
        raise ManifestError(f"{path}: expected a list of scenarios")
    try:
        scenarios = [validate_scenario(s, i) for i, s in enumerate(data)]
    except ScenarioError as exc:
        raise ManifestError(f"{path}: {exc}") from None
    seen = set()
    for s in scenarios:
        if s["id"] in seen:
            raise ManifestError(f"{path}: duplicate scenario id {s['id']!r}")
        seen.add(s["id"])
    return scenarios


def dumps(doc) -> str:
    """Canonical serialization: sorted keys, two-space indent, UTF-8, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunOptions:
    seed: int = 0
    jet_order: int = 16
    timings: bool = False


def _run_one(args: tuple[dict, RunOptions]) -> dict:
    scn, opts = args
    try:
        return run_scenario(scn, opts.seed, opts.jet_order, opts.timings)
    except ScenarioError as exc:
        raise ManifestError(f"scenario {scn['id']!r}: {exc}") from None


def run_scenarios(scenarios: Sequence[dict], opts: RunOptions = RunOptions(), jobs: int = 1) -> list[dict]:
    """Reports in manifest order; ``jobs > 1`` spreads scenarios over processes."""
    work = [(s, opts) for s in scenarios]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, work))
    return [_run_one(w) for w in work]


def run_manifest(path: str | Path, scenario: str | None = None, seed: int = 0, jet_order: int = 16,
                 jobs: int = 1, timings: bool = False) -> list[dict]:
    scenarios = load_manifest(path)
    if scenario is not None:
        scenarios = [s for s in scenarios if s["id"] == scenario]
        if not scenarios:
            raise ManifestError(f"{path}: no scenario with id {scenario!r}")
    return run_scenarios(scenarios, RunOptions(seed, jet_order, timings), jobs)


def report_document(reports: list[dict], seed: int) -> dict:
    return {"engine": f"noncancel {__version__}", "seed": seed, "reports": reports}


def recheck_document(doc) -> tuple[bool, list[str]]:
    """Re-verify every certificate of a report document; returns the verdict and failure lines."""
    if not isinstance(doc, dict) or not isinstance(doc.get("reports"), list):
        raise ManifestError("a report document needs a 'reports' list")
    problems = []
    for rep in doc["reports"]:
        sid = rep.get("id", "?")
        certs = rep.get("certificates") or {}
        if rep.get("verdict") == "pass" and not certs.get("claims"):
            problems.append(f"{sid}: pass verdict without certificates")
        for label, ok, msg in recheck(certs):
            if not ok:
                problems.append(f"{sid}: {label}: {msg}")
    return not problems, problems


def recheck_report(path: str | Path) -> tuple[bool, list[str]]:
    return recheck_document(_load_json(path, "report"))


def render_text(reports: list[dict]) -> str:
    lines = []
    for r in reports:
        claims = len(r["certificates"]["claims"])
        extra = f" [{r['seconds']:.3f}s]" if "seconds" in r else ""
        lines.append(f"{r['verdict'].upper():4} {r['id']} ({r['kind']}, {claims} claims){extra}: {r['summary']}")
        lines.extend(f"     caveat: {c}" for c in r["caveats"])
    passed = sum(r["verdict"] == "pass" for r in reports)
    lines.append(f"{passed}/{len(reports)} scenarios passed")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < U64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text}")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _output_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_u64, default=0, help="64-bit seed recorded in the report (default 0)")
    p.add_argument("--jet-order", type=_positive, default=16, help="default jet order N (default 16)")
    p.add_argument("--out", help="write the report here instead of standard output")
    p.add_argument("--format", choices=("json", "text"), default="text", help="report format (default text)")
    p.add_argument("--timings", action="store_true", help="record wall time (reports stop being reproducible)")
    p.add_argument("--jobs", type=_positive, default=1, help="run scenarios in this many processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noncancel", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"noncancel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    run = sub.add_parser("run", help="run a scenario manifest")
    run.add_argument("--manifest", help="manifest path (default: the bundled paper.json)")
    run.add_argument("--scenario", help="run only the scenario with this id")
    _output_options(run)

    rc = sub.add_parser("recheck", help="re-verify the certificates stored in a JSON report")
    rc.add_argument("report")

    c = sub.add_parser("classify", help="decide whether V_{n,p1} and V_{n,p2} are isomorphic")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--p1", required=True)
    c.add_argument("--p2", required=True)
    c.add_argument("--expect", choices=("iso", "not-iso"))

    cy = sub.add_parser("cylinder-iso", help="build V_{n,p} x A^1 = V_{n,1} x A^1")
    cy.add_argument("--n", type=int, default=4)
    cy.add_argument("--p", default="1+x")
    cy.add_argument("--a", help="value of the parameter a in p")
    cy.add_argument("--p2", help="also compose with the isomorphism for p2")

    j = sub.add_parser("analytic-jet", help="check jets of the biholomorphism W_{n,p} -> V_{n,p}")
    j.add_argument("--n", type=int, default=4)
    j.add_argument("--p", default="1+x+x^2")
    j.add_argument("--N", type=int, dest="N", help="jet order (default: --jet-order)")
    j.add_argument("--corrupt", action="store_true", help="drop the y-correction; expect a nonzero residual")

    e = sub.add_parser("equ-crit", help="normalize random automorphisms of the center")
    e.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
    e.add_argument("--samples", type=_positive, default=20)
    e.add_argument("--mode", choices=("equal", "separate"), default="equal")

    st = sub.add_parser("stable-equiv", help="V_{n,p} x A^1 and W_{n,p} x A^1 in five variables")
    st.add_argument("--n", type=int, default=3)
    st.add_argument("--p", default="1+x")

    ce = sub.add_parser("center-iso", help="embedded isomorphism of the centers Z_{n,p} and Z_{n,1}")
    ce.add_argument("--n", type=int, default=2)
    ce.add_argument("--p", default="4+x")

    s2 = sub.add_parser("section2", help="the Danielewski-type threefolds X and Y")
    s2.add_argument("--check", help="run only this check group")
    s2.add_argument("--alpha", default="-5/3")
    s2.add_argument("--beta", default="-1/3")
    s2.add_argument("--expect", choices=("pass", "fail"), default="pass")

    for p in (c, cy, j, e, st, ce, s2):
        _output_options(p)
    return parser


def _single_scenario(args: argparse.Namespace) -> dict:
    kind = args.command
    if kind == "classify":
        params = {"n": args.n, "p1": args.p1, "p2": args.p2}
        if args.expect:
            params["expect"] = args.expect
    elif kind == "cylinder-iso":
        params = {"n": args.n, "p": args.p}
        if args.a is not None:
            params["a"] = args.a
        if args.p2:
            params["p2"] = args.p2
    elif kind == "analytic-jet":
        params = {"n": args.n, "p": args.p, "N": args.N if args.N is not None else args.jet_order,
                  "corrupt": args.corrupt}
    elif kind == "equ-crit":
        params = {"n": args.n, "samples": args.samples, "mode": args.mode, "seed": args.seed}
    elif kind in ("stable-equiv", "center-iso"):
        params = {"n": args.n, "p": args.p}
    else:
        params = {"alpha": args.alpha, "beta": args.beta, "expect": args.expect}
        if args.check:
            params["check"] = args.check
    assert kind in KINDS
    return {"id": kind, "kind": kind, "params": params}


def _emit(reports: list[dict], args: argparse.Namespace) -> None:
    if args.format == "json":
        text = dumps(report_document(reports, args.seed))
    else:
        text = render_text(reports)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        if args.format == "json":
            sys.stdout.write(render_text(reports))
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # bare flags such as ``--manifest m.json`` mean ``run``
    if argv and argv[0].startswith("--") and argv[0] not in ("--help", "--version"):
        argv.insert(0, "run")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "recheck":
            ok, problems = recheck_report(args.report)
            for line in problems:
                print(f"FAIL {line}")
            print("recheck passed" if ok else f"recheck failed: {len(problems)} problem(s)")
            return EXIT_OK if ok else EXIT_FAIL
        opts = RunOptions(args.seed, args.jet_order, args.timings)
        if args.command == "run":
            reports = run_manifest(args.manifest or bundled_manifest(), args.scenario, args.seed,
                                   args.jet_order, args.jobs, args.timings)
        else:
            reports = run_scenarios([_single_scenario(args)], opts)
        _emit(reports, args)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if all(r["verdict"] == "pass" for r in reports) else EXIT_FAIL

"""Command-line interface: ``orient-rr <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails or an Euler
characteristic disagrees with its oracle, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import contextlib
import inspect
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .errors import OrientRRError
from .orientation import (
    PRESETS,
    available_orientations,
    comparison,
    orientation_from_json,
    orientation_to_json,
    preset_orientation,
    register_orientation,
    solve_todd_series,
)
from .projective import (
    RingShape,
    bundle_from_json,
    element_from_json,
    element_to_json,
    euler_class,
    format_element,
    multiplier_class,
    todd_class,
)
from .pushforward import ProjectiveMap, chi_hrr, chi_oracle, integrate, push
from .series import default_order, format_rat, format_series, series_to_json
from .suites import SUITES, verify_suite

REGISTRY_ENV_VAR = "ORIENT_RR_REGISTRY"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def registry_path() -> Path:
    raw = os.environ.get(REGISTRY_ENV_VAR)
    if raw:
        return Path(raw)
    return Path.home() / ".orient_rr" / "orientations.json"


def _read_registry(path: Path) -> list[dict]:
    if not path.exists():
        return []
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise UsageError(f"orientation registry {path} is not a JSON list")
    return data


def load_registry() -> None:
    for entry in _read_registry(registry_path()):
        register_orientation(orientation_from_json(entry))


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _read_json_arg(value: str):
    """A JSON document given inline, as a file path, or ``-`` for stdin."""
    text = value.strip()
    if text.startswith(("{", "[")):
        return json.loads(text)
    if value == "-":
        return json.load(sys.stdin)
    with open(value, encoding="utf-8") as fh:
        return json.load(fh)


def _parse_caps(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "pt"):
        return ()
    return tuple(int(x) for x in text.split(","))


def _order(args) -> int:
    return args.order if args.order is not None else default_order()


# -- subcommands -----------------------------------------------------------


def cmd_todd(args, out) -> int:
    pair = comparison(args.source, args.target, _order(args))
    s = {"todd": pair.todd, "phi": pair.phi, "multiplier": pair.multiplier}[args.series]
    if args.format == "json":
        print(_dump(series_to_json(s)), file=out)
    else:
        print(format_series(s), file=out)
    return EXIT_OK


def cmd_solve_todd(args, out) -> int:
    if args.order is not None and args.order < 1:
        raise UsageError("--order must be at least 1")
    s = solve_todd_series(_order(args))
    print(_dump(series_to_json(s)) if args.format == "json" else format_series(s), file=out)
    return EXIT_OK


def cmd_chi(args, out) -> int:
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    result: dict = {}
    status = EXIT_OK
    if args.method in ("hrr", "both"):
        try:
            result["hrr"] = str(chi_hrr(args.n, args.d))
        except OrientRRError as exc:  # NonIntegerResult
            result["hrr"] = None
            result["error"] = str(exc)
            status = EXIT_FAIL
    if args.method in ("oracle", "both"):
        result["oracle"] = str(chi_oracle(args.n, args.d))
    if args.method == "both":
        result["match"] = result.get("hrr") is not None and result["hrr"] == result["oracle"]
        if not result["match"]:
            status = EXIT_FAIL
    if args.format == "json":
        print(_dump(result), file=out)
    else:
        for k, v in result.items():
            print(f"{k}: {json.dumps(v) if isinstance(v, bool) else v}", file=out)
    return status


def cmd_integrate(args, out) -> int:
    a = element_from_json(_read_json_arg(args.cls))
    A = preset_orientation(args.orientation)
    if args.bundle:
        V = bundle_from_json(_read_json_arg(args.bundle))
        a = a * euler_class(A, V)
    value = integrate(A, a.shape, a)
    print(_dump(format_rat(value)) if args.format == "json" else format_rat(value), file=out)
    return EXIT_OK


def cmd_push(args, out) -> int:
    a = element_from_json(_read_json_arg(args.cls))
    A = preset_orientation(args.orientation)
    if args.map == "point":
        f = ProjectiveMap.to_point(a.shape)
    elif args.map == "inclusion":
        if args.target is None:
            raise UsageError("inclusion needs --target")
        f = ProjectiveMap.inclusion(a.shape, RingShape(_parse_caps(args.target)))
    else:
        if args.drop is None:
            raise UsageError("projection needs --drop")
        f = ProjectiveMap.projection(a.shape, args.drop)
    result = push(A, f, a)
    if args.format == "json":
        body = format_rat(result) if f.kind == "point" else element_to_json(result)
        print(_dump({"map": f.describe(), "orientation": A.name, "result": body}), file=out)
    else:
        print(format_rat(result) if f.kind == "point" else format_element(result), file=out)
    return EXIT_OK


def cmd_char_class(args, out) -> int:
    V = bundle_from_json(_read_json_arg(args.bundle))
    if args.kind == "euler":
        c = euler_class(args.source, V)
    else:
        if args.target is None:
            raise UsageError(f"{args.kind} class needs --to")
        fn = todd_class if args.kind == "todd" else multiplier_class
        c = fn(args.source, args.target, V)
    print(_dump(element_to_json(c)) if args.format == "json" else format_element(c), file=out)
    return EXIT_OK


def cmd_orientation(args, out) -> int:
    if args.action == "list":
        names = available_orientations()
        print(_dump(names) if args.format == "json" else "\n".join(names), file=out)
        return EXIT_OK
    if args.action == "show":
        if not args.arg:
            raise UsageError("orientation show needs a NAME")
        o = preset_orientation(args.arg)
        if args.format == "json":
            print(_dump(orientation_to_json(o, _order(args))), file=out)
        else:
            print(f"{o.name}: s(t) = {format_series(o.series(_order(args)), 't')}", file=out)
        return EXIT_OK
    if not args.arg:
        raise UsageError("orientation register needs a FILE")
    data = _read_json_arg(args.arg)
    o = orientation_from_json(data)
    if o.name in PRESETS:
        raise UsageError(f"{o.name!r} is a preset name")
    path = registry_path()
    entries = [e for e in _read_registry(path) if e.get("name") != o.name]
    entries.append(orientation_to_json(o, len(data["coeffs"]) + 1))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(entries, indent=2) + "\n", encoding="utf-8")
    register_orientation(o)
    print(_dump({"registered": o.name, "registry": str(path)}) if args.format == "json"
          else f"registered {o.name} in {path}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    params = {}
    for key in ("max_n", "max_factor", "classes", "cases", "bundles", "pairs", "order"):
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    if args.orientations:
        params["orientations"] = tuple(args.orientations.split(","))
        for name in params["orientations"]:
            preset_orientation(name)
    accepted = inspect.signature(SUITES[args.suite]).parameters
    unknown = sorted(k for k in params if k not in accepted)
    if unknown:
        flags = ", ".join("--" + k.replace("_", "-") for k in unknown)
        raise UsageError(f"suite {args.suite!r} does not take {flags}")
    report = verify_suite(args.suite, seed=args.seed, **params)
    if args.format == "json":
        if args.summary:
            print(_dump({
                "suite": report.suite,
                "seed": report.seed,
                "case_count": report.case_count,
                "failed": [c.index for c in report.failures()],
                "verdict": report.verdict,
            }), file=out)
        else:
            print(report.dumps(), file=out)
    else:
        bad = report.failures()
        print(f"suite {report.suite} (seed {report.seed}): {report.case_count} cases, "
              f"{report.case_count - len(bad)} passed, verdict {report.verdict}", file=out)
        for c in bad:
            print(f"  FAIL #{c.index}: {_dump(c.input)}", file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "human"), default="json",
                        help="output mode (default: json)")

    p = argparse.ArgumentParser(
        prog="orient-rr",
        description="Exact Todd/multiplier/Euler classes and pushforwards for complex orientations.",
    )
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("todd", parents=[common], help="Todd series between two orientations")
    s.add_argument("--from", dest="source", required=True, metavar="A")
    s.add_argument("--to", dest="target", required=True, metavar="B")
    s.add_argument("--order", type=int, help="number of coefficients (default: $ORIENT_RR_ORDER or 32)")
    s.add_argument("--series", choices=("todd", "phi", "multiplier"), default="todd")
    s.set_defaults(func=cmd_todd)

    s = sub.add_parser("solve-todd", parents=[common], help="solve [u^n] f^(n+1) = 1 for f")
    s.add_argument("--order", type=int)
    s.set_defaults(func=cmd_solve_todd)

    s = sub.add_parser("chi", parents=[common], help="Euler characteristic of O(d) on P^n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--method", choices=("hrr", "oracle", "both"), default="both")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("integrate", parents=[common], help="integrate a class over its product of P^n")
    s.add_argument("--orientation", default="additive")
    s.add_argument("--class", dest="cls", required=True, metavar="JSON",
                   help="class JSON: inline, a file path, or - for stdin")
    s.add_argument("--bundle", metavar="JSON", help="multiply by the Euler class of this bundle first")
    s.set_defaults(func=cmd_integrate)

    s = sub.add_parser("push", parents=[common], help="pushforward along a point/inclusion/projection map")
    s.add_argument("--orientation", default="additive")
    s.add_argument("--map", choices=("point", "inclusion", "projection"), required=True)
    s.add_argument("--target", metavar="CAPS", help="target caps for inclusions, e.g. 3 or 2,2")
    s.add_argument("--drop", type=int, help="factor index dropped by a projection")
    s.add_argument("--class", dest="cls", required=True, metavar="JSON")
    s.set_defaults(func=cmd_push)

    s = sub.add_parser("char-class", parents=[common], help="Euler, Todd or multiplier class of a split bundle")
    s.add_argument("--kind", choices=("euler", "todd", "multiplier"), required=True)
    s.add_argument("--from", dest="source", required=True, metavar="A")
    s.add_argument("--to", dest="target", metavar="B")
    s.add_argument("--bundle", required=True, metavar="JSON")
    s.set_defaults(func=cmd_char_class)

    s = sub.add_parser("orientation", parents=[common], help="list, show or register orientations")
    s.add_argument("action", choices=("list", "show", "register"))
    s.add_argument("arg", nargs="?", metavar="NAME|FILE")
    s.add_argument("--order", type=int)
    s.set_defaults(func=cmd_orientation)

    s = sub.add_parser("verify", parents=[common], help="run a seeded verification suite")
    s.add_argument("--suite", required=True, choices=tuple(SUITES))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--orientations", metavar="A,B,...")
    s.add_argument("--max-n", type=int)
    s.add_argument("--max-factor", type=int)
    s.add_argument("--classes", type=int)
    s.add_argument("--cases", type=int)
    s.add_argument("--bundles", type=int)
    s.add_argument("--pairs", type=int)
    s.add_argument("--order", type=int)
    s.add_argument("--summary", action="store_true", help="omit per-case inputs from JSON output")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        load_registry()
        return args.func(args, out)
    except (UsageError, OrientRRError, ValueError, OSError) as exc:
        parser.print_usage(err)
        print(f"orient-rr: error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())

"""Command line front end.

Every subcommand reads one JSON artifact, dispatches to the library, and
writes a report.  Reports are canonical JSON by default (byte-reproducible
across runs; timings are only included on request), a tab-delimited text
summary with --format text, or an SVG of the principal rank-2 fan with
--format svg.  With --figures DIR the report path also renders each rank-2
fan artifact to a PNG in that directory.

Exit codes: 0 verified/holds, 1 failed (counterexample), 2 inconclusive,
3 invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .blowup import blow_up, subdivision_to_ideal
from .errors import InvalidInput, LogflattenError, UnsupportedRank
from .flatten import FlattenOptions, flatten, verify_certificate
from .homs import INTEGRAL, NOT_INTEGRAL, is_exact, is_integral, is_local
from .monoids import hilbert_basis, saturate
from .polyhedra import Fan, resolve_to_smooth
from .serialize import (
    canonical_json,
    digest,
    loads,
    parse_certificate,
    parse_cone,
    parse_fan,
    parse_hom,
    parse_ideal,
    parse_monoid,
    to_jsonable,
)
from .svg import render_fan_svg

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INCONCLUSIVE = 2
EXIT_INVALID = 3


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _report(subcommand: str, raw_input, verdicts: dict, artifacts: dict, timings=None) -> dict:
    out = {
        "tool": "logflatten",
        "version": __version__,
        "subcommand": subcommand,
        "input_digest": digest(raw_input),
        "verdicts": verdicts,
        "artifacts": {k: to_jsonable(v) if not isinstance(v, (dict, list)) else v for k, v in artifacts.items()},
    }
    if timings is not None:
        out["timings"] = timings
    return out


def _text_report(report: dict) -> str:
    lines = [
        f"tool\tlogflatten\t{report['version']}",
        f"subcommand\t{report['subcommand']}",
        f"input_digest\t{report['input_digest']}",
    ]
    for key in sorted(report["verdicts"]):
        lines.append(f"verdict\t{key}\t{report['verdicts'][key]}")
    for name in sorted(report["artifacts"]):
        art = report["artifacts"][name]
        if isinstance(art, dict) and "generators" in art:
            for g in art["generators"]:
                lines.append(f"{name}.generator\t" + ",".join(str(x) for x in g))
        elif isinstance(art, dict) and "rays" in art:
            for r in art["rays"]:
                lines.append(f"{name}.ray\t" + ",".join(str(x) for x in r))
        if isinstance(art, dict) and "charts" in art:
            for i, c in enumerate(art["charts"]):
                status = c["verdict"]["status"] if "verdict" in c else "-"
                lines.append(f"{name}.chart\t{i}\t{status}")
    return "\n".join(lines) + "\n"


def _principal_fans(artifacts: dict) -> list[tuple[str, Fan]]:
    out = []
    for name, art in artifacts.items():
        if isinstance(art, Fan):
            out.append((name, art))
        fan = getattr(art, "fan", None)
        if isinstance(fan, Fan):
            out.append((f"{name}.fan", fan))
        fan = getattr(art, "base_fan", None)
        if isinstance(fan, Fan):
            out.append((f"{name}.base_fan", fan))
        fan = getattr(art, "source_fan", None)
        if isinstance(fan, Fan):
            out.append((f"{name}.source_fan", fan))
    return out


def _emit(args, subcommand, raw_input, verdicts, artifacts, exit_code, t0) -> int:
    timings = None
    if args.timings:
        timings = {"total_seconds": round(time.perf_counter() - t0, 6)}
    fans = _principal_fans(artifacts)
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        from .figures import render_fan_png

        for name, fan in fans:
            if fan.rank == 2:
                safe = name.replace(".", "_")
                render_fan_png(fan, os.path.join(args.figures, f"{subcommand}_{safe}.png"))
    report = _report(subcommand, raw_input, verdicts, artifacts, timings)
    if args.format == "json":
        _write_output(canonical_json(report), args.output)
    elif args.format == "text":
        _write_output(_text_report(report), args.output)
    elif args.format == "svg":
        rank2 = [f for _, f in fans if f.rank == 2]
        if not rank2:
            raise UnsupportedRank("no rank-2 fan to render for this subcommand")
        _write_output(render_fan_svg(rank2[0]), args.output)
    return exit_code


def _cmd_saturate(args) -> int:
    t0 = time.perf_counter()
    raw = loads(_read_input(args.input))
    p = parse_monoid(raw)
    sat = saturate(p)
    return _emit(args, "saturate", raw, {"saturated": True}, {"monoid": sat}, EXIT_OK, t0)


def _cmd_hilbert_basis(args) -> int:
    t0 = time.perf_counter()
    raw = loads(_read_input(args.input))
    c = parse_cone(raw)
    hb = hilbert_basis(c)
    return _emit(args, "hilbert-basis", raw, {"generators": len(hb.generators)}, {"monoid": hb}, EXIT_OK, t0)


def _cmd_dual_cone(args) -> int:
    t0 = time.perf_counter()
    raw = loads(_read_input(args.input))
    from .polyhedra import dual_cone

    c = parse_cone(raw)
    return _emit(args, "dual-cone", raw, {}, {"cone": dual_cone(c)}, EXIT_OK, t0)


def _cmd_check(args) -> int:
    t0 = time.perf_counter()
    raw = loads(_read_input(args.input))
    h = parse_hom(raw)
    if args.local:
        ok = is_local(h)
        code = EXIT_OK if ok else EXIT_FAILED
        return _emit(args, "check", raw, {"local": ok}, {}, code, t0)
    if args.exact:
        ok = is_exact(h)
        code = EXIT_OK if ok else EXIT_FAILED
        return _emit(args, "check", raw, {"exact": ok}, {}, code, t0)
    verdict = is_integral(h, args.oracle_bound, args.conservative)
    if verdict.status == INTEGRAL:
        code = EXIT_OK
    elif verdict.status == NOT_INTEGRAL:
        code = EXIT_FAILED
    else:
        code = EXIT_INCONCLUSIVE
    return _emit(args, "check", raw, {"integral": verdict.status}, {"verdict": verdict}, code, t0)


def _cmd_blowup(args) -> int:
    t0 = time.perf_counter()
    raw = loads(_read_input(args.input))
    k = parse_ideal(raw)
    model = blow_up(k.parent, k, saturated=not args.no_saturate)
    verdicts = {"charts": len(model.charts), "invertible": True}
    return _emit(args, "blowup", raw, verdicts, {"blowup": model}, EXIT_OK, t0)


def _cmd_subdivide(args) -> int:
    t0 = time.perf_counter()
    raw = loads(_read_input(args.input))
    if not isinstance(raw, dict) or "monoid" not in raw or "fan" not in raw:
        raise InvalidInput("$: expected an object with keys 'monoid' and 'fan'")
    p = parse_monoid(raw["monoid"], "$.monoid")
    fan = parse_fan(raw["fan"], "$.fan")
    k = subdivision_to_ideal(p, fan, args.height_bound)
    return _emit(args, "subdivide", raw, {"generators": len(k.generators)}, {"ideal": k}, EXIT_OK, t0)


def _cmd_resolve_fan(args) -> int:
    t0 = time.perf_counter()
    raw = loads(_read_input(args.input))
    fan = parse_fan(raw)
    resolved, centers = resolve_to_smooth(fan)
    artifacts = {"fan": resolved, "centers": [list(c) for c in centers]}
    return _emit(args, "resolve-fan", raw, {"subdivisions": len(centers)}, artifacts, EXIT_OK, t0)


def _cmd_flatten(args) -> int:
    t0 = time.perf_counter()
    raw = loads(_read_input(args.input))
    h = parse_hom(raw)
    options = FlattenOptions(
        oracle_bound=args.oracle_bound,
        height_bound=args.height_bound,
        max_iterations=args.max_iterations,
        fast_exit=not args.no_fast_exit,
        conservative=args.conservative,
    )
    cert = flatten(h, options)
    code = {"Verified": EXIT_OK, "Failed": EXIT_FAILED, "Inconclusive": EXIT_INCONCLUSIVE}[cert.overall]
    verdicts = {
        "overall": cert.overall,
        "equidimensional": cert.equidimensional,
        "charts": len(cert.charts),
        "fast_exit": cert.fast_exit_used,
    }
    return _emit(args, "flatten", raw, verdicts, {"certificate": cert}, code, t0)


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    raw = loads(_read_input(args.input))
    tree = raw
    if isinstance(tree, dict) and "artifacts" in tree and "certificate" in tree.get("artifacts", {}):
        tree = tree["artifacts"]["certificate"]
    cert = parse_certificate(tree)
    ok = verify_certificate(cert)
    code = EXIT_OK if ok else EXIT_FAILED
    return _emit(args, "verify", raw, {"verified": ok}, {}, code, t0)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", "-i", default=None, help="input JSON path (default: stdin)")
    p.add_argument("--output", "-o", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "text", "svg"), default="json")
    p.add_argument("--figures", default=None, metavar="DIR",
                   help="also render rank-2 fan artifacts as PNG files into DIR")
    p.add_argument("--timings", action="store_true", help="include timings in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logflatten",
        description="Exact monoid/fan toolkit: saturation, Hilbert bases, "
        "blow-up charts, and flattening certificates.",
    )
    parser.add_argument("--version", action="version", version=f"logflatten {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("saturate", help="saturate a monoid")
    _add_common(p)
    p.set_defaults(func=_cmd_saturate)

    p = sub.add_parser("hilbert-basis", help="Hilbert basis of a pointed cone")
    _add_common(p)
    p.set_defaults(func=_cmd_hilbert_basis)

    p = sub.add_parser("dual-cone", help="dual of a cone")
    _add_common(p)
    p.set_defaults(func=_cmd_dual_cone)

    p = sub.add_parser("check", help="decide a property of a homomorphism")
    _add_common(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--integral", action="store_true", help="integrality (default)")
    group.add_argument("--local", action="store_true")
    group.add_argument("--exact", action="store_true")
    p.add_argument("--oracle-bound", type=int, default=5)
    p.add_argument("--conservative", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("blowup", help="blow up a monoid along an ideal")
    _add_common(p)
    p.add_argument("--no-saturate", action="store_true", help="skip chart saturation")
    p.set_defaults(func=_cmd_blowup)

    p = sub.add_parser("subdivide", help="realize a fan subdivision as an ideal")
    _add_common(p)
    p.add_argument("--height-bound", type=int, default=64)
    p.set_defaults(func=_cmd_subdivide)

    p = sub.add_parser("resolve-fan", help="refine a fan until every cone is smooth")
    _add_common(p)
    p.set_defaults(func=_cmd_resolve_fan)

    p = sub.add_parser("flatten", help="run the flattening pipeline on a hom")
    _add_common(p)
    p.add_argument("--oracle-bound", type=int, default=5)
    p.add_argument("--height-bound", type=int, default=64)
    p.add_argument("--max-iterations", type=int, default=8)
    p.add_argument("--no-fast-exit", action="store_true")
    p.add_argument("--conservative", action="store_true")
    p.set_defaults(func=_cmd_flatten)

    p = sub.add_parser("verify", help="re-check a flattening certificate")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except LogflattenError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""Canonical JSON for every artifact type.

Canonical form: sorted keys, no insignificant whitespace, and integers
beyond 2**53 in magnitude rendered as decimal strings (parsers accept both
forms, so parse-then-print is the identity on artifacts).  Certificates are
digested over this canonical form, which is why everything here must stay
deterministic.
"""

from __future__ import annotations

import hashlib
import json

from .blowup import BlowupModel, Chart
from .errors import InvalidInput
from .flatten import (
    ChartVerdict,
    FlattenOptions,
    FlatteningCertificate,
    IntegralityVerdict,
)
from .homs import MonoidHom
from .ideals import MonoidIdeal, SupportFunction
from .monoids import FineMonoid
from .polyhedra import Cone, Fan, FanMap

_BIG = 2 ** 53


def _encode(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > _BIG else value
    if isinstance(value, float):
        raise TypeError("floating point values are not allowed in artifacts")
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    raise TypeError(f"cannot canonicalize {type(value)!r}")


def canonical_json(tree) -> str:
    """Canonical serialization of a JSON-able tree (or an artifact)."""
    if not isinstance(tree, (dict, list, tuple, int, str, bool, type(None))):
        tree = to_jsonable(tree)
    return json.dumps(_encode(tree), sort_keys=True, separators=(",", ":"))


def digest(tree) -> str:
    return hashlib.sha256(canonical_json(tree).encode()).hexdigest()


# -- emitters -----------------------------------------------------------------


def to_jsonable(x):
    if isinstance(x, FineMonoid):
        return {"ambient_rank": x.rank, "generators": [list(g) for g in x.generators]}
    if isinstance(x, Cone):
        return {"rank": x.rank, "rays": [list(r) for r in x.rays]}
    if isinstance(x, Fan):
        return {
            "rank": x.rank,
            "rays": [list(r) for r in x.rays],
            "cones": [list(c) for c in x.cones],
        }
    if isinstance(x, MonoidHom):
        return {
            "source": to_jsonable(x.source),
            "target": to_jsonable(x.target),
            "matrix": [list(row) for row in x.matrix],
        }
    if isinstance(x, MonoidIdeal):
        return {
            "monoid": to_jsonable(x.parent),
            "generators": [list(g) for g in x.generators],
        }
    if isinstance(x, SupportFunction):
        return {
            "domain": to_jsonable(x.domain),
            "fan": to_jsonable(x.fan),
            "pieces": {str(idx): list(m) for idx, m in x.pieces},
        }
    if isinstance(x, IntegralityVerdict):
        return {
            "status": x.status,
            "counterexample": None
            if x.counterexample is None
            else [list(v) for v in x.counterexample],
            "witness_bound": x.witness_bound,
        }
    if isinstance(x, Chart):
        return {
            "pivot": list(x.pivot),
            "generators": [list(g) for g in x.monoid.generators],
            "inclusion_matrix": [list(row) for row in x.inclusion.matrix],
        }
    if isinstance(x, BlowupModel):
        return {
            "base": to_jsonable(x.base),
            "ideal": to_jsonable(x.ideal),
            "fan": to_jsonable(x.fan),
            "charts": [to_jsonable(c) for c in x.charts],
        }
    if isinstance(x, FlattenOptions):
        return {
            "oracle_bound": x.oracle_bound,
            "height_bound": x.height_bound,
            "max_iterations": x.max_iterations,
            "fast_exit": x.fast_exit,
            "conservative": x.conservative,
        }
    if isinstance(x, ChartVerdict):
        return {
            "base_chart": to_jsonable(x.base_chart),
            "source_chart": to_jsonable(x.source_chart),
            "matrix": [list(row) for row in x.chart_hom.matrix],
            "verdict": to_jsonable(x.verdict),
            "base_cone": list(x.base_cone),
            "source_cone": list(x.source_cone),
        }
    if isinstance(x, FlatteningCertificate):
        return {
            "input": to_jsonable(x.input),
            "phi": None if x.phi is None else to_jsonable(x.phi),
            "ideal": to_jsonable(x.ideal),
            "base_fan": to_jsonable(x.base_fan),
            "source_fan": to_jsonable(x.source_fan),
            "fan_map_matrix": [list(row) for row in x.fan_map.matrix],
            "equidimensional": x.equidimensional,
            "charts": [to_jsonable(c) for c in x.charts],
            "overall": x.overall,
            "options": to_jsonable(x.options),
            "fast_exit_used": x.fast_exit_used,
            "subdivision_rounds": x.subdivision_rounds,
        }
    raise TypeError(f"no JSON form for {type(x)!r}")


# -- parsers ------------------------------------------------------------------


def _fail(path: str, msg: str):
    raise InvalidInput(f"{path}: {msg}")


def _as_int(x, path: str) -> int:
    if isinstance(x, bool):
        _fail(path, "expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            _fail(path, f"expected an integer, got {x!r}")
    _fail(path, f"expected an integer, got {type(x).__name__}")


def _as_list(x, path: str) -> list:
    if not isinstance(x, list):
        _fail(path, f"expected a list, got {type(x).__name__}")
    return x


def _as_dict(x, path: str) -> dict:
    if not isinstance(x, dict):
        _fail(path, f"expected an object, got {type(x).__name__}")
    return x


def _get(d: dict, key: str, path: str):
    if key not in d:
        _fail(path, f"missing key {key!r}")
    return d[key]


def _vector(x, path: str):
    return tuple(_as_int(v, f"{path}[{i}]") for i, v in enumerate(_as_list(x, path)))


def _matrix(x, path: str):
    return tuple(_vector(row, f"{path}[{i}]") for i, row in enumerate(_as_list(x, path)))


def parse_monoid(x, path: str = "$") -> FineMonoid:
    d = _as_dict(x, path)
    rank = _as_int(_get(d, "ambient_rank", path), f"{path}.ambient_rank")
    gens = _matrix(_get(d, "generators", path), f"{path}.generators")
    for i, g in enumerate(gens):
        if len(g) != rank:
            _fail(f"{path}.generators[{i}]", f"expected length {rank}")
    return FineMonoid(rank, gens)


def parse_cone(x, path: str = "$") -> Cone:
    d = _as_dict(x, path)
    rank = _as_int(_get(d, "rank", path), f"{path}.rank")
    rays = _matrix(_get(d, "rays", path), f"{path}.rays")
    for i, r in enumerate(rays):
        if len(r) != rank:
            _fail(f"{path}.rays[{i}]", f"expected length {rank}")
        if all(v == 0 for v in r):
            _fail(f"{path}.rays[{i}]", "zero ray")
    return Cone(rank, rays)


def parse_fan(x, path: str = "$") -> Fan:
    d = _as_dict(x, path)
    rank = _as_int(_get(d, "rank", path), f"{path}.rank")
    rays = _matrix(_get(d, "rays", path), f"{path}.rays")
    cones = tuple(
        tuple(_as_int(i, f"{path}.cones[{a}][{b}]") for b, i in enumerate(_as_list(c, f"{path}.cones[{a}]")))
        for a, c in enumerate(_as_list(_get(d, "cones", path), f"{path}.cones"))
    )
    for a, c in enumerate(cones):
        for i in c:
            if not (0 <= i < len(rays)):
                _fail(f"{path}.cones[{a}]", f"ray index {i} out of range")
    try:
        return Fan(rank, rays, cones)
    except AssertionError as exc:
        _fail(path, str(exc))


def parse_hom(x, path: str = "$") -> MonoidHom:
    d = _as_dict(x, path)
    source = parse_monoid(_get(d, "source", path), f"{path}.source")
    target = parse_monoid(_get(d, "target", path), f"{path}.target")
    matrix = _matrix(_get(d, "matrix", path), f"{path}.matrix")
    try:
        return MonoidHom(source, target, matrix)
    except Exception as exc:
        _fail(f"{path}.matrix", str(exc))


def parse_ideal(x, path: str = "$") -> MonoidIdeal:
    d = _as_dict(x, path)
    parent = parse_monoid(_get(d, "monoid", path), f"{path}.monoid")
    gens = _matrix(_get(d, "generators", path), f"{path}.generators")
    try:
        return MonoidIdeal(parent, gens)
    except Exception as exc:
        _fail(f"{path}.generators", str(exc))


def parse_support_function(x, path: str = "$") -> SupportFunction:
    d = _as_dict(x, path)
    domain = parse_cone(_get(d, "domain", path), f"{path}.domain")
    fan = parse_fan(_get(d, "fan", path), f"{path}.fan")
    raw = _as_dict(_get(d, "pieces", path), f"{path}.pieces")
    pieces = tuple(
        sorted(
            (_as_int(k, f"{path}.pieces key"), _vector(v, f"{path}.pieces[{k}]"))
            for k, v in raw.items()
        )
    )
    return SupportFunction(domain, fan, pieces)


def parse_verdict(x, path: str = "$") -> IntegralityVerdict:
    d = _as_dict(x, path)
    status = _get(d, "status", path)
    if status not in ("Integral", "NotIntegral", "InconclusiveAtBound"):
        _fail(f"{path}.status", f"unknown status {status!r}")
    raw = _get(d, "counterexample", path)
    cex = None if raw is None else tuple(_vector(v, f"{path}.counterexample[{i}]") for i, v in enumerate(_as_list(raw, f"{path}.counterexample")))
    if cex is not None and len(cex) != 4:
        _fail(f"{path}.counterexample", "expected four vectors")
    bound = _as_int(_get(d, "witness_bound", path), f"{path}.witness_bound")
    return IntegralityVerdict(status, cex, bound)


def parse_options(x, path: str = "$") -> FlattenOptions:
    d = _as_dict(x, path)
    return FlattenOptions(
        oracle_bound=_as_int(_get(d, "oracle_bound", path), f"{path}.oracle_bound"),
        height_bound=_as_int(_get(d, "height_bound", path), f"{path}.height_bound"),
        max_iterations=_as_int(_get(d, "max_iterations", path), f"{path}.max_iterations"),
        fast_exit=bool(_get(d, "fast_exit", path)),
        conservative=bool(_get(d, "conservative", path)),
    )


def parse_certificate(x, path: str = "$") -> FlatteningCertificate:
    d = _as_dict(x, path)
    input_hom = parse_hom(_get(d, "input", path), f"{path}.input")
    phi_raw = _get(d, "phi", path)
    phi = None if phi_raw is None else parse_support_function(phi_raw, f"{path}.phi")
    ideal = parse_ideal(_get(d, "ideal", path), f"{path}.ideal")
    base_fan = parse_fan(_get(d, "base_fan", path), f"{path}.base_fan")
    source_fan = parse_fan(_get(d, "source_fan", path), f"{path}.source_fan")
    matrix = _matrix(_get(d, "fan_map_matrix", path), f"{path}.fan_map_matrix")
    charts = []
    for i, raw in enumerate(_as_list(_get(d, "charts", path), f"{path}.charts")):
        cd = _as_dict(raw, f"{path}.charts[{i}]")
        base_chart = parse_monoid(_get(cd, "base_chart", path), f"{path}.charts[{i}].base_chart")
        source_chart = parse_monoid(
            _get(cd, "source_chart", path), f"{path}.charts[{i}].source_chart"
        )
        cmatrix = _matrix(_get(cd, "matrix", path), f"{path}.charts[{i}].matrix")
        verdict = parse_verdict(_get(cd, "verdict", path), f"{path}.charts[{i}].verdict")
        base_cone = _vector(_get(cd, "base_cone", path), f"{path}.charts[{i}].base_cone")
        source_cone = _vector(_get(cd, "source_cone", path), f"{path}.charts[{i}].source_cone")
        try:
            chart_hom = MonoidHom(base_chart, source_chart, cmatrix)
        except Exception as exc:
            _fail(f"{path}.charts[{i}]", str(exc))
        charts.append(
            ChartVerdict(
                base_chart=base_chart,
                source_chart=source_chart,
                chart_hom=chart_hom,
                verdict=verdict,
                base_cone=base_cone,
                source_cone=source_cone,
            )
        )
    overall = _get(d, "overall", path)
    if overall not in ("Verified", "Failed", "Inconclusive"):
        _fail(f"{path}.overall", f"unknown overall status {overall!r}")
    return FlatteningCertificate(
        input=input_hom,
        phi=phi,
        ideal=ideal,
        base_fan=base_fan,
        source_fan=source_fan,
        fan_map=FanMap(matrix, source_fan, base_fan),
        equidimensional=bool(_get(d, "equidimensional", path)),
        charts=tuple(charts),
        overall=overall,
        options=parse_options(_get(d, "options", path), f"{path}.options"),
        fast_exit_used=bool(_get(d, "fast_exit_used", path)),
        subdivision_rounds=_as_int(
            _get(d, "subdivision_rounds", path), f"{path}.subdivision_rounds"
        ),
    )


def loads(text: str):
    """json.loads with position-annotated failure."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc

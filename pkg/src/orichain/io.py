"""Problem files, canonical JSON output and fixture loading."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .chains import Chain, SimplicialComplex, closure, simplex_key, sort_with_sign, vertex_key

VERSION = "orichain/1"


class SchemaError(ValueError):
    pass


@lru_cache(maxsize=1)
def load_schema() -> dict:
    text = resources.files("orichain").joinpath("data/problem.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class Problem:
    kind: str
    name: str = ""
    vertices: tuple | None = None
    complex: SimplicialComplex | None = None
    chain: Chain | None = None
    s0: Chain | None = None
    s1: Chain | None = None
    cover: list = field(default_factory=list)
    expected: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Problem):
            return NotImplemented
        return to_json(self) == to_json(other)


def _chain(terms) -> Chain:
    try:
        return Chain([(tuple(t["simplex"]), t["coeff"]) for t in terms])
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def parse_problem(data) -> Problem:
    """Validate and convert a decoded problem object (or JSON text)."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"malformed JSON: {exc}") from None
    try:
        jsonschema.validate(data, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from None
    prob = Problem(kind=data["kind"], name=data.get("name", ""), expected=dict(data.get("expected", {})))
    if "vertices" in data:
        prob.vertices = tuple(sorted(data["vertices"], key=vertex_key))
    if "complex" in data:
        spec = data["complex"]
        try:
            simplices = [tuple(s) for s in spec["simplices"]]
            sub = [tuple(s) for s in spec["subcomplex"]] if "subcomplex" in spec else None
            # validate the simplices first so a malformed subcomplex is a schema problem
            closure(simplices)
            if sub is not None:
                closure(sub)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
        prob.complex = SimplicialComplex(simplices, sub)
    for key in ("chain", "s0", "s1"):
        if key in data:
            setattr(prob, key, _chain(data[key]))
    if "cover" in data:
        try:
            prob.cover = [SimplicialComplex([tuple(s) for s in piece]) for piece in data["cover"]]
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    if prob.vertices is not None:
        declared = set(prob.vertices)
        missing = sorted(_labels(prob) - declared, key=vertex_key)
        if missing:
            raise SchemaError(f"undeclared vertex labels: {missing}")
    return prob


def _labels(prob: Problem) -> set:
    out = set()
    if prob.complex is not None:
        out.update(prob.complex.vertices)
    for c in (prob.chain, prob.s0, prob.s1):
        if c is not None:
            out.update(v for f in c for v in f)
    for piece in prob.cover:
        out.update(piece.vertices)
    return out


def chain_to_json(c: Chain) -> list:
    return [{"simplex": list(f), "coeff": a} for f, a in c.sorted_items()]


def chain_from_json(terms) -> Chain:
    return _chain(terms)


def _maximal(simplices) -> list:
    cx = SimplicialComplex(simplices) if simplices else None
    return [list(s) for s in cx.maximal_simplices()] if cx else []


def to_json(prob: Problem) -> dict:
    out: dict = {"version": VERSION, "kind": prob.kind}
    if prob.name:
        out["name"] = prob.name
    if prob.vertices is not None:
        out["vertices"] = list(prob.vertices)
    if prob.complex is not None:
        cx = {"simplices": [list(s) for s in prob.complex.maximal_simplices()]}
        if prob.complex.subcomplex is not None:
            cx["subcomplex"] = _maximal(prob.complex.subcomplex)
        out["complex"] = cx
    for key in ("chain", "s0", "s1"):
        c = getattr(prob, key)
        if c is not None:
            out[key] = chain_to_json(c)
    if prob.cover:
        out["cover"] = [[list(s) for s in piece.maximal_simplices()] for piece in prob.cover]
    if prob.expected:
        out["expected"] = prob.expected
    return out


def load_problem(path) -> Problem:
    if str(path) == "-":
        import sys

        return parse_problem(sys.stdin.read())
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text)


# --------------------------------------------------------------------------
# canonical output


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == 0:
        x = 0.0  # no negative zero
    return "%.17g" % x


def canonical_dumps(obj, indent: int = 2) -> str:
    """Sorted keys, plain integers, rationals as "p/q", floats with 17 significant digits."""

    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if o is None or isinstance(o, bool):
            return json.dumps(o)
        if isinstance(o, int):
            return str(o)
        if isinstance(o, Fraction):
            return json.dumps(str(o.numerator) if o.denominator == 1 else f"{o.numerator}/{o.denominator}")
        if isinstance(o, float):
            return _fmt_float(o)
        if hasattr(o, "item") and not isinstance(o, (list, tuple, dict)):
            return enc(o.item(), level)  # numpy scalars
        if isinstance(o, str):
            return json.dumps(o, ensure_ascii=False)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = sorted((str(k), v) for k, v in o.items())
            body = ",\n".join(f"{pad}{json.dumps(k, ensure_ascii=False)}: {enc(v, level + 1)}" for k, v in items)
            return "{\n" + body + "\n" + end + "}"
        if isinstance(o, (list, tuple)) or hasattr(o, "tolist"):
            seq = o.tolist() if hasattr(o, "tolist") else o
            if not seq:
                return "[]"
            if all(not isinstance(v, (dict, list, tuple)) for v in seq):
                return "[" + ", ".join(enc(v, level + 1) for v in seq) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in seq) + "\n" + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(obj, 0) + "\n"


def parse_number(v):
    """Inverse of the number formatting: ints, "p/q" strings and floats."""
    if isinstance(v, bool):
        raise SchemaError("booleans are not numbers")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"not a number: {v!r}") from None
    raise SchemaError(f"not a number: {v!r}")


def homology_table(groups) -> list:
    return [dict(degree=d, **g.as_dict(), group=str(g)) for d, g in enumerate(groups)]


# --------------------------------------------------------------------------
# bundled fixtures


def fixtures_dir() -> Path:
    return Path(str(resources.files("orichain").joinpath("data/fixtures")))


def fixture_paths(directory=None) -> list:
    d = Path(directory) if directory is not None else fixtures_dir()
    return sorted(d.glob("*.json"))


def oriented_sorted(c: Chain) -> list:
    """Oriented chain as sorted ``[simplex, coeff]`` rows, for reports."""
    rows = []
    for f, a in c.items():
        srt, s = sort_with_sign(f)
        if srt is not None:
            rows.append((srt, a * s))
    acc: dict = {}
    for f, a in rows:
        acc[f] = acc.get(f, 0) + a
    return [{"simplex": list(f), "coeff": a} for f, a in sorted(acc.items(), key=lambda t: simplex_key(t[0])) if a]

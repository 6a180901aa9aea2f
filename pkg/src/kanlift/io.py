"""JSON instance files and JSON-safe rendering of results.

Every file is ``{"format_version": 1, "kind": ..., "payload": {...}}`` and
is validated against ``schemas/instance.schema.json`` before decoding.
Rationals are ``"p/q"`` strings; distances may also be ``"inf"``.  Object
keys in kernels and measures are the string forms of carrier elements.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from . import fibration as fib
from .density import Lasso, PredObj, StreamParam
from .errors import InvalidStructure, KanliftError
from .fibration import INF, FibreObject, Tag
from .finset import FinSet, product_set
from .measurable import LMP, FinMeasSpace, SubProb
from .monad import powerset_monad

FORMAT_VERSION = 1
_RATIONAL = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


class SchemaError(KanliftError, ValueError):
    """The file is not a valid instance."""


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise SchemaError(f"invalid rational {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise SchemaError(f"invalid rational {text!r}: zero denominator") from None


def parse_distance(text: str):
    return INF if text == "inf" else parse_rational(text)


def format_rational(v) -> str:
    if v == INF:
        return "inf"
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@lru_cache(maxsize=None)
def instance_schema() -> dict:
    text = resources.files("kanlift").joinpath("schemas/instance.schema.json").read_text()
    return json.loads(text)


def validate(doc) -> None:
    try:
        jsonschema.validate(doc, instance_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(map(str, exc.absolute_path)) or "<root>"
        if exc.validator == "pattern":
            raise SchemaError(f"invalid rational {exc.instance!r} at {where}") from None
        raise SchemaError(f"schema error at {where}: {exc.message}") from None


def load_document(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc.msg})") from None
    validate(doc)
    return doc


# --- decoding ------------------------------------------------------------------

def _carrier(items) -> FinSet:
    keys = [str(x) for x in items]
    if len(set(keys)) != len(keys):
        raise SchemaError("carrier elements must have distinct string forms")
    return FinSet(list(items))


def _lookup(carrier: FinSet) -> dict:
    return {str(x): x for x in carrier}


def _element(table: dict, x):
    try:
        return table[str(x)]
    except KeyError:
        raise SchemaError(f"element {x!r} is not declared in the carrier") from None


def _subset_of(table: dict, items) -> frozenset:
    return frozenset(_element(table, x) for x in items)


def _space(carrier: FinSet, payload) -> FinMeasSpace:
    if "blocks" not in payload:
        return FinMeasSpace.discrete(carrier)
    table = _lookup(carrier)
    return FinMeasSpace(carrier, tuple(_subset_of(table, b) for b in payload["blocks"]))


def _measure(space: FinMeasSpace, obj: dict) -> SubProb:
    table = _lookup(space.carrier)
    return SubProb.from_points(space, {_element(table, k): parse_rational(v)
                                       for k, v in obj.items()})


def decode_base(payload) -> FinSet:
    return _carrier(payload["base"])


def decode_preorder(payload) -> FibreObject:
    if "base" in payload:
        carrier = powerset_monad().T(_carrier(payload["base"]))
        table = {_subset_key(u): u for u in carrier}
        conv = lambda x: _element(table, _subset_key_raw(x))  # noqa: E731
    else:
        carrier = _carrier(payload["carrier"])
        table = _lookup(carrier)
        conv = lambda x: _element(table, x)  # noqa: E731
    return fib.preorder(carrier, [(conv(a), conv(b)) for a, b in payload["pairs"]])


def _subset_key(u) -> str:
    return json.dumps(sorted(str(x) for x in u))


def _subset_key_raw(items) -> str:
    if not isinstance(items, list):
        raise SchemaError(f"{items!r} should be a list (a subset of the base)")
    return json.dumps(sorted(str(x) for x in items))


def decode_topology(payload) -> FibreObject:
    if "base" in payload:
        carrier = powerset_monad().T(_carrier(payload["base"]))
        table = {_subset_key(u): u for u in carrier}
        point = lambda x: _element(table, _subset_key_raw(x))  # noqa: E731
    else:
        carrier = _carrier(payload["carrier"])
        table = _lookup(carrier)
        point = lambda x: _element(table, x)  # noqa: E731
    if "opens" in payload:
        return fib.topology(carrier, [[point(x) for x in u] for u in payload["opens"]])
    return fib.generate_topology(carrier, [[point(x) for x in u] for u in payload["subbasis"]])


def decode_lmp(payload) -> LMP:
    carrier = _carrier(payload["carrier"])
    space = _space(carrier, payload)
    actions = _carrier(payload["actions"])
    kernel = {}
    for a in actions:
        row = payload["kernel"].get(str(a))
        if row is None:
            raise SchemaError(f"kernel has no entry for action {a!r}")
        for s in carrier:
            if str(s) not in row:
                raise SchemaError(f"kernel has no measure for action {a!r}, state {s!r}")
            kernel[(a, s)] = _measure(space, row[str(s)])
    return LMP(space, actions, kernel)


def decode_metric(payload):
    carrier = _carrier(payload["carrier"])
    rows = payload["distance"]
    if len(rows) != len(carrier) or any(len(r) != len(carrier) for r in rows):
        raise SchemaError("distance matrix must be square over the carrier")
    matrix = [[parse_distance(v) for v in r] for r in rows]
    return fib.pseudometric(carrier, matrix), _space(carrier, payload)


def decode_pred(payload):
    """``PredObj``, plus ``(R, A)`` when the predicate is a product parameter."""
    if "ambient" in payload:
        ambient = _carrier(payload["ambient"])
        return PredObj(ambient, _subset_of(_lookup(ambient), payload["members"])), None
    r, a = _carrier(payload["r"]), _carrier(payload["a"])
    tr, ta = _lookup(r), _lookup(a)
    members = set()
    for m in payload["members"]:
        if not (isinstance(m, list) and len(m) == 2):
            raise SchemaError("parameter members are [r, a] pairs")
        members.add((_element(tr, m[0]), _element(ta, m[1])))
    return PredObj(product_set(r, a), frozenset(members)), (r, a)


def decode_lasso(obj, table: dict) -> Lasso:
    return Lasso(tuple(_element(table, x) for x in obj["prefix"]),
                 tuple(_element(table, x) for x in obj["cycle"]))


def decode_stream_param(payload) -> StreamParam:
    r = _carrier(payload["r"])
    table = _lookup(r)
    return StreamParam(r, frozenset(decode_lasso(v, table) for v in payload["s0"]))


def decode_relation(payload, c1: FinSet, c2: FinSet) -> frozenset:
    t1, t2 = _lookup(c1), _lookup(c2)
    return frozenset((_element(t1, a), _element(t2, b)) for a, b in payload["pairs"])


def load(path, kind: str):
    doc = load_document(path)
    if doc["kind"] != kind:
        raise SchemaError(f"{path}: expected a {kind} instance, found {doc['kind']}")
    return doc["payload"]


def parse_measure_spec(space: FinMeasSpace, spec: str) -> SubProb:
    """``"a=1/2,b=1/4"``; an empty string is the zero measure."""
    table = _lookup(space.carrier)
    masses = {}
    for part in filter(None, (p.strip() for p in spec.split(","))):
        key, sep, val = part.partition("=")
        if not sep:
            raise SchemaError(f"measure entry {part!r} should read point=p/q")
        x = _element(table, key.strip())
        masses[x] = masses.get(x, Fraction(0)) + parse_rational(val.strip())
    try:
        return SubProb.from_points(space, masses)
    except InvalidStructure as exc:
        raise SchemaError(str(exc)) from None


# --- encoding ------------------------------------------------------------------

def element_json(x):
    """JSON form of a carrier element: subsets become sorted lists, tuples lists."""
    if isinstance(x, frozenset):
        return sorted((element_json(e) for e in x), key=str)
    if isinstance(x, tuple):
        return [element_json(e) for e in x]
    if isinstance(x, Lasso):
        return {"prefix": [element_json(e) for e in x.prefix],
                "cycle": [element_json(e) for e in x.cycle]}
    return x


def to_jsonable(v):
    """Recursively convert results and witnesses to plain JSON values."""
    if isinstance(v, bool) or v is None or isinstance(v, (str, int)):
        return v
    if isinstance(v, Fraction) or v == INF:
        return format_rational(v)
    if isinstance(v, FibreObject):
        return encode_fibre(v)
    if isinstance(v, PredObj):
        return {"ambient": [element_json(x) for x in v.ambient],
                "members": [element_json(x) for x in v.members()]}
    if isinstance(v, FinSet):
        return [element_json(x) for x in v]
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (frozenset, set)):
        return sorted((to_jsonable(x) for x in v), key=lambda e: json.dumps(e, sort_keys=True))
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    if isinstance(v, Lasso):
        return element_json(v)
    if hasattr(v, "items") and hasattr(v, "dom"):
        return [[element_json(k), element_json(y)] for k, y in v.items()]
    return repr(v)


def encode_fibre(x: FibreObject) -> dict:
    carrier = [element_json(e) for e in x.carrier]
    out = {"tag": x.tag.value, "carrier": carrier}
    if x.tag is Tag.PRED:
        out["members"] = [element_json(e) for e in x.carrier if e in x.data]
    elif x.tag is Tag.TOP:
        out["opens"] = [[element_json(e) for e in x.carrier if e in u] for u in x.opens]
    elif x.tag is Tag.MET:
        out["distance"] = [[format_rational(v) for v in row] for row in x.data]
    else:
        out["matrix"] = [[int((a, b) in x.data) for b in x.carrier] for a in x.carrier]
    return out


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps_compact(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def element_label(x) -> str:
    if isinstance(x, frozenset):
        return "{" + ",".join(sorted(map(element_label, x))) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(map(element_label, x)) + ")"
    return str(x)


def render_table(x: FibreObject) -> str:
    """Human-readable view: a 0/1 matrix for relations, an open list for topologies."""
    labels = [element_label(e) for e in x.carrier]
    if x.tag is Tag.TOP:
        return "\n".join("open: {" + ", ".join(element_label(e) for e in x.carrier if e in u) + "}"
                         for u in x.opens)
    if x.tag is Tag.PRED:
        return "members: " + ", ".join(element_label(e) for e in x.carrier if e in x.data)
    if x.tag is Tag.MET:
        cells = [[format_rational(v) for v in row] for row in x.data]
    else:
        cells = [["1" if (a, b) in x.data else "." for b in x.carrier] for a in x.carrier]
    width = max([len(s) for s in labels] + [len(c) for row in cells for c in row] + [1])
    head = " " * (width + 1) + " ".join(s.rjust(width) for s in labels)
    rows = [labels[i].rjust(width) + " " + " ".join(c.rjust(width) for c in cells[i])
            for i in range(len(labels))]
    return "\n".join([head] + rows)

"""JSON encodings of the shared data shapes.

Values are strings (decimal for int / fp:<p>, "a/b" for rat); rings are the
selection strings.  Term and entry lists are emitted in canonical orders so
output is byte-stable.
"""

from __future__ import annotations

import itertools

from .errors import InputError
from .grassmann import DetRep, PluckerSquareVector
from .group_action import GroupElement, SL2Element
from .minor_map import MinorVector, SymMatrix
from .multipoly import MultiPoly, P1Point
from .rings import Ring, ring_from_string

FORMAT = "minorforge/1"


def poly_to_json(f: MultiPoly) -> dict:
    return {
        "ring": f.ring.to_string(),
        "nvars": f.nvars,
        "terms": [
            {"exp": list(exp), "c": f.ring.format(c)} for exp, c in f.canonical_items()
        ],
    }


def poly_from_json(doc: dict) -> MultiPoly:
    try:
        ring = ring_from_string(doc["ring"])
        nvars = int(doc["nvars"])
        terms = {}
        for item in doc["terms"]:
            exp = tuple(int(e) for e in item["exp"])
            terms[exp] = ring.parse(item["c"])
    except (KeyError, TypeError) as exc:
        raise InputError("malformed polynomial document: %s" % exc) from None
    return MultiPoly(ring, nvars, terms)


def vector_to_json(a: MinorVector) -> dict:
    entries = []
    for mask in range(1 << a.n):
        subset = [i for i in range(1, a.n + 1) if mask >> (i - 1) & 1]
        entries.append({"S": subset, "v": a.ring.format(a.entries[mask])})
    return {"ring": a.ring.to_string(), "n": a.n, "entries": entries}


def vector_from_json(doc: dict) -> MinorVector:
    try:
        ring = ring_from_string(doc["ring"])
        n = int(doc["n"])
        entries = [ring.zero] * (1 << n)
        for item in doc["entries"]:
            subset = item["S"]
            mask = 0
            for i in subset:
                i = int(i)
                if not 1 <= i <= n:
                    raise InputError("subset element %d out of range" % i)
                if mask >> (i - 1) & 1:
                    raise InputError("repeated subset element %d" % i)
                mask |= 1 << (i - 1)
            entries[mask] = ring.parse(item["v"])
    except (KeyError, TypeError) as exc:
        raise InputError("malformed minor-vector document: %s" % exc) from None
    return MinorVector(ring, n, entries)


def matrix_to_json(m: SymMatrix) -> dict:
    return {
        "ring": m.ring.to_string(),
        "n": m.n,
        "rows": [[m.ring.format(v) for v in row] for row in m.rows],
    }


def matrix_from_json(doc: dict) -> SymMatrix:
    try:
        ring = ring_from_string(doc["ring"])
        n = int(doc["n"])
        rows = [[ring.parse(v) for v in row] for row in doc["rows"]]
    except (KeyError, TypeError) as exc:
        raise InputError("malformed matrix document: %s" % exc) from None
    return SymMatrix(ring, n, rows)


def group_to_json(g: GroupElement) -> dict:
    ring = g.ring
    return {
        "ring": ring.to_string(),
        "perm": list(g.perm),
        "sl2": [
            [[ring.format(m.a), ring.format(m.b)], [ring.format(m.c), ring.format(m.d)]]
            for m in g.locals
        ],
    }


def group_from_json(doc: dict) -> GroupElement:
    try:
        ring = ring_from_string(doc["ring"])
        perm = tuple(int(i) for i in doc["perm"])
        locals_ = []
        for block in doc["sl2"]:
            (a, b), (c, d) = block
            locals_.append(
                SL2Element(ring, ring.parse(a), ring.parse(b), ring.parse(c), ring.parse(d))
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("malformed group-element document: %s" % exc) from None
    return GroupElement(perm, tuple(locals_))


def plucker_to_json(q: PluckerSquareVector) -> dict:
    return {
        "ring": q.ring.to_string(),
        "d": q.d,
        "n": q.n,
        "entries": [
            {"S": list(s), "v": q.ring.format(q.entries[s])}
            for s in itertools.combinations(range(1, q.n + 1), q.d)
        ],
    }


def plucker_from_json(doc: dict) -> PluckerSquareVector:
    try:
        ring = ring_from_string(doc["ring"])
        d = int(doc["d"])
        n = int(doc["n"])
        entries = {}
        for item in doc["entries"]:
            s = tuple(sorted(int(i) for i in item["S"]))
            entries[s] = ring.parse(item["v"])
    except (KeyError, TypeError) as exc:
        raise InputError("malformed squared-Pluecker document: %s" % exc) from None
    return PluckerSquareVector(ring, d, n, entries)


def detrep_to_json(ring: Ring, rep: DetRep) -> dict:
    return {
        "lambda": ring.format(rep.scale),
        "m": rep.m,
        "V": [[ring.format(v) for v in row] for row in rep.V],
        "W": matrix_to_json(rep.W),
    }


def p1_to_json(pt: P1Point) -> list:
    return [pt.ring.format(pt.x), pt.ring.format(pt.y)]

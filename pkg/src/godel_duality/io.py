"""JSON readers and writers for algebras, homomorphisms, forests and V-formations."""

from __future__ import annotations

import json

from .algebra import GodelAlgebra, Homomorphism, make_chain, vk_algebra
from .errors import InputError
from .poset import Forest
from .serialize import label_str


def algebra_to_json(A):
    labels = [label_str(e) for e in A.elements]
    return {"type": "table", "elements": labels,
            "meet": [list(r) for r in A.meet], "join": [list(r) for r in A.join],
            "impl": [list(r) for r in A.impl], "bot": A.bot, "top": A.top}


def algebra_from_json(data):
    if not isinstance(data, dict) or "type" not in data:
        raise InputError("algebra JSON needs a 'type' field")
    kind = data["type"]
    try:
        if kind == "chain":
            return make_chain(int(data["n"]))
        if kind == "forest":
            body = data.get("forest", data)
            return vk_algebra(Forest.from_json(body))
        if kind == "table":
            return GodelAlgebra([str(e) for e in data["elements"]], data["meet"], data["join"],
                                data["impl"], int(data["bot"]), int(data["top"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed {kind} algebra JSON: {exc}") from None
    raise InputError(f"unknown algebra type {kind!r}")


def hom_to_json(f):
    return {"map": {label_str(f.source.elements[a]): label_str(f.target.elements[b])
                    for a, b in enumerate(f.map)}}


def mask_hom_to_json(f):
    """Map into an up-set lattice: element label to the list of forest nodes in its image."""
    L = f.target
    return {"map": {label_str(f.source.elements[a]): sorted(label_str(x) for x in L.label(m))
                    for a, m in enumerate(f.masks)}}


def hom_from_json(data, A, B):
    try:
        table = {str(k): str(v) for k, v in data["map"].items()}
        src = {label_str(e): i for i, e in enumerate(A.elements)}
        dst = {label_str(e): i for i, e in enumerate(B.elements)}
        m = [None] * A.size
        for k, v in table.items():
            m[src[k]] = dst[v]
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed homomorphism JSON: {exc}") from None
    if None in m:
        raise InputError("homomorphism JSON does not cover every element")
    f = Homomorphism(A, B, tuple(m))
    if not f.is_valid():
        raise InputError("map is not a homomorphism")
    return f


def vformation_from_json(data):
    from .constructions import VFormation

    try:
        A, B, C = (algebra_from_json(data[k]) for k in "ABC")
        V = VFormation(A, B, C, hom_from_json(data["fB"], A, B), hom_from_json(data["fC"], A, C))
    except KeyError as exc:
        raise InputError(f"V-formation JSON lacks {exc}") from None
    V.validate()
    return V


def vformation_to_json(V):
    return {"A": algebra_to_json(V.A), "B": algebra_to_json(V.B), "C": algebra_to_json(V.C),
            "fB": hom_to_json(V.fB), "fC": hom_to_json(V.fC)}


def load_json(path):
    """Read JSON from a path ('-' for stdin); decode errors keep line/column info."""
    import sys

    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


class UsageError(Exception):
    """Bad command-line input; mapped to exit status 2."""

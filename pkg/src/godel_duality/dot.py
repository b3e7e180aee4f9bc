"""Graphviz DOT output for forests, dual structures and translation bundles.

Arrow styles for dual structures: the total operation is solid, the
partial operation at position 1 dashed, position 2 dotted.  Later
positions cycle through dashed/dotted/bold with colours from ``COLOURS``.
"""

from __future__ import annotations

import re

from .natural import DualStructure
from .poset import Poset
from .serialize import label_str

COLOURS = ("black", "blue", "red", "darkgreen", "purple", "orange")
_CYCLE = ("dashed", "dotted", "bold")


def edge_style(k, total):
    """(style, colour) for partial op at 0-based position ``k``, or for the total op."""
    if total:
        return "solid", "black"
    return _CYCLE[k % 3], COLOURS[(k // 3) % len(COLOURS)]


def _q(text):
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _forest_lines(P, prefix="", indent="  "):
    ids = {e: f"{prefix}{i}" for i, e in enumerate(P.elements)}
    lines = [f"{indent}{ids[e]} [label={_q(label_str(e))}];" for e in P.elements]
    lines += [f"{indent}{ids[lo]} -> {ids[hi]};" for lo, hi in sorted(P.covers, key=label_str)]
    return lines


def _structure_lines(X, prefix="p", indent="  ", nodes=True):
    lines = []
    if nodes:
        lines = [f"{indent}{prefix}{i} [label={_q(label_str(p))}];" for i, p in enumerate(X.points)]
    for k, t in enumerate(X.ops):
        style, colour = edge_style(k, False)
        name = str(X.sigma.partial_ops[k])
        for p, q in enumerate(t):
            if q is not None:
                lines.append(f'{indent}{prefix}{p} -> {prefix}{q} [style={style}, color={colour}, label={_q(name)}];')
    if X.endo is not None:
        name = str(X.sigma.endo)
        for p, q in enumerate(X.endo):
            lines.append(f'{indent}{prefix}{p} -> {prefix}{q} [style=solid, label={_q(name)}];')
    return lines


def emit_dot(obj, name="G"):
    """DOT text for a Forest/Poset, a DualStructure, or a ``(structure, forest)`` translation bundle."""
    head = f"digraph {_q(name)} {{"
    if isinstance(obj, DualStructure):
        body = _structure_lines(obj)
    elif isinstance(obj, Poset):
        body = ["  rankdir=BT;"] + _forest_lines(obj, "n")
    elif isinstance(obj, tuple) and len(obj) == 2:
        X, F = obj
        body = ["  compound=true;"]
        index = {p: i for i, p in enumerate(X.points)}
        for c, cls in enumerate(F.elements):
            body.append(f"  subgraph cluster_{c} {{")
            body.append("    style=rounded;")
            body.append(f"    label={_q('class ' + str(c))};")
            body += [f"    p{index[p]} [label={_q(label_str(p))}];" for p in sorted(cls, key=lambda p: index[p])]
            body.append("  }")
        body += _structure_lines(X, nodes=False)
        body.append("  subgraph cluster_quotient {")
        body.append(f"    label={_q('quotient forest')};")
        body += _forest_lines(F, "q", "    ")
        body.append("  }")
        for c, cls in enumerate(F.elements):
            first = min(index[p] for p in cls)
            body.append(f"  p{first} -> q{c} [style=dashed, color=gray, arrowhead=open];")
    else:
        raise TypeError(f"cannot draw {type(obj).__name__}")
    return "\n".join([head] + body + ["}"]) + "\n"


_TOKEN = re.compile(r'\s*(?:(->|--)|([{}\[\];,=])|("(?:[^"\\]|\\.)*")|([A-Za-z_][A-Za-z0-9_.]*|-?\d+(?:\.\d+)?))')


def _tokens(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad DOT token at offset {pos}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def check_dot(text):
    """Minimal recursive-descent check of the DOT subset this module writes."""
    toks = _tokens(text)
    i = 0
    edge_op = "->"

    def peek():
        return toks[i] if i < len(toks) else None

    def take(expected=None):
        nonlocal i
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected!r}, got {tok!r}")
        i += 1
        return tok

    def ident():
        tok = take()
        if tok in "{}[];,=" or tok in ("->", "--"):
            raise ValueError(f"expected identifier, got {tok!r}")
        return tok

    def attrs():
        take("[")
        while peek() != "]":
            ident()
            take("=")
            ident()
            if peek() in (",", ";"):
                take()
        take("]")

    def stmts():
        while peek() not in ("}", None):
            if peek() == "subgraph":
                take()
                if peek() != "{":
                    ident()
                take("{")
                stmts()
                take("}")
            else:
                ident()
                if peek() == "=":
                    take()
                    ident()
                else:
                    if peek() in ("->", "--") and peek() != edge_op:
                        raise ValueError(f"edge operator {peek()!r} in a graph that needs {edge_op!r}")
                    while peek() == edge_op:
                        take()
                        ident()
                    if peek() == "[":
                        attrs()
            if peek() == ";":
                take()

    if peek() == "strict":
        take()
    kind = take()
    if kind not in ("digraph", "graph"):
        raise ValueError("DOT must start with graph/digraph")
    edge_op = "->" if kind == "digraph" else "--"
    if peek() != "{":
        ident()
    take("{")
    stmts()
    take("}")
    if peek() is not None:
        raise ValueError("trailing tokens after graph body")
    return True


def dot_counts(text):
    """(node statements, edge statements) in DOT text from this module."""
    nodes = len(re.findall(r"^\s*\w+ \[label=", text, re.M))
    edges = len(re.findall(r"->", text))
    return nodes, edges

"""Two-way translation between dual structures and Esakia forests.

``F_sigma`` collapses a dual structure along its partial operations and
orders the classes by the total operation; ``G_sigma`` rebuilds a dual
structure from a forest using pairs ``(y, U)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InputError, InternalInconsistency, StructuralError, VarietyError
from .natural import DualStructure, _as_sigma, dual_space, structure_iso
from .poset import Forest, Poset, iso_check


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class SimRelation:
    """Partition of the points into classes linked by partial-operation steps."""

    structure: DualStructure
    classes: tuple  # tuple of frozensets of point indices, ordered by least member
    class_of: tuple

    def same(self, p, q):
        return self.class_of[p] == self.class_of[q]

    def labels(self):
        X = self.structure
        return tuple(frozenset(X.points[p] for p in c) for c in self.classes)


@dataclass(frozen=True)
class LayerOrder:
    """Cover pairs between classes and the order they generate."""

    sim: SimRelation
    cover_pairs: frozenset  # (lower class index, upper class index)
    order: Poset  # on class indices
    is_covering: bool


def sim_classes(X):
    uf = _UnionFind(len(X))
    for t in X.ops:
        for p, q in enumerate(t):
            if q is not None:
                uf.union(p, q)
    groups = {}
    for p in range(len(X)):
        groups.setdefault(uf.find(p), []).append(p)
    classes = tuple(frozenset(g) for g in sorted(groups.values()))
    class_of = [0] * len(X)
    for k, c in enumerate(classes):
        for p in c:
            class_of[p] = k
    return SimRelation(X, classes, tuple(class_of))


def cover_classes(X, sim=None):
    """``[x]`` below ``[y]`` iff they differ and the total op sends some ``z ~ x`` into ``[y]``."""
    sim = sim_classes(X) if sim is None else sim
    pairs = set()
    if X.endo is not None:
        for p, q in enumerate(X.endo):
            a, b = sim.class_of[p], sim.class_of[q]
            if a != b:
                pairs.add((a, b))
    try:
        order = Poset.from_relation(range(len(sim.classes)), pairs)
    except StructuralError as exc:
        raise StructuralError(f"class order is not antisymmetric: {exc.detail}") from None
    return LayerOrder(sim, frozenset(pairs), order, frozenset(order.covers) == frozenset(pairs))


def F_sigma(X, sim=None):
    """Quotient forest of ``X``; nodes are frozensets of point labels."""
    lay = cover_classes(X, sim)
    labels = lay.sim.labels()
    P = Poset(labels, [(labels[a], labels[b]) for a, b in lay.order.covers], check=False)
    if not P.is_forest():
        raise StructuralError("quotient order is not a forest")
    return P.as_forest()


def F_sigma_morphism(eta):
    """``[x] -> [eta(x)]`` as a dict between class labels; checks well-definedness."""
    sx, sy = sim_classes(eta.source), sim_classes(eta.target)
    lx, ly = sx.labels(), sy.labels()
    out = {}
    for p, q in enumerate(eta.map):
        a, b = lx[sx.class_of[p]], ly[sy.class_of[q]]
        if out.setdefault(a, b) != b:
            raise StructuralError(f"morphism does not respect classes at {eta.source.points[p]!r}")
    return out


def G_sigma(Y, n, sigma):
    """Dual structure on pairs ``(y, U)`` with ``0, n-1`` in ``U`` and ``|U| = |up(y)| + 1``."""
    sigma = _as_sigma(sigma, n)
    if not isinstance(Y, Poset) or not Y.is_forest():
        raise InputError("G_sigma expects a forest")
    if Y.depth() > n - 2:
        raise VarietyError(f"forest depth {Y.depth()} exceeds n-2 = {n - 2}",
                           witness={"depth": Y.depth(), "n": n})
    Y = Y.as_forest() if not isinstance(Y, Forest) else Y
    points = []
    for i, y in enumerate(Y.elements):
        k = bin(Y._up_masks[i]).count("1")
        for mids in itertools.combinations(range(1, n - 1), k - 1):
            points.append((y, (0,) + mids + (n - 1,)))
    pos = {p: i for i, p in enumerate(points)}

    def move(p, U):
        key = (p, tuple(sorted(set(U))))
        if key not in pos:
            raise InternalInconsistency(f"structure map leaves the point set at {key!r}")
        return pos[key]

    ops = []
    for op in sigma.partial_ops:
        t = []
        for y, U in points:
            img = op.image(U)
            t.append(None if img is None else move(y, img))
        ops.append(t)
    endo = None
    if sigma.endo is not None:
        endo = []
        for y, U in points:
            img = sigma.endo.image(U)
            up = Y.s_map(y) if n - 2 in U else y
            endo.append(move(up, img))
    G = DualStructure(sigma, points, ops, endo, check=False)
    G.forest = Y
    return G


def roundtrip_check(A, sigma):
    """Both translations reproduce the expected duals of ``A`` up to isomorphism."""
    from .algebra import hu_dual

    sigma = _as_sigma(sigma)
    X = dual_space(A, sigma)
    H = hu_dual(A)
    if not iso_check(F_sigma(X), H):
        return False
    return structure_iso(G_sigma(H, sigma.n, sigma), X) is not None


def topology_sets(G, Y=None):
    """The sets ``{(y, U) : i in U, |down(i) & U| = |up(y) & W| + 1}`` keyed by (W mask, i)."""
    Y = G.forest if Y is None else Y
    yidx = {y: k for k, y in enumerate(Y.elements)}
    out = {}
    for W in Y.up_set_masks():
        for i in range(G.n):
            members = frozenset(
                p for p, (y, U) in enumerate(G.points)
                if i in U and sum(1 for u in U if u <= i) == bin(Y._up_masks[yidx[y]] & W).count("1") + 1)
            out[(W, i)] = members
    return out


def separates_points(sets, size):
    """True iff for every two distinct points some set holds exactly one of them."""
    sig = [0] * size
    for k, members in enumerate(sets.values()):
        for p in members:
            sig[p] |= 1 << k
    return len(set(sig)) == size


"""Alter egos of C_n, the hom-functors D and E, and finite dual structures.

A dual structure carries ``n - 3`` partial unary operations (one per
position of the signature, picking ``f_i`` or ``g_i``) and one total
unary operation ``h_j``.  For ``n = 3`` only ``h_1`` remains and for
``n = 2`` there are no operations at all.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

from .algebra import (GodelAlgebra, hom_set, is_homomorphism,
                      make_chain, trivial_algebra, variety_index)
from .errors import InputError, InternalInconsistency, ResourceError, VarietyError
from .poset import bits_of, default_cap
from .serialize import label_str


@dataclass(frozen=True)
class PartialOp:
    """A partial map on ``{0, ..., n-1}``; ``table[x]`` is None off the domain."""

    n: int
    table: tuple
    name: str = field(default="", compare=False)

    def __call__(self, x):
        return self.table[x]

    @property
    def domain(self):
        return frozenset(x for x, v in enumerate(self.table) if v is not None)

    def is_total(self):
        return None not in self.table

    def compose(self, inner):
        """``self o inner`` on the largest domain where both steps are defined."""
        if self.n != inner.n:
            raise InputError("cannot compose operations on different chains")
        tab = tuple(None if inner.table[x] is None else self.table[inner.table[x]]
                    for x in range(self.n))
        return PartialOp(self.n, tab, f"{self.name}.{inner.name}")

    def image(self, values):
        """Image of a set of chain values, or None if some value is outside the domain."""
        out = []
        for v in values:
            w = self.table[v]
            if w is None:
                return None
            out.append(w)
        return out

    def is_partial_hom(self):
        """Domain is a subuniverse of C_n and the map preserves every operation on it."""
        C = make_chain(self.n)
        dom = sorted(self.domain)
        if C.bot not in dom or C.top not in dom:
            return False
        t = self.table
        for a in dom:
            for b in dom:
                for tab in (C.meet, C.join, C.impl):
                    c = tab[a][b]
                    if t[c] is None or t[c] != tab[t[a]][t[b]]:
                        return False
        return True

    def __str__(self):
        return self.name or repr(self.table)


def g_op(n, i):
    if not 1 <= i <= n - 3:
        raise InputError(f"g_{i} needs 1 <= i <= n-3 (n={n})")
    return PartialOp(n, tuple(None if x == i else (i if x == i + 1 else x) for x in range(n)), f"g{i}")


def f_op(n, i):
    if not 1 <= i <= n - 3:
        raise InputError(f"f_{i} needs 1 <= i <= n-3 (n={n})")
    return PartialOp(n, tuple(None if x == i + 1 else (i + 1 if x == i else x) for x in range(n)), f"f{i}")


def h_op(n, j):
    if not 1 <= j <= n - 2:
        raise InputError(f"h_{j} needs 1 <= j <= n-2 (n={n})")
    return PartialOp(n, tuple(x + 1 if j <= x < n - 1 else x for x in range(n)), f"h{j}")


def identity_op(n):
    return PartialOp(n, tuple(range(n)), "id")


def partial_endos(n):
    """``{'g1': g_1, 'f1': f_1, ...}`` for ``1 <= i <= n-3``."""
    out = {}
    for i in range(1, n - 2):
        out[f"g{i}"] = g_op(n, i)
        out[f"f{i}"] = f_op(n, i)
    return out


def endos(n):
    return {f"h{j}": h_op(n, j) for j in range(1, n - 1)}


@dataclass(frozen=True)
class SigmaSignature:
    """A choice of ``f_i``/``g_i`` per position plus the endomorphism ``h_j``."""

    n: int
    choices: tuple = ()
    endo_index: int | None = None

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 2:
            raise InputError(f"signature needs n >= 2, got {n!r}")
        if n == 2:
            if self.choices or self.endo_index is not None:
                raise InputError("the n=2 signature is empty")
            return
        if len(self.choices) != n - 3 or any(c not in ("f", "g") for c in self.choices):
            raise InputError(f"signature for n={n} needs {n - 3} choices from f/g")
        if self.endo_index is None or not 1 <= self.endo_index <= n - 2:
            raise InputError(f"endomorphism index must lie in 1..{n - 2}")

    @classmethod
    def parse(cls, text, n=None):
        """Parse strings like ``ggh1`` or ``fgh3``; the empty string means n = 2."""
        text = (text or "").strip().lower()
        if text in ("", "-", "empty"):
            if n not in (None, 2):
                raise InputError(f"empty signature only exists for n=2, not n={n}")
            return cls(2)
        head, sep, tail = text.partition("h")
        if not sep or not tail.isdigit():
            raise InputError(f"cannot parse signature {text!r}")
        inferred = len(head) + 3
        if n is not None and n != inferred:
            raise InputError(f"signature {text!r} has length for n={inferred}, not n={n}")
        return cls(inferred, tuple(head), int(tail))

    def __str__(self):
        if self.n == 2:
            return ""
        return "".join(self.choices) + f"h{self.endo_index}"

    @classmethod
    def full(cls, n):
        """The signature ``(g_1, ..., g_{n-3}, h_1)``."""
        if n == 2:
            return cls(2)
        return cls(n, ("g",) * (n - 3), 1)

    @classmethod
    def default_coproduct(cls, n):
        """``(g_1, ..., g_{n-3}, h_{n-2})``, which keeps the pictures simple."""
        if n == 2:
            return cls(2)
        return cls(n, ("g",) * (n - 3), n - 2)

    def is_full(self):
        return self == SigmaSignature.full(self.n)

    @cached_property
    def partial_ops(self):
        return tuple((g_op if c == "g" else f_op)(self.n, i) for i, c in enumerate(self.choices, 1))

    @cached_property
    def endo(self):
        return None if self.n == 2 else h_op(self.n, self.endo_index)

    @property
    def ops(self):
        """All operations, partial ones first, the total one last."""
        return self.partial_ops + ((self.endo,) if self.endo is not None else ())


def all_signatures(n):
    if n == 2:
        return [SigmaSignature(2)]
    return [SigmaSignature(n, tuple(ch), j)
            for ch in itertools.product("gf", repeat=n - 3) for j in range(1, n - 1)]


def _as_sigma(sigma, n=None):
    if isinstance(sigma, SigmaSignature):
        if n is not None and sigma.n != n:
            raise InputError(f"signature is for n={sigma.n}, expected n={n}")
        return sigma
    return SigmaSignature.parse(sigma, n)


class DualStructure:
    """Finite carrier with partial op tables and a total endo table.

    ``ops[k]`` is a tuple over point indices holding the image index or None;
    ``endo`` is a tuple of indices (None when ``n == 2``).
    """

    def __init__(self, sigma, points, ops, endo, check=True):
        self.sigma = sigma
        self.n = sigma.n
        self.points = tuple(points)
        self.ops = tuple(tuple(t) for t in ops)
        self.endo = None if endo is None else tuple(endo)
        if check:
            self.validate()

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"DualStructure(n={self.n}, sigma={str(self.sigma)!r}, size={len(self)})"

    @cached_property
    def _index(self):
        return {p: i for i, p in enumerate(self.points)}

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown point {label!r}") from None

    def validate(self):
        m = len(self.points)
        if len(self._index) != m:
            raise InputError("duplicate point labels")
        if len(self.ops) != len(self.sigma.partial_ops):
            raise InputError(f"expected {len(self.sigma.partial_ops)} partial op tables")
        for t in self.ops:
            if len(t) != m or any(v is not None and not 0 <= v < m for v in t):
                raise InputError("malformed partial op table")
        if (self.endo is None) != (self.n == 2):
            raise InputError("total operation present iff n > 2")
        if self.endo is not None and (len(self.endo) != m or any(not 0 <= v < m for v in self.endo)):
            raise InputError("malformed endo table")
        return True

    def all_tables(self):
        """Partial tables then the endo table."""
        return self.ops + ((self.endo,) if self.endo is not None else ())

    def domain(self, k):
        return frozenset(p for p, v in enumerate(self.ops[k]) if v is not None)

    def __eq__(self, other):
        return (isinstance(other, DualStructure) and str(self.sigma) == str(other.sigma)
                and self.n == other.n and self.points == other.points
                and self.ops == other.ops and self.endo == other.endo)

    __hash__ = None

    def closure_mask(self, mask):
        tabs = self.all_tables()
        todo = list(bits_of(mask))
        while todo:
            p = todo.pop()
            for t in tabs:
                q = t[p]
                if q is not None and not mask >> q & 1:
                    mask |= 1 << q
                    todo.append(q)
        return mask

    def is_closed(self, subset):
        mask = 0
        for p in subset:
            mask |= 1 << p
        return self.closure_mask(mask) == mask

    def to_json(self):
        lab = [label_str(p) for p in self.points]
        return {
            "n": self.n,
            "sigma": str(self.sigma),
            "points": lab,
            "ops": [{"dom": [lab[p] for p, v in enumerate(t) if v is not None],
                     "map": {lab[p]: lab[v] for p, v in enumerate(t) if v is not None}}
                    for t in self.ops],
            "endo": None if self.endo is None else {lab[p]: lab[v] for p, v in enumerate(self.endo)},
        }

    @classmethod
    def from_json(cls, data):
        try:
            n = int(data["n"])
            sigma = SigmaSignature.parse(data.get("sigma", ""), n)
            points = [str(p) for p in data["points"]]
            pos = {p: i for i, p in enumerate(points)}
            ops = []
            for op in data.get("ops", []):
                t = [None] * len(points)
                for src, dst in op["map"].items():
                    t[pos[str(src)]] = pos[str(dst)]
                if "dom" in op and {pos[str(p)] for p in op["dom"]} != {i for i, v in enumerate(t) if v is not None}:
                    raise InputError("op 'dom' disagrees with its 'map'")
                ops.append(t)
            endo = None
            if data.get("endo") is not None:
                endo = [pos[str(data["endo"][p])] for p in points]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed dual structure JSON: {exc}") from None
        return cls(sigma, points, ops, endo)


@dataclass(frozen=True, eq=False)
class StructureMorphism:
    source: DualStructure
    target: DualStructure
    map: tuple

    def __call__(self, p):
        return self.map[p]

    def is_valid(self):
        s, t, m = self.source, self.target, self.map
        if len(m) != len(s) or str(s.sigma) != str(t.sigma):
            return False
        if s.endo is not None and any(m[s.endo[p]] != t.endo[m[p]] for p in range(len(s))):
            return False
        for ts, tt in zip(s.ops, t.ops):
            for p, q in enumerate(ts):
                if q is not None and (tt[m[p]] is None or tt[m[p]] != m[q]):
                    return False
        return True

    def compose(self, inner):
        """``self o inner``."""
        return StructureMorphism(inner.source, self.target, tuple(self.map[v] for v in inner.map))


def alter_ego(sigma):
    """``C~_n`` with the operations named by the signature."""
    n = sigma.n
    ops = [op.table for op in sigma.partial_ops]
    return DualStructure(sigma, range(n), ops, None if sigma.endo is None else sigma.endo.table)


def _lift(sigma, points):
    """Pointwise lift of the signature's operations to tuples of chain values."""
    pos = {p: i for i, p in enumerate(points)}
    ops = []
    for op in sigma.partial_ops:
        t = []
        for p in points:
            img = op.image(p)
            t.append(None if img is None else pos[tuple(img)])
        ops.append(t)
    endo = None if sigma.endo is None else [pos[tuple(sigma.endo.image(p))] for p in points]
    return ops, endo


def dual_space(A, sigma):
    """``D(A)``: points are the homomorphisms ``A -> C_n`` as value tuples."""
    sigma = _as_sigma(sigma)
    n = sigma.n
    k = variety_index(A)
    if k > n:
        raise VarietyError(f"algebra lies in G_{k}, not in G_{n}: its dual forest has depth {k - 2} > {n - 2}",
                           witness={"depth": k - 2, "n": n})
    points = [x.map for x in hom_set(A, n)]
    ops, endo = _lift(sigma, points)
    X = DualStructure(sigma, points, ops, endo, check=False)
    X.algebra = A
    return X


def dual_map(f, sigma):
    """``D(f) = - o f`` as a morphism ``D(B) -> D(A)`` for ``f: A -> B``."""
    sigma = _as_sigma(sigma)
    DA, DB = dual_space(f.source, sigma), dual_space(f.target, sigma)
    m = tuple(DA.index(tuple(y[f.map[a]] for a in range(f.source.size))) for y in DB.points)
    eta = StructureMorphism(DB, DA, m)
    if not eta.is_valid():
        raise InternalInconsistency("composition with a homomorphism broke a structure map")
    return eta


def power_structure(sigma, S):
    """``(C~_n)^S``; ``S`` is a count or an iterable of index labels."""
    sigma = _as_sigma(sigma)
    k = S if isinstance(S, int) else len(list(S))
    points = list(itertools.product(range(sigma.n), repeat=k))
    ops, endo = _lift(sigma, points)
    return DualStructure(sigma, points, ops, endo, check=False)


def product_structure(*Xs, sigma=None):
    """Cartesian product with componentwise operations; points are tuples of labels."""
    if sigma is None:
        if not Xs:
            raise InputError("an empty product needs an explicit signature")
        sigma = Xs[0].sigma
    sigma = _as_sigma(sigma)
    for X in Xs:
        if str(X.sigma) != str(sigma) or X.n != sigma.n:
            raise InputError(f"signature mismatch in product: {X.sigma} vs {sigma}")
    combos = list(itertools.product(*[range(len(X)) for X in Xs]))
    pos = {c: i for i, c in enumerate(combos)}
    ops = []
    for k in range(len(sigma.partial_ops)):
        t = []
        for c in combos:
            img = tuple(X.ops[k][p] for X, p in zip(Xs, c))
            t.append(None if None in img else pos[img])
        ops.append(t)
    endo = None
    if sigma.endo is not None:
        endo = [pos[tuple(X.endo[p] for X, p in zip(Xs, c))] for c in combos]
    points = [tuple(X.points[p] for X, p in zip(Xs, c)) for c in combos]
    P = DualStructure(sigma, points, ops, endo, check=False)
    P.coords = tuple(combos)
    return P


def substructure(X, subset):
    """Closed substructure on ``subset`` (point indices); domains are restricted."""
    keep = sorted(set(subset))
    if not X.is_closed(keep):
        raise InputError("subset is not closed under the structure's operations")
    pos = {p: i for i, p in enumerate(keep)}
    ops = [[None if t[p] is None else pos[t[p]] for p in keep] for t in X.ops]
    endo = None if X.endo is None else [pos[X.endo[p]] for p in keep]
    S = DualStructure(X.sigma, [X.points[p] for p in keep], ops, endo, check=False)
    S.embedding = tuple(keep)
    return S


def closed_masks(X, include_empty=True, cap=None):
    """All closed subsets of X as bitmasks, sorted by (size, members)."""
    cap = default_cap() if cap is None else cap
    gens = sorted({X.closure_mask(1 << p) for p in range(len(X))})
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for S in frontier:
            for g in gens:
                T = S | g
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
                    if len(seen) > cap:
                        raise ResourceError(f"more than {cap} closed substructures; raise --cap or GODEL_CAP")
        frontier = nxt
    if not include_empty:
        seen.discard(0)
    return sorted(seen, key=lambda m: (bin(m).count("1"), sorted(bits_of(m))))


def closed_substructures(X, include_empty=True, cap=None):
    return [substructure(X, bits_of(m)) for m in closed_masks(X, include_empty, cap)]


def sample_closed_substructures(X, k, seed=0, include_empty=True, max_tries=None):
    """Up to ``k`` distinct closed substructures, each the closure of a random subset."""
    rng = random.Random(seed)
    m = len(X)
    seen = []
    found = set()
    tries = max_tries or 50 * k
    for _ in range(tries):
        if len(seen) >= k:
            break
        size = rng.randint(0, m)
        mask = 0
        for p in rng.sample(range(m), size):
            mask |= 1 << p
        mask = X.closure_mask(mask)
        if mask in found or (mask == 0 and not include_empty):
            continue
        found.add(mask)
        seen.append(mask)
    return [substructure(X, bits_of(mm)) for mm in seen]


def _search_morphisms(X, Y, cap):
    """All structure maps ``X -> Y`` by backtracking with forward propagation."""
    m = len(X)
    cand = []
    for p in range(m):
        ok = []
        for v in range(len(Y)):
            if all(t[p] is None or tY[v] is not None for t, tY in zip(X.ops, Y.ops)):
                ok.append(v)
        cand.append(ok)
    tabs = list(zip(X.all_tables(), Y.all_tables()))
    phi = [None] * m
    out = []
    budget = [cap]

    def assign(p, v, trail):
        stack = [(p, v)]
        while stack:
            p, v = stack.pop()
            if phi[p] is not None:
                if phi[p] != v:
                    return False
                continue
            if v not in cand[p]:
                return False
            phi[p] = v
            trail.append(p)
            for tX, tY in tabs:
                q = tX[p]
                if q is not None:
                    w = tY[v]
                    if w is None:
                        return False
                    stack.append((q, w))
        return True

    order = sorted(range(m), key=lambda p: len(cand[p]))

    def rec(k):
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceError(f"structure-map search exceeded {cap} steps; use the translation path")
        while k < m and phi[order[k]] is not None:
            k += 1
        if k == m:
            out.append(tuple(phi))
            return
        p = order[k]
        for v in cand[p]:
            trail = []
            if assign(p, v, trail):
                rec(k + 1)
            for q in trail:
                phi[q] = None

    rec(0)
    return sorted(out)


def morphisms(X, Y, cap=None):
    cap = default_cap() if cap is None else cap
    return [StructureMorphism(X, Y, t) for t in _search_morphisms(X, Y, cap)]


def _pointwise_algebra(n, maps):
    """Godel algebra of value tuples into C_n under pointwise operations."""
    C = make_chain(n)
    maps = sorted(set(maps))
    if len(maps) == 1 and not maps[0]:
        return trivial_algebra()
    pos = {t: i for i, t in enumerate(maps)}
    m = len(maps[0])

    def table(tab):
        return [[pos[tuple(tab[a[p]][b[p]] for p in range(m))] for b in maps] for a in maps]

    return GodelAlgebra(maps, table(C.meet), table(C.join), table(C.impl),
                        pos[(0,) * m], pos[(n - 1,) * m], check=False)


def evaluate_E(X, method="auto", cap=None):
    """``E(X)``: structure maps ``X -> C~_n`` as an algebra under pointwise operations.

    ``search`` runs the backtracking enumeration; ``translation`` rebuilds
    the maps from the quotient forest through an isomorphism
    ``X ~ G(F(X))`` and so only applies to structures of that shape.
    """
    cap = default_cap() if cap is None else cap
    if method == "auto":
        method = "search" if len(X) <= 64 else "translation"
    if method == "search":
        maps = _search_morphisms(X, alter_ego(X.sigma), cap)
    elif method == "translation":
        maps = _translation_maps(X, cap)
    else:
        raise InputError(f"unknown method {method!r}")
    return _pointwise_algebra(X.n, maps)


def _translation_maps(X, cap):
    from .translation import F_sigma, G_sigma

    n = X.n
    Y = F_sigma(X)
    G = G_sigma(Y, n, X.sigma)
    iso = structure_iso(X, G)
    if iso is None:
        raise InputError("structure is not of the form G(F(X)); use method='search'")
    yidx = {y: i for i, y in enumerate(Y.elements)}
    up = Y._up_masks
    maps = []
    for W in Y.up_set_masks(cap):
        vals = []
        for p in range(len(X)):
            y, U = G.points[iso[p]]
            vals.append(U[bin(up[yidx[y]] & W).count("1")])
        maps.append(tuple(vals))
    A = alter_ego(X.sigma)
    for t in maps:
        if not StructureMorphism(X, A, t).is_valid():
            raise InternalInconsistency("translated map is not a structure map")
    return maps


@dataclass
class DualityCertificate:
    ok: bool
    algebra: GodelAlgebra
    dual: DualStructure
    E: GodelAlgebra
    e_table: tuple
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_duality(A, sigma, method="search", strict=True, cap=None):
    """Verify that ``e_A: a -> (x -> x(a))`` is an isomorphism ``A -> E(D(A))``."""
    sigma = _as_sigma(sigma)
    X = dual_space(A, sigma)
    E = evaluate_E(X, method=method, cap=cap)
    pos = {t: i for i, t in enumerate(E.elements)} if X.points else None
    reason = ""
    if pos is None:
        table = tuple(0 for _ in range(A.size))
    else:
        vals = [tuple(x[a] for x in X.points) for a in range(A.size)]
        missing = [v for v in vals if v not in pos]
        table = tuple(pos.get(v, -1) for v in vals)
        if missing:
            reason = "evaluation lands outside E(D(A))"
    if not reason and len(set(table)) != E.size:
        reason = "evaluation map is not surjective"
    if not reason and len(set(table)) != A.size:
        reason = "evaluation map is not injective"
    if not reason and not is_homomorphism(A, E, table):
        reason = "evaluation map is not a homomorphism"
    cert = DualityCertificate(not reason, A, X, E, table, reason)
    if strict and not cert.ok:
        raise InternalInconsistency(f"duality check failed for sigma={sigma}: {reason}")
    return cert


def _refine_structures(structs):
    """Joint colour refinement over partial-op domains, images and preimage counts."""
    cols = []
    for X in structs:
        cols.append([tuple(t[p] is None for t in X.ops) for p in range(len(X))])
    while True:
        sigs = []
        for X, col in zip(structs, cols):
            pre = [[] for _ in range(len(X))]
            for k, t in enumerate(X.all_tables()):
                for p, q in enumerate(t):
                    if q is not None:
                        pre[q].append((k, col[p]))
            sigs.append([(col[p], tuple(None if t[p] is None else col[t[p]] for t in X.all_tables()),
                          tuple(sorted(pre[p], key=repr)))
                         for p in range(len(X))])
        palette = {s: i for i, s in enumerate(sorted({s for sg in sigs for s in sg}, key=repr))}
        new = [[palette[s] for s in sg] for sg in sigs]
        if all(len(set(a)) == len(set(b)) for a, b in zip(new, cols)):
            return new
        cols = new


def structure_iso(X, Y):
    """An isomorphism ``X -> Y`` as a tuple of indices, or None."""
    if len(X) != len(Y) or X.n != Y.n or len(X.ops) != len(Y.ops):
        return None
    if (X.endo is None) != (Y.endo is None):
        return None
    cx, cy = _refine_structures([X, Y])
    if sorted(cx) != sorted(cy):
        return None
    tabs = list(zip(X.all_tables(), Y.all_tables()))
    m = len(X)
    phi = [None] * m
    used = [False] * m

    def assign(p, v, trail):
        stack = [(p, v)]
        while stack:
            p, v = stack.pop()
            if phi[p] is not None:
                if phi[p] != v:
                    return False
                continue
            if used[v] or cx[p] != cy[v]:
                return False
            phi[p] = v
            used[v] = True
            trail.append(p)
            for tX, tY in tabs:
                q, w = tX[p], tY[v]
                if (q is None) != (w is None):
                    return False
                if q is not None:
                    stack.append((q, w))
        return True

    order = sorted(range(m), key=lambda p: (cx.count(cx[p]), p))

    def rec(k):
        while k < m and phi[order[k]] is not None:
            k += 1
        if k == m:
            return True
        p = order[k]
        for v in range(m):
            if used[v] or cy[v] != cx[p]:
                continue
            trail = []
            if assign(p, v, trail) and rec(k + 1):
                return True
            for q in trail:
                used[phi[q]] = False
                phi[q] = None
        return False

    return tuple(phi) if rec(0) else None


def structures_isomorphic(X, Y):
    return structure_iso(X, Y) is not None


def compose_all(ops, n):
    """``ops[0] o ops[1] o ...`` with maximal domains; the identity when ``ops`` is empty."""
    out = identity_op(n)
    for op in reversed(ops):
        out = op.compose(out)
    return out


def composition_identities(n):
    """Pairs of partial maps that should coincide on C_n, as ``(name, i, lhs, rhs)``.

    ``h_1 = f_1 o ... o f_{i-1} o h_i`` for ``2 <= i <= n-2`` and
    ``f_i = g_{i-1} o ... o g_1 o h_1 o g_{n-3} o ... o g_{i+1}`` for ``1 <= i <= n-3``.
    """
    out = []
    for i in range(2, n - 1):
        rhs = compose_all([f_op(n, k) for k in range(1, i)] + [h_op(n, i)], n)
        out.append(("h1-from-hi", i, h_op(n, 1), rhs))
    for i in range(1, n - 2):
        chain = [g_op(n, k) for k in range(i - 1, 0, -1)] + [h_op(n, 1)]
        chain += [g_op(n, k) for k in range(n - 3, i, -1)]
        out.append(("fi-from-g-h1", i, f_op(n, i), compose_all(chain, n)))
    return out

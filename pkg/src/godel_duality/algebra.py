"""Finite Godel algebras stored extensionally by operation tables.

Elements carry arbitrary hashable labels; every table is indexed by
position.  The bounded-lattice homomorphisms into 2 (``TwoHom``) ordered
pointwise form the Esakia forest :func:`hu_dual`, and :func:`vk_algebra`
goes back by taking up-sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import InputError, NotGodelError, ResourceError, StructuralError
from .poset import Poset, bits_of, default_table_cap


def _blocks(n, budget=4_000_000):
    step = max(1, budget // max(1, n * n))
    for start in range(0, n, step):
        yield slice(start, min(n, start + step))


class GodelAlgebra:
    """A finite prelinear Heyting algebra.

    ``meet``, ``join`` and ``impl`` are square tables of element indices;
    ``bot`` and ``top`` are indices.  The one-element (trivial) algebra is
    allowed, but operations that need ``bot != top`` reject it.
    """

    def __init__(self, elements, meet, join, impl, bot, top, check=True):
        self.elements = tuple(elements)
        self.meet = tuple(tuple(int(v) for v in row) for row in meet)
        self.join = tuple(tuple(int(v) for v in row) for row in join)
        self.impl = tuple(tuple(int(v) for v in row) for row in impl)
        self.bot = int(bot)
        self.top = int(top)
        if check:
            self.validate()

    def __len__(self):
        return len(self.elements)

    @property
    def size(self):
        return len(self.elements)

    def __repr__(self):
        return f"{type(self).__name__}(size={self.size})"

    @cached_property
    def _index(self):
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown element {label!r}") from None

    def is_trivial(self):
        return self.bot == self.top

    def leq(self, a, b):
        return self.meet[a][b] == a

    @cached_property
    def np_meet(self):
        return np.array(self.meet, dtype=np.int32).reshape(self.size, self.size)

    @cached_property
    def np_join(self):
        return np.array(self.join, dtype=np.int32).reshape(self.size, self.size)

    @cached_property
    def np_impl(self):
        return np.array(self.impl, dtype=np.int32).reshape(self.size, self.size)

    @cached_property
    def leq_matrix(self):
        """Boolean matrix with ``[a, b]`` true iff ``a <= b``."""
        return self.np_meet == np.arange(self.size)[:, None]

    def validate(self):
        """Check the bounded distributive lattice, residuation and prelinearity laws."""
        n = self.size
        if n == 0:
            raise InputError("an algebra needs at least one element")
        for name in ("meet", "join", "impl"):
            tab = getattr(self, name)
            if len(tab) != n or any(len(row) != n for row in tab):
                raise InputError(f"{name} table is not {n}x{n}")
            if any(not 0 <= v < n for row in tab for v in row):
                raise InputError(f"{name} table has an out-of-range entry")
        if not (0 <= self.bot < n and 0 <= self.top < n):
            raise InputError("bot/top out of range")
        M, J, I, L = self.np_meet, self.np_join, self.np_impl, self.leq_matrix
        idx = np.arange(n)

        def witness(mask, what, exc=NotGodelError):
            pos = tuple(int(v) for v in np.argwhere(mask)[0])
            labels = [str(self.elements[p]) for p in pos]
            raise exc(f"{what} fails at {labels}", witness=labels)

        for T, name in ((M, "meet"), (J, "join")):
            if not (T == T.T).all():
                witness(T != T.T, f"{name} commutativity")
            if not (T[idx, idx] == idx).all():
                witness((T[idx, idx] != idx)[:, None] & np.eye(n, dtype=bool), f"{name} idempotence")
        if not (J[idx[:, None], M] == idx[:, None]).all():
            witness(J[idx[:, None], M] != idx[:, None], "absorption")
        if not (M[self.bot] == self.bot).all() or not (M[self.top] == idx).all():
            raise NotGodelError("bot/top are not the bounds of the lattice")
        for blk in _blocks(n):
            a = idx[blk]
            if not (M[M[blk]][:, :, :] == M[a[:, None, None], M[None, :, :]]).all():
                witness(M[M[blk]] != M[a[:, None, None], M[None, :, :]], "meet associativity")
            lhs = M[a[:, None, None], J[None, :, :]]
            rhs = J[M[blk][:, :, None], M[blk][:, None, :]]
            if not (lhs == rhs).all():
                witness(lhs != rhs, "distributivity")
            res_l = L[M[blk][:, :, None], idx[None, None, :]]
            res_r = L[a[:, None, None], I[None, :, :]]
            if not (res_l == res_r).all():
                witness(res_l != res_r, "residuation a^b<=c iff a<=b->c")
        pre = J[I, I.T]
        if not (pre == self.top).all():
            witness(pre != self.top, "prelinearity (a->b)v(b->a)=top")
        return True

    def is_valid(self):
        try:
            return self.validate()
        except (InputError, NotGodelError):
            return False

    def label_of(self, i):
        return self.elements[i]

    def subalgebra_generated(self, gens):
        """Indices of the subalgebra generated by ``gens`` (and the bounds)."""
        seen = {self.bot, self.top, *gens}
        frontier = list(seen)
        while frontier:
            new = []
            for a in frontier:
                for b in list(seen):
                    for tab in (self.meet, self.join, self.impl):
                        for r in (tab[a][b], tab[b][a]):
                            if r not in seen:
                                seen.add(r)
                                new.append(r)
            frontier = new
        return frozenset(seen)


class Chain(GodelAlgebra):
    """The Heyting chain ``C_n`` on ``0 < 1 < ... < n-1``."""

    def __init__(self, n):
        self.n = n
        r = range(n)
        super().__init__(
            list(r),
            [[min(a, b) for b in r] for a in r],
            [[max(a, b) for b in r] for a in r],
            [[n - 1 if a <= b else b for b in r] for a in r],
            0, n - 1, check=False)

    def __repr__(self):
        return f"Chain({self.n})"


@lru_cache(maxsize=None)
def make_chain(n):
    if not isinstance(n, int) or n < 2:
        raise InputError(f"chains need n >= 2, got {n!r}")
    return Chain(n)


def trivial_algebra():
    return GodelAlgebra(["*"], [[0]], [[0]], [[0]], 0, 0, check=False)


def _lattice_ops(L):
    """meet/join index tables from a boolean order matrix, or raise."""
    n = L.shape[0]
    down = L.sum(axis=0)
    meet = np.empty((n, n), dtype=np.int32)
    join = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        lower = L[:, a][:, None] & L
        score = np.where(lower, down[:, None], -1)
        m = score.argmax(axis=0)
        if not (L[:, m] | ~lower).all() or not lower[m, np.arange(n)].all():
            b = int(np.argwhere(~(L[:, m] | ~lower).all(axis=0) | ~lower[m, np.arange(n)])[0][0])
            raise InputError(f"elements {a} and {b} have no greatest lower bound")
        meet[a] = m
        upper = L[a, :][:, None] & L.T
        score = np.where(upper, -down[:, None], -n - 1)
        j = score.argmax(axis=0)
        if not (L[j, :].T | ~upper).all() or not upper[j, np.arange(n)].all():
            raise InputError(f"element {a} lacks least upper bounds")
        join[a] = j
    return meet, join


def heyting_from_lattice(elements, leq):
    """The unique Godel algebra on a finite bounded distributive lattice.

    ``leq`` is a callable ``leq(a, b)`` on labels or an ``N x N`` boolean
    matrix.  Raises InputError for non-lattices or non-distributive
    lattices and NotGodelError (with a witness pair) when prelinearity fails.
    """
    elements = tuple(elements)
    n = len(elements)
    if callable(leq):
        L = np.array([[bool(leq(a, b)) for b in elements] for a in elements], dtype=bool)
    else:
        L = np.asarray(leq, dtype=bool)
    if L.shape != (n, n) or not L[np.arange(n), np.arange(n)].all():
        raise InputError("order matrix must be square and reflexive")
    if (L & L.T & ~np.eye(n, dtype=bool)).any() or ((L.astype(np.int32) @ L.astype(np.int32) > 0) & ~L).any():
        raise InputError("relation is not a partial order")
    M, J = _lattice_ops(L)
    bots = np.flatnonzero(L.all(axis=1))
    tops = np.flatnonzero(L.all(axis=0))
    if len(bots) != 1 or len(tops) != 1:
        raise InputError("lattice is not bounded")
    idx = np.arange(n)
    for blk in _blocks(n):
        a = idx[blk]
        if not (M[a[:, None, None], J[None, :, :]] == J[M[blk][:, :, None], M[blk][:, None, :]]).all():
            raise InputError("lattice is not distributive")
    down = L.sum(axis=0)
    impl = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        cand = L[M[a]]  # [c, b]: a ^ c <= b
        score = np.where(cand, down[:, None], -1)
        best = score.argmax(axis=0)
        if not (L[:, best] | ~cand).all():
            raise InputError(f"no relative pseudocomplement for {elements[a]!r}")
        impl[a] = best
    top = int(tops[0])
    pre = J[impl, impl.T]
    if not (pre == top).all():
        a, b = (int(v) for v in np.argwhere(pre != top)[0])
        raise NotGodelError(f"not a Godel algebra: prelinearity fails for ({elements[a]!r}, {elements[b]!r})",
                            witness=[str(elements[a]), str(elements[b])])
    return GodelAlgebra(elements, M.tolist(), J.tolist(), impl.tolist(), int(bots[0]), top, check=False)


def product_algebra(*algebras):
    """Direct product with pointwise operations; labels are tuples."""
    if not algebras:
        return trivial_algebra()
    shapes = [range(A.size) for A in algebras]
    combos = list(itertools.product(*shapes))
    pos = {c: i for i, c in enumerate(combos)}
    labels = [tuple(A.elements[c] for A, c in zip(algebras, combo)) for combo in combos]

    def table(name):
        return [[pos[tuple(getattr(A, name)[x][y] for A, x, y in zip(algebras, c, d))] for d in combos]
                for c in combos]

    return GodelAlgebra(labels, table("meet"), table("join"), table("impl"),
                        pos[tuple(A.bot for A in algebras)], pos[tuple(A.top for A in algebras)],
                        check=False)


def adjoin_bottom(A, label="bot"):
    """Linear sum ``bot (+) A`` with Heyting implication recomputed from the order."""
    n = A.size
    L = np.zeros((n + 1, n + 1), dtype=bool)
    L[0, :] = True
    L[1:, 1:] = A.leq_matrix
    return heyting_from_lattice((label,) + A.elements, L)


@dataclass(frozen=True)
class TwoHom:
    """A bounded-lattice homomorphism ``U(A) -> 2`` given by its bit vector."""

    bits: tuple
    source: object = field(default=None, compare=False, repr=False)

    def __call__(self, a):
        return self.bits[a]

    def __lt__(self, other):
        return self.bits < other.bits

    def ones(self):
        return frozenset(i for i, b in enumerate(self.bits) if b)

    def label(self):
        return "".join(str(b) for b in self.bits)

    def __str__(self):
        return self.label()


def is_two_hom(A, bits):
    if bits[A.bot] != 0 or bits[A.top] != 1:
        return False
    return all(bits[A.meet[a][b]] == (bits[a] & bits[b]) and bits[A.join[a][b]] == (bits[a] | bits[b])
               for a in range(A.size) for b in range(a, A.size))


def join_irreducibles(A):
    """Indices of join-irreducible elements (exactly one lower cover)."""
    L = A.leq_matrix
    lt = L & ~np.eye(A.size, dtype=bool)
    li = lt.astype(np.int32)
    between = (li @ li) > 0
    covers = lt & ~between
    return [int(j) for j in np.flatnonzero(covers.sum(axis=0) == 1)]


def hu_dual(A):
    """The Esakia forest of all TwoHoms on ``U(A)`` ordered pointwise.

    A TwoHom is determined by its prime filter ``up(j)`` with ``j``
    join-irreducible; ``u_j <= u_k`` iff ``k <= j``.
    """
    L = A.leq_matrix
    js = join_irreducibles(A)
    homs = {j: TwoHom(tuple(int(b) for b in L[j]), A) for j in js}
    pairs = [(homs[j], homs[k]) for j in js for k in js if j != k and L[k, j]]
    P = Poset.from_relation(sorted(homs.values()), pairs)
    if not P.is_forest():
        raise NotGodelError("dual poset is not a forest")
    return P.as_forest()


def vk_algebra(F, cap=None):
    """Algebra of all up-sets of a finite forest; labels are frozensets of nodes.

    Raises ResourceError when the algebra has more than ``cap`` elements
    (default ``GODEL_TABLE_CAP``); :class:`UpSetLattice` works at any size.
    """
    if not isinstance(F, Poset):
        raise InputError("vk_algebra expects a Forest")
    if not F.is_forest():
        raise NotGodelError("up-sets of a non-forest do not form a Godel algebra")
    cap = default_table_cap() if cap is None else cap
    size = F.count_up_sets()
    if size > cap:
        raise ResourceError(f"algebra has {size} elements, above the table cap {cap}; "
                            "raise GODEL_TABLE_CAP or work with UpSetLattice", witness={"size": size})
    masks = sorted(F.up_set_masks(cap), key=lambda m: (bin(m).count("1"), sorted(bits_of(m))))
    pos = {m: i for i, m in enumerate(masks)}
    full = (1 << len(F)) - 1
    down = F._down_masks
    meet = [[pos[a & b] for b in masks] for a in masks]
    join = [[pos[a | b] for b in masks] for a in masks]
    down_of = {}

    def down_close(s):
        if s not in down_of:
            m = 0
            for i in bits_of(s):
                m |= down[i]
            down_of[s] = m
        return down_of[s]

    impl = [[pos[full & ~down_close(a & ~b)] for b in masks] for a in masks]
    labels = [frozenset(F.elements[i] for i in bits_of(m)) for m in masks]
    A = GodelAlgebra(labels, meet, join, impl, pos[0], pos[full], check=False)
    A.dual_forest = F
    A.masks = tuple(masks)
    return A


class UpSetLattice:
    """The algebra of up-sets of a forest, with elements as bitmasks and no tables."""

    def __init__(self, F):
        if not F.is_forest():
            raise NotGodelError("up-sets of a non-forest do not form a Godel algebra")
        self.forest = F
        self.full = (1 << len(F)) - 1
        self.bot, self.top = 0, self.full
        self._down = F._down_masks
        self._up = F._up_masks

    @cached_property
    def size(self):
        return self.forest.count_up_sets()

    def is_element(self, m):
        return all(self._up[i] & ~m == 0 for i in bits_of(m))

    def meet(self, a, b):
        return a & b

    def join(self, a, b):
        return a | b

    def impl(self, a, b):
        d = 0
        for i in bits_of(a & ~b):
            d |= self._down[i]
        return self.full & ~d

    def label(self, m):
        return frozenset(self.forest.elements[i] for i in bits_of(m))

    def to_algebra(self, cap=None):
        return vk_algebra(self.forest, cap)


@dataclass(frozen=True, eq=False)
class MaskHom:
    """A map from a table algebra into an :class:`UpSetLattice`, valued in bitmasks."""

    source: GodelAlgebra
    target: UpSetLattice
    masks: tuple

    def __call__(self, a):
        return self.masks[a]

    def is_injective(self):
        return len(set(self.masks)) == len(self.masks)

    def compose(self, inner):
        """``self o inner`` for a table homomorphism ``inner``."""
        return MaskHom(inner.source, self.target, tuple(self.masks[v] for v in inner.map))

    def is_valid(self):
        A, L, m = self.source, self.target, self.masks
        if len(m) != A.size or m[A.bot] != L.bot or m[A.top] != L.top:
            return False
        if not all(L.is_element(x) for x in set(m)):
            return False
        return all(m[A.meet[a][b]] == m[a] & m[b] and m[A.join[a][b]] == m[a] | m[b]
                   and m[A.impl[a][b]] == L.impl(m[a], m[b])
                   for a in range(A.size) for b in range(A.size))

    def materialize(self, algebra=None):
        """The same map as a table :class:`Homomorphism` into ``vk`` of the forest."""
        B = self.target.to_algebra() if algebra is None else algebra
        pos = {mk: i for i, mk in enumerate(B.masks)}
        return Homomorphism(self.source, B, tuple(pos[x] for x in self.masks))


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A map between algebras given as a tuple of target indices."""

    source: GodelAlgebra
    target: GodelAlgebra
    map: tuple

    def __call__(self, a):
        return self.map[a]

    def __eq__(self, other):
        return (isinstance(other, Homomorphism) and self.map == other.map
                and self.source is other.source and self.target is other.target)

    def __hash__(self):
        return hash(self.map)

    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    def range(self):
        return frozenset(self.map)

    def compose(self, inner):
        """``self o inner``."""
        return Homomorphism(inner.source, self.target, tuple(self.map[v] for v in inner.map))

    def is_valid(self):
        return is_homomorphism(self.source, self.target, self.map)

    def __repr__(self):
        return f"Homomorphism({self.map})"


def is_homomorphism(A, B, f):
    if len(f) != A.size or f[A.bot] != B.bot or f[A.top] != B.top:
        return False
    for a in range(A.size):
        fa = f[a]
        for b in range(A.size):
            fb = f[b]
            if (f[A.meet[a][b]] != B.meet[fa][fb] or f[A.join[a][b]] != B.join[fa][fb]
                    or f[A.impl[a][b]] != B.impl[fa][fb]):
                return False
    return True


def homomorphisms(A, B, injective=False, limit=None):
    """All homomorphisms ``A -> B`` by backtracking with forced-value propagation."""
    nA = A.size
    f = [None] * nA
    used = {}
    out = []
    tabs = ((A.meet, B.meet), (A.join, B.join), (A.impl, B.impl))

    def assign(a, v, trail):
        stack = [(a, v)]
        while stack:
            a, v = stack.pop()
            if f[a] is not None:
                if f[a] != v:
                    return False
                continue
            if injective and used.get(v, 0):
                return False
            f[a] = v
            used[v] = used.get(v, 0) + 1
            trail.append(a)
            for b in range(nA):
                fb = f[b]
                if fb is None:
                    continue
                for ta, tb in tabs:
                    stack.append((ta[a][b], tb[v][fb]))
                    stack.append((ta[b][a], tb[fb][v]))
        return True

    def undo(trail):
        for a in trail:
            used[f[a]] -= 1
            f[a] = None

    def rec():
        if limit is not None and len(out) >= limit:
            return
        a = next((i for i in range(nA) if f[i] is None), None)
        if a is None:
            out.append(Homomorphism(A, B, tuple(f)))
            return
        for v in range(B.size):
            trail = []
            if assign(a, v, trail):
                rec()
            undo(trail)

    trail = []
    if assign(A.bot, B.bot, trail) and assign(A.top, B.top, trail):
        rec()
    undo(trail)
    return sorted(out, key=lambda h: h.map)


def gamma(A, u, V, up=None):
    """The homomorphism ``A -> C_n`` attached to ``(u, V)`` with ``n = max(V) + 1``.

    ``gamma(u, V)(a)`` is the ``k``-th element of ``V`` (from 0) where ``k``
    counts the TwoHoms ``v`` above ``u`` with ``v(a) = 1``.
    """
    V = sorted(set(V))
    if not V or V[0] != 0:
        raise InputError("V must contain 0")
    n = V[-1] + 1
    if n < 2:
        raise InputError("V must contain a top element n-1 >= 1")
    if up is None:
        up = hu_dual(A).up_set(u)
    if len(up) + 1 != len(V):
        raise InputError(f"|up(u)| + 1 = {len(up) + 1} but |V| = {len(V)}")
    up = list(up)
    return Homomorphism(A, make_chain(n),
                        tuple(V[sum(v.bits[a] for v in up)] for a in range(A.size)))


def omega_compose(x):
    """``omega o x``: the TwoHom sending ``a`` to 1 iff ``x(a)`` is the top of the chain."""
    top = x.target.top
    return TwoHom(tuple(int(v == top) for v in x.map), x.source)


def iota(A, x):
    return omega_compose(x), frozenset(x.map)


def hom_set(A, n, verify=True):
    """``G_n(A, C_n)`` enumerated through the ``(u, V)`` bijection, sorted by map."""
    C = make_chain(n)
    if A.is_trivial():
        return []
    F = hu_dual(A)
    out = []
    for u in F.elements:
        up = F.up_set(u)
        k = len(up)
        for mids in itertools.combinations(range(1, n - 1), k - 1):
            x = gamma(A, u, (0,) + mids + (n - 1,), up)
            if verify and not is_homomorphism(A, C, x.map):
                raise StructuralError(f"gamma produced a non-homomorphism at {u}")
            out.append(x)
    return sorted(out, key=lambda h: h.map)


def variety_index(A):
    """Least k with A in G_k: depth of the dual forest plus two (1 for the trivial algebra)."""
    if A.is_trivial():
        return 1
    return hu_dual(A).depth() + 2


def algebra_iso(A, B):
    """Isomorphism of finite Godel algebras, decided on their dual forests."""
    if A.size != B.size:
        return False
    return hu_dual(A).canonical_form() == hu_dual(B).canonical_form()

"""Finite posets and forests stored by their covering relation.

Forests grow downwards: the maximal elements are the roots and every
parent pointer goes up.  Internally elements are indexed ``0..N-1`` and
up-/down-sets are kept as integer bitmasks.
"""

from __future__ import annotations

import itertools
import os
from functools import cached_property, lru_cache

from .errors import InputError, ResourceError, StructuralError

DEFAULT_CAP = 200_000
DEFAULT_TABLE_CAP = 2_500


def default_cap():
    """Enumeration cap, overridable through the ``GODEL_CAP`` variable."""
    try:
        return int(os.environ.get("GODEL_CAP", DEFAULT_CAP))
    except ValueError:
        return DEFAULT_CAP


def default_table_cap():
    """Largest algebra materialized with full operation tables (GODEL_TABLE_CAP)."""
    return int(os.environ.get("GODEL_TABLE_CAP", DEFAULT_TABLE_CAP))


def bits_of(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class Poset:
    """Immutable finite poset given by elements and covering pairs ``(lower, upper)``."""

    def __init__(self, elements, covers, check=True):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise InputError("duplicate element labels")
        self.covers = frozenset((lo, hi) for lo, hi in covers)
        n = len(self.elements)
        upper = [[] for _ in range(n)]
        lower = [[] for _ in range(n)]
        for lo, hi in self.covers:
            if lo not in self.index or hi not in self.index:
                raise InputError(f"cover ({lo!r}, {hi!r}) mentions an unknown element")
            if lo == hi:
                raise StructuralError(f"reflexive cover at {lo!r}")
            upper[self.index[lo]].append(self.index[hi])
            lower[self.index[hi]].append(self.index[lo])
        self._upper = tuple(tuple(sorted(u)) for u in upper)
        self._lower = tuple(tuple(sorted(d)) for d in lower)
        self._up_masks = self._closure(self._upper)
        self._down_masks = self._closure(self._lower)
        if check:
            for i in range(n):
                for j in self._upper[i]:
                    for k in self._upper[i]:
                        if k != j and self._up_masks[k] >> j & 1:
                            raise StructuralError(
                                f"cover ({self.elements[i]!r}, {self.elements[j]!r}) is implied "
                                "by transitivity")

    def _closure(self, succ):
        n = len(succ)
        masks = [None] * n
        state = [0] * n  # 0 new, 1 in progress, 2 done
        for start in range(n):
            if state[start]:
                continue
            stack = [(start, iter(succ[start]))]
            state[start] = 1
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    m = 1 << node
                    for s in succ[node]:
                        m |= masks[s]
                    masks[node] = m
                    state[node] = 2
                    stack.pop()
                elif state[nxt] == 1:
                    raise StructuralError(
                        f"covering relation has a cycle through {self.elements[nxt]!r}")
                elif state[nxt] == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(succ[nxt])))
        return tuple(masks)

    # construction helpers

    @classmethod
    def from_relation(cls, elements, pairs):
        """Poset whose order is the reflexive-transitive closure of ``pairs``.

        Raises StructuralError when the closure is not antisymmetric.
        """
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        succ = [set() for _ in range(n)]
        for a, b in pairs:
            if a != b:
                succ[index[a]].add(index[b])
        probe = cls.__new__(cls)
        probe.elements = elements
        up = Poset._closure(probe, [tuple(s) for s in succ])
        covers = []
        for i in range(n):
            strict = up[i] & ~(1 << i)
            for j in bits_of(strict):
                between = strict & ~(1 << j)
                if not any(up[k] >> j & 1 for k in bits_of(between)):
                    covers.append((elements[i], elements[j]))
        return cls(elements, covers, check=False)

    @classmethod
    def from_order(cls, elements, leq):
        """Poset from a callable order ``leq(a, b)``."""
        elements = tuple(elements)
        pairs = [(a, b) for a in elements for b in elements if a != b and leq(a, b)]
        return cls.from_relation(elements, pairs)

    # basic queries

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"{type(self).__name__}({len(self)} elements, {len(self.covers)} covers)"

    def __eq__(self, other):
        return (isinstance(other, Poset) and set(self.elements) == set(other.elements)
                and self.covers == other.covers)

    def __hash__(self):
        return hash((frozenset(self.elements), self.covers))

    def _idx(self, p):
        try:
            return self.index[p]
        except KeyError:
            raise InputError(f"unknown element {p!r}") from None

    def leq(self, a, b):
        return bool(self._up_masks[self._idx(a)] >> self._idx(b) & 1)

    def up_set(self, p):
        return frozenset(self.elements[i] for i in bits_of(self._up_masks[self._idx(p)]))

    def down_set(self, p):
        return frozenset(self.elements[i] for i in bits_of(self._down_masks[self._idx(p)]))

    def upper_covers(self, p):
        return tuple(self.elements[i] for i in self._upper[self._idx(p)])

    def lower_covers(self, p):
        return tuple(self.elements[i] for i in self._lower[self._idx(p)])

    def maximal(self):
        return tuple(e for i, e in enumerate(self.elements) if not self._upper[i])

    def minimal(self):
        return tuple(e for i, e in enumerate(self.elements) if not self._lower[i])

    @cached_property
    def _depths(self):
        order = sorted(range(len(self)), key=lambda i: bin(self._up_masks[i]).count("1"))
        d = [0] * len(self)
        for i in order:
            d[i] = max((d[j] + 1 for j in self._upper[i]), default=0)
        return tuple(d)

    def depth_of(self, p):
        """Length of the longest chain in the up-set of ``p``, minus one."""
        return self._depths[self._idx(p)]

    def depth(self):
        """Depth of the poset; -1 for the empty poset."""
        return max(self._depths, default=-1)

    def is_chain(self, subset=None):
        idx = range(len(self)) if subset is None else [self._idx(p) for p in subset]
        idx = list(idx)
        return all(self._up_masks[i] >> j & 1 or self._up_masks[j] >> i & 1
                   for i, j in itertools.combinations(idx, 2))

    def is_forest(self):
        """True iff every principal up-set is a chain."""
        return all(len(u) <= 1 for u in self._upper)

    def order_pairs(self):
        """All pairs ``(a, b)`` with ``a <= b``."""
        return frozenset((self.elements[i], self.elements[j])
                         for i in range(len(self)) for j in bits_of(self._up_masks[i]))

    def is_up_set(self, subset):
        m = 0
        for p in subset:
            m |= self._up_masks[self._idx(p)]
        return m == self.mask_of(subset)

    def mask_of(self, subset):
        m = 0
        for p in subset:
            m |= 1 << self._idx(p)
        return m

    def up_set_masks(self, cap=None):
        """Every up-set as a bitmask, in a deterministic order."""
        cap = default_cap() if cap is None else cap
        order = sorted(range(len(self)), key=lambda i: (self._depths[i], i))
        out = []

        def rec(k, mask):
            if k == len(order):
                out.append(mask)
                if len(out) > cap:
                    raise ResourceError(f"more than {cap} up-sets; raise GODEL_CAP")
                return
            i = order[k]
            rec(k + 1, mask)
            if all(mask >> j & 1 for j in self._upper[i]):
                rec(k + 1, mask | 1 << i)

        rec(0, 0)
        return out

    def count_up_sets(self):
        if self.is_forest():
            memo = {}
            for i in sorted(range(len(self)), key=lambda i: -self._depths[i]):
                prod = 1
                for c in self._lower[i]:
                    prod *= memo[c]
                memo[i] = 1 + prod
            total = 1
            for i in range(len(self)):
                if not self._upper[i]:
                    total *= memo[i]
            return total
        return len(self.up_set_masks())

    # constructions

    def product(self, other):
        """Componentwise order on pairs."""
        elements = [(p, q) for p in self.elements for q in other.elements]
        covers = [((lo, q), (hi, q)) for lo, hi in self.covers for q in other.elements]
        covers += [((p, lo), (p, hi)) for p in self.elements for lo, hi in other.covers]
        return Poset(elements, covers, check=False)

    def disjoint_union(self, other):
        elements = [(0, p) for p in self.elements] + [(1, q) for q in other.elements]
        covers = [((0, a), (0, b)) for a, b in self.covers]
        covers += [((1, a), (1, b)) for a, b in other.covers]
        return Poset(elements, covers, check=False)

    def relabel(self, mapping):
        return type(self)([mapping[e] for e in self.elements],
                          [(mapping[a], mapping[b]) for a, b in self.covers])

    def sub_poset(self, subset):
        keep = set(subset)
        pairs = [(a, b) for a, b in self.order_pairs() if a in keep and b in keep]
        return Poset.from_relation([e for e in self.elements if e in keep], pairs)

    def as_forest(self):
        return Forest(self.elements, self.covers)

    # canonical forms and isomorphism

    def canonical_form(self):
        if not self.is_forest():
            raise StructuralError("canonical forms are defined for forests only")
        return self.as_forest().canonical_form()

    def to_json(self):
        from .serialize import label_str
        return {"nodes": [label_str(e) for e in self.elements],
                "covers": sorted([label_str(a), label_str(b)] for a, b in self.covers)}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(data["nodes"], [tuple(c) for c in data["covers"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad poset JSON: {exc}") from None


class Forest(Poset):
    """A poset in which every principal up-set is a chain."""

    def __init__(self, elements, covers, check=True):
        super().__init__(elements, covers, check=check)
        if not self.is_forest():
            bad = next(e for i, e in enumerate(self.elements) if len(self._upper[i]) > 1)
            raise StructuralError(f"not a forest: {bad!r} has more than one upper cover", witness=str(bad))

    @classmethod
    def from_parent(cls, parent):
        """Forest from a ``{child: parent_or_None}`` mapping."""
        covers = [(c, p) for c, p in parent.items() if p is not None]
        return cls(list(parent), covers)

    @classmethod
    def chain(cls, k, prefix="c"):
        """A k-element chain ``c0 < c1 < ...``."""
        names = [f"{prefix}{i}" for i in range(k)]
        return cls(names, list(zip(names, names[1:])))

    @classmethod
    def antichain(cls, k, prefix="a"):
        return cls([f"{prefix}{i}" for i in range(k)], [])

    def parent(self, p):
        up = self._upper[self._idx(p)]
        return self.elements[up[0]] if up else None

    def s_map(self, p):
        """Unique upper cover of a non-maximal point; maximal points are fixed."""
        q = self.parent(p)
        return p if q is None else q

    def roots(self):
        return self.maximal()

    def parent_map(self):
        return {e: self.parent(e) for e in self.elements}

    def _code(self, i, memo):
        if i not in memo:
            memo[i] = "(" + "".join(sorted(self._code(c, memo) for c in self._lower[i])) + ")"
        return memo[i]

    def canonical_form(self):
        """Sorted recursive child encoding; equal iff the forests are isomorphic."""
        memo = {}
        return "[" + "".join(sorted(self._code(i, memo) for i in range(len(self))
                                    if not self._upper[i])) + "]"

    def to_json(self):
        from .serialize import label_str
        return {"nodes": [label_str(e) for e in self.elements],
                "parent": {label_str(e): (None if self.parent(e) is None else label_str(self.parent(e)))
                           for e in self.elements}}

    @classmethod
    def from_json(cls, data):
        try:
            if "parent" in data:
                parent = data["parent"]
                nodes = data.get("nodes", list(parent))
                missing = [p for p in parent.values() if p is not None and p not in parent]
                if missing or set(nodes) != set(parent):
                    raise InputError(f"forest JSON: nodes and parent keys disagree ({missing})")
                return cls(nodes, [(c, parent[c]) for c in nodes if parent[c] is not None])
            return cls(data["nodes"], [tuple(c) for c in data["covers"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad forest JSON: {exc}") from None

    @classmethod
    def from_code(cls, code):
        """Inverse of :meth:`canonical_form` (labels ``n0, n1, ...`` in DFS order)."""
        if not (code.startswith("[") and code.endswith("]")):
            raise InputError(f"bad forest code {code!r}")
        names, covers, stack = [], [], []
        for ch in code[1:-1]:
            if ch == "(":
                name = f"n{len(names)}"
                names.append(name)
                if stack:
                    covers.append((name, stack[-1]))
                stack.append(name)
            elif ch == ")":
                stack.pop()
            else:
                raise InputError(f"bad forest code {code!r}")
        return cls(names, covers, check=False)


def _tree_code_depth(code):
    depth = best = 0
    for ch in code:
        depth += 1 if ch == "(" else -1
        best = max(best, depth)
    return best - 1


@lru_cache(maxsize=None)
def _trees(k):
    return tuple(sorted({"(" + "".join(f) + ")" for f in _forests(k - 1)}))


@lru_cache(maxsize=None)
def _forests(m):
    if m == 0:
        return ((),)
    out = set()
    for k in range(1, m + 1):
        for t in _trees(k):
            for rest in _forests(m - k):
                out.add(tuple(sorted(rest + (t,))))
    return tuple(sorted(out))


def enumerate_forests(max_nodes, max_depth=None, min_nodes=1):
    """All forests up to isomorphism with ``min_nodes..max_nodes`` nodes, canonically ordered."""
    out = []
    for m in range(min_nodes, max_nodes + 1):
        for f in _forests(m):
            if max_depth is not None and any(_tree_code_depth(t) > max_depth for t in f):
                continue
            out.append(Forest.from_code("[" + "".join(f) + "]"))
    return out


def quotient(P, eq, cover_rule):
    """Quotient of ``P`` by the partition ``eq`` ordered by the closure of ``cover_rule``.

    ``eq`` is an iterable of blocks; ``cover_rule(x, y)`` says that the block of
    ``x`` lies below the block of ``y``.  Blocks become frozensets.
    """
    elements = P.elements if isinstance(P, Poset) else tuple(P)
    blocks = [frozenset(b) for b in eq]
    block_of = {}
    for b in blocks:
        for x in b:
            if x in block_of:
                raise InputError(f"{x!r} lies in two blocks")
            block_of[x] = b
    if set(block_of) != set(elements):
        raise InputError("partition does not cover the elements")
    pairs = {(block_of[x], block_of[y]) for x in elements for y in elements
             if block_of[x] != block_of[y] and cover_rule(x, y)}
    return Poset.from_relation(blocks, pairs)


def _refine(posets):
    """Joint colour refinement on a list of posets; returns one colour list per poset."""
    colors = [[(len(P._upper[i]), len(P._lower[i]), P._depths[i],
                bin(P._up_masks[i]).count("1"), bin(P._down_masks[i]).count("1"))
               for i in range(len(P))] for P in posets]
    while True:
        sigs = [[(c[i], tuple(sorted(c[j] for j in P._upper[i])), tuple(sorted(c[j] for j in P._lower[i])))
                 for i in range(len(P))] for P, c in zip(posets, colors)]
        palette = {s: k for k, s in enumerate(sorted(set(itertools.chain(*sigs)), key=repr))}
        new = [[palette[s] for s in sig] for sig in sigs]
        if all(len(set(a)) == len(set(b)) for a, b in zip(new, colors)):
            return new
        colors = new


def poset_isomorphism(P, Q):
    """An order isomorphism ``P -> Q`` as a dict, or None."""
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return None
    cp, cq = _refine([P, Q])
    if sorted(cp) != sorted(cq):
        return None
    n = len(P)
    order = sorted(range(n), key=lambda i: (sum(1 for c in cp if c == cp[i]), i))
    m = [None] * n
    used = [False] * n

    def ok(i, j):
        for k in range(n):
            if m[k] is None:
                continue
            if (P._up_masks[i] >> k & 1) != (Q._up_masks[j] >> m[k] & 1):
                return False
            if (P._up_masks[k] >> i & 1) != (Q._up_masks[m[k]] >> j & 1):
                return False
        return True

    def rec(t):
        if t == n:
            return True
        i = order[t]
        for j in range(n):
            if not used[j] and cq[j] == cp[i] and ok(i, j):
                m[i], used[j] = j, True
                if rec(t + 1):
                    return True
                m[i], used[j] = None, False
        return False

    if not rec(0):
        return None
    return {P.elements[i]: Q.elements[m[i]] for i in range(n)}


def iso_check(P, Q):
    """Decide order isomorphism; canonical forms for forests, backtracking otherwise."""
    if len(P) != len(Q):
        return False
    if P.is_forest() and Q.is_forest():
        return P.as_forest().canonical_form() == Q.as_forest().canonical_form()
    return poset_isomorphism(P, Q) is not None


def canonical_form(F):
    return F.canonical_form()

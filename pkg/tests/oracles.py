"""Brute-force oracles that share no code paths with the library algorithms."""

import itertools


def all_homs(A, B):
    """Every map A -> B preserving meet, join, impl and bounds, by exhaustive product."""
    out = []
    for m in itertools.product(range(B.size), repeat=A.size):
        if m[A.bot] != B.bot or m[A.top] != B.top:
            continue
        if all(m[A.meet[a][b]] == B.meet[m[a]][m[b]] and m[A.join[a][b]] == B.join[m[a]][m[b]]
               and m[A.impl[a][b]] == B.impl[m[a]][m[b]]
               for a in range(A.size) for b in range(A.size)):
            out.append(m)
    return sorted(out)


def all_two_homs(A):
    """Bit vectors of all bounded-lattice homs A -> 2.

    Exhaustive over 2^|A| maps for small A; otherwise over the indicator of
    every principal filter (all filters of a finite lattice are principal),
    each checked against the meet and join tables.
    """
    if A.size <= 10:
        cands = itertools.product((0, 1), repeat=A.size)
    else:
        cands = (tuple(int(A.meet[a][b] == a) for b in range(A.size)) for a in range(A.size))
    out = []
    for bits in cands:
        if bits[A.bot] != 0 or bits[A.top] != 1:
            continue
        if all(bits[A.meet[a][b]] == bits[a] & bits[b] and bits[A.join[a][b]] == bits[a] | bits[b]
               for a in range(A.size) for b in range(A.size)):
            out.append(bits)
    return sorted(out)


def residuation_ok(A):
    le = lambda a, b: A.meet[a][b] == a
    return all(le(A.meet[a][b], c) == le(a, A.impl[b][c])
               for a in range(A.size) for b in range(A.size) for c in range(A.size))


def chain_impl(n, a, b):
    return n - 1 if a <= b else b


def term_functions(n, k):
    """k-ary term functions on C_n as value tuples over C_n^k, by closure."""
    pts = list(itertools.product(range(n), repeat=k))
    meet = lambda u, v: tuple(min(x, y) for x, y in zip(u, v))
    join = lambda u, v: tuple(max(x, y) for x, y in zip(u, v))
    imp = lambda u, v: tuple(chain_impl(n, x, y) for x, y in zip(u, v))
    funcs = {tuple(0 for _ in pts), tuple(n - 1 for _ in pts)}
    funcs |= {tuple(p[s] for p in pts) for s in range(k)}
    while True:
        new = {op(u, v) for u in funcs for v in funcs for op in (meet, join, imp)} - funcs
        if not new:
            return funcs
        funcs |= new


def forced_tops_class(x, n):
    """Class key of a hom into C_n: the set of elements sent to the top."""
    return frozenset(a for a, v in enumerate(x) if v == n - 1)

"""Fullness witnesses, embeddings, amalgamation, pushouts, coproducts and free algebras."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

from .algebra import (GodelAlgebra, Homomorphism, MaskHom, UpSetLattice, hom_set, homomorphisms, hu_dual, is_homomorphism,
                      make_chain, trivial_algebra, variety_index, vk_algebra)
from .errors import InputError, InternalInconsistency, VarietyError
from .natural import (SigmaSignature, _as_sigma, alter_ego, closed_masks, dual_map, dual_space,
                      power_structure, product_structure, sample_closed_substructures,
                      structure_iso, substructure)
from .poset import bits_of, enumerate_forests
from .translation import F_sigma, G_sigma, sim_classes


@dataclass(frozen=True, eq=False)
class VFormation:
    """Two embeddings ``fB: A -> B`` and ``fC: A -> C`` out of a common algebra."""

    A: GodelAlgebra
    B: GodelAlgebra
    C: GodelAlgebra
    fB: Homomorphism
    fC: Homomorphism

    def validate(self):
        for f, tgt, name in ((self.fB, self.B, "fB"), (self.fC, self.C, "fC")):
            if f.source is not self.A or f.target is not tgt:
                raise InputError(f"{name} has the wrong source or target")
            if not is_homomorphism(self.A, tgt, f.map):
                raise InputError(f"{name} is not a homomorphism")
            if not f.is_injective():
                raise InputError(f"{name} is not injective")
        return True

    @classmethod
    def build(cls, A, B, C, fB, fC):
        V = cls(A, B, C, Homomorphism(A, B, tuple(fB)), Homomorphism(A, C, tuple(fC)))
        V.validate()
        return V


def _check_variety(algebras, n):
    for k, A in enumerate(algebras):
        idx = variety_index(A)
        if idx > n:
            raise VarietyError(f"algebra #{k} (size {A.size}) lies in G_{idx}, not G_{n}",
                               witness={"algebra": k, "index": idx, "n": n})


def is_embedding_dual(f, sigma):
    """Every class of ``D(A)`` meets the image of ``D(f)``."""
    sigma = _as_sigma(sigma)
    DA = dual_space(f.source, sigma)
    sim = sim_classes(DA)
    hit = {sim.class_of[p] for p in dual_map(f, sigma).map}
    return len(hit) == len(sim.classes)


def fibred_product(V, sigma):
    DB, DC = dual_space(V.B, sigma), dual_space(V.C, sigma)
    eB, eC = dual_map(V.fB, sigma), dual_map(V.fC, sigma)
    P = product_structure(DB, DC)
    keep = [k for k, (p, q) in enumerate(P.coords) if eB.map[p] == eC.map[q]]
    X = substructure(P, keep)
    X.coords = tuple(P.coords[k] for k in keep)
    return X, DB, DC


def _mask_of(X, Y, select):
    """Bitmask over ``Y``'s nodes of the classes whose points satisfy ``select``."""
    cls = {pt: i for i, y in enumerate(Y.elements) for pt in y}
    mask = partial = 0
    for p, pt in enumerate(X.points):
        if select(p):
            mask |= 1 << cls[pt]
        else:
            partial |= 1 << cls[pt]
    if mask & partial:
        raise InternalInconsistency("element image is not a union of classes")
    return mask


def _up_set_hom(source, X, L, select):
    """``a -> {[p] : select(p, a)}`` as a homomorphism ``source -> L``."""
    f = MaskHom(source, L, tuple(_mask_of(X, L.forest, lambda p: select(p, a))
                                 for a in range(source.size)))
    if not f.is_valid():
        raise InternalInconsistency("induced map is not a homomorphism")
    return f


@dataclass
class Pushout:
    """Pushout object as the up-set lattice of a forest, with mask-valued maps.

    ``algebra`` materializes full tables and is only practical for small results.
    """

    lattice: UpSetLattice
    pB: MaskHom
    pC: MaskHom
    fibre: object  # the fibred product inside D(B) x D(C)

    @property
    def forest(self):
        return self.lattice.forest

    @property
    def size(self):
        return self.lattice.size

    @cached_property
    def algebra(self):
        return self.lattice.to_algebra()


def pushout(V, n):
    """Pushout of a V-formation in G_n through the fibred product of the duals."""
    _check_variety((V.A, V.B, V.C), n)
    sigma = SigmaSignature.full(n)
    X, DB, DC = fibred_product(V, sigma)
    L = UpSetLattice(F_sigma(X))
    top = n - 1
    pB = _up_set_hom(V.B, X, L, lambda p, b: DB.points[X.coords[p][0]][b] == top)
    pC = _up_set_hom(V.C, X, L, lambda p, c: DC.points[X.coords[p][1]][c] == top)
    if pB.compose(V.fB).masks != pC.compose(V.fC).masks:
        raise InternalInconsistency("pushout square does not commute")
    return Pushout(L, pB, pC, X)


@dataclass
class AmalgamCertificate:
    verdict: str  # "admits" | "fails"
    vformation: VFormation
    n: int
    D: UpSetLattice | None = None
    hB: MaskHom | None = None
    hC: MaskHom | None = None
    side: str | None = None
    witness: tuple | None = None
    merged: tuple | None = None  # two elements identified by the pushout map on ``side``
    detail: dict = field(default_factory=dict)

    @property
    def admits(self):
        return self.verdict == "admits"

    def verify(self):
        """Re-check the certificate from the algebras alone."""
        V, n = self.vformation, self.n
        if self.admits:
            return (self.hB.is_valid() and self.hC.is_valid() and self.hB.is_injective()
                    and self.hC.is_injective() and self.hB.compose(V.fB).masks == self.hC.compose(V.fC).masks)
        src, other = (V.B, V.C) if self.side == "B" else (V.C, V.B)
        f_src, f_other = (V.fB, V.fC) if self.side == "B" else (V.fC, V.fB)
        x = self.witness
        homs = [h.map for h in homomorphisms(src, make_chain(n))]
        if x not in homs:
            return False
        # the tops of x determine its class; no member of the class may glue with the other side
        tops = {a for a, v in enumerate(x) if v == n - 1}
        restrictions = {tuple(z[f_other.map[a]] for a in range(V.A.size))
                        for z in (h.map for h in homomorphisms(other, make_chain(n)))}
        for y in homs:
            if {a for a, v in enumerate(y) if v == n - 1} == tops:
                if tuple(y[f_src.map[a]] for a in range(V.A.size)) in restrictions:
                    return False
        return True

    def to_json(self):
        from .io import mask_hom_to_json
        out = {"verdict": self.verdict, "n": self.n}
        if self.admits:
            out["size"] = self.D.size
            out["amalgam_dual"] = self.D.forest.to_json()
            out["hB"] = mask_hom_to_json(self.hB)
            out["hC"] = mask_hom_to_json(self.hC)
        else:
            out["side"] = self.side
            out["witness"] = list(self.witness)
            if self.merged:
                out["merged"] = list(self.merged)
        return out


def projection_failure(V, n):
    """A point of D(B) or D(C) whose class misses the fibred product, or None.

    This is the dual test: every class on each side must contain a point
    that glues with some point of the other side over D(A).
    """
    _check_variety((V.A, V.B, V.C), n)
    X, DB, DC = fibred_product(V, SigmaSignature.full(n))
    for side, D, proj in (("B", DB, 0), ("C", DC, 1)):
        sim = sim_classes(D)
        hit = {sim.class_of[c[proj]] for c in X.coords}
        missing = [k for k in range(len(sim.classes)) if k not in hit]
        if missing:
            return side, D.points[min(sim.classes[missing[0]])]
    return None


def admits_amalgamation(V, n):
    """Decide amalgamation by the dual test, cross-checked against pushout injectivity."""
    failure = projection_failure(V, n)
    po = pushout(V, n)
    verdict_inj = po.pB.is_injective() and po.pC.is_injective()
    if (failure is None) != verdict_inj:
        raise InternalInconsistency("dual amalgamation test disagrees with pushout injectivity")
    if failure is None:
        return AmalgamCertificate("admits", V, n, D=po.lattice, hB=po.pB, hC=po.pC)
    side, x = failure
    p = po.pB if side == "B" else po.pC
    seen = {}
    merged = None
    for a, v in enumerate(p.masks):
        if v in seen:
            merged = (seen[v], a)
            break
        seen[v] = a
    return AmalgamCertificate("fails", V, n, side=side, witness=tuple(x), merged=merged)


def coproduct_stages(K, n, sigma=None):
    """Intermediate objects of the coproduct procedure, keyed by step name."""
    sigma = SigmaSignature.default_coproduct(n) if sigma is None else _as_sigma(sigma, n)
    _check_variety(K, n)
    forests = [hu_dual(A) for A in K]
    duals = [G_sigma(Y, n, sigma) for Y in forests]
    P = product_structure(*duals, sigma=sigma)
    Q = F_sigma(P)
    return {"forests": forests, "duals": duals, "product": P, "quotient": Q, "size": Q.count_up_sets()}


def coproduct_in_Gn(K, n, sigma=None):
    """Coproduct in G_n of a finite list of algebras."""
    K = list(K)
    if not K:
        return make_chain(2)
    if any(A.is_trivial() for A in K):
        return trivial_algebra()
    return vk_algebra(coproduct_stages(K, n, sigma)["quotient"])


def coproduct_bound(K):
    return 2 + sum(variety_index(A) - 2 for A in K)


def coproduct_in_G(K, sigma=None):
    """Coproduct in the full variety, computed in G_m with ``m = 2 + sum(k_A - 2)``."""
    K = list(K)
    if any(A.is_trivial() for A in K):
        return trivial_algebra()
    return coproduct_in_Gn(K, coproduct_bound(K), sigma)


def free_algebra(n, k):
    """Free k-generated algebra of G_n; ``generators`` holds the generator indices."""
    if n < 2 or k < 0:
        raise InputError("free_algebra needs n >= 2 and k >= 0")
    sigma = SigmaSignature.full(n)
    X = power_structure(sigma, k)
    Y = F_sigma(X)
    A = vk_algebra(Y)
    pos = {m: i for i, m in enumerate(A.masks)}
    A.generators = tuple(pos[_mask_of(X, Y, lambda p, s=s: X.points[p][s] == n - 1)]
                         for s in range(k))
    return A


def check_free(A, n):
    """Universal property: each assignment of generators into C_n extends to exactly one hom."""
    k = len(A.generators)
    images = [tuple(h.map[g] for g in A.generators) for h in hom_set(A, n)]
    if sorted(images) != sorted(itertools.product(range(n), repeat=k)):
        return False
    return A.subalgebra_generated(A.generators) == frozenset(range(A.size))


def unary_term_functions(n):
    """Closure of ``{0, n-1, x}`` on C_n under pointwise operations (independent oracle)."""
    C = make_chain(n)
    funcs = {(0,) * n, (n - 1,) * n, tuple(range(n))}
    frontier = set(funcs)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(funcs):
                for tab in (C.meet, C.join, C.impl):
                    for u, v in ((a, b), (b, a)):
                        t = tuple(tab[u[x]][v[x]] for x in range(n))
                        if t not in funcs:
                            new.add(t)
        funcs |= new
        frontier = new
    return funcs


def realizes_dual(X):
    """Some algebra B has ``D(B)`` isomorphic to X; B is computed as vk(F(X))."""
    try:
        B = vk_algebra(F_sigma(X))
    except Exception:
        return None
    if structure_iso(dual_space(B, X.sigma), X) is None:
        return None
    return B


@dataclass
class FullnessReport:
    n: int
    sigma: SigmaSignature
    witness: object = None
    case: str = ""
    checked: int = 0


def fullness_witness(n, sigma, samples=100, seed=0):
    """Witness substructure X with X not isomorphic to G(F(X)), or None for the full signature.

    For the full signature the realization sweep runs over every closed
    substructure of the alter ego and a sample from its square.
    """
    return fullness_report(n, sigma, samples, seed).witness


def fullness_report(n, sigma, samples=100, seed=0):
    sigma = _as_sigma(sigma, n)
    if n < 4:
        raise InputError("fullness analysis needs n >= 4")
    M = alter_ego(sigma)
    if not sigma.is_full():
        fs = [i for i, c in enumerate(sigma.choices, 1) if c == "f"]
        if fs:
            j = max(fs)
            X = substructure(M, range(j + 1, n))
            case = "f-choice"
        else:
            X = substructure(M, [1, n - 1])
            case = "endo-index"
        G = G_sigma(F_sigma(X), n, sigma)
        if structure_iso(X, G) is not None:
            raise InternalInconsistency(f"fullness witness for {sigma} is realizable")
        if case == "f-choice" and len(G) != n - 1:
            raise InternalInconsistency("unexpected size of the reconstructed structure")
        if case == "endo-index" and G.domain(0) == X.domain(0):
            raise InternalInconsistency("expected a partial-op domain mismatch")
        return FullnessReport(n, sigma, X, case, 1)
    checked = 0
    for m in closed_masks(M):
        X = substructure(M, bits_of(m))
        if realizes_dual(X) is None:
            raise InternalInconsistency(f"closed substructure {X.points} is not a dual space")
        checked += 1
    for X in sample_closed_substructures(power_structure(sigma, 2), samples, seed=seed):
        if realizes_dual(X) is None:
            raise InternalInconsistency(f"closed substructure {X.points} is not a dual space")
        checked += 1
    return FullnessReport(n, sigma, None, "full", checked)


def corpus_algebras(n, max_nodes=6, max_elements=None):
    """vk of every forest with at most ``max_nodes`` nodes and depth at most ``n - 2``."""
    out = []
    for Y in enumerate_forests(max_nodes, max_depth=n - 2):
        if max_elements is not None and Y.count_up_sets() > max_elements:
            continue
        out.append(vk_algebra(Y))
    return out


def vformations(algebras, n):
    """All V-formations over the given algebras, with every pair of embeddings."""
    emb = {}
    for i, A in enumerate(algebras):
        for j, B in enumerate(algebras):
            if A.size <= B.size:
                emb[i, j] = homomorphisms(A, B, injective=True)
    for i, A in enumerate(algebras):
        for j in range(len(algebras)):
            for k in range(j, len(algebras)):
                for fB in emb.get((i, j), []):
                    for fC in emb.get((i, k), []):
                        if j == k and fC.map < fB.map:
                            continue
                        yield VFormation(A, algebras[j], algebras[k], fB, fC)


def find_failing_vformation(n=4, max_elements=8, seed=0):
    """A V-formation in G_n that does not amalgamate, found by seeded search."""
    algebras = corpus_algebras(n, max_nodes=max_elements, max_elements=max_elements)
    cands = list(vformations(algebras, n))
    random.Random(seed).shuffle(cands)
    for V in cands:
        cert = admits_amalgamation(V, n)
        if not cert.admits:
            return V, cert
    return None


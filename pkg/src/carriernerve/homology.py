"""Integer chain complexes, homology, chain maps, mapping cones, connectivity.

Homology here is the stand-in for homotopy: quasi-isomorphism (acyclic
mapping cone) certifies "homotopy equivalent" only at the level of
homology, and k-connectivity for k >= 1 additionally needs a
1-connectivity certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .complex import SimplicialComplex, SimplicialMap, collapse_to_point, is_cone
from .matrix import IntMatrix, invariant_factors
from .presentation import TIETZE_BUDGET, edge_path_presentation, tietze_simplify
from .verdict import Check, MalformedInput, Verdict

PROXY_NOTE = "homology proxy for homotopy: equivalences are certified on integer homology only"


@dataclass(frozen=True)
class ChainComplex:
    """``bases[k]`` lists degree-k generators; ``boundaries[k]`` maps degree k to k-1.

    ``boundaries[0]`` is the zero map to the empty degree -1, or the
    augmentation for an augmented complex.
    """

    bases: tuple
    boundaries: tuple

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def rank_of(self, k: int) -> int:
        return len(self.bases[k]) if 0 <= k < len(self.bases) else 0

    def boundary(self, k: int) -> IntMatrix:
        if 0 <= k < len(self.boundaries):
            return self.boundaries[k]
        return IntMatrix.zeros(self.rank_of(k - 1), self.rank_of(k))

    def is_complex(self) -> bool:
        return all(
            (self.boundary(k - 1) @ self.boundary(k)).is_zero() for k in range(1, len(self.bases))
        )


@dataclass(frozen=True)
class HomologyProfile:
    """Betti numbers and torsion coefficients, degree 0 first."""

    betti: tuple
    torsion: tuple
    reduced: bool = False
    betti_neg1: int = 0

    def at(self, k: int) -> tuple[int, tuple]:
        if k == -1:
            return (self.betti_neg1, ())
        if 0 <= k < len(self.betti):
            return (self.betti[k], self.torsion[k])
        return (0, ())

    def is_trivial(self, upto: int | None = None) -> bool:
        top = len(self.betti) - 1 if upto is None else min(upto, len(self.betti) - 1)
        if self.betti_neg1:
            return False
        return all(self.betti[k] == 0 and not self.torsion[k] for k in range(top + 1))

    def agrees_with(self, other: "HomologyProfile", upto: int | None = None) -> bool:
        top = max(len(self.betti), len(other.betti)) - 1 if upto is None else upto
        return all(self.at(k) == other.at(k) for k in range(-1 if self.reduced else 0, top + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti)) - self.betti_neg1

    def to_json(self) -> dict:
        degrees = [
            {"degree": k, "betti": b, "torsion": list(t)}
            for k, (b, t) in enumerate(zip(self.betti, self.torsion))
        ]
        if self.reduced:
            degrees.insert(0, {"degree": -1, "betti": self.betti_neg1, "torsion": []})
        return {"reduced": self.reduced, "degrees": degrees}


@lru_cache(maxsize=256)
def chain_complex(K: SimplicialComplex) -> ChainComplex:
    """Simplicial chain complex with signs ``(-1)^i`` for the omitted i-th vertex."""
    bases = K.faces_by_dim if not K.is_empty else ()
    index = [{s: i for i, s in enumerate(b)} for b in bases]
    boundaries = [IntMatrix.zeros(0, len(bases[0]))] if bases else []
    for k in range(1, len(bases)):
        entries = {}
        for j, s in enumerate(bases[k]):
            for i in range(len(s)):
                entries[(index[k - 1][s[:i] + s[i + 1 :]], j)] = -1 if i % 2 else 1
        boundaries.append(IntMatrix(len(bases[k - 1]), len(bases[k]), entries))
    return ChainComplex(tuple(bases), tuple(boundaries))


def augmented(cc: ChainComplex) -> ChainComplex:
    if not cc.bases:
        return cc
    n0 = len(cc.bases[0])
    eps = IntMatrix(1, n0, {(0, j): 1 for j in range(n0)})
    return ChainComplex(cc.bases, (eps,) + cc.boundaries[1:])


def chain_homology(cc: ChainComplex, reduced: bool = False) -> HomologyProfile:
    factors = [invariant_factors(cc.boundary(k)) for k in range(len(cc.bases) + 1)]
    betti, torsion = [], []
    for k in range(len(cc.bases)):
        nk = cc.rank_of(k)
        betti.append(nk - len(factors[k]) - len(factors[k + 1]))
        torsion.append(tuple(sorted(d for d in factors[k + 1] if d > 1)))
    neg1 = 0
    if reduced:
        neg1 = 1 - (len(factors[0]) if cc.bases else 0)
    return HomologyProfile(tuple(betti), tuple(torsion), reduced, neg1)


def homology(K: SimplicialComplex, reduced: bool = False) -> HomologyProfile:
    cc = chain_complex(K)
    if reduced:
        if K.is_empty:
            return HomologyProfile((), (), True, 1)
        return chain_homology(augmented(cc), reduced=True)
    return chain_homology(cc)


@dataclass(frozen=True)
class ChainMap:
    """``matrices[k]`` sends source degree-k chains to target degree-k chains."""

    source: ChainComplex
    target: ChainComplex
    matrices: tuple

    def at(self, k: int) -> IntMatrix:
        if 0 <= k < len(self.matrices):
            return self.matrices[k]
        return IntMatrix.zeros(self.target.rank_of(k), self.source.rank_of(k))

    def commutes(self) -> bool:
        top = max(len(self.source.bases), len(self.target.bases))
        for k in range(1, top):
            lhs = self.target.boundary(k) @ self.at(k)
            rhs = self.at(k - 1) @ self.source.boundary(k)
            if lhs != rhs:
                return False
        return True


def _permutation_sign(seq: list) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def induced_chain_map(f: SimplicialMap) -> ChainMap:
    """Chain map of ``f``; collapsed simplices go to zero."""
    src, tgt = chain_complex(f.source), chain_complex(f.target)
    tindex = [{s: i for i, s in enumerate(b)} for b in tgt.bases]
    mats = []
    for k, basis in enumerate(src.bases):
        entries = {}
        rows = tgt.rank_of(k)
        for j, s in enumerate(basis):
            img = [f(v) for v in s]
            if len(set(img)) < len(img):
                continue
            face = tuple(sorted(img, key=lambda v: tindex[0][(v,)]))
            positions = [tindex[0][(v,)] for v in img]
            entries[(tindex[k][face], j)] = _permutation_sign(positions)
        mats.append(IntMatrix(rows, len(basis), entries))
    return ChainMap(src, tgt, tuple(mats))


def identity_chain_map(cc: ChainComplex) -> ChainMap:
    return ChainMap(cc, cc, tuple(IntMatrix.identity(len(b)) for b in cc.bases))


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Algebraic mapping cone: degree k is source_{k-1} + target_k.

    Differential ``(s, t) -> (-d s, f s + d t)``.  Its homology is the
    reduced homology of the topological mapping cone.
    """
    if not f.commutes():
        raise MalformedInput("chain map does not commute with the boundaries")
    S, T = f.source, f.target
    top = max(len(S.bases), len(T.bases) - 1)
    bases = []
    for k in range(top + 1):
        src = S.bases[k - 1] if 1 <= k <= len(S.bases) else ()
        tgt = T.bases[k] if k < len(T.bases) else ()
        bases.append(tuple(("src", s) for s in src) + tuple(("tgt", t) for t in tgt))
    boundaries = [IntMatrix.zeros(0, len(bases[0]))]
    for k in range(1, top + 1):
        s_lo, t_lo = S.rank_of(k - 2), T.rank_of(k - 1)
        s_hi = S.rank_of(k - 1)
        entries = {}
        if k >= 2:
            for (i, j), v in S.boundary(k - 1).entries.items():
                entries[(i, j)] = -v
        for (i, j), v in f.at(k - 1).entries.items():
            entries[(s_lo + i, j)] = v
        if k < len(T.bases):
            for (i, j), v in T.boundary(k).entries.items():
                entries[(s_lo + i, s_hi + j)] = v
        boundaries.append(IntMatrix(s_lo + t_lo, len(bases[k]), entries))
    return ChainComplex(tuple(bases), tuple(boundaries))


def _failing_degree(cone: HomologyProfile, k: int, hs, ht) -> int:
    """Homology degree where ``f_*`` first stops being an isomorphism.

    Cone degree k > 0 sees both coker ``f_*`` in degree k and ker ``f_*`` in
    degree k-1.  With the cone zero below k, ``f_*`` is onto in degree k-1,
    so it is an isomorphism there exactly when the groups agree.
    """
    if k > 0 and hs.at(k - 1) != ht.at(k - 1):
        return k - 1
    return k


def is_quasi_iso(f: ChainMap, degree_bound: int | None = None) -> Check:
    """Does ``f`` induce isomorphisms on homology (in degrees <= degree_bound)?

    Unbounded: the cone is acyclic.  Bounded by m: the cone vanishes in
    degrees <= m (iso below m, onto in degree m) and the degree-m groups of
    source and target agree, which upgrades the surjection to an iso
    because finitely generated abelian groups are Hopfian.  A failure names
    the first bad homology degree and the cone degree that exposed it.
    """
    cone = chain_homology(mapping_cone(f))
    hs, ht = chain_homology(f.source), chain_homology(f.target)
    top = len(cone.betti) - 1 if degree_bound is None else degree_bound
    bad = next((k for k in range(top + 1) if cone.at(k) != (0, ())), None)
    if bad is not None:
        return Check(
            Verdict.FAILS,
            {"cone": cone.to_json(), "cone_degree": bad, "degree": _failing_degree(cone, bad, hs, ht)},
        )
    if degree_bound is None:
        return Check(Verdict.HOLDS, {"cone": cone.to_json()})
    if degree_bound >= 0 and hs.at(degree_bound) != ht.at(degree_bound):
        return Check(Verdict.FAILS, {"cone": cone.to_json(), "degree": degree_bound})
    return Check(Verdict.HOLDS, {"cone": cone.to_json(), "degree_bound": degree_bound})


def simply_connected_certificate(K: SimplicialComplex, tietze_budget: int = TIETZE_BUDGET) -> Check:
    """One-sided certificate that a connected complex has trivial edge-path group."""
    apex = is_cone(K)
    if apex is not None:
        return Check(Verdict.HOLDS, {"certificate": "cone", "apex": str(apex)})
    col = collapse_to_point(K)
    if col.holds:
        return Check(Verdict.HOLDS, {"certificate": "collapse", **_jsonable(col.witness)})
    pres, steps, exhausted = tietze_simplify(edge_path_presentation(K), tietze_budget)
    if pres.is_trivial():
        return Check(Verdict.HOLDS, {"certificate": "tietze", "steps": steps})
    return Check(
        Verdict.UNKNOWN,
        {
            "certificate": "tietze",
            "steps": steps,
            "budget_exhausted": exhausted,
            "generators_left": len(pres.generators),
        },
    )


def _jsonable(d: dict) -> dict:
    return {k: (v if isinstance(v, (int, str, bool)) else str(v)) for k, v in d.items()}


def connected_components(K: SimplicialComplex) -> int:
    parent = {v: v for v in K.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in K.facets:
        r = find(f[0])
        for v in f[1:]:
            parent[find(v)] = r
    return len({find(v) for v in K.vertices})


def connectivity_certificate(
    K: SimplicialComplex, k: int, tietze_budget: int = TIETZE_BUDGET
) -> Check:
    """Three-valued verdict on k-connectivity of ``K``.

    k = -1 and k = 0 are decided exactly.  For k >= 1, nonzero reduced
    homology in degrees <= k refutes; vanishing homology plus a
    1-connectivity certificate proves (Hurewicz); anything else is unknown.
    """
    if k < -1:
        return Check(Verdict.HOLDS, {"reason": "every space is (k)-connected for k < -1"})
    if K.is_empty:
        return Check(Verdict.FAILS, {"reason": "empty"})
    if k == -1:
        return Check(Verdict.HOLDS, {"reason": "nonempty"})
    comps = connected_components(K)
    if comps > 1:
        return Check(Verdict.FAILS, {"reason": "disconnected", "components": comps})
    if k == 0:
        return Check(Verdict.HOLDS, {"reason": "connected"})
    h = homology(K, reduced=True)
    if not h.is_trivial(upto=k):
        return Check(Verdict.FAILS, {"reason": "reduced homology", "homology": h.to_json()})
    pi1 = simply_connected_certificate(K, tietze_budget)
    if pi1.holds:
        return Check(Verdict.HOLDS, {"reason": "acyclic through k and simply connected", **pi1.witness})
    return Check(Verdict.UNKNOWN, {"reason": "no 1-connectivity certificate", **pi1.witness})

"""Finite abstract simplicial complexes and their canonical constructions.

Vertex labels are strings, or :class:`Bary` labels naming the barycenter of a
face once a complex has been subdivided.  Every ordering in the package goes
through :func:`vertex_key`: plain labels sort lexicographically, barycenters
sort after them, first by face dimension and then lexicographically.

A simplex is a plain tuple of labels sorted by :func:`vertex_key`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Mapping

from .verdict import Check, MalformedInput, ResourceLimit, Verdict

Simplex = tuple

ISO_SEARCH_CAP = 32


@dataclass(frozen=True)
class Bary:
    """Barycenter ``b(face)`` of a face of a base complex."""

    face: tuple

    def __str__(self) -> str:
        return "b(" + ",".join(str(v) for v in self.face) + ")"

    def __repr__(self) -> str:
        return str(self)


@lru_cache(maxsize=None)
def vertex_key(v: Hashable) -> tuple:
    if isinstance(v, Bary):
        return (1, len(v.face), tuple(vertex_key(x) for x in v.face))
    return (0, v)


def face_key(s: Simplex) -> tuple:
    """Canonical face order: dimension first, then lexicographic."""
    return (len(s), tuple(vertex_key(v) for v in s))


def lex_key(s: Simplex) -> tuple:
    return tuple(vertex_key(v) for v in s)


def _label(v) -> Hashable:
    return v if isinstance(v, Bary) else str(v)


def simplex(vertices: Iterable) -> Simplex:
    """Canonical simplex on a set of vertices (duplicates collapse)."""
    return tuple(sorted(set(vertices), key=vertex_key))


def _all_faces(s: Simplex):
    for k in range(1, len(s) + 1):
        yield from itertools.combinations(s, k)


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite complex presented by its facets (inclusion-maximal simplices).

    Build instances with :func:`from_facets` or :func:`from_faces`; the
    constructor itself trusts its arguments to be canonical.
    """

    vertices: tuple
    facets: tuple

    @cached_property
    def faces(self) -> tuple:
        seen = set()
        for f in self.facets:
            seen.update(_all_faces(f))
        return tuple(sorted(seen, key=face_key))

    @cached_property
    def face_set(self) -> frozenset:
        return frozenset(self.faces)

    @cached_property
    def faces_by_dim(self) -> tuple:
        out: list[list] = [[] for _ in range(self.dim + 1)]
        for s in self.faces:
            out[len(s) - 1].append(s)
        return tuple(tuple(x) for x in out)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @property
    def is_empty(self) -> bool:
        return not self.facets

    def f_vector(self) -> tuple:
        return tuple(len(x) for x in self.faces_by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def __contains__(self, s) -> bool:
        return simplex(s) in self.face_set

    def __str__(self) -> str:
        return f"SimplicialComplex(f={self.f_vector()})"


def _trusted(facets: Iterable[Simplex]) -> SimplicialComplex:
    facets = sorted(set(facets), key=lex_key)
    verts = simplex(v for f in facets for v in f)
    return SimplicialComplex(verts, tuple(facets))


EMPTY = SimplicialComplex((), ())


def from_facets(facets: Iterable[Iterable]) -> SimplicialComplex:
    """Canonical complex generated by ``facets``; non-maximal entries are absorbed."""
    cands = []
    for raw in facets:
        labels = [_label(v) for v in raw]
        if not labels:
            raise MalformedInput("empty facet")
        if len(set(labels)) != len(labels):
            raise MalformedInput(f"repeated vertex in facet {labels}")
        cands.append(simplex(labels))
    cands = sorted(set(cands), key=lambda s: (-len(s), lex_key(s)))
    kept: list[Simplex] = []
    kept_sets: list[frozenset] = []
    for s in cands:
        ss = frozenset(s)
        if not any(ss < k for k in kept_sets):
            kept.append(s)
            kept_sets.append(ss)
    return _trusted(kept)


def from_faces(faces: Iterable[Simplex]) -> SimplicialComplex:
    """Complex whose facets are the maximal members of a closed face set."""
    faces = set(simplex(s) for s in faces)
    covered = set()
    for s in faces:
        if len(s) > 1:
            covered.update(itertools.combinations(s, len(s) - 1))
    return _trusted(s for s in faces if s not in covered)


def faces(K: SimplicialComplex) -> tuple:
    return K.faces


def skeleton(K: SimplicialComplex, n: int) -> SimplicialComplex:
    if n < 0:
        raise ValueError("skeleton degree must be >= 0")
    return from_faces(s for s in K.faces if len(s) <= n + 1)


def induced_subcomplex(K: SimplicialComplex, vertices: Iterable) -> SimplicialComplex:
    vs = set(vertices)
    return from_faces(s for s in K.faces if vs.issuperset(s))


def subcomplex_from_faces(faces: Iterable[Simplex]) -> SimplicialComplex:
    """Smallest subcomplex containing the given faces."""
    closed = set()
    for s in faces:
        closed.update(_all_faces(simplex(s)))
    return from_faces(closed)


@lru_cache(maxsize=128)
def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision: vertices are faces, simplices are flags."""
    flags = []
    for facet in K.facets:
        for perm in itertools.permutations(facet):
            flags.append(tuple(Bary(simplex(perm[: i + 1])) for i in range(len(perm))))
    return _trusted(flags)


def order_complex(face_set: Iterable[Simplex]) -> SimplicialComplex:
    """Complex of chains of a set of faces ordered by inclusion.

    For a subcomplex this is its barycentric subdivision; for an upward-closed
    face set (a union of open stars) it is the subcomplex of the subdivision
    that the open set deformation retracts onto.
    """
    elems = sorted(set(simplex(s) for s in face_set), key=face_key)
    if not elems:
        return EMPTY
    sets = {s: frozenset(s) for s in elems}
    above = {s: [t for t in elems if sets[s] < sets[t]] for s in elems}
    succ = {
        s: [t for t in above[s] if not any(sets[t] > sets[u] for u in above[s])]
        for s in elems
    }
    has_pred = {t for s in elems for t in above[s]}
    chains = []

    def walk(chain):
        nxt = succ[chain[-1]]
        if not nxt:
            chains.append(tuple(Bary(s) for s in chain))
            return
        for t in nxt:
            walk(chain + [t])

    for s in elems:
        if s not in has_pred:
            walk([s])
    return from_facets(chains)


@dataclass(frozen=True)
class OpenStar:
    """Open star of a vertex: every face containing ``center`` (not a subcomplex)."""

    center: Hashable
    members: frozenset = field(compare=True)

    def __contains__(self, s) -> bool:
        return s in self.members


def _check_vertex(K: SimplicialComplex, v) -> Hashable:
    v = _label(v)
    if v not in K.vertices:
        raise KeyError(f"unknown vertex {v!r}")
    return v


def open_star(K: SimplicialComplex, v) -> OpenStar:
    v = _check_vertex(K, v)
    return OpenStar(v, frozenset(s for s in K.faces if v in s))


def barycentric_star(K: SimplicialComplex, v) -> SimplicialComplex:
    """Subcomplex of sd(K) made of the flags whose minimal face contains ``v``."""
    v = _check_vertex(K, v)
    flags = []
    for facet in K.facets:
        if v not in facet:
            continue
        rest = [w for w in facet if w != v]
        for perm in itertools.permutations(rest):
            chain = (v,) + perm
            flags.append(tuple(Bary(simplex(chain[: i + 1])) for i in range(len(chain))))
    return _trusted(flags)


def is_cone(K: SimplicialComplex):
    """Least apex ``a`` with ``s | {a}`` a face for every face ``s``, else None."""
    if K.is_empty:
        return None
    common = set(K.facets[0])
    for f in K.facets[1:]:
        common.intersection_update(f)
        if not common:
            return None
    return min(common, key=vertex_key)


def collapse_to_point(K: SimplicialComplex, step_budget: int = 10_000) -> Check:
    """Try to collapse ``K`` to a vertex by elementary collapses.

    Cones are collapsed apex-first (each face missing the apex against its
    cone over the apex, top dimension down).  Otherwise the free face chosen
    at each step is the highest-dimensional one, ties broken
    lexicographically.  Failure is ``UNKNOWN``, never a proof of
    non-contractibility.
    """
    if step_budget <= 0:
        raise ValueError("step budget must be positive")
    if K.is_empty:
        return Check(Verdict.UNKNOWN, {"steps": 0, "reason": "empty complex"})
    apex = is_cone(K)
    if apex is not None:
        steps = sum(1 for s in K.faces if apex not in s)
        if steps > step_budget:
            return Check(Verdict.UNKNOWN, {"steps": step_budget, "reason": "budget exhausted"})
        return Check(Verdict.HOLDS, {"steps": steps, "rule": "apex-first", "apex": apex})

    alive = set(K.faces)
    cofaces: dict[Simplex, set] = {s: set() for s in alive}
    for s in alive:
        if len(s) > 1:
            for t in itertools.combinations(s, len(s) - 1):
                cofaces[t].add(s)
    steps = 0
    while len(alive) > 1:
        free = [
            t for t in alive
            if len(cofaces[t]) == 1 and not cofaces[next(iter(cofaces[t]))]
        ]
        if not free:
            return Check(Verdict.UNKNOWN, {"steps": steps, "reason": "no free face"})
        if steps >= step_budget:
            return Check(Verdict.UNKNOWN, {"steps": steps, "reason": "budget exhausted"})
        tau = min(free, key=lambda s: (-len(s), lex_key(s)))
        sigma = next(iter(cofaces[tau]))
        for removed in (sigma, tau):
            alive.discard(removed)
            if len(removed) > 1:
                for t in itertools.combinations(removed, len(removed) - 1):
                    cofaces[t].discard(removed)
            del cofaces[removed]
        steps += 1
    return Check(Verdict.HOLDS, {"steps": steps, "rule": "greedy"})


def _star_profile(K: SimplicialComplex) -> dict:
    prof = {v: [0] * (K.dim + 1) for v in K.vertices}
    for s in K.faces:
        for v in s:
            prof[v][len(s) - 1] += 1
    return {v: tuple(p) for v, p in prof.items()}


def complexes_isomorphic(
    K1: SimplicialComplex, K2: SimplicialComplex, cap: int = ISO_SEARCH_CAP
) -> dict | None:
    """Vertex bijection ``K1 -> K2`` carrying faces onto faces, or None."""
    if len(K1.vertices) != len(K2.vertices) or K1.f_vector() != K2.f_vector():
        return None
    if len(K1.vertices) > cap:
        raise ResourceLimit(f"isomorphism search limited to {cap} vertices")
    p1, p2 = _star_profile(K1), _star_profile(K2)
    cands = {v: [w for w in K2.vertices if p2[w] == p1[v]] for v in K1.vertices}
    if any(not c for c in cands.values()):
        return None
    star1 = {v: [s for s in K1.faces if v in s] for v in K1.vertices}
    star2 = {w: [s for s in K2.faces if w in s] for w in K2.vertices}
    adj1 = {v: {u for s in star1[v] for u in s} - {v} for v in K1.vertices}

    order: list = []
    remaining = set(K1.vertices)
    while remaining:
        placed = set(order)
        v = min(
            remaining,
            key=lambda u: (-len(adj1[u] & placed), len(cands[u]), vertex_key(u)),
        )
        order.append(v)
        remaining.discard(v)

    fwd: dict = {}
    back: dict = {}

    def consistent(v, w) -> bool:
        for s in star1[v]:
            if all(u in fwd for u in s):
                if simplex(fwd[u] for u in s) not in K2.face_set:
                    return False
        for s in star2[w]:
            if all(u in back for u in s):
                if simplex(back[u] for u in s) not in K1.face_set:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in cands[v]:
            if w in back:
                continue
            fwd[v], back[w] = w, v
            if consistent(v, w) and search(i + 1):
                return True
            del fwd[v], back[w]
        return False

    if not search(0):
        return None
    return {v: fwd[v] for v in K1.vertices}


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex map between complexes sending every face onto a face (collapses allowed)."""

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping

    def __post_init__(self):
        vm = {_label(k): _label(v) for k, v in self.vertex_map.items()}
        object.__setattr__(self, "vertex_map", vm)
        missing = [v for v in self.source.vertices if v not in vm]
        if missing:
            raise MalformedInput(f"vertex map undefined on {missing[:3]}")
        targets = set(self.target.vertices)
        stray = [w for w in vm.values() if w not in targets]
        if stray:
            raise MalformedInput(f"vertex map leaves the target at {stray[:3]}")
        for f in self.source.facets:
            if self.image(f) not in self.target.face_set:
                raise MalformedInput(f"image of facet {f} is not a face of the target")

    def __call__(self, v):
        return self.vertex_map[v]

    def image(self, s: Simplex) -> Simplex:
        return simplex(self.vertex_map[v] for v in s)

    def signature(self) -> tuple:
        return tuple(self.vertex_map[v] for v in self.source.vertices)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.signature()))


def identity_map(K: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(K, K, {v: v for v in K.vertices})


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """``g after f``."""
    if f.target != g.source:
        raise MalformedInput("maps are not composable")
    return SimplicialMap(f.source, g.target, {v: g(f(v)) for v in f.source.vertices})

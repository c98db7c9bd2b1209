"""Covers of a complex, nerves, star covers and regularity certificates.

A closed cover has subcomplexes as pieces.  An open-stars cover has open
stars of vertices as pieces; their intersections and unions are upward
closed face sets, and every homological question about them is asked of
the matching subcomplex of the barycentric subdivision
(:func:`~carriernerve.complex.order_complex`), onto which the open set
deformation retracts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Union

from .complex import (
    EMPTY,
    OpenStar,
    SimplicialComplex,
    barycentric_star,
    barycentric_subdivision,
    collapse_to_point,
    complexes_isomorphic,
    face_key,
    from_facets,
    from_faces,
    is_cone,
    open_star,
    order_complex,
    simplex,
)
from .homology import connectivity_certificate, homology, simply_connected_certificate
from .verdict import Check, MalformedInput, Verdict

CLOSED = "closed"
OPEN_STARS = "open-stars"

AE_PROXY_NOTE = (
    "absolute-extensor condition proxied by contractibility certificates "
    "(cone apex, elementary collapse, or acyclic + simply connected)"
)
N_PROXY_NOTE = (
    "AE for at most n-dimensional spaces proxied by (n - |A|)-connectivity of intersections"
)
OPEN_NOTE = "open-star face sets certified through their chain subcomplex in the barycentric subdivision"

Piece = Union[SimplicialComplex, OpenStar, frozenset]


def piece_faces(piece: Piece) -> frozenset:
    if isinstance(piece, SimplicialComplex):
        return piece.face_set
    if isinstance(piece, OpenStar):
        return piece.members
    return frozenset(piece)


def piece_is_empty(piece: Piece) -> bool:
    return not piece_faces(piece)


@dataclass(frozen=True)
class Cover:
    """Named pieces covering ``base``; names are kept in sorted order."""

    base: SimplicialComplex
    pieces: dict
    kind: str = CLOSED

    @property
    def names(self) -> tuple:
        return tuple(self.pieces)

    def faces_of(self, name: str) -> frozenset:
        return piece_faces(self[name])

    def __getitem__(self, name: str) -> Piece:
        try:
            return self.pieces[name]
        except KeyError:
            raise KeyError(f"unknown piece {name!r}") from None

    def pieces_containing(self, s) -> list[str]:
        return [n for n in self.pieces if s in self.faces_of(n)]


def make_cover(base: SimplicialComplex, pieces: dict, kind: str = CLOSED) -> Cover:
    """Validate and canonicalize a cover."""
    if kind not in (CLOSED, OPEN_STARS):
        raise MalformedInput(f"unknown cover kind {kind!r}")
    if not pieces:
        raise MalformedInput("a cover needs at least one piece")
    out = {}
    for name in sorted(pieces):
        p = pieces[name]
        if kind == CLOSED:
            if not isinstance(p, SimplicialComplex):
                raise MalformedInput(f"piece {name!r} of a closed cover must be a subcomplex")
            if not p.face_set <= base.face_set:
                raise MalformedInput(f"piece {name!r} is not a subcomplex of the base")
        else:
            if not isinstance(p, OpenStar):
                raise MalformedInput(f"piece {name!r} of an open-stars cover must be an open star")
            if p.center not in base.vertices:
                raise MalformedInput(f"piece {name!r} is centered off the base")
            p = open_star(base, p.center)
        if piece_is_empty(p):
            raise MalformedInput(f"piece {name!r} is empty")
        out[str(name)] = p
    covered = set()
    for p in out.values():
        covered |= piece_faces(p)
    missing = [s for s in base.faces if s not in covered]
    if missing:
        raise MalformedInput(f"pieces do not cover face {missing[0]}")
    return Cover(base, out, kind)


def _check_names(cover: Cover, names: Iterable[str]) -> list[str]:
    names = sorted(set(names))
    if not names:
        raise ValueError("collection must be nonempty")
    for n in names:
        cover[n]
    return names


def _as_piece(cover: Cover, faces: frozenset) -> Piece:
    if cover.kind == CLOSED:
        return from_faces(faces) if faces else EMPTY
    return frozenset(faces)


def intersection(cover: Cover, names: Iterable[str]) -> Piece:
    """Common part of the named pieces (an empty piece when disjoint)."""
    names = _check_names(cover, names)
    common = cover.faces_of(names[0])
    for n in names[1:]:
        common = common & cover.faces_of(n)
    return _as_piece(cover, common)


def union_of(cover: Cover, names: Iterable[str]) -> Piece:
    names = _check_names(cover, names)
    if cover.kind == CLOSED:
        return from_facets(f for n in names for f in cover[n].facets)
    return frozenset().union(*(cover.faces_of(n) for n in names))


def closed_model(cover: Cover, piece: Piece) -> SimplicialComplex:
    """Subcomplex on which homological certificates for ``piece`` are computed."""
    if isinstance(piece, SimplicialComplex):
        return piece
    return order_complex(piece_faces(piece))


def spans_face(K: SimplicialComplex, vertices: Iterable) -> bool:
    return simplex(vertices) in K.face_set


@dataclass(frozen=True)
class Nerve:
    complex: SimplicialComplex
    witnesses: dict
    dimension_cap: int | None = None


def nerve(cover: Cover, dimension_cap: int | None = None) -> Nerve:
    """Nerve of a cover, grown clique by clique from the pairwise graph."""
    names = cover.names
    fs = {n: cover.faces_of(n) for n in names}
    adj = {n: set() for n in names}
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if fs[a] & fs[b]:
                adj[a].add(b)
                adj[b].add(a)
    witnesses: dict = {}

    def grow(clique: tuple, common: frozenset, candidates: list):
        witnesses[clique] = min(common, key=face_key)
        if dimension_cap is not None and len(clique) > dimension_cap:
            return
        for i, n in enumerate(candidates):
            nxt = common & fs[n]
            if nxt:
                grow(clique + (n,), nxt, [m for m in candidates[i + 1 :] if m in adj[n]])

    for i, n in enumerate(names):
        grow((n,), fs[n], [m for m in names[i + 1 :] if m in adj[n]])
    faces = list(witnesses)
    return Nerve(from_faces(faces), {k: witnesses[k] for k in sorted(faces, key=face_key)}, dimension_cap)


def open_star_cover(K: SimplicialComplex) -> Cover:
    return make_cover(K, {str(v): open_star(K, v) for v in K.vertices}, OPEN_STARS)


def barycentric_star_cover(K: SimplicialComplex) -> Cover:
    return make_cover(
        barycentric_subdivision(K), {str(v): barycentric_star(K, v) for v in K.vertices}, CLOSED
    )


def certify_contractible(K: SimplicialComplex) -> Check:
    """Cone, else collapse, else acyclic + simply connected; refuted by homology."""
    if K.is_empty:
        return Check(Verdict.FAILS, {"certificate": "empty"})
    apex = is_cone(K)
    if apex is not None:
        return Check(Verdict.HOLDS, {"certificate": "cone", "apex": str(apex)})
    col = collapse_to_point(K)
    if col.holds:
        return Check(Verdict.HOLDS, {"certificate": "collapse", "steps": col.witness["steps"]})
    h = homology(K, reduced=True)
    if not h.is_trivial():
        return Check(Verdict.FAILS, {"certificate": "homology", "homology": h.to_json()})
    pi1 = simply_connected_certificate(K)
    if pi1.holds:
        return Check(Verdict.HOLDS, {"certificate": "acyclic+pi1", **pi1.witness})
    return Check(Verdict.UNKNOWN, {"certificate": "acyclic, pi1 undecided", **pi1.witness})


class Mode(str, Enum):
    REGULAR = "regular"
    WEAK = "weak"
    N = "n"


@dataclass(frozen=True)
class RegularityReport:
    mode: Mode
    n: int | None
    entries: tuple  # (collection, Check) pairs in canonical order
    notes: tuple = field(default=())

    @property
    def verdict(self) -> Verdict:
        return Verdict.combine(c.verdict for _, c in self.entries)

    def failures(self) -> list:
        return [(a, c) for a, c in self.entries if c.fails]

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "n": self.n,
            "verdict": self.verdict.value,
            "entries": [
                {"collection": list(a), "verdict": c.verdict.value, "certificate": c.witness}
                for a, c in self.entries
            ],
            "proxy_notes": list(self.notes),
        }


def check_regularity(cover: Cover, mode: Mode | str = Mode.REGULAR, n: int | None = None) -> RegularityReport:
    """Certify (weak / n-) regularity collection by collection."""
    mode = Mode(mode)
    if mode is Mode.N and (n is None or n < 0):
        raise ValueError("n-regularity needs n >= 0")
    notes = [N_PROXY_NOTE if mode is Mode.N else AE_PROXY_NOTE]
    if cover.kind == OPEN_STARS:
        notes.append(OPEN_NOTE)
    entries = []
    for A in nerve(cover).witnesses:
        if mode is Mode.WEAK:
            piece = union_of(cover, A)
        else:
            piece = intersection(cover, A)
        model = closed_model(cover, piece)
        if mode is Mode.N:
            chk = connectivity_certificate(model, n - len(A))
            chk = Check(chk.verdict, {"k": n - len(A), **chk.witness})
        else:
            chk = certify_contractible(model)
        entries.append((A, chk))
    return RegularityReport(mode, n if mode is Mode.N else None, tuple(entries), tuple(notes))


def cover_star(cover: Cover, name: str) -> Piece:
    """Union of every piece meeting the given one (itself included)."""
    mine = cover.faces_of(name)
    return union_of(cover, [m for m in cover.names if cover.faces_of(m) & mine])


def covers_isomorphic(F: Cover, G: Cover):
    """Invertible carrier ``F -> G`` lifted from a nerve isomorphism, or None."""
    from .carrier import Carrier

    bij = complexes_isomorphic(nerve(F).complex, nerve(G).complex)
    if bij is None:
        return None
    return Carrier(F, G, {str(k): str(v) for k, v in bij.items()})

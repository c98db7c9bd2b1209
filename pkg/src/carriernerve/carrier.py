"""Carriers between covers and the simplicial maps they carry.

Carried and weakly carried conditions are checked face by face: a face of
the source plays the role of a point, which is the stronger (and sound)
reading of the pointwise definitions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import (
    Bary,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    face_key,
    is_cone,
    simplex,
    vertex_key,
)
from .cover import (
    CLOSED,
    Cover,
    barycentric_star_cover,
    intersection,
    nerve,
    open_star_cover,
    piece_is_empty,
)
from .verdict import Check, MalformedInput, UnknownCertificate, UnknownExtension, Verdict

FACEWISE_NOTE = "pointwise carried/closeness conditions checked facewise on simplices"


@dataclass(frozen=True)
class Carrier:
    domain: Cover
    codomain: Cover
    assignment: dict

    def __post_init__(self):
        a = {str(k): str(v) for k, v in self.assignment.items()}
        object.__setattr__(self, "assignment", dict(sorted(a.items())))
        missing = [n for n in self.domain.names if n not in a]
        if missing:
            raise MalformedInput(f"carrier undefined on pieces {missing}")
        extra = [n for n in a if n not in self.domain.pieces]
        if extra:
            raise MalformedInput(f"carrier assigns unknown pieces {extra}")
        stray = [v for v in a.values() if v not in self.codomain.pieces]
        if stray:
            raise MalformedInput(f"carrier targets unknown pieces {stray}")

    def __call__(self, name: str) -> str:
        return self.assignment[name]

    def image(self, names) -> tuple:
        return tuple(sorted({self.assignment[n] for n in names}, key=vertex_key))


def validate_carrier(C: Carrier) -> Check:
    """Valid iff every intersecting family of the domain is sent to an intersecting family.

    Failure carries the least violating family (canonical order) as witness.
    """
    memo: dict = {}
    for A in nerve(C.domain).witnesses:
        img = C.image(A)
        if img not in memo:
            memo[img] = not piece_is_empty(intersection(C.codomain, img))
        if not memo[img]:
            return Check(Verdict.FAILS, {"collection": list(A), "image": list(img)})
    return Check(Verdict.HOLDS)


def compose(C: Carrier, D: Carrier) -> Carrier:
    """``D after C``."""
    if C.codomain != D.domain:
        raise MalformedInput("codomain of the first carrier is not the domain of the second")
    return Carrier(C.domain, D.codomain, {k: D(v) for k, v in C.assignment.items()})


def identity_carrier(F: Cover) -> Carrier:
    return Carrier(F, F, {n: n for n in F.names})


def invert(C: Carrier) -> Carrier | None:
    values = list(C.assignment.values())
    if len(set(values)) != len(values) or set(values) != set(C.codomain.names):
        return None
    inv = Carrier(C.codomain, C.domain, {v: k for k, v in C.assignment.items()})
    return inv if validate_carrier(inv).holds else None


def S_carrier(F: Cover) -> Carrier:
    """``F -> st v(F)`` into the open-star cover of the nerve."""
    return Carrier(F, open_star_cover(nerve(F).complex), {n: n for n in F.names})


def B_carrier(F: Cover) -> Carrier:
    """``F -> bst v(F)`` into the barycentric-star cover of the nerve."""
    return Carrier(F, barycentric_star_cover(nerve(F).complex), {n: n for n in F.names})


def I_carrier(F: Cover) -> Carrier:
    """``bst v -> st v`` on the nerve of ``F``."""
    N = nerve(F).complex
    return Carrier(barycentric_star_cover(N), open_star_cover(N), {str(v): str(v) for v in N.vertices})


def _source_mode(f: SimplicialMap, C: Carrier, subdivided: bool | None) -> bool:
    if f.target != C.codomain.base:
        raise MalformedInput("map target is not the base of the carrier's codomain")
    if subdivided is None:
        if f.source == C.domain.base:
            return False
        if f.source == barycentric_subdivision(C.domain.base):
            return True
        raise MalformedInput("map source is neither the domain base nor its subdivision")
    expected = barycentric_subdivision(C.domain.base) if subdivided else C.domain.base
    if f.source != expected:
        raise MalformedInput("map source does not match the declared domain complex")
    return subdivided


def _pieces_of(face, F: Cover, subdivided: bool) -> list[str]:
    """Domain pieces containing a source face (a flag when subdivided)."""
    if not subdivided:
        return F.pieces_containing(face)
    flag = [b.face for b in face]
    return [n for n in F.names if all(s in F.faces_of(n) for s in flag)]


def is_carried(f: SimplicialMap, C: Carrier, subdivided: bool | None = None) -> Check:
    """Every face inside a piece ``F`` lands inside ``C(F)``."""
    sub = _source_mode(f, C, subdivided)
    for s in f.source.faces:
        img = f.image(s)
        for n in _pieces_of(s, C.domain, sub):
            if img not in C.codomain.faces_of(C(n)):
                return Check(
                    Verdict.FAILS,
                    {"face": [str(v) for v in s], "piece": n, "carrier_piece": C(n)},
                    (FACEWISE_NOTE,),
                )
    return Check(Verdict.HOLDS, None, (FACEWISE_NOTE,))


def is_weakly_carried(f: SimplicialMap, C: Carrier, subdivided: bool | None = None) -> Check:
    """Every face has some piece ``F`` containing it with its image inside ``C(F)``."""
    sub = _source_mode(f, C, subdivided)
    for s in f.source.faces:
        img = f.image(s)
        if not any(img in C.codomain.faces_of(C(n)) for n in _pieces_of(s, C.domain, sub)):
            return Check(Verdict.FAILS, {"face": [str(v) for v in s]}, (FACEWISE_NOTE,))
    return Check(Verdict.HOLDS, None, (FACEWISE_NOTE,))


def _support_collections(X: SimplicialComplex, F: Cover) -> dict:
    return {s: tuple(F.pieces_containing(s)) for s in X.faces}


def cone_certificates(C: Carrier, X: SimplicialComplex | None = None) -> dict:
    """Apex of each codomain intersection the cone method will need.

    Collections whose intersection is not a cone are simply absent.
    """
    X = C.domain.base if X is None else X
    certs = {}
    for A in set(_support_collections(X, C.domain).values()):
        img = C.image(A)
        if img in certs:
            continue
        piece = intersection(C.codomain, img)
        apex = is_cone(piece) if isinstance(piece, SimplicialComplex) else None
        if apex is not None:
            certs[img] = apex
    return certs


def _apex_assignment(X, F, C, cones) -> dict:
    if F.kind != CLOSED or C.codomain.kind != CLOSED:
        raise MalformedInput("the cone method needs closed domain and codomain covers")
    if F is not C.domain and F != C.domain:
        raise MalformedInput("cover does not match the carrier's domain")
    if not validate_carrier(C).holds:
        raise MalformedInput("carrier is not valid")
    if cones is None:
        cones = cone_certificates(C, X)
    apex = {}
    for s, A in sorted(_support_collections(X, F).items(), key=lambda kv: face_key(kv[0])):
        img = C.image(A)
        if img not in cones:
            raise UnknownCertificate(f"no cone certificate for codomain collection {list(img)}")
        apex[Bary(s)] = cones[img]
    return apex


def carried_map_via_cones(
    X: SimplicialComplex, F: Cover, C: Carrier, cones: dict | None = None
) -> SimplicialMap:
    """Carried map ``sd(X) -> codomain base``: each barycenter ``b(s)`` goes to
    the apex of the codomain intersection over the pieces containing ``s``.

    Along a flag the collections shrink, so the target intersections grow and
    each apex cones over the images already chosen; the result is simplicial
    and carried, and both facts are re-checked rather than assumed.
    """
    vm = _apex_assignment(X, F, C, cones)
    f = SimplicialMap(barycentric_subdivision(X), C.codomain.base, vm)
    assert is_carried(f, C, subdivided=True).holds
    return f


def extend_carried_map(
    f0: SimplicialMap, X: SimplicialComplex, F: Cover, C: Carrier, cones: dict | None = None
) -> SimplicialMap:
    """Extend a carried map defined on a subcomplex of ``sd(X)`` over all of ``sd(X)``."""
    sd = barycentric_subdivision(X)
    if not f0.source.face_set <= sd.face_set:
        raise MalformedInput("f0 is not defined on a subcomplex of sd(X)")
    if f0.target != C.codomain.base:
        raise MalformedInput("f0 does not map into the codomain base")
    for s in f0.source.faces:
        img = f0.image(s)
        for n in _pieces_of(s, F, True):
            if img not in C.codomain.faces_of(C(n)):
                raise MalformedInput(f"f0 is not carried on flag {s}")
    vm = _apex_assignment(X, F, C, cones)
    vm.update(f0.vertex_map)
    target = C.codomain.base.face_set
    for flag in sd.facets:
        if simplex(vm[v] for v in flag) not in target:
            raise UnknownExtension(f"extension is not simplicial on flag {flag}")
    f = SimplicialMap(sd, C.codomain.base, vm)
    bad = is_carried(f, C, subdivided=True)
    if not bad.holds:
        raise UnknownExtension(f"extension is not carried: {bad.witness}")
    return f


def canonical_nerve_map(F: Cover) -> SimplicialMap:
    """``b(s) -> v(least piece containing s)``, a map ``sd(base) -> N(F)``."""
    if F.kind != CLOSED:
        raise MalformedInput("canonical nerve map is defined for closed covers")
    sd = barycentric_subdivision(F.base)
    N = nerve(F).complex
    vm = {Bary(s): min(F.pieces_containing(s), key=vertex_key) for s in F.base.faces}
    return SimplicialMap(sd, N, vm)


def is_carried_by_K(h: SimplicialMap, F: Cover) -> Check:
    """Each flag with minimal face ``s`` maps into the nerve face of the pieces containing ``s``."""
    for tau in h.source.faces:
        base_face = tau[0].face
        allowed = set(F.pieces_containing(base_face))
        img = h.image(tau)
        if not allowed.issuperset(img):
            return Check(
                Verdict.FAILS,
                {"flag": [str(b) for b in tau], "image": list(img), "allowed": sorted(allowed)},
            )
    return Check(Verdict.HOLDS)


def nerve_simplicial_map(C: Carrier) -> SimplicialMap | None:
    """The vertex map ``v(F) -> v(C(F))`` between nerves, if simplicial."""
    N1, N2 = nerve(C.domain).complex, nerve(C.codomain).complex
    try:
        return SimplicialMap(N1, N2, dict(C.assignment))
    except MalformedInput:
        return None


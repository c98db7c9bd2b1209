"""Named triangulations and covers, plus seeded random instances.

Instance ids are strings: ``bd_delta3``, ``cycle12``, ``torus7``, ``rp2_6``,
``two_arcs``, ``three_arcs``, ``face_cover``, and the seeded families
``random_complex:seed=S[,v=V,p=P]`` and ``random_subcomplex_cover:seed=S,k=K``.
"""

from __future__ import annotations

import itertools
import random
import re

from .complex import SimplicialComplex, from_facets, subcomplex_from_faces
from .cover import Cover, barycentric_star_cover, make_cover

RANDOM_MAX_DIM = 2

# vertex-transitive 7-vertex torus: translates of {0,1,3} and {0,2,3}
_TORUS7 = [t for i in range(7) for t in ((i, i + 1, i + 3), (i, i + 2, i + 3))]

# 6-vertex projective plane (hemi-icosahedron)
_RP2_6 = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
]


def _v(i: int) -> str:
    return f"v{i}"


def bd_delta(n: int) -> SimplicialComplex:
    return from_facets(itertools.combinations([_v(i) for i in range(n + 1)], n))


def cycle(m: int) -> SimplicialComplex:
    if m < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_facets((_v(i), _v((i + 1) % m)) for i in range(m))


def torus7() -> SimplicialComplex:
    return from_facets(tuple(_v(x % 7) for x in t) for t in _TORUS7)


def rp2_6() -> SimplicialComplex:
    return from_facets(tuple(_v(x) for x in t) for t in _RP2_6)


def _arc(start: int, stop: int, m: int = 12) -> SimplicialComplex:
    idx = [i % m for i in range(start, stop + 1)]
    return from_facets((_v(a), _v(b)) for a, b in zip(idx, idx[1:]))


def three_arcs() -> Cover:
    """cycle12 covered by arcs meeting pairwise in single vertices v4, v8, v0."""
    return make_cover(cycle(12), {"A": _arc(0, 4), "B": _arc(4, 8), "C": _arc(8, 12)})


def two_arcs() -> Cover:
    """cycle12 covered by two arcs meeting in the two points v0 and v6."""
    return make_cover(cycle(12), {"arc1": _arc(0, 6), "arc2": _arc(6, 12)})


def face_cover() -> Cover:
    """bd_delta3 covered by its four closed triangles, named by the omitted vertex."""
    K = bd_delta(3)
    pieces = {}
    for tri in K.facets:
        missing = next(v for v in K.vertices if v not in tri)
        pieces[f"F{missing[1:]}"] = from_facets([tri])
    return make_cover(K, pieces)


def random_complex(seed: int, v: int | None = None, p: float | None = None,
                   max_dim: int = RANDOM_MAX_DIM) -> SimplicialComplex:
    """Clique complex of a seeded G(v, p) graph, truncated at ``max_dim``."""
    rng = random.Random(seed)
    if v is None:
        v = rng.randint(4, 8)
    if p is None:
        p = rng.choice([0.5, 0.6, 0.7])
    names = [_v(i) for i in range(v)]
    edges = {frozenset(e) for e in itertools.combinations(names, 2) if rng.random() < p}
    faces = [(x,) for x in names]
    for k in range(2, max_dim + 2):
        for c in itertools.combinations(names, k):
            if all(frozenset(e) in edges for e in itertools.combinations(c, 2)):
                faces.append(c)
    return subcomplex_from_faces(faces)


def random_subcomplex_cover(seed: int, k: int = 3, base: SimplicialComplex | None = None) -> Cover:
    """Cover of a seeded random complex by ``k`` subcomplexes generated by facets.

    Every facet goes to one random piece and, with probability 0.3, to a
    second one; empty pieces borrow a random facet.
    """
    rng = random.Random(10_000 + seed)
    K = random_complex(seed) if base is None else base
    gens: dict[int, list] = {i: [] for i in range(k)}
    for f in K.facets:
        gens[rng.randrange(k)].append(f)
        if rng.random() < 0.3:
            gens[rng.randrange(k)].append(f)
    for i in range(k):
        if not gens[i]:
            gens[i].append(rng.choice(K.facets))
    return make_cover(K, {f"P{i}": subcomplex_from_faces(gens[i]) for i in range(k)})


_NAMED = {
    "torus7": torus7,
    "rp2_6": rp2_6,
    "two_arcs": two_arcs,
    "three_arcs": three_arcs,
    "face_cover": face_cover,
}

_PARAMS = {"seed": int, "v": int, "p": float, "k": int}


def _parse_params(text: str) -> dict:
    out = {}
    for part in filter(None, text.split(",")):
        key, _, val = part.partition("=")
        if key not in _PARAMS or not val:
            raise KeyError(f"bad instance parameter {part!r}")
        out[key] = _PARAMS[key](val)
    return out


def make(instance_id: str) -> SimplicialComplex | Cover:
    """Build the instance named by ``instance_id``; same id, same instance."""
    if instance_id in _NAMED:
        return _NAMED[instance_id]()
    m = re.fullmatch(r"bd_delta(\d+)", instance_id)
    if m:
        return bd_delta(int(m.group(1)))
    m = re.fullmatch(r"cycle(\d+)", instance_id)
    if m:
        return cycle(int(m.group(1)))
    name, _, params = instance_id.partition(":")
    if name == "random_complex":
        kw = _parse_params(params)
        if "seed" not in kw or "k" in kw:
            raise KeyError(f"bad instance id {instance_id!r}")
        return random_complex(**kw)
    if name == "random_subcomplex_cover":
        kw = _parse_params(params)
        if "seed" not in kw or set(kw) - {"seed", "k"}:
            raise KeyError(f"bad instance id {instance_id!r}")
        return random_subcomplex_cover(**kw)
    raise KeyError(f"unknown instance {instance_id!r}")


NAMED_SUITE = ("bd_delta3", "torus7", "rp2_6", "two_arcs", "three_arcs", "face_cover")


def suite() -> list[str]:
    """The 16 acceptance instances: 6 named, 5 random complexes, 5 random covers."""
    return (
        list(NAMED_SUITE)
        + [f"random_complex:seed={s}" for s in range(5)]
        + [f"random_subcomplex_cover:seed={s},k=3" for s in range(5, 10)]
    )


def suite_complex(instance_id: str) -> SimplicialComplex:
    x = make(instance_id)
    return x.base if isinstance(x, Cover) else x


def suite_cover(instance_id: str) -> Cover:
    """The instance itself if it is a cover, else its barycentric-star cover."""
    x = make(instance_id)
    return x if isinstance(x, Cover) else barycentric_star_cover(x)

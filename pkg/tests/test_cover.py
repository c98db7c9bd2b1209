import itertools

import pytest

import oracles
from builders import random_cover
from carriernerve import gallery
from carriernerve.complex import (
    Bary,
    OpenStar,
    barycentric_subdivision,
    complexes_isomorphic,
    from_facets,
    simplex,
)
from carriernerve.cover import (
    AE_PROXY_NOTE,
    CLOSED,
    OPEN_STARS,
    Mode,
    barycentric_star_cover,
    check_regularity,
    cover_star,
    covers_isomorphic,
    intersection,
    make_cover,
    nerve,
    open_star_cover,
    piece_faces,
    union_of,
)
from carriernerve.verdict import MalformedInput, Verdict

SUITE = gallery.suite()
SUITE_COVERS = [i for i in SUITE if gallery.make(i).__class__.__name__ == "Cover"]

triangle = from_facets([["a", "b"], ["b", "c"], ["a", "c"]])


def test_intersection_examples():
    F = gallery.two_arcs()
    assert intersection(F, ["arc1"]) == F["arc1"]
    meet = intersection(F, ["arc1", "arc2"])
    assert meet.facets == (("v0",), ("v6",))
    S = open_star_cover(from_facets([["a", "b", "c"]]))
    assert intersection(S, ["a", "b", "c"]) == {("a", "b", "c")}


def test_unknown_piece_name():
    with pytest.raises(KeyError):
        intersection(gallery.two_arcs(), ["arc9"])
    with pytest.raises(KeyError):
        union_of(gallery.two_arcs(), ["arc9"])


def test_union_examples():
    F = gallery.three_arcs()
    assert union_of(F, ["A", "B", "C"]) == gallery.cycle(12)
    S = gallery.bd_delta(3)
    north = from_facets([t for t in S.facets if "v0" in t])
    south = from_facets([t for t in S.facets if "v0" not in t])
    H = make_cover(S, {"N": north, "S": south})
    assert union_of(H, ["N", "S"]) == S


def test_make_cover_rejections():
    K = gallery.cycle(4)
    with pytest.raises(MalformedInput):
        make_cover(K, {"A": from_facets([["v0", "v1"]])})
    with pytest.raises(MalformedInput):
        make_cover(K, {"A": K, "B": from_facets([["v0", "v2"]])})
    with pytest.raises(MalformedInput):
        make_cover(K, {})
    with pytest.raises(MalformedInput):
        make_cover(K, {"A": K}, kind="sideways")
    with pytest.raises(MalformedInput):
        make_cover(triangle, {"a": OpenStar("a", frozenset())}, OPEN_STARS)


def test_nerve_examples():
    K = gallery.cycle(5)
    assert nerve(make_cover(K, {"all": K})).complex.f_vector() == (1,)
    N3 = nerve(gallery.three_arcs()).complex
    assert complexes_isomorphic(N3, triangle) is not None
    assert nerve(gallery.two_arcs()).complex.facets == (("arc1", "arc2"),)


def test_nerve_witnesses_are_least_common_faces():
    N = nerve(gallery.three_arcs())
    assert N.witnesses[("A", "B")] == ("v4",)
    assert N.witnesses[("A", "C")] == ("v0",)


@pytest.mark.parametrize("seed", range(40))
def test_nerve_matches_exhaustive_subsets(seed):
    F = random_cover(seed)
    got = {frozenset(A) for A in nerve(F).witnesses}
    assert got == oracles.nonempty_families(F)
    for A, w in nerve(F).witnesses.items():
        assert all(w in F.faces_of(n) for n in A)


def test_nerve_dimension_cap():
    N = nerve(gallery.face_cover(), dimension_cap=1)
    assert N.complex.dim == 1
    assert N.dimension_cap == 1


def test_open_star_cover_examples():
    P = open_star_cover(from_facets([["v"]]))
    assert P.names == ("v",) and P["v"].members == {("v",)}
    S = open_star_cover(triangle)
    assert len(S.names) == 3
    for a, b in itertools.combinations(S.names, 2):
        assert intersection(S, [a, b])
    assert not intersection(S, ["a", "b", "c"])


def test_bst_cover_of_an_edge():
    B = barycentric_star_cover(from_facets([["a", "b"]]))
    meet = intersection(B, ["a", "b"])
    assert meet.facets == ((Bary(("a", "b")),),)


@pytest.mark.parametrize("iid", SUITE)
def test_bst_cover_face_rule_and_union(iid):
    K = gallery.suite_complex(iid)
    B = barycentric_star_cover(K)
    for s in K.faces:
        assert (Bary(s),) in intersection(B, [str(v) for v in s]).face_set
    assert union_of(B, B.names) == barycentric_subdivision(K)


def test_regularity_examples():
    assert check_regularity(gallery.three_arcs()).verdict is Verdict.HOLDS
    two = check_regularity(gallery.two_arcs())
    assert two.verdict is Verdict.FAILS
    (A, chk), = two.failures()
    assert A == ("arc1", "arc2")
    assert chk.witness["certificate"] == "homology"
    assert check_regularity(gallery.face_cover()).verdict is Verdict.HOLDS


def test_regularity_report_names_the_proxy():
    j = check_regularity(gallery.three_arcs()).to_json()
    assert AE_PROXY_NOTE in j["proxy_notes"]
    assert [e["collection"] for e in j["entries"]][:3] == [["A"], ["B"], ["C"]]


def test_regularity_of_open_star_cover():
    rep = check_regularity(open_star_cover(gallery.torus7()))
    assert rep.verdict is Verdict.HOLDS
    assert len(rep.notes) == 2


@pytest.mark.parametrize("iid", SUITE_COVERS)
def test_regular_implies_weak_never_fails(iid):
    F = gallery.make(iid)
    if check_regularity(F, Mode.REGULAR).verdict is Verdict.HOLDS:
        assert check_regularity(F, Mode.WEAK).verdict is not Verdict.FAILS


@pytest.mark.parametrize("iid", SUITE)
def test_regular_implies_weak_on_bst_covers(iid):
    F = barycentric_star_cover(gallery.suite_complex(iid))
    assert check_regularity(F, Mode.REGULAR).verdict is Verdict.HOLDS
    assert check_regularity(F, Mode.WEAK).verdict is not Verdict.FAILS


def test_weak_mode_on_two_arcs():
    # the union of both arcs is the whole circle
    assert check_regularity(gallery.two_arcs(), Mode.WEAK).verdict is Verdict.FAILS


def test_n_regular_examples():
    assert check_regularity(gallery.three_arcs(), Mode.N, 1).verdict is Verdict.HOLDS
    assert check_regularity(gallery.face_cover(), Mode.N, 2).verdict is Verdict.HOLDS
    assert check_regularity(gallery.two_arcs(), Mode.N, 1).verdict is Verdict.HOLDS
    assert check_regularity(gallery.two_arcs(), Mode.N, 2).verdict is Verdict.FAILS


def test_n_zero_singletons_reduce_to_nonempty():
    rep = check_regularity(gallery.two_arcs(), Mode.N, 0)
    for A, chk in rep.entries:
        if len(A) == 1:
            assert chk.holds and chk.witness["k"] == -1


def test_n_mode_requires_n():
    with pytest.raises(ValueError):
        check_regularity(gallery.three_arcs(), Mode.N)


def test_cover_star_examples():
    K = from_facets([["a"], ["b"]])
    F = make_cover(K, {"A": from_facets([["a"]]), "B": from_facets([["b"]])})
    assert cover_star(F, "A") == F["A"]
    assert cover_star(gallery.three_arcs(), "A") == gallery.cycle(12)
    S = open_star_cover(triangle)
    assert cover_star(S, "a") == piece_faces(S["a"]) | piece_faces(S["b"]) | piece_faces(S["c"])


@pytest.mark.parametrize("seed", range(10))
def test_cover_star_contains_piece_and_is_monotone(seed):
    F = gallery.random_subcomplex_cover(seed)
    for n in F.names:
        star = cover_star(F, n)
        assert piece_faces(F[n]) <= piece_faces(star)
    extra = dict(F.pieces, Z=F.base)
    G = make_cover(F.base, extra)
    for n in F.names:
        assert piece_faces(cover_star(F, n)) <= piece_faces(cover_star(G, n))


def test_covers_isomorphic_examples():
    F = gallery.three_arcs()
    C = covers_isomorphic(F, F)
    assert C is not None
    assert covers_isomorphic(F, gallery.two_arcs()) is None


@pytest.mark.parametrize("iid", SUITE)
def test_open_and_bst_covers_are_isomorphic(iid):
    K = gallery.suite_complex(iid)
    C = covers_isomorphic(open_star_cover(K), barycentric_star_cover(K))
    assert C is not None
    N1 = nerve(open_star_cover(K)).complex
    N2 = nerve(barycentric_star_cover(K)).complex
    assert {simplex(C(n) for n in s) for s in N1.faces} == N2.face_set


def test_kind_constants():
    assert gallery.three_arcs().kind == CLOSED
    assert open_star_cover(triangle).kind == OPEN_STARS

import random

import pytest

from carriernerve import gallery
from carriernerve.carrier import canonical_nerve_map
from carriernerve.complex import (
    SimplicialMap,
    barycentric_subdivision,
    compose_maps,
    from_facets,
    identity_map,
)
from carriernerve.cover import barycentric_star_cover, make_cover, open_star_cover
from carriernerve.homology import PROXY_NOTE
from carriernerve.homotopy import (
    approximate_identity,
    contiguity_chain,
    contiguous,
    g_close,
    same_on_homology,
    verify_n_nerve_theorem,
    verify_nerve_theorem,
)
from carriernerve.serialize import parse_label
from carriernerve.verdict import MalformedInput, Verdict

SUITE = gallery.suite()
C12 = gallery.cycle(12)


def const(K, target, w):
    return SimplicialMap(K, target, {v: w for v in K.vertices})


def rotation(n, by=1):
    C = gallery.cycle(n)
    return SimplicialMap(C, C, {f"v{i}": f"v{(i + by) % n}" for i in range(n)})


def assert_chain(chain, f, g):
    assert chain[0] == f and chain[-1] == g
    for a, b in zip(chain, chain[1:]):
        assert contiguous(a, b).holds
    assert same_on_homology(f, g)


def test_g_close_examples():
    F = gallery.three_arcs()
    f = identity_map(C12)
    assert g_close(f, f, F).holds
    K = from_facets([["a"], ["b"]])
    G = make_cover(K, {"P": from_facets([["a"]]), "Q": from_facets([["b"]])})
    chk = g_close(const(C12, K, "a"), const(C12, K, "b"), G)
    assert chk.verdict is Verdict.FAILS


def test_g_close_needs_matching_maps():
    with pytest.raises(MalformedInput):
        g_close(identity_map(C12), identity_map(gallery.cycle(5)), gallery.three_arcs())


@pytest.mark.parametrize("iid", SUITE)
def test_nerve_roundtrip_is_close_to_identity(iid):
    # sd(sd K) -> N(bst cover) = K against the double last-vertex approximation
    K = gallery.suite_complex(iid)
    F = barycentric_star_cover(K)
    h = canonical_nerve_map(F)
    roundtrip = SimplicialMap(h.source, K, {b: parse_label(h(b)) for b in h.source.vertices})
    approx = compose_maps(approximate_identity(K), approximate_identity(F.base))
    assert g_close(roundtrip, approx, open_star_cover(K)).holds


def test_contiguous_examples():
    f = identity_map(C12)
    assert contiguous(f, f).holds
    assert contiguous(const(C12, C12, "v0"), const(C12, C12, "v1")).holds
    assert contiguous(const(C12, C12, "v0"), const(C12, C12, "v2")).verdict is Verdict.FAILS


def test_chain_for_equal_maps_has_no_steps():
    f = identity_map(C12)
    assert contiguity_chain(f, f) == [f]


def test_chain_between_adjacent_constants():
    f, g = const(C12, C12, "v0"), const(C12, C12, "v1")
    chain = contiguity_chain(f, g)
    assert len(chain) == 2
    assert_chain(chain, f, g)


def test_chain_between_far_constants():
    f, g = const(C12, C12, "v0"), const(C12, C12, "v3")
    chain = contiguity_chain(f, g)
    assert chain is not None
    assert_chain(chain, f, g)


def test_rotation_of_bare_cycle_is_not_found():
    # no vertex of C_12 can move alone: every single reassignment of the
    # identity breaks an edge, so the search space is one state
    assert contiguity_chain(identity_map(C12), rotation(12)) is None


@pytest.mark.parametrize("n", [4, 6, 12])
def test_rotation_after_subdivision(n):
    C = gallery.cycle(n)
    a = approximate_identity(C)
    r = rotation(n)
    b = compose_maps(r, a)
    chain = contiguity_chain(a, b)
    assert chain is not None and len(chain) - 1 <= 100
    assert_chain(chain, a, b)


def test_chain_respects_max_steps():
    C = gallery.cycle(12)
    a = approximate_identity(C)
    b = compose_maps(rotation(12, 6), a)
    assert contiguity_chain(a, b, max_steps=1) is None
    with pytest.raises(ValueError):
        contiguity_chain(a, a, max_steps=0)


def test_chain_state_budget():
    a = approximate_identity(C12)
    b = compose_maps(rotation(12, 6), a)
    assert contiguity_chain(a, b, state_budget=5) is None


@pytest.mark.parametrize("seed", range(25))
def test_contiguous_pairs_give_one_step_chains(seed):
    rng = random.Random(seed)
    K = gallery.random_complex(seed)
    T = from_facets([["a", "b", "c"], ["c", "d"]])
    f = SimplicialMap(K, T, {v: rng.choice(["a", "b", "c"]) for v in K.vertices})
    g = SimplicialMap(K, T, {v: rng.choice(["a", "b", "c"]) for v in K.vertices})
    assert contiguous(f, g).holds
    chain = contiguity_chain(f, g)
    assert len(chain) <= 2
    assert_chain(chain, f, g)


def test_same_on_homology_detects_reflection():
    C = gallery.cycle(5)
    refl = SimplicialMap(C, C, {f"v{i}": f"v{(-i) % 5}" for i in range(5)})
    assert not same_on_homology(identity_map(C), refl)
    assert same_on_homology(identity_map(C), rotation(5))


def test_verify_three_arcs():
    rep = verify_nerve_theorem(gallery.three_arcs(), "three_arcs")
    assert rep.verdict is Verdict.HOLDS
    assert rep.base_homology.betti == (1, 1) == rep.nerve_homology.betti
    assert PROXY_NOTE in rep.proxy_notes


def test_verify_two_arcs():
    rep = verify_nerve_theorem(gallery.two_arcs())
    assert rep.regularity.verdict is Verdict.FAILS
    assert rep.quasi_iso.verdict is Verdict.FAILS
    assert rep.verdict is Verdict.FAILS
    assert rep.base_homology.at(1) == (1, ()) and rep.nerve_homology.at(1) == (0, ())


def test_verify_face_cover():
    rep = verify_nerve_theorem(gallery.face_cover())
    assert rep.verdict is Verdict.HOLDS
    assert rep.base_homology.betti == rep.nerve_homology.betti == (1, 0, 1)


@pytest.mark.parametrize("iid", SUITE)
def test_verify_bst_cover(iid):
    K = gallery.suite_complex(iid)
    rep = verify_nerve_theorem(barycentric_star_cover(K))
    assert rep.verdict is Verdict.HOLDS
    assert rep.base_homology == rep.nerve_homology


@pytest.mark.parametrize("iid", SUITE)
def test_positive_reports_carry_the_proxy_string(iid):
    rep = verify_nerve_theorem(gallery.suite_cover(iid))
    if rep.verdict is Verdict.HOLDS:
        assert any("homology proxy for homotopy" in n for n in rep.to_json()["proxy_notes"])


def test_verify_rejects_open_covers():
    with pytest.raises(MalformedInput):
        verify_nerve_theorem(open_star_cover(C12))


def test_verify_n_three_arcs():
    rep = verify_n_nerve_theorem(gallery.three_arcs(), 1)
    assert rep.regularity.verdict is Verdict.HOLDS
    assert rep.quasi_iso.holds and rep.degree_bound == 0


def test_verify_n_face_cover():
    rep = verify_n_nerve_theorem(gallery.face_cover(), 2)
    assert rep.verdict is Verdict.HOLDS
    assert rep.base_homology.agrees_with(rep.nerve_homology, 1)
    sup = rep.supplementary
    assert sup["base_1_connectivity"]["verdict"] == "holds"
    assert sup["nerve_1_connectivity"]["verdict"] == "holds"


def test_verify_n_two_arcs_respects_the_bound():
    bounded = verify_n_nerve_theorem(gallery.two_arcs(), 1)
    assert bounded.verdict is Verdict.HOLDS
    assert bounded.base_homology.at(0) == bounded.nerve_homology.at(0)
    assert verify_nerve_theorem(gallery.two_arcs()).quasi_iso.verdict is Verdict.FAILS


def test_verify_n_needs_positive_n():
    with pytest.raises(ValueError):
        verify_n_nerve_theorem(gallery.three_arcs(), 0)


def test_report_json_is_plain_data():
    import json

    j = verify_nerve_theorem(gallery.three_arcs(), "x").to_json()
    assert json.loads(json.dumps(j)) == j
    assert j["verdict"] == "holds" and j["quasi_iso"] == "holds"


def test_sd_source_of_canonical_map():
    h = canonical_nerve_map(gallery.three_arcs())
    assert h.source == barycentric_subdivision(C12)

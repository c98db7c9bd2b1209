import pytest
from hypothesis import given, settings, strategies as st

import oracles
from carriernerve import gallery
from carriernerve.complex import SimplicialMap, barycentric_subdivision, from_facets, identity_map
from carriernerve.homology import (
    PROXY_NOTE,
    ChainMap,
    chain_complex,
    connectivity_certificate,
    homology,
    identity_chain_map,
    induced_chain_map,
    is_quasi_iso,
    mapping_cone,
    chain_homology,
)
from carriernerve.matrix import IntMatrix
from carriernerve.presentation import (
    Presentation,
    edge_path_presentation,
    free_reduce,
    tietze_simplify,
)
from carriernerve.verdict import MalformedInput, Verdict

SUITE = gallery.suite()
point = from_facets([["p"]])


def test_point_chain_complex():
    cc = chain_complex(point)
    assert [len(b) for b in cc.bases] == [1]


def test_edge_boundary_signs():
    cc = chain_complex(from_facets([["a", "b"]]))
    assert cc.boundary(1).to_dense() == [[-1], [1]]


def test_bd_delta3_boundaries_compose_to_zero():
    cc = chain_complex(gallery.bd_delta(3))
    assert (cc.boundary(2).rows, cc.boundary(2).cols) == (6, 4)
    assert (cc.boundary(1).rows, cc.boundary(1).cols) == (4, 6)
    assert (cc.boundary(1) @ cc.boundary(2)).is_zero()


@pytest.mark.parametrize(
    "iid, betti, torsion",
    [
        ("bd_delta3", (1, 0, 1), ((), (), ())),
        ("torus7", (1, 2, 1), ((), (), ())),
        ("rp2_6", (1, 0, 0), ((), (2,), ())),
        ("cycle12", (1, 1), ((), ())),
    ],
)
def test_known_homology(iid, betti, torsion):
    h = homology(gallery.make(iid))
    assert h.betti == betti and h.torsion == torsion


@pytest.mark.parametrize("iid", SUITE)
def test_homology_against_rational_and_mod2_ranks(iid):
    K = gallery.suite_complex(iid)
    betti, twos = oracles.betti_and_p_torsion(K.facets, 2)
    h = homology(K)
    assert h.betti == betti
    assert tuple(sum(1 for t in ts if t % 2 == 0) for ts in h.torsion) == twos


@pytest.mark.parametrize("iid", SUITE)
def test_euler_characteristic_consistency(iid):
    K = gallery.suite_complex(iid)
    assert homology(K).euler_characteristic() == K.euler_characteristic()


@pytest.mark.parametrize("iid", SUITE)
def test_boundary_squared_zero(iid):
    K = gallery.suite_complex(iid)
    assert chain_complex(K).is_complex()
    assert mapping_cone(identity_chain_map(chain_complex(K))).is_complex()


def test_reduced_homology():
    h = homology(from_facets([["a"], ["b"]]), reduced=True)
    assert h.betti == (1,) and h.betti_neg1 == 0
    assert homology(point, reduced=True).is_trivial()
    assert homology(gallery.bd_delta(3), reduced=True).betti == (0, 0, 1)


def test_induced_identity_is_identity():
    K = gallery.torus7()
    f = induced_chain_map(identity_map(K))
    for k in range(3):
        assert f.at(k) == IntMatrix.identity(len(chain_complex(K).bases[k]))


def test_induced_collapse_is_zero():
    f = induced_chain_map(SimplicialMap(from_facets([["a", "b"]]), from_facets([["c"]]), {"a": "c", "b": "c"}))
    assert f.at(1).is_zero()
    assert f.commutes()


def test_induced_orientation_sign():
    E = from_facets([["a", "b"]])
    swap = induced_chain_map(SimplicialMap(E, E, {"a": "b", "b": "a"}))
    assert swap.at(1).to_dense() == [[-1]]


def test_cone_of_point_identity_is_acyclic():
    cone = chain_homology(mapping_cone(identity_chain_map(chain_complex(point))))
    assert cone.is_trivial()


def test_cone_of_zero_map_on_point():
    cc = chain_complex(point)
    zero = ChainMap(cc, cc, (IntMatrix.zeros(1, 1),))
    cone = chain_homology(mapping_cone(zero))
    assert cone.betti == (1, 1)
    assert is_quasi_iso(zero).verdict is Verdict.FAILS


def test_cone_rejects_non_chain_maps():
    cc = chain_complex(from_facets([["a", "b"]]))
    bad = ChainMap(cc, cc, (IntMatrix.identity(2), IntMatrix.zeros(1, 1)))
    with pytest.raises(MalformedInput):
        mapping_cone(bad)


@pytest.mark.parametrize("iid", SUITE)
def test_identity_is_quasi_iso(iid):
    cc = chain_complex(gallery.suite_complex(iid))
    assert is_quasi_iso(identity_chain_map(cc)).verdict is Verdict.HOLDS


def test_point_into_sphere_is_not_quasi_iso():
    S = gallery.bd_delta(3)
    inc = SimplicialMap(from_facets([["v0"]]), S, {"v0": "v0"})
    chk = is_quasi_iso(induced_chain_map(inc))
    assert chk.verdict is Verdict.FAILS and chk.witness["degree"] == 2
    assert is_quasi_iso(induced_chain_map(inc), degree_bound=1).holds


@pytest.mark.parametrize("iid", SUITE)
def test_sd_keeps_homology(iid):
    K = gallery.suite_complex(iid)
    assert homology(K) == homology(barycentric_subdivision(K))


def test_connectivity_examples():
    assert connectivity_certificate(point, -1).verdict is Verdict.HOLDS
    two = from_facets([["a"], ["b"]])
    assert connectivity_certificate(two, 0).verdict is Verdict.FAILS
    S = gallery.bd_delta(3)
    assert connectivity_certificate(S, 1).verdict is Verdict.HOLDS
    assert connectivity_certificate(S, 2).verdict is Verdict.FAILS
    assert connectivity_certificate(gallery.cycle(5), 1).verdict is Verdict.FAILS
    assert connectivity_certificate(from_facets([]), -1).verdict is Verdict.FAILS


def test_connectivity_never_claims_past_homology():
    for iid in SUITE:
        K = gallery.suite_complex(iid)
        h = homology(K, reduced=True)
        for k in range(0, 3):
            if connectivity_certificate(K, k).holds:
                assert h.is_trivial(upto=k)


def test_rp2_fundamental_group_not_certified_trivial():
    chk = connectivity_certificate(gallery.rp2_6(), 1)
    assert chk.verdict is Verdict.FAILS


def test_edge_path_presentation_of_cycle_has_one_free_generator():
    pres = edge_path_presentation(gallery.cycle(6))
    assert len(pres.generators) == 1 and pres.relators == []


def test_tietze_kills_simplex_boundary_groups():
    pres, steps, exhausted = tietze_simplify(edge_path_presentation(gallery.bd_delta(3)))
    assert pres.is_trivial() and not exhausted


def test_tietze_budget():
    pres = Presentation([1, 2], [[1, 2, -1, -2]])
    out, _, _ = tietze_simplify(pres, budget=5)
    assert not out.is_trivial()


def test_free_reduce():
    assert free_reduce([1, 2, -2, -1, 3]) == [3]


def test_profile_json_shape():
    j = homology(gallery.rp2_6()).to_json()
    assert j["degrees"][1] == {"degree": 1, "betti": 0, "torsion": [2]}
    assert PROXY_NOTE.startswith("homology proxy for homotopy")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_complexes_betti_against_rational_ranks(seed):
    K = gallery.random_complex(seed)
    assert homology(K).betti == oracles.betti_and_p_torsion(K.facets)[0]

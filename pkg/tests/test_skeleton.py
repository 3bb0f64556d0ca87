from __future__ import annotations

import pytest

from ydweyl.groups import direct_product, make_cyclic
from ydweyl.scalars import MINUS_ONE, RootOfUnity, minus_one
from ydweyl.skeleton import (
    Edge,
    NoSkeleton,
    NotRealizable,
    Skeleton,
    SkeletonError,
    Vertex,
    catalog,
    classify_skeleton,
    classify_tuple,
    extract_skeleton,
    match_skeleton,
    realize_skeleton,
    skeleton_reflection_check,
    supports_commute,
    supports_commute_via_braiding,
    two_point_ratio,
)
from ydweyl.ydmod import YDTuple, induce_from_values

CHARS = [0, 2, 3, 5, 7]

FINITE_TYPES = [
    ("alpha", 2), ("alpha", 3), ("alpha", 4), ("beta", 2), ("beta", 3), ("beta'", 3), ("beta''", 3),
    ("gamma", 3), ("gamma", 4), ("delta", 4), ("delta", 5), ("epsilon", 6), ("phi", 4),
]


def _allowed(name: str, char: int) -> bool:
    if name == "beta":
        return char == 3
    if name in ("gamma", "phi"):
        return char != 2
    return True


@pytest.mark.parametrize("char", CHARS)
@pytest.mark.parametrize("name,theta", FINITE_TYPES)
def test_realize_then_classify_round_trip(name, theta, char):
    if not _allowed(name, char):
        with pytest.raises(NotRealizable):
            realize_skeleton(name, theta, char)
        return
    M = realize_skeleton(name, theta, char)
    assert M.theta == theta and M.char == char
    assert M.support_generates()
    t = classify_skeleton(extract_skeleton(M), char)
    assert (t.name, t.theta) == (name, theta)


def test_non_finite_catalog_entries_are_not_realized():
    with pytest.raises(NotRealizable):
        realize_skeleton("beta'", 4)
    with pytest.raises(SkeletonError):
        realize_skeleton("alpha")


def test_alpha_two_extraction():
    M = realize_skeleton("alpha", 2)
    S = extract_skeleton(M)
    assert S.vertices == [Vertex(2, ratio=S.vertices[0].ratio), Vertex(2, ratio=S.vertices[1].ratio)]
    assert S.edges == {(0, 1): Edge(1, None, True)}
    assert S.format().splitlines()[-1] == "edge 1-2: lines=1 style=dashed orientation=none"


def test_beta_double_prime_shows_minus_p_ratio():
    M = realize_skeleton("beta''", 3)
    S = extract_skeleton(M)
    found, T = match_skeleton(S, 0)
    p = found.p
    assert p.order == 6
    two = [k for k, v in enumerate(S.vertices) if v.points == 2]
    assert len(two) == 1
    assert S.vertices[two[0]].ratio == MINUS_ONE * p
    text = S.format(found.shown_ratios(T))
    assert f"label=({(MINUS_ONE * p).literal()})" in text


def test_beta_prime_skeleton_shape():
    M = realize_skeleton("beta'", 3)
    S = extract_skeleton(M)
    assert [v.points for v in S.vertices] == [1, 1, 3]
    assert S.edge(0, 1).lines == 1 and not S.edge(0, 1).dashed
    assert S.edge(1, 2) == Edge(2, 2, False, S.edge(1, 2).label)
    assert S.edge(0, 2) is None


@pytest.mark.parametrize("name,theta,char", [("alpha", 3, 0), ("gamma", 3, 0), ("beta'", 3, 0), ("beta''", 3, 5), ("phi", 4, 3)])
def test_dashed_edges_agree_with_braiding(name, theta, char):
    M = realize_skeleton(name, theta, char)
    for i in range(theta):
        for j in range(theta):
            assert supports_commute(M[i], M[j]) == supports_commute_via_braiding(M[i], M[j])
    S = extract_skeleton(M)
    for (i, j), e in S.edges.items():
        assert e.dashed == (not supports_commute(M[i], M[j]))


@pytest.mark.parametrize("name,theta", [("alpha", 2), ("gamma", 3), ("delta", 4)])
def test_two_point_ratio_is_anchor_independent(name, theta):
    M = realize_skeleton(name, theta)
    for N in M:
        if N.dim == 2:
            assert two_point_ratio(N, 0) == two_point_ratio(N, 1)


def test_gamma_diagram_in_char_two_is_not_in_catalog():
    # the labels -1 collapse to 1 in characteristic 2
    S = extract_skeleton(realize_skeleton("gamma", 3, 0))
    v = list(S.vertices)
    v[2] = Vertex(1, label=minus_one(2))
    edges = dict(S.edges)
    edges[(1, 2)] = Edge(edges[(1, 2)].lines, edges[(1, 2)].toward, False, minus_one(2))
    assert classify_skeleton(Skeleton(v, edges), 2).name == "none"
    assert classify_skeleton(S, 0).name == "gamma"


def test_catalog_sizes():
    names = {t.type.name for t in catalog(3)}
    assert {"alpha", "beta", "beta'", "beta''", "gamma"} <= names
    assert "phi" in {t.type.name for t in catalog(4)}
    assert "epsilon" in {t.type.name for t in catalog(8)}
    assert all(t.type.name != "phi" for t in catalog(5))


def test_no_skeleton_when_no_entry_is_minus_one():
    K = direct_product(make_cyclic(12, "g"), make_cyclic(12, "h"))
    g, h = K.gen("g"), K.gen("h")
    q = RootOfUnity(12, 1)
    V1 = induce_from_values(K, g, {g: q, h: q ** -1})
    V2 = induce_from_values(K, h, {g: q ** -1, h: q})
    M = YDTuple(K, [V1, V2])
    # a matrix with no entry -1 on the edge has no skeleton
    with pytest.raises(NoSkeleton):
        extract_skeleton(M, matrix=((2, -2), (-2, 2)))
    with pytest.raises(SkeletonError):
        extract_skeleton(YDTuple(K, [V1]))


@pytest.mark.parametrize("name", ["beta'", "beta''"])
@pytest.mark.parametrize("char", [0, 2, 3])
def test_third_reflection_swaps_beta_prime_types(name, char):
    rep = skeleton_reflection_check(realize_skeleton(name, 3, char))
    assert rep.ok, rep.deviations
    other = "beta''" if name == "beta'" else "beta'"
    assert rep.results == {0: f"{name}_3", 1: f"{name}_3", 2: f"{other}_3"}


@pytest.mark.parametrize("name,theta,char", [("alpha", 3, 0), ("gamma", 3, 0), ("beta", 3, 3), ("delta", 4, 0), ("phi", 4, 0)])
def test_other_types_are_fixed_by_reflections(name, theta, char):
    rep = skeleton_reflection_check(realize_skeleton(name, theta, char))
    assert rep.ok, rep.deviations
    assert set(rep.results.values()) == {f"{name}_{theta}"}


def test_classify_tuple_reports_consistent_verdicts():
    rep = classify_tuple(realize_skeleton("gamma", 3))
    assert rep.skeleton_type.name == "gamma" and rep.skeleton_finite
    assert rep.groupoid_finite is True
    assert rep.nichols_status == "ok" and rep.dimension == 2 ** 15
    assert rep.inconsistencies == [] and rep.warnings == []


def test_classify_tuple_warns_on_decomposable_tuple():
    K = direct_product(make_cyclic(6, "g"), make_cyclic(6, "h"))
    g, h = K.gen("g"), K.gen("h")
    V1 = induce_from_values(K, g, {g: MINUS_ONE, h: RootOfUnity(1, 0)})
    V2 = induce_from_values(K, h, {g: RootOfUnity(1, 0), h: MINUS_ONE})
    rep = classify_tuple(YDTuple(K, [V1, V2]))
    assert "not braid-indecomposable (decomposable tuple)" in rep.warnings
    assert rep.dimension == 4

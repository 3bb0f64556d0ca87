from __future__ import annotations

import cmath
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ydweyl.groups import (
    LinearCharacter,
    build_group,
    centralizer,
    direct_product,
    linear_characters,
    make_cyclic,
    make_gamma_quotient,
    subgroup_generated,
    symmetric_three_group,
)
from ydweyl.scalars import RootOfUnity, q_number, splitting_field
from ydweyl.ydmod import (
    EXCEEDS_CAP,
    DataCorruption,
    InducedModule,
    NotAbsolutelySimple,
    UnsupportedModule,
    YDError,
    YDTuple,
    adjoint_power,
    braiding,
    cartan_matrix,
    classify_pair,
    commuting_triple_vanishes,
    dual,
    induce_from_values,
    is_absolutely_simple,
    is_braid_indecomposable,
    iso_fingerprint,
    predict_pair,
    realize_pair_class,
    reflect,
    restrict,
    squared_braiding_is_identity,
    to_induced,
    vanishing_degree,
)

NUMERIC_TOL = 1e-9


def _gamma3_modules(char: int = 0) -> list[InducedModule]:
    G = make_gamma_quotient(3, 2, 6)
    out = []
    for g in (G.gen("a"), G.gen("b"), G.mul(G.gen("a"), G.gen("b")), G.gen("nu")):
        for chi in linear_characters(centralizer(G, g), char)[:4]:
            out.append(InducedModule(G, g, chi))
    return out


# ---------------------------------------------------------------------------
# Induced modules


@pytest.mark.parametrize("G", [make_gamma_quotient(3, 2, 6), symmetric_three_group()], ids=["gamma3", "S3"])
def test_induced_module_is_a_graded_representation(G):
    for g in range(G.order):
        for chi in linear_characters(centralizer(G, g))[:3]:
            V = InducedModule(G, g, chi)
            assert V.dim * centralizer(G, g).order == G.order
            for h1, h2 in itertools.product(range(G.order), repeat=2):
                m1, m2, m12 = V.mono(h1), V.mono(h2), V.mono(G.mul(h1, h2))
                for i in range(V.dim):
                    j, a = m2[i]
                    k, b = m1[j]
                    assert m12[i] == (k, a * b)
            for h in range(G.order):
                for i, (j, _) in enumerate(V.mono(h)):
                    assert V.degrees[j] == G.conj(h, V.degrees[i])


def test_module_equality_ignores_the_anchor():
    G = make_gamma_quotient(3, 2, 6)
    V = InducedModule(G, G.gen("a"), linear_characters(centralizer(G, G.gen("a")))[1])
    for k, d in enumerate(V.degrees):
        psi = V.chi.transport(V.transversal[k])
        W = InducedModule(G, d, LinearCharacter(centralizer(G, d), psi.values, check=False))
        assert W == V
        assert iso_fingerprint(W) == iso_fingerprint(V)


def test_induced_module_rejects_wrong_domain():
    G = make_gamma_quotient(3, 2, 6)
    chi = linear_characters(G.whole)[0]
    with pytest.raises(YDError):
        InducedModule(G, G.gen("a"), chi)


@pytest.mark.parametrize("V", _gamma3_modules(), ids=repr)
def test_dual_is_an_involution(V):
    D = dual(V)
    assert D.dim == V.dim
    assert set(D.degrees) == {V.group.inv(d) for d in V.degrees}
    assert dual(D) == V


# ---------------------------------------------------------------------------
# Braiding


def _apply_braiding(mods, x, y):
    """c(x (x) y) for basis vectors x = (module, index): returns (y', x, scalar)."""
    (a, i), (b, j) = x, y
    k, s = mods[b].mono(mods[a].degrees[i])[j]
    return (b, k), (a, i), s


def test_yang_baxter_on_basis_triples():
    mods = _gamma3_modules()[::3]
    basis = [(a, i) for a, M in enumerate(mods) for i in range(M.dim)]
    for x, y, z in itertools.product(basis, repeat=3):
        # c1 c2 c1
        y1, x1, s1 = _apply_braiding(mods, x, y)
        z2, x2, s2 = _apply_braiding(mods, x1, z)
        z3, y3, s3 = _apply_braiding(mods, y1, z2)
        left = (z3, y3, x2, s1 * s2 * s3)
        # c2 c1 c2
        z1, y4, t1 = _apply_braiding(mods, y, z)
        z5, x5, t2 = _apply_braiding(mods, x, z1)
        y6, x6, t3 = _apply_braiding(mods, x5, y4)
        right = (z5, y6, x6, t1 * t2 * t3)
        assert left == right


@pytest.mark.parametrize("pair", list(itertools.combinations(range(8), 2)))
def test_squared_braiding_matches_field_computation(pair):
    mods = _gamma3_modules()[::2]
    V, W = mods[pair[0]], mods[pair[1]]
    F = splitting_field(0, 6)
    c_vw = braiding(V, W, F)
    c_wv = braiding(W, V, F)
    identity = True
    for (i, j), img in c_vw.items():
        total: dict = {}
        for (j2, i2), c1 in img.items():
            for (i3, j3), c2 in c_wv[(j2, i2)].items():
                key = (i3, j3)
                total[key] = F.add(total.get(key, F.zero), F.mul(c1, c2))
        total = {k: v for k, v in total.items() if not F.is_zero(v)}
        identity &= total == {(i, j): F.one}
    assert squared_braiding_is_identity(V, W) == identity


# ---------------------------------------------------------------------------
# Diagonal braidings


def _rosso_vanishing(q11: RootOfUnity, q12q21: RootOfUnity, char: int, cap: int) -> int | str:
    """Largest m with (ad x1)^m(x2) != 0 by the Rosso criterion."""
    for m in range(1, cap + 2):
        if q_number(m, q11, char) or (q11 ** (m - 1) * q12q21).is_one():
            return m - 1
    return EXCEEDS_CAP


_DIAGONAL_GROUP = build_group({"constructor": "product", "factors": [
    {"constructor": "cyclic", "n": 6, "name": "g1"},
    {"constructor": "cyclic", "n": 6, "name": "g2"},
]})


@settings(max_examples=80)
@given(
    st.sampled_from([0, 2, 3, 5]),
    st.lists(st.integers(0, 5), min_size=4, max_size=4),
)
def test_diagonal_vanishing_degree_matches_rosso(char, exps):
    G = _DIAGONAL_GROUP
    g1, g2 = G.gen("g1"), G.gen("g2")
    q = [[RootOfUnity(6, exps[0]), RootOfUnity(6, exps[1])], [RootOfUnity(6, exps[2]), RootOfUnity(6, exps[3])]]
    if char == 2:
        q = [[x ** 2 for x in row] for row in q]
    if char == 3:
        q = [[x ** 3 for x in row] for row in q]
    V1 = induce_from_values(G, g1, {g1: q[0][0], g2: q[1][0]})
    V2 = induce_from_values(G, g2, {g1: q[0][1], g2: q[1][1]})
    M = YDTuple(G, [V1, V2], char)
    got = vanishing_degree(M[0], M[1], M.field, cap=8)
    assert got == _rosso_vanishing(q[0][0], q[0][1] * q[1][0], char, 8)


def _symmetrize(vec: dict, q) -> dict:
    """Braided symmetrizer on words in letters with diagonal braiding q."""

    def swap(v, i):
        out: dict = {}
        for w, a in v.items():
            u = list(w)
            u[i], u[i + 1] = w[i + 1], w[i]
            out[tuple(u)] = out.get(tuple(u), 0) + a * q[w[i]][w[i + 1]]
        return out

    def add(a, b):
        r = dict(a)
        for k, v in b.items():
            r[k] = r.get(k, 0) + v
        return r

    def sym(v, m):
        if m <= 1:
            return v
        cur = sym(v, m - 1)
        total = dict(cur)
        for i in range(m - 2, -1, -1):
            cur = swap(cur, i)
            total = add(total, cur)
        return total

    return sym(vec, len(next(iter(vec))))


def _triple_vanishes_by_symmetrizer(e) -> bool:
    Q = [[0, e[0], e[1]], [e[2], 0, e[3]], [e[4], e[5], 0]]
    q = [[cmath.exp(2j * cmath.pi * Q[i][j] / 6) for j in range(3)] for i in range(3)]
    inner = {(1, 2): 1, (2, 1): -q[1][2]}
    outer: dict = {}
    for w, a in inner.items():
        outer[(0,) + w] = outer.get((0,) + w, 0) + a
        outer[w + (0,)] = outer.get(w + (0,), 0) - q[0][1] * q[0][2] * a
    return all(abs(x) < NUMERIC_TOL for x in _symmetrize(outer, q).values())


def test_commuting_triple_closed_form_exhaustive_order_six():
    for e in itertools.product(range(6), repeat=6):
        q12, q13, q21, q23, q31, q32 = (RootOfUnity(6, x) for x in e)
        assert commuting_triple_vanishes(q12, q21, q13, q31, q23, q32) == _triple_vanishes_by_symmetrizer(e), e


def test_symmetrizer_oracle_detects_rank_two_relations():
    # (ad x1)(x2) vanishes exactly when q12 q21 = 1
    for a, b in itertools.product(range(6), repeat=2):
        q = [[-1, cmath.exp(2j * cmath.pi * a / 6)], [cmath.exp(2j * cmath.pi * b / 6), -1]]
        s = _symmetrize({(0, 1): 1, (1, 0): -q[0][1]}, q)
        assert all(abs(x) < NUMERIC_TOL for x in s.values()) == ((a + b) % 6 == 0)


# ---------------------------------------------------------------------------
# Adjoint chains and pairs


def test_adjoint_levels_carry_a_module_structure():
    G = make_gamma_quotient(3, 2, 6)
    a, b = G.gen("a"), G.gen("b")
    V = InducedModule(G, a, linear_characters(centralizer(G, a))[1])
    W = InducedModule(G, b, linear_characters(centralizer(G, b))[3])
    F = splitting_field(0, 6)
    for m in range(1, 4):
        X = adjoint_power(V, W, m, F)
        if X.dim == 0:
            break
        for h in range(G.order):
            assert X.verify_action(h)


def test_adjoint_power_rejects_negative_level():
    G = make_cyclic(6)
    V = induce_from_values(G, G.gen("c"), {G.gen("c"): RootOfUnity(2, 1)})
    with pytest.raises(YDError):
        adjoint_power(V, V, -1, splitting_field(0, 6))


def test_to_induced_rejects_non_simple_levels():
    G = direct_product(make_gamma_quotient(2, 2, 6), make_cyclic(6, "t"))
    b, t = G.gen("b"), G.gen("t")
    F = splitting_field(0, 6)
    found = False
    for sigma in linear_characters(centralizer(G, b)):
        V = InducedModule(G, b, sigma)
        for tau in linear_characters(centralizer(G, t)):
            W = InducedModule(G, t, tau)
            pred = predict_pair(V, W)
            bad = [m for m, L in pred.levels.items() if not L.zero and L.simple is False]
            if bad:
                X = adjoint_power(V, W, bad[0], F)
                assert not is_absolutely_simple(X, F)
                with pytest.raises((NotAbsolutelySimple, UnsupportedModule)):
                    to_induced(X, F)
                found = True
                break
        if found:
            break
    assert found


@pytest.mark.parametrize("index", range(9))
def test_realized_pair_classes(index):
    V, W = realize_pair_class(index)
    assert classify_pair(V, W).tag == f"wp{index}"
    M = YDTuple(V.group, [V, W])
    assert is_braid_indecomposable(M) == (index != 0)


def _pair_setups():
    out = []
    for n in (2, 3):
        for char in (0, 2, 3, 5):
            out.append((n, char))
    return out


@pytest.mark.parametrize("n,char", _pair_setups())
def test_two_one_predictions_match_engine(n, char):
    rng = random.Random(1000 * n + char)
    G = direct_product(make_gamma_quotient(n, 2, 6), make_cyclic(6, "t"))
    b, t = G.gen("b"), G.gen("t")
    S = linear_characters(centralizer(G, b), char)
    T = linear_characters(centralizer(G, t), char)
    F = YDTuple(G, [InducedModule(G, b, S[0]), InducedModule(G, t, T[0])], char).field
    for _ in range(8):
        V = InducedModule(G, b, rng.choice(S))
        W = InducedModule(G, t, rng.choice(T))
        pred = predict_pair(V, W, char)
        assert pred.levels
        for m, L in sorted(pred.levels.items()):
            X = adjoint_power(V, W, m, F)
            if L.zero:
                assert X.dim == 0
            elif L.simple:
                assert to_induced(X, F) == L.module(G)
            else:
                assert X.dim > 0 and not is_absolutely_simple(X, F)
        if pred.a12 is not None:
            assert -pred.a12 == vanishing_degree(V, W, F)


# ---------------------------------------------------------------------------
# Tuples


def _beta_prime_like_tuple():
    G = build_group({"constructor": "product", "factors": [
        {"constructor": "cyclic", "n": 6, "name": "g1"},
        {"constructor": "cyclic", "n": 6, "name": "g2"},
    ]})
    g1, g2 = G.gen("g1"), G.gen("g2")
    z = lambda k: RootOfUnity(6, k)  # noqa: E731
    # Cartan type A2 with q = zeta_6^2
    V1 = induce_from_values(G, g1, {g1: z(2), g2: z(1)})
    V2 = induce_from_values(G, g2, {g1: z(3), g2: z(2)})
    return YDTuple(G, [V1, V2])


def test_reflection_is_an_involution_up_to_isomorphism():
    M = _beta_prime_like_tuple()
    A = cartan_matrix(M)
    assert A == ((2, -1), (-1, 2))
    for i in range(2):
        assert iso_fingerprint(reflect(reflect(M, i), i)) == iso_fingerprint(M)


def test_restrict_to_generated_subgroup_keeps_cartan_matrix():
    G = build_group({"constructor": "product", "factors": [
        {"constructor": "cyclic", "n": 6, "name": "g1"},
        {"constructor": "cyclic", "n": 6, "name": "g2"},
        {"constructor": "cyclic", "n": 2, "name": "z"},
    ]})
    g1, g2, z = G.gen("g1"), G.gen("g2"), G.gen("z")
    V1 = induce_from_values(G, g1, {g1: RootOfUnity(6, 2), g2: RootOfUnity(6, 1), z: RootOfUnity(2, 1)})
    V2 = induce_from_values(G, g2, {g1: RootOfUnity(6, 3), g2: RootOfUnity(6, 2), z: RootOfUnity(1, 0)})
    M = YDTuple(G, [V1, V2])
    H = subgroup_generated(G, sorted(M.support()))
    R = restrict(M, H)
    assert R.group.order == H.order == 36
    assert cartan_matrix(R) == cartan_matrix(M) == ((2, -1), (-1, 2))


def test_restrict_refuses_splitting_classes():
    V, W = realize_pair_class(6)
    M = YDTuple(V.group, [V, W])
    H = subgroup_generated(M.group, sorted(M.support()))
    with pytest.raises(NotAbsolutelySimple):
        restrict(M, H)
    with pytest.raises(YDError):
        restrict(M, subgroup_generated(M.group, [W.g]))


def test_tuple_validation():
    G = make_cyclic(6)
    c = G.gen("c")
    V = induce_from_values(G, c, {c: RootOfUnity(6, 1)})
    with pytest.raises(YDError):
        YDTuple(G, [])
    with pytest.raises(YDError):
        YDTuple(G, [V], char=3)
    with pytest.raises(DataCorruption):
        YDTuple(G, [V], conductor=4)
    other = make_cyclic(6)
    with pytest.raises(YDError):
        YDTuple(G, [V, induce_from_values(other, other.gen("c"), {other.gen("c"): RootOfUnity(2, 1)})])

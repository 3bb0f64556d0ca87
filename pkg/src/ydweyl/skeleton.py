"""Skeletons: decorated Dynkin diagrams attached to tuples of simple modules.

A skeleton records, for each module, the size of its support and (for
one-point vertices) the scalar sigma_i(s_i).  Edges carry the product
a_ij a_ji as multiplicity, an orientation, a line style (continuous when the
supports commute) and, next to a one-point vertex, the scalar
sigma_i(s_j) sigma_j(s_i).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .cartan import explore
from .groups import FiniteGroup, LinearCharacter, build_group, centralizer, linear_characters
from .scalars import ONE, RootOfUnity, check_char, minus_one, q_number
from .ydmod import (
    EXCEEDS_CAP,
    CapExceeded,
    DataCorruption,
    InducedModule,
    NotAbsolutelySimple,
    UnsupportedModule,
    YDTuple,
    cartan_matrix,
    is_braid_indecomposable,
    reflect,
)


class SkeletonError(ValueError):
    """Extraction or realization failure."""


class NoSkeleton(SkeletonError):
    """Some connected pair has both Cartan entries below -1."""


class NotRealizable(SkeletonError):
    """The requested type has no realization in this characteristic."""


# ---------------------------------------------------------------------------
# Data


@dataclass(frozen=True)
class Vertex:
    points: int
    label: RootOfUnity | None = None  # sigma_i(s_i) for one point
    ratio: RootOfUnity | None = None  # sigma_i(s' s^-1) for two points
    marker: str | None = None  # "tetrahedron", "D4", "double-circle"


@dataclass(frozen=True)
class Edge:
    lines: int
    toward: int | None  # vertex index, or None when unoriented
    dashed: bool
    label: RootOfUnity | None = None
    both_ways: bool = False


@dataclass
class Skeleton:
    vertices: list[Vertex]
    edges: dict[tuple[int, int], Edge]

    @property
    def theta(self) -> int:
        return len(self.vertices)

    def edge(self, i: int, j: int) -> Edge | None:
        return self.edges.get((min(i, j), max(i, j)))

    def is_connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for (i, j) in self.edges:
                for a, b in ((i, j), (j, i)):
                    if a == x and b not in seen:
                        seen.add(b)
                        stack.append(b)
        return len(seen) == self.theta

    def format(self, shown_ratios: set[int] | None = None) -> str:
        """Text serialization; two-point ratios are shown for the given vertices."""
        shown_ratios = shown_ratios or set()
        lines = [f"skeleton theta={self.theta}"]
        for k, v in enumerate(self.vertices):
            parts = [f"vertex {k + 1}: points={v.points}"]
            if v.label is not None:
                parts.append(f"label={v.label.literal()}")
            if v.ratio is not None and k in shown_ratios:
                parts.append(f"label=({v.ratio.literal()})")
            if v.marker:
                parts.append(f"marker={v.marker}")
            lines.append(" ".join(parts))
        for (i, j), e in sorted(self.edges.items()):
            if e.both_ways:
                orient = "both"
            elif e.toward is None:
                orient = "none"
            else:
                orient = f"toward {e.toward + 1}"
            parts = [
                f"edge {i + 1}-{j + 1}: lines={e.lines}",
                f"style={'dashed' if e.dashed else 'continuous'}",
                f"orientation={orient}",
            ]
            if e.label is not None:
                parts.append(f"label={e.label.literal()}")
            lines.append(" ".join(parts))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Extraction


def two_point_ratio(M: InducedModule, anchor: int = 0) -> RootOfUnity:
    """p = sigma(s' s^-1) for supp M = {s, s'}, computed at the chosen anchor."""
    if M.dim != 2:
        raise SkeletonError("two-point ratio needs a two-point support")
    G = M.group
    s = M.degrees[anchor]
    s2 = M.degrees[1 - anchor]
    x = M.transversal[anchor]
    chi = M.chi.transport(x)
    return chi(G.mul(s2, G.inv(s)))


def _marker(M: InducedModule) -> str | None:
    if M.dim != 4:
        return None
    G = M.group
    pairs = [(a, b) for a in M.degrees for b in M.degrees if a != b]
    if not any(G.commutes(a, b) for a, b in pairs):
        return "tetrahedron"
    if all(any(G.commutes(a, b) for b in M.degrees if b != a) for a in M.degrees):
        return "D4"
    return None


def supports_commute(V: InducedModule, W: InducedModule) -> bool:
    G = V.group
    return all(G.commutes(a, b) for a in V.degrees for b in W.degrees)


def supports_commute_via_braiding(V: InducedModule, W: InducedModule) -> bool:
    """Whether c(V_g (x) W_h) = W_h (x) V_g for all degrees g, h."""
    for g in V.degrees:
        mono = W.mono(g)
        if any(j != k for k, (j, _) in enumerate(mono)):
            return False
    return True


def extract_skeleton(M: YDTuple, cap: int = 8, matrix=None) -> Skeleton:
    if M.theta < 2:
        raise SkeletonError("skeletons are defined for at least two modules")
    A = matrix if matrix is not None else cartan_matrix(M, cap)
    if A == EXCEEDS_CAP:
        raise CapExceeded("a Cartan entry exceeds the adjoint cap")
    th = M.theta
    for i in range(th):
        for j in range(i + 1, th):
            if A[i][j] != 0 and A[i][j] != -1 and A[j][i] != -1:
                raise NoSkeleton(f"vertices {i + 1} and {j + 1}: neither a_ij nor a_ji is -1")
    vertices = []
    for N in M.modules:
        if N.dim == 1:
            vertices.append(Vertex(1, label=N.chi(N.g)))
        elif N.dim == 2:
            p = two_point_ratio(N)
            if two_point_ratio(N, 1) != p:
                raise DataCorruption("two-point ratio depends on the chosen support element")
            vertices.append(Vertex(2, ratio=p))
        else:
            vertices.append(Vertex(N.dim, marker=_marker(N)))
    edges = {}
    for i in range(th):
        for j in range(i + 1, th):
            if A[i][j] == 0:
                continue
            mult = A[i][j] * A[j][i]
            toward = None
            if A[i][j] == -1 and A[j][i] < -1:
                toward = j
            elif A[j][i] == -1 and A[i][j] < -1:
                toward = i
            Mi, Mj = M[i], M[j]
            label = None
            if Mi.dim == 1 or Mj.dim == 1:
                label = Mi.chi(_in(Mi, Mj.g)) * Mj.chi(_in(Mj, Mi.g))
            edges[(i, j)] = Edge(mult, toward, not supports_commute(Mi, Mj), label)
    return Skeleton(vertices, edges)


def _in(N: InducedModule, x: int) -> int:
    if x not in N.centralizer:
        raise DataCorruption("edge label needs an element outside the centralizer")
    return x


# ---------------------------------------------------------------------------
# Catalog


@dataclass(frozen=True)
class SkeletonType:
    name: str
    theta: int
    side_condition: str | None = None
    finite_type: bool = False
    extended: bool = False

    def __str__(self) -> str:
        if self.name == "none":
            return "none"
        if self.name.startswith("rank2:"):
            return self.name
        return f"{self.name}_{self.theta}"


NONE_TYPE = SkeletonType("none", 0)


@dataclass
class Template:
    type: SkeletonType
    points: list[int]
    edges: dict[tuple[int, int], tuple[int, int | None, bool]]
    vertex_labels: dict[int, str] = field(default_factory=dict)
    ratio_labels: dict[int, str] = field(default_factory=dict)
    edge_labels: dict[tuple[int, int], str] = field(default_factory=dict)
    markers: dict[int, str] = field(default_factory=dict)
    side: Callable[[int, RootOfUnity | None], bool] = lambda char, p: True
    both_ways: set = field(default_factory=set)


def _sym(symbol: str, p: RootOfUnity | None, char: int) -> RootOfUnity:
    m1 = minus_one(char)
    if symbol == "1":
        return ONE
    if symbol == "-1":
        return m1
    if p is None:
        raise SkeletonError("template symbol needs p")
    return {"p": p, "p^-1": p.inverse(), "-p": m1 * p}[symbol]


def _cube_condition(char: int, p: RootOfUnity | None) -> bool:
    return p is not None and q_number(3, minus_one(char) * p, char)


def _path_edges(n: int, dashed: bool = True) -> dict:
    return {(k, k + 1): (1, None, dashed) for k in range(n - 1)}


def _t_alpha(n: int) -> Template:
    return Template(SkeletonType("alpha", n, None, True), [2] * n, _path_edges(n))


def _t_beta(n: int) -> Template:
    e = _path_edges(n)
    e[(n - 2, n - 1)] = (2, n - 1, True)
    return Template(
        SkeletonType("beta", n, "char = 3", n >= 3), [2] * n, e, side=lambda char, p: char == 3
    )


def _t_beta1(n: int) -> Template:
    e = _path_edges(n, dashed=False)
    e[(n - 2, n - 1)] = (2, n - 1, False)
    return Template(
        SkeletonType("beta'", n, "(3)_{-p} = 0", n == 3),
        [1] * (n - 1) + [3],
        e,
        vertex_labels={k: "p" for k in range(n - 1)},
        edge_labels={k: "p^-1" for k in e},
        side=_cube_condition,
    )


def _t_beta2(n: int) -> Template:
    e = _path_edges(n, dashed=False)
    e[(n - 3, n - 2)] = (2, n - 2, False)
    e[(n - 2, n - 1)] = (2, n - 1, True)
    return Template(
        SkeletonType("beta''", n, "(3)_{-p} = 0", n == 3),
        [1] * (n - 2) + [2, 3],
        e,
        vertex_labels={k: "p" for k in range(n - 2)},
        ratio_labels={n - 2: "-p"},
        edge_labels={k: "p^-1" for k in e if k[1] <= n - 2},
        side=_cube_condition,
    )


def _t_gamma(n: int) -> Template:
    e = _path_edges(n)
    e[(n - 2, n - 1)] = (2, n - 2, False)
    return Template(
        SkeletonType("gamma", n, "char != 2", True),
        [2] * (n - 1) + [1],
        e,
        vertex_labels={n - 1: "-1"},
        edge_labels={(n - 2, n - 1): "-1"},
        side=lambda char, p: char != 2,
    )


def _t_delta(n: int) -> Template:
    e = _path_edges(n - 1)
    e[(n - 3, n - 1)] = (1, None, True)
    return Template(SkeletonType("delta", n, None, True), [2] * n, e)


def _t_epsilon(n: int) -> Template:
    e = _path_edges(n - 1)
    e[(2, n - 1)] = (1, None, True)
    return Template(SkeletonType("epsilon", n, None, True), [2] * n, e)


def _t_phi() -> Template:
    e = {(0, 1): (1, None, False), (1, 2): (2, 2, False), (2, 3): (1, None, True)}
    return Template(
        SkeletonType("phi", 4, "char != 2", True),
        [1, 1, 2, 2],
        e,
        vertex_labels={0: "-1", 1: "-1"},
        edge_labels={(0, 1): "-1", (1, 2): "-1"},
        side=lambda char, p: char != 2,
    )


def _rank_two_extras() -> list[Template]:
    out = [
        Template(SkeletonType("rank2:gamma3-2304", 2), [2, 3], {(0, 1): (2, 1, True)}),
        Template(
            SkeletonType("rank2:gamma3-2304-double-circle", 2, extended=True),
            [1, 3],
            {(0, 1): (2, 1, False)},
            markers={0: "double-circle"},
        ),
        Template(
            SkeletonType("rank2:gamma3-2239488-double-arrow", 2, extended=True),
            [2, 3],
            {(0, 1): (4, None, True)},
            both_ways={(0, 1)},
        ),
        Template(
            SkeletonType("rank2:gamma3-2239488-a", 2),
            [1, 3],
            {(0, 1): (2, 1, False)},
            vertex_labels={0: "1"},
        ),
        Template(
            SkeletonType("rank2:gamma3-2239488-b", 2),
            [1, 3],
            {(0, 1): (4, 1, False)},
            vertex_labels={0: "1"},
        ),
        Template(
            SkeletonType("rank2:T", 2, "(3)_{-p} = 0"),
            [1, 4],
            {(0, 1): (3, 1, False)},
            vertex_labels={0: "p"},
            edge_labels={(0, 1): "p^-1"},
            markers={1: "tetrahedron"},
            side=_cube_condition,
        ),
        Template(
            SkeletonType("rank2:gamma4", 2),
            [2, 4],
            {(0, 1): (2, 1, True)},
            markers={1: "D4"},
        ),
    ]
    return out


def catalog(theta: int) -> list[Template]:
    """All catalog templates with the given number of vertices."""
    out = []
    if theta >= 2:
        out += [_t_alpha(theta), _t_beta(theta), _t_beta1(theta)]
    if theta >= 3:
        out += [_t_beta2(theta), _t_gamma(theta)]
    if theta >= 4:
        out.append(_t_delta(theta))
    if theta in (6, 7, 8):
        out.append(_t_epsilon(theta))
    if theta == 4:
        out.append(_t_phi())
    if theta == 2:
        out += _rank_two_extras()
    return out


TYPE_NAMES = ("alpha", "beta", "beta'", "beta''", "gamma", "delta", "epsilon", "phi")


def template_for(name: str, theta: int) -> Template:
    for t in catalog(theta):
        if t.type.name == name:
            return t
    raise SkeletonError(f"no skeleton type {name} with {theta} vertices")


def _structural_matches(S: Skeleton, T: Template):
    """Bijections k -> perm[k] (template vertex to skeleton vertex) preserving the diagram."""
    n = S.theta
    if len(T.points) != n:
        return
    tedges = {}
    for (i, j), (lines, toward, dashed) in T.edges.items():
        tedges[(i, j)] = (lines, toward, dashed, (i, j) in T.both_ways)
        tedges[(j, i)] = tedges[(i, j)]
    perm: list[int] = []
    used = [False] * n

    def ok_pair(a: int, b: int) -> bool:
        te = tedges.get((a, b))
        se = S.edge(perm[a], perm[b])
        if te is None or se is None:
            return te is None and se is None
        lines, toward, dashed, both = te
        if se.lines != lines or se.dashed != dashed or se.both_ways != both:
            return False
        if toward is None:
            return se.toward is None
        return se.toward == perm[toward]

    def extend(k: int):
        if k == n:
            yield tuple(perm)
            return
        for c in range(n):
            if used[c]:
                continue
            v = S.vertices[c]
            if v.points != T.points[k] or v.marker != T.markers.get(k):
                continue
            perm.append(c)
            used[c] = True
            if all(ok_pair(t, k) for t in range(k)):
                yield from extend(k + 1)
            perm.pop()
            used[c] = False

    yield from extend(0)


def _labels_ok(S: Skeleton, T: Template, perm, char: int) -> bool:
    p = None
    for k, sym in T.vertex_labels.items():
        if sym == "p":
            p = S.vertices[perm[k]].label
            break
    if p is None and any("p" in s for s in list(T.edge_labels.values()) + list(T.ratio_labels.values())):
        return False
    for k, sym in T.vertex_labels.items():
        if S.vertices[perm[k]].label != _sym(sym, p, char):
            return False
    for k, sym in T.ratio_labels.items():
        if S.vertices[perm[k]].ratio != _sym(sym, p, char):
            return False
    for (i, j), sym in T.edge_labels.items():
        e = S.edge(perm[i], perm[j])
        if e is None or e.label != _sym(sym, p, char):
            return False
    return T.side(char, p)


@dataclass
class SkeletonMatch:
    type: SkeletonType
    permutation: tuple[int, ...]  # template vertex -> skeleton vertex
    p: RootOfUnity | None

    def shown_ratios(self, template: Template) -> set[int]:
        return {self.permutation[k] for k in template.ratio_labels}


def match_skeleton(S: Skeleton, char: int) -> tuple[SkeletonMatch, Template] | None:
    for T in catalog(S.theta):
        for perm in _structural_matches(S, T):
            if _labels_ok(S, T, perm, char):
                p = None
                for k, sym in T.vertex_labels.items():
                    if sym == "p":
                        p = S.vertices[perm[k]].label
                        break
                return SkeletonMatch(T.type, perm, p), T
    return None


def classify_skeleton(S: Skeleton, char: int = 0) -> SkeletonType:
    check_char(char)
    found = match_skeleton(S, char)
    return found[0].type if found else NONE_TYPE


# ---------------------------------------------------------------------------
# Realization


@dataclass
class _Constraint:
    vars: tuple[int, ...]
    test: Callable[[dict], bool]
    text: str


def _ev(chi: LinearCharacter, x: int) -> RootOfUnity:
    if x not in chi.domain:
        raise DataCorruption("condition evaluates a character outside its domain")
    return chi(x)


def _search(G: FiniteGroup, degrees: list[int], constraints: list[_Constraint], char: int) -> list[LinearCharacter]:
    """First assignment of characters (canonical order) satisfying all constraints."""
    n = len(degrees)
    cands = [linear_characters(centralizer(G, g), char) for g in degrees]
    by_last: dict[int, list[_Constraint]] = {k: [] for k in range(n)}
    for c in constraints:
        by_last[max(c.vars)].append(c)
    failures: dict[str, int] = {}
    chosen: dict[int, LinearCharacter] = {}

    def extend(k: int) -> bool:
        if k == n:
            return True
        for chi in cands[k]:
            chosen[k] = chi
            bad = next((c for c in by_last[k] if not c.test(chosen)), None)
            if bad is None:
                if extend(k + 1):
                    return True
            else:
                failures[bad.text] = failures.get(bad.text, 0) + 1
        del chosen[k]
        return False

    if not extend(0):
        worst = max(failures, key=failures.get) if failures else "no candidates"
        raise SkeletonError(f"realization search exhausted; most violated condition: {worst}")
    return [chosen[k] for k in range(n)]


def _twisted_conditions(G, s, eps, adjacency, self_values, extra=()):
    """Pairwise conditions for epsilon-twisted realizations."""
    n = len(s)
    cons = []
    for i in range(n):
        want = self_values[i]
        cons.append(_Constraint((i,), lambda d, i=i, want=want: d[i](s[i]) == want, f"sigma_{i + 1}(s_{i + 1})"))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in adjacency:
                cons.append(_Constraint(
                    (i, j),
                    lambda d, i=i, j=j: (_ev(d[i], G.mul(eps, s[j], s[j])) * _ev(d[j], G.mul(eps, s[i], s[i]))).is_one(),
                    f"sigma_{i + 1}(eps s_{j + 1}^2) sigma_{j + 1}(eps s_{i + 1}^2) = 1",
                ))
            elif (i, j) not in extra:
                cons.append(_Constraint(
                    (i, j),
                    lambda d, i=i, j=j: (_ev(d[i], s[j]) * _ev(d[j], s[i])).is_one(),
                    f"sigma_{i + 1}(s_{j + 1}) sigma_{j + 1}(s_{i + 1}) = 1",
                ))
    return cons


def _eps_twisted(theta: int, adjacency) -> tuple[FiniteGroup, list[int], int]:
    C = [[0] * theta for _ in range(theta)]
    for i, j in adjacency:
        C[i][j] = C[j][i] = 1
    G = build_group({"constructor": "epsilon_twisted", "theta": theta, "commutation": C,
                     "square_flags": [0] * theta})
    return G, [G.gen(f"s{k + 1}") for k in range(theta)], G.gen("eps")


def _both_eps(G, s, eps, pairs):
    """sigma_i(eps) sigma_j(eps) = 1 for the given pairs."""
    return [
        _Constraint(
            (i, j),
            lambda d, i=i, j=j: (_ev(d[i], eps) * _ev(d[j], eps)).is_one(),
            f"sigma_{i + 1}(eps) sigma_{j + 1}(eps) = 1",
        )
        for i, j in pairs
    ]


def realize_skeleton(name: str | SkeletonType, theta: int | None = None, char: int = 0) -> YDTuple:
    """A tuple with a skeleton of the named finite type, found by constrained search."""
    if isinstance(name, SkeletonType):
        name, theta = name.name, name.theta
    if theta is None:
        raise SkeletonError("the number of vertices is required")
    check_char(char)
    T = template_for(name, theta)
    if not T.type.finite_type and not (name == "beta" and theta == 2):
        raise NotRealizable(f"{T.type} is not of finite type")
    m1 = minus_one(char)
    if name in ("alpha", "delta", "epsilon", "beta"):
        if name == "beta" and char != 3:
            raise NotRealizable(f"{T.type} requires char = 3")
        adjacency = set(T.edges)
        G, s, eps = _eps_twisted(theta, adjacency)
        selfv = [m1] * theta
        if name == "beta":
            selfv[-1] = ONE
        cons = _twisted_conditions(G, s, eps, adjacency, selfv)
        nonadj = [(i, j) for i in range(theta) for j in range(i + 1, theta) if (i, j) not in adjacency]
        cons += _both_eps(G, s, eps, nonadj)
        degrees = s
    elif name == "gamma":
        if char == 2:
            raise NotRealizable(f"{T.type} requires char != 2")
        n = theta
        adjacency = {(k, k + 1) for k in range(n - 2)}
        G, s, eps = _eps_twisted(n, adjacency)
        last = (n - 2, n - 1)
        cons = _twisted_conditions(G, s, eps, adjacency, [m1] * n, extra={last})
        cons.append(_Constraint(
            last,
            lambda d: (_ev(d[n - 2], s[n - 1]) * _ev(d[n - 1], s[n - 2])) == m1,
            f"sigma_{n - 1}(s_{n}) sigma_{n}(s_{n - 1}) = -1",
        ))
        cons += _both_eps(G, s, eps, [(i, j) for i in range(n - 1) for j in range(i + 2, n - 1)])
        degrees = s
    elif name == "phi":
        if char == 2:
            raise NotRealizable(f"{T.type} requires char != 2")
        adjacency = {(2, 3)}
        G, s, eps = _eps_twisted(4, adjacency)
        special = {(0, 1), (1, 2)}
        cons = _twisted_conditions(G, s, eps, adjacency, [m1] * 4, extra=special)
        for i, j in special:
            cons.append(_Constraint(
                (i, j),
                lambda d, i=i, j=j: (_ev(d[i], s[j]) * _ev(d[j], s[i])) == m1,
                f"sigma_{i + 1}(s_{j + 1}) sigma_{j + 1}(s_{i + 1}) = -1",
            ))
        degrees = s
    elif name in ("beta'", "beta''"):
        if theta != 3:
            raise NotRealizable(f"{T.type} is of finite type only with three vertices")
        G, degrees, eps, cons = _beta_prime_setup(name, char)
    else:
        raise NotRealizable(f"no realization recipe for {T.type}")
    chars = _search(G, degrees, cons, char)
    M = YDTuple(G, [InducedModule(G, g, chi) for g, chi in zip(degrees, chars)], char)
    got = classify_skeleton(extract_skeleton(M), char)
    if got != T.type:
        raise DataCorruption(f"realization of {T.type} has skeleton {got}")
    return M


def _beta_prime_setup(name: str, char: int):
    """S_3 x C_6 x C_6 with eps = nu of order 3 inverted by the involution a."""
    G = build_group({"constructor": "product", "factors": [
        {"constructor": "symmetric_three"},
        {"constructor": "cyclic", "n": 6, "name": "c1"},
        {"constructor": "cyclic", "n": 6, "name": "c2"},
    ]})
    nu, a, c1, c2 = (G.gen(x) for x in ("nu", "a", "c1", "c2"))
    m1 = minus_one(char)
    s1 = c1
    s2 = c2 if name == "beta'" else G.mul(nu, c2)
    s3 = a
    s = [s1, s2, s3]

    def p_of(d):
        return d[0](s1)

    cons = [
        _Constraint((0,), lambda d: q_number(3, m1 * p_of(d), char), "(3)_{-p} = 0"),
        _Constraint((0, 2), lambda d: (_ev(d[0], s3) * _ev(d[2], s1)).is_one(), "sigma_1(s_3) sigma_3(s_1) = 1"),
        _Constraint((0, 1), lambda d: _ev(d[0], s2) * _ev(d[1], s1) == p_of(d).inverse(),
                    "sigma_1(s_2) sigma_2(s_1) = p^-1"),
        _Constraint((2,), lambda d: d[2](s3) == m1, "sigma_3(s_3) = -1"),
    ]
    if name == "beta'":
        cons += [
            _Constraint((0, 1), lambda d: d[1](s2) == p_of(d), "sigma_2(s_2) = p"),
            _Constraint((1, 2), lambda d: _ev(d[1], s3) * _ev(d[2], s2) == p_of(d).inverse(),
                        "sigma_2(s_3) sigma_3(s_2) = p^-1"),
        ]
    else:
        cons += [
            _Constraint((1,), lambda d: d[1](s2) == m1, "sigma_2(s_2) = -1"),
            _Constraint((0, 1), lambda d: _ev(d[1], nu) == m1 * p_of(d), "sigma_2(eps) = -p"),
            _Constraint(
                (1, 2),
                lambda d: (_ev(d[1], G.mul(nu, s3, s3)) * _ev(d[2], G.mul(nu, s2, s2))).is_one(),
                "sigma_2(eps s_3^2) sigma_3(eps s_2^2) = 1",
            ),
        ]
    return G, s, nu, cons


# ---------------------------------------------------------------------------
# Reflections and full classification


EXPECTED_REFLECTION = {"beta'": "beta''", "beta''": "beta'"}


@dataclass
class ReflectionReport:
    start: SkeletonType
    results: dict[int, str]
    deviations: list[str]

    @property
    def ok(self) -> bool:
        return not self.deviations


def skeleton_reflection_check(M: YDTuple, cap: int = 8) -> ReflectionReport:
    """Reflect at each vertex and compare the skeleton type with the expected one."""
    start = classify_skeleton(extract_skeleton(M, cap), M.char)
    if start.name == "none":
        raise SkeletonError("tuple has no catalog skeleton")
    results, dev = {}, []
    for k in range(M.theta):
        R = reflect(M, k, cap)
        got = classify_skeleton(extract_skeleton(R, cap), M.char)
        results[k] = str(got)
        expect = start
        if start.name in EXPECTED_REFLECTION and k == M.theta - 1:
            expect = SkeletonType(
                EXPECTED_REFLECTION[start.name], start.theta, start.side_condition, start.finite_type
            )
        if got != expect:
            dev.append(f"R_{k + 1}: expected {expect}, got {got}")
    return ReflectionReport(start, results, dev)


@dataclass
class TupleReport:
    theta: int
    char: int
    in_E: bool
    braid_indecomposable: bool
    cartan: object
    skeleton: Skeleton | None
    skeleton_type: SkeletonType
    skeleton_note: str | None
    groupoid_status: str
    groupoid_finite: bool | None
    admits_all_reflections: bool | None
    nichols_status: str
    dimension: int | None
    series: object
    exploration: object = None
    warnings: list[str] = field(default_factory=list)
    inconsistencies: list[str] = field(default_factory=list)

    @property
    def skeleton_finite(self) -> bool:
        return self.skeleton_type.finite_type


def classify_tuple(M: YDTuple, max_objects: int = 1024, max_roots: int = 10000, adjoint_cap: int = 8,
                   budget: int = 200_000) -> TupleReport:
    """Skeleton, Weyl groupoid and Nichols verdicts side by side."""
    from .nichols import hilbert_series

    warnings = []
    in_E = M.support_generates()
    if not in_E:
        warnings.append("support does not generate the group")
    indec = is_braid_indecomposable(M)
    if not indec:
        warnings.append("not braid-indecomposable (decomposable tuple)")
    A = cartan_matrix(M, adjoint_cap)
    skel, stype, note = None, NONE_TYPE, None
    if M.theta >= 2:
        try:
            skel = extract_skeleton(M, adjoint_cap, A)
            stype = classify_skeleton(skel, M.char)
        except (NoSkeleton, CapExceeded, UnsupportedModule) as exc:
            note = str(exc)
    nres = hilbert_series(M, max_objects, max_roots, adjoint_cap, budget)
    res = nres.exploration if nres.exploration is not None else explore(M, max_objects, max_roots, adjoint_cap)
    if res.status == "ok":
        gfin = res.flags.is_finite and res.flags.admits_all_reflections_up_to_cap
    else:
        gfin = None if res.flags.admits_all_reflections_up_to_cap else False
    nfin = {"ok": True, "infinite": False}.get(nres.status)
    report = TupleReport(
        M.theta, M.char, in_E, indec, A, skel, stype, note, res.status, gfin,
        res.flags.admits_all_reflections_up_to_cap, nres.status, nres.dimension,
        nres.series, res, warnings,
    )
    nonabelian = any(not M.group.commutes(x, y) for x in range(M.group.order) for y in M.group.generators.values())
    if M.theta >= 3 and in_E and indec and nonabelian:
        verdicts = {"skeleton": stype.finite_type, "groupoid": gfin, "nichols": nfin}
        known = {k: v for k, v in verdicts.items() if v is not None}
        if len(set(known.values())) > 1:
            report.inconsistencies.append(f"verdicts disagree: {known}")
    return report


__all__ = [
    "Edge",
    "NoSkeleton",
    "NotRealizable",
    "ReflectionReport",
    "Skeleton",
    "SkeletonError",
    "SkeletonType",
    "TupleReport",
    "Vertex",
    "catalog",
    "classify_skeleton",
    "classify_tuple",
    "extract_skeleton",
    "match_skeleton",
    "realize_skeleton",
    "skeleton_reflection_check",
    "supports_commute",
    "supports_commute_via_braiding",
    "two_point_ratio",
]

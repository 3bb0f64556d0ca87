"""Finite groups given by multiplication tables, with characters.

Every group is a :class:`FiniteGroup` holding an ``n x n`` table of element
indices.  Elements are plain integers; :class:`GroupElement` is a thin wrapper
for callers who want operator syntax.  Constructors cover the group families
used by the engine: quotients of the groups Gamma_n, the epsilon-twisted groups
with a central commutator of order 2, cyclic groups, and direct products.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from functools import cached_property

from .scalars import ONE, RootOfUnity, ScalarError


class GroupError(ValueError):
    """Raised for invalid group data or failed relation checks."""


class FiniteGroup:
    """A finite group with a full multiplication table and named generators."""

    def __init__(
        self,
        table: list[list[int]],
        generators: dict[str, int],
        labels: list[str] | None = None,
        check: bool = True,
    ) -> None:
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.generators = dict(generators)
        n = self.order
        if any(len(row) != n for row in self.table):
            raise GroupError("multiplication table must be square")
        ident = [e for e in range(n) if all(self.table[e][x] == x for x in range(n))]
        if len(ident) != 1:
            raise GroupError("table has no unique left identity")
        self.identity = ident[0]
        self._inverse = [0] * n
        for x in range(n):
            row = self.table[x]
            inv = [y for y in range(n) if row[y] == self.identity]
            if len(inv) != 1:
                raise GroupError(f"element {x} has no unique inverse")
            self._inverse[x] = inv[0]
        self.labels = labels
        if check:
            self._check_axioms()

    def _check_axioms(self) -> None:
        n = self.order
        t = self.table
        for row in t:
            if sorted(row) != list(range(n)):
                raise GroupError("table rows must be permutations")
        if n <= 512:
            # exhaustive associativity via row composition
            for x in range(n):
                tx = t[x]
                for y in range(n):
                    txy = t[tx[y]]
                    ty = t[y]
                    if any(txy[z] != tx[ty[z]] for z in range(n)):
                        raise GroupError("table is not associative")
        else:
            rng = random.Random(0)
            for _ in range(20000):
                x, y, z = (rng.randrange(n) for _ in range(3))
                if t[t[x][y]][z] != t[x][t[y][z]]:
                    raise GroupError("table is not associative")
        closure = subgroup_generated(self, list(self.generators.values()))
        if closure.order != n:
            raise GroupError("named generators do not generate the group")

    # -- element arithmetic ---------------------------------------------------

    def mul(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = self.table[out][x]
        return out

    def inv(self, x: int) -> int:
        return self._inverse[x]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][x]
        return out

    def conj(self, x: int, g: int) -> int:
        """Return x g x^-1."""
        return self.table[self.table[x][g]][self._inverse[x]]

    def commutes(self, x: int, y: int) -> bool:
        return self.table[x][y] == self.table[y][x]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
        return k

    def element(self, x: int) -> GroupElement:
        return GroupElement(self, x)

    def gen(self, name: str) -> int:
        return self.generators[name]

    # -- words ----------------------------------------------------------------

    _TOKEN = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?")

    def parse_word(self, word: str) -> int:
        """Resolve a word like ``"eps*s1^-1 s2"`` to an element index."""
        text = str(word).strip()
        if text in ("", "1", "e", "id"):
            return self.identity
        out = self.identity
        for token in re.split(r"[\s*]+", text):
            if not token:
                continue
            m = self._TOKEN.fullmatch(token)
            if not m or m.group(1) not in self.generators:
                raise GroupError(f"unknown generator token {token!r} in {word!r}")
            k = int(m.group(2)) if m.group(2) else 1
            out = self.mul(out, self.power(self.generators[m.group(1)], k))
        return out

    @cached_property
    def words(self) -> list[str]:
        """A shortest generator word for every element (breadth-first, by name)."""
        names = sorted(self.generators)
        out: list[str | None] = [None] * self.order
        out[self.identity] = "1"
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for name in names:
                    y = self.table[x][self.generators[name]]
                    if out[y] is None:
                        out[y] = name if x == self.identity else f"{out[x]}*{name}"
                        nxt.append(y)
            frontier = nxt
        return [w if w is not None else "?" for w in out]

    def word(self, x: int) -> str:
        return self.words[x]

    # -- structure ------------------------------------------------------------

    def conjugacy_class(self, g: int) -> list[int]:
        return conjugacy_class(self, g)

    def centralizer(self, g: int) -> Subgroup:
        return centralizer(self, g)

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    def is_central(self, g: int) -> bool:
        return all(self.commutes(g, x) for x in self.generators.values())

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, generators={sorted(self.generators)})"


@dataclass(frozen=True)
class GroupElement:
    """An element of a finite group, for operator-style use."""

    group: FiniteGroup = field(compare=False, hash=False, repr=False)
    index: int

    def __post_init__(self) -> None:
        if not 0 <= self.index < self.group.order:
            raise GroupError(f"element index {self.index} out of range")

    def __mul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.group, self.group.mul(self.index, other.index))

    def inverse(self) -> GroupElement:
        return GroupElement(self.group, self.group.inv(self.index))

    def __pow__(self, k: int) -> GroupElement:
        return GroupElement(self.group, self.group.power(self.index, k))


class Subgroup:
    """A subgroup given by its sorted element list."""

    def __init__(self, parent: FiniteGroup, elements) -> None:
        self.parent = parent
        self.elements = tuple(sorted(set(elements)))
        self._members = frozenset(self.elements)
        self.order = len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.elements == self.elements
        )

    def __hash__(self) -> int:
        return hash(self.elements)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A deterministic generating set: greedily add the smallest missing element."""
        G = self.parent
        gens: list[int] = []
        span = {G.identity}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = set(subgroup_generated(G, gens).elements)
        return tuple(gens)

    def check_closed(self) -> None:
        G = self.parent
        if G.identity not in self:
            raise GroupError("subgroup lacks the identity")
        for x in self.elements:
            if G.inv(x) not in self:
                raise GroupError("subgroup not closed under inverses")
            for y in self.elements:
                if G.mul(x, y) not in self:
                    raise GroupError("subgroup not closed under products")

    @cached_property
    def commutator_subgroup(self) -> Subgroup:
        G = self.parent
        comms = {
            G.mul(x, y, G.inv(x), G.inv(y)) for x in self.elements for y in self.elements
        }
        return subgroup_generated(G, sorted(comms))

    def is_abelian(self) -> bool:
        G = self.parent
        gens = self.generators
        return all(G.commutes(x, y) for x in gens for y in gens)

    def as_group(self) -> tuple[FiniteGroup, list[int]]:
        """Return the subgroup as a standalone group plus the embedding list."""
        G = self.parent
        elems = list(self.elements)
        pos = {x: i for i, x in enumerate(elems)}
        table = [[pos[G.mul(x, y)] for y in elems] for x in elems]
        names = {}
        inv_gens = {v: k for k, v in G.generators.items()}
        for i, g in enumerate(self.generators):
            names[inv_gens.get(g, f"h{i + 1}")] = pos[g]
        return FiniteGroup(table, names), elems

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order})"


def subgroup_generated(G: FiniteGroup, gens) -> Subgroup:
    """Closure of a set of elements under multiplication."""
    gens = [g for g in gens]
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            row = G.table[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, seen)


def conjugacy_class(G: FiniteGroup, g: int) -> list[int]:
    cache = G.__dict__.setdefault("_class_cache", {})
    if g not in cache:
        cache[g] = tuple(sorted({G.conj(x, g) for x in range(G.order)}))
    return list(cache[g])


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    cache = G.__dict__.setdefault("_centralizer_cache", {})
    if g not in cache:
        H = Subgroup(G, [x for x in range(G.order) if G.commutes(x, g)])
        if len(conjugacy_class(G, g)) * H.order != G.order:
            raise GroupError("orbit-stabilizer violated")
        cache[g] = H
    return cache[g]


def center(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, [x for x in range(G.order) if G.is_central(x)])


# ---------------------------------------------------------------------------
# Linear characters


class LinearCharacter:
    """A homomorphism from a subgroup to the roots of unity."""

    def __init__(self, domain: Subgroup, values: dict[int, RootOfUnity], check: bool = True) -> None:
        self.domain = domain
        self.values = dict(values)
        if check:
            self._check()

    def _check(self) -> None:
        G = self.domain.parent
        if set(self.values) != set(self.domain.elements):
            raise GroupError("character values must cover exactly the domain")
        if not self.values[G.identity].is_one():
            raise GroupError("character is not 1 at the identity")
        for x in self.domain.elements:
            vx = self.values[x]
            if G.element_order(x) % vx.order:
                raise GroupError("character value order does not divide element order")
            for y in self.domain.generators:
                if self.values[G.mul(x, y)] != vx * self.values[y]:
                    raise GroupError("character is not multiplicative")

    @classmethod
    def from_generators(
        cls, domain: Subgroup, assignment: dict[int, RootOfUnity]
    ) -> LinearCharacter:
        """Extend values on a generating set multiplicatively, validating consistency."""
        G = domain.parent
        values = {G.identity: ONE}
        frontier = [G.identity]
        gens = list(assignment)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = G.mul(x, g)
                    v = values[x] * assignment[g]
                    if y in values:
                        if values[y] != v:
                            raise GroupError("assignment does not define a character")
                    else:
                        values[y] = v
                        nxt.append(y)
            frontier = nxt
        if set(values) != set(domain.elements):
            raise GroupError("assignment does not generate the domain")
        return cls(domain, values)

    def __call__(self, x: int) -> RootOfUnity:
        try:
            return self.values[x]
        except KeyError:
            raise GroupError(f"element {x} outside the character's domain") from None

    def key(self) -> tuple:
        """Canonical sort key: (order, exponent) on the domain generators."""
        return tuple(
            (self.values[g].order, self.values[g].exponent) for g in self.domain.generators
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCharacter)
            and other.domain == self.domain
            and other.values == self.values
        )

    def __hash__(self) -> int:
        return hash((self.domain, tuple(self.values[x] for x in self.domain.elements)))

    def __mul__(self, other: LinearCharacter) -> LinearCharacter:
        if other.domain != self.domain:
            raise GroupError("characters on different domains")
        return LinearCharacter(
            self.domain, {x: self.values[x] * other.values[x] for x in self.values}, check=False
        )

    def __pow__(self, k: int) -> LinearCharacter:
        return LinearCharacter(self.domain, {x: v**k for x, v in self.values.items()}, check=False)

    def dual(self) -> LinearCharacter:
        """x -> chi(x^-1)."""
        return self**-1

    def restrict(self, H: Subgroup) -> LinearCharacter:
        return LinearCharacter(H, {x: self.values[x] for x in H.elements}, check=False)

    def transport(self, x: int) -> LinearCharacter:
        """The character y -> chi(x^-1 y x) on the conjugated domain x H x^-1."""
        G = self.domain.parent
        new_domain = Subgroup(G, [G.conj(x, h) for h in self.domain.elements])
        return LinearCharacter(
            new_domain,
            {G.conj(x, h): self.values[h] for h in self.domain.elements},
            check=False,
        )

    def __repr__(self) -> str:
        G = self.domain.parent
        parts = ", ".join(
            f"{G.word(g)}: {self.values[g].literal()}" for g in self.domain.generators
        )
        return f"LinearCharacter({{{parts}}})"


def trivial_character(H: Subgroup) -> LinearCharacter:
    return LinearCharacter(H, {x: ONE for x in H.elements}, check=False)


def _allowed_values(order: int, char: int) -> list[RootOfUnity]:
    """Roots of unity whose order divides ``order`` (and is prime to char)."""
    vals = {RootOfUnity(order, k) for k in range(order)}
    if char:
        vals = {v for v in vals if v.order % char}
    return sorted(vals)


def linear_characters(H: Subgroup, char: int = 0, cap: int = 4096) -> list[LinearCharacter]:
    """All linear characters of H, sorted canonically.

    Values are assigned to the deterministic generating set of H one generator
    at a time, pruning assignments that are inconsistent on the subgroup
    generated so far.
    """
    if H.order > cap:
        raise GroupError(f"subgroup of order {H.order} exceeds the character cap {cap}")
    G = H.parent
    gens = list(H.generators)
    results: list[LinearCharacter] = []

    def extend(k: int, values: dict[int, RootOfUnity]) -> None:
        if k == len(gens):
            results.append(LinearCharacter(H, values, check=False))
            return
        g = gens[k]
        for v in _allowed_values(G.element_order(g), char):
            new = dict(values)
            frontier = list(values)
            ok = True
            # closure of the current span with the new generator
            while frontier and ok:
                nxt = []
                for x in frontier:
                    for h, hv in ((g, v),) + tuple((gg, new[gg]) for gg in gens[:k]):
                        y = G.mul(x, h)
                        w = new[x] * hv
                        if y in new:
                            if new[y] != w:
                                ok = False
                                break
                        else:
                            new[y] = w
                            nxt.append(y)
                    if not ok:
                        break
                frontier = nxt
            if ok:
                extend(k + 1, new)

    extend(0, {G.identity: ONE})
    results.sort(key=LinearCharacter.key)
    abel = H.order // H.commutator_subgroup.order
    if char:
        while abel % char == 0:
            abel //= char
    if len(results) != abel:
        raise GroupError(
            f"found {len(results)} characters, expected {abel} from the abelianization"
        )
    return results


# ---------------------------------------------------------------------------
# Constructors


def _from_normal_forms(forms: list, mul, generators: dict[str, object]) -> FiniteGroup:
    index = {f: i for i, f in enumerate(forms)}
    table = [[index[mul(x, y)] for y in forms] for x in forms]
    return FiniteGroup(table, {k: index[v] for k, v in generators.items()}, labels=[str(f) for f in forms])


def make_cyclic(n: int, name: str = "c") -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    table = [[(x + y) % n for y in range(n)] for x in range(n)]
    return FiniteGroup(table, {name: 1 % n})


def make_gamma_quotient(n: int, m_a: int, m_b: int) -> FiniteGroup:
    """Quotient of Gamma_n by a^m_a = b^m_b = 1.

    Gamma_n is generated by a, b, nu with ba = nu ab, nu a = a nu^-1, nu b = b nu
    and nu^n = 1.  Elements are normal forms nu^c a^x b^y.  Moving b^y past a^x'
    produces nu^(y [x' odd]), and a^x inverts nu when x is odd, so the relations
    survive the quotient only if m_a is even and n divides m_b.
    """
    if n < 2 or m_a < 1 or m_b < 1:
        raise GroupError("need n >= 2 and positive m_a, m_b")
    if m_a % 2 or m_b % n:
        raise GroupError(
            f"relations a^{m_a} = b^{m_b} = 1 collapse the order of nu "
            "(need m_a even and n | m_b)"
        )
    forms = [(c, x, y) for c in range(n) for x in range(m_a) for y in range(m_b)]

    def mul(u, v):
        c, x, y = u
        c2, x2, y2 = v
        inner = c2 + y * (x2 % 2)
        sign = -1 if x % 2 else 1
        return ((c + sign * inner) % n, (x + x2) % m_a, (y + y2) % m_b)

    G = _from_normal_forms(forms, mul, {"nu": (1, 0, 0), "a": (0, 1, 0), "b": (0, 0, 1)})
    a, b, nu = G.gen("a"), G.gen("b"), G.gen("nu")
    if G.mul(b, a) != G.mul(nu, a, b):
        raise GroupError("relation ba = nu ab fails")
    if G.mul(nu, a) != G.mul(a, G.inv(nu)):
        raise GroupError("relation nu a = a nu^-1 fails")
    if G.mul(nu, b) != G.mul(b, nu):
        raise GroupError("relation nu b = b nu fails")
    if G.element_order(nu) != n:
        raise GroupError("order of nu collapsed")
    return G


def make_epsilon_twisted(
    theta: int, commutation: list[list[int]], square_flags: list[int] | None = None
) -> FiniteGroup:
    """Group generated by a central eps of order 2 and s_1..s_theta.

    Relations: s_i^2 = eps^square_flags[i] and s_i s_j = eps^commutation[i][j] s_j s_i.
    Elements are eps^a s_1^x_1 ... s_theta^x_theta.
    """
    if square_flags is None:
        square_flags = [0] * theta
    C = [list(map(int, row)) for row in commutation]
    if len(C) != theta or any(len(row) != theta for row in C):
        raise GroupError("commutation must be theta x theta")
    for i in range(theta):
        if C[i][i]:
            raise GroupError("commutation must have zero diagonal")
        for j in range(theta):
            if C[i][j] not in (0, 1) or C[i][j] != C[j][i]:
                raise GroupError("commutation must be a symmetric 0/1 matrix")
    if len(square_flags) != theta or any(f not in (0, 1) for f in square_flags):
        raise GroupError("square_flags must be a 0/1 vector of length theta")
    forms = [tuple(v) for v in itertools.product(range(2), repeat=theta + 1)]

    def mul(u, v):
        a, xs = u[0], u[1:]
        b, ys = v[0], v[1:]
        sign = a + b
        for i in range(theta):
            if xs[i]:
                for j in range(i):
                    if ys[j] and C[i][j]:
                        sign += 1
                if ys[i] and square_flags[i]:
                    sign += 1
        return (sign % 2,) + tuple((x + y) % 2 for x, y in zip(xs, ys))

    gens = {"eps": (1,) + (0,) * theta}
    for i in range(theta):
        gens[f"s{i + 1}"] = (0,) + tuple(int(j == i) for j in range(theta))
    G = _from_normal_forms(forms, mul, gens)
    eps = G.gen("eps")
    if eps == G.identity or not G.is_central(eps):
        raise GroupError("degenerate twist: eps is trivial or not central")
    for i in range(theta):
        si = G.gen(f"s{i + 1}")
        for j in range(theta):
            sj = G.gen(f"s{j + 1}")
            comm = G.mul(si, sj, G.inv(si), G.inv(sj))
            if comm != G.power(eps, C[i][j]):
                raise GroupError("commutation relation fails on the table")
    return G


def direct_product(G1: FiniteGroup, G2: FiniteGroup) -> FiniteGroup:
    """G1 x G2 with elements (x, y) at index x*|G2| + y.

    Generator names are kept; clashes get a ``_2`` suffix on the second factor.
    """
    n2 = G2.order
    table = [
        [G1.mul(x1, y1) * n2 + G2.mul(x2, y2) for y1 in range(G1.order) for y2 in range(n2)]
        for x1 in range(G1.order)
        for x2 in range(n2)
    ]
    gens = {name: g * n2 + G2.identity for name, g in G1.generators.items()}
    for name, g in G2.generators.items():
        key = name if name not in gens else f"{name}_2"
        gens[key] = G1.identity * n2 + g
    return FiniteGroup(table, gens)


def group_from_table(table: list[list[int]], generators: dict[str, int] | None = None) -> FiniteGroup:
    """Group from an explicit table; default generators are all elements."""
    if generators is None:
        generators = {f"g{i}": i for i in range(len(table))}
    return FiniteGroup(table, generators)


def symmetric_three_group() -> FiniteGroup:
    """S_3 as the subgroup <nu, a> of the Gamma_3 quotient of order 18."""
    G = make_gamma_quotient(3, 2, 3)
    H = subgroup_generated(G, [G.gen("nu"), G.gen("a")])
    S, emb = H.as_group()
    pos = {x: i for i, x in enumerate(emb)}
    table = S.table
    return FiniteGroup(table, {"nu": pos[G.gen("nu")], "a": pos[G.gen("a")]})


def build_group(spec: dict) -> FiniteGroup:
    """Construct a group from a declarative description and remember it on ``G.spec``.

    Recognized constructors: cyclic (n, name), gamma_quotient (n, m_a, m_b),
    epsilon_twisted (theta, commutation, square_flags), symmetric_three,
    product (factors: list of descriptions) and table (table, generators).
    """
    kind = spec.get("constructor")
    if kind == "cyclic":
        G = make_cyclic(int(spec["n"]), str(spec.get("name", "c")))
    elif kind == "gamma_quotient":
        G = make_gamma_quotient(int(spec["n"]), int(spec["m_a"]), int(spec["m_b"]))
    elif kind == "epsilon_twisted":
        G = make_epsilon_twisted(int(spec["theta"]), spec["commutation"], spec.get("square_flags"))
    elif kind == "symmetric_three":
        G = symmetric_three_group()
    elif kind == "product":
        factors = spec.get("factors") or []
        if not factors:
            raise GroupError("product needs at least one factor")
        G = build_group(factors[0])
        for f in factors[1:]:
            G = direct_product(G, build_group(f))
    elif kind == "table":
        G = group_from_table(spec["table"], spec.get("generators"))
    else:
        raise GroupError(f"unknown group constructor {kind!r}")
    G.spec = dict(spec)
    return G


__all__ = [
    "FiniteGroup",
    "GroupElement",
    "GroupError",
    "LinearCharacter",
    "ScalarError",
    "Subgroup",
    "build_group",
    "center",
    "centralizer",
    "conjugacy_class",
    "direct_product",
    "group_from_table",
    "linear_characters",
    "make_cyclic",
    "make_epsilon_twisted",
    "make_gamma_quotient",
    "subgroup_generated",
    "symmetric_three_group",
    "trivial_character",
]

"""Yetter-Drinfeld modules over finite groups and the adjoint recursion.

The basic objects are induced modules M(g, chi): the basis is indexed by a
transversal x_i of the centralizer G^g, basis vector i has degree x_i g x_i^-1,
and h acts monomially by h b_i = chi(x_j^-1 h x_i) b_j.

Adjoint powers X_m = (ad V)^m(W) are computed with the recursion

    phi_0 = 0,  phi_{m+1} = id - c_{X,V} c_{V,X} + (id (x) phi_m) c_12,
    X_{m+1} = phi_{m+1}(V (x) X_m),

storing X_{m+1} as an echelonized subspace of V (x) X_m, so vectors never
live in the full tensor power.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field

from ._linalg import Echelon, add_entry
from .groups import (
    FiniteGroup,
    GroupError,
    LinearCharacter,
    Subgroup,
    centralizer,
    conjugacy_class,
    subgroup_generated,
)
from .scalars import (
    ONE,
    RootOfUnity,
    SplittingField,
    check_char,
    minus_one,
    q_factorial_nonzero,
    q_number,
    splitting_field,
)

EXCEEDS_CAP = "exceeds-cap"
DEFAULT_ADJOINT_CAP = 8
DEFAULT_DIM_BUDGET = 4096


class YDError(ValueError):
    """Base class for module-level failures."""


class CapExceeded(YDError):
    """An adjoint power is still nonzero at the cap, or a dimension budget blew up."""


class NotAbsolutelySimple(YDError):
    """A module expected to be absolutely simple is not."""


class UnsupportedModule(YDError):
    """Module shape outside the linear-character scope."""


class DataCorruption(YDError):
    """An internal consistency check failed."""


class NoClosedForm(YDError):
    """predict_pair could not match any closed-form setting."""


# ---------------------------------------------------------------------------
# Modules


class YDModule:
    """Common interface: a graded module with an action computable for any h."""

    group: FiniteGroup
    dim: int
    degrees: list[int]

    def action(self, h: int, F: SplittingField) -> list[dict]:
        """Images of the basis vectors under h, as sparse columns."""
        raise NotImplementedError

    def support(self) -> set[int]:
        return set(self.degrees)

    def is_zero(self) -> bool:
        return self.dim == 0


class InducedModule(YDModule):
    """M(g, chi) with chi a linear character of the centralizer of g."""

    def __init__(self, group: FiniteGroup, g: int, chi: LinearCharacter) -> None:
        H = centralizer(group, g)
        if chi.domain != H:
            raise YDError("character must be defined exactly on the centralizer of the degree")
        self.group = group
        self.g = g
        self.chi = chi
        self.centralizer = H
        cls = conjugacy_class(group, g)
        ordered = [g] + [c for c in cls if c != g]
        transversal = {g: group.identity}
        for x in range(group.order):
            c = group.conj(x, g)
            if c not in transversal:
                transversal[c] = x
        self.degrees = ordered
        self.transversal = [transversal[c] for c in ordered]
        self.dim = len(ordered)
        self._pos = {c: i for i, c in enumerate(ordered)}
        self._mono: dict[int, list[tuple[int, RootOfUnity]]] = {}
        self._act: dict[tuple, list[dict]] = {}

    def mono(self, h: int) -> list[tuple[int, RootOfUnity]]:
        """h b_i = scalar * b_j, returned as a list of (j, scalar)."""
        out = self._mono.get(h)
        if out is None:
            G = self.group
            out = []
            for i, xi in enumerate(self.transversal):
                c = G.conj(h, self.degrees[i])
                j = self._pos[c]
                k = G.mul(G.inv(self.transversal[j]), h, xi)
                out.append((j, self.chi(k)))
            self._mono[h] = out
        return out

    def action(self, h: int, F: SplittingField) -> list[dict]:
        key = (h, F.char, F.conductor)
        out = self._act.get(key)
        if out is None:
            out = [{j: F.root(q)} for j, q in self.mono(h)]
            self._act[key] = out
        return out

    @property
    def key(self) -> tuple:
        """Isomorphism invariant: minimal class representative and transported character."""
        c = self.canonical()
        return (
            c.g,
            tuple((v.order, v.exponent) for v in (c.chi(x) for x in c.centralizer.generators)),
        )

    def canonical(self) -> InducedModule:
        cached = self.__dict__.get("_canonical")
        if cached is not None:
            return cached
        rep = min(self.degrees)
        if rep == self.g:
            out = self
        else:
            x = self.transversal[self._pos[rep]]
            chi2 = self.chi.transport(x)
            chi2 = LinearCharacter(centralizer(self.group, rep), chi2.values, check=False)
            out = InducedModule(self.group, rep, chi2)
        out.__dict__["_canonical"] = out
        self.__dict__["_canonical"] = out
        return out

    def scalar_values(self) -> set[RootOfUnity]:
        return set(self.chi.values.values())

    def __repr__(self) -> str:
        G = self.group
        return f"M({G.word(self.g)}, {self.chi!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, InducedModule) and other.group is self.group and other.key == self.key

    def __hash__(self) -> int:
        return hash(self.key)


def induce(group: FiniteGroup, g: int, chi: LinearCharacter) -> InducedModule:
    return InducedModule(group, g, chi)


def induce_from_values(group: FiniteGroup, g: int, values: dict[int, RootOfUnity]) -> InducedModule:
    """Induced module from character values on a generating set of the centralizer."""
    H = centralizer(group, g)
    return InducedModule(group, g, LinearCharacter.from_generators(H, values))


class MatrixModule(YDModule):
    """A level X_m of an adjoint chain, stored inside V (x) X_{m-1}."""

    def __init__(self, chain: AdjointChain, parent: YDModule, vectors, degrees, pivots, phi):
        self.chain = chain
        self.group = chain.group
        self.parent = parent
        self.vectors = vectors
        self.degrees = degrees
        self.dim = len(vectors)
        self.pivots = pivots  # degree -> {pivot column: basis index}
        self.phi = phi  # column of V (x) parent -> coordinates in this module
        self._act: dict[int, list[dict]] = {}

    def action(self, h: int, F: SplittingField | None = None) -> list[dict]:
        cols = self._act.get(h)
        if cols is not None:
            return cols
        chain = self.chain
        F = chain.F
        G = self.group
        Vh = chain.V.action(h, F)
        Ph = self.parent.action(h, F)
        dX = self.parent.dim
        cols = []
        for i, u in enumerate(self.vectors):
            w: dict = {}
            for idx, coef in u.items():
                a, b = divmod(idx, dX)
                for a2, c1 in Vh[a].items():
                    t = F.mul(coef, c1)
                    for b2, c2 in Ph[b].items():
                        add_entry(F, w, a2 * dX + b2, F.mul(t, c2))
            piv = self.pivots[G.conj(h, self.degrees[i])]
            cols.append({piv[c]: v for c, v in w.items() if c in piv})
        self._act[h] = cols
        return cols

    def verify_action(self, h: int) -> bool:
        """Check that h maps the subspace into itself (residue-free coordinates)."""
        chain = self.chain
        F = chain.F
        cols = self.action(h)
        Vh = chain.V.action(h, F)
        Ph = self.parent.action(h, F)
        dX = self.parent.dim
        for i, u in enumerate(self.vectors):
            w: dict = {}
            for idx, coef in u.items():
                a, b = divmod(idx, dX)
                for a2, c1 in Vh[a].items():
                    for b2, c2 in Ph[b].items():
                        add_entry(F, w, a2 * dX + b2, F.mul(F.mul(coef, c1), c2))
            rebuilt: dict = {}
            for j, c in cols[i].items():
                for k, v in self.vectors[j].items():
                    add_entry(F, rebuilt, k, F.mul(c, v))
            if rebuilt != w:
                return False
        return True


class _ChainCache:
    def __init__(self) -> None:
        self._by_group: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()

    def get(self, V: InducedModule, W: YDModule, F: SplittingField, budget: int) -> AdjointChain:
        store = self._by_group.setdefault(V.group, {})
        if isinstance(W, InducedModule):
            key = (V.key, W.key, F.char, F.conductor)
            chain = store.get(key)
            if chain is None:
                chain = AdjointChain(V.canonical(), W.canonical(), F, budget)
                store[key] = chain
            return chain
        return AdjointChain(V, W, F, budget)

    def clear(self) -> None:
        self._by_group = weakref.WeakKeyDictionary()


CHAINS = _ChainCache()


class AdjointChain:
    """The sequence X_0 = W, X_1, X_2, ... for a fixed pair (V, W)."""

    def __init__(self, V: YDModule, W: YDModule, F: SplittingField, budget: int = DEFAULT_DIM_BUDGET):
        if V.group is not W.group:
            raise YDError("modules over different groups")
        self.group = V.group
        self.V = V
        self.F = F
        self.budget = budget
        self.levels: list[YDModule] = [W]

    def level(self, m: int) -> YDModule:
        while len(self.levels) <= m:
            last = self.levels[-1]
            if last.dim == 0:
                self.levels.append(last)
            else:
                self.levels.append(self._next(len(self.levels) - 1))
        return self.levels[m]

    def _next(self, m: int) -> MatrixModule:
        """Compute X_{m+1} from X_m."""
        F, G, V = self.F, self.group, self.V
        X = self.levels[m]
        dV, dX = V.dim, X.dim
        prev_dim = X.parent.dim if m >= 1 else 0
        images: list[tuple[int, int, dict]] = []
        for a in range(dV):
            ga = V.degrees[a]
            Xg = X.action(ga, F)
            Vg = V.action(ga, F)
            for b in range(dX):
                img = {a * dX + b: F.one}
                dprime = G.conj(ga, X.degrees[b])
                Vd = V.action(dprime, F)[a]
                for a2, c2 in Vd.items():
                    for b2, c1 in Xg[b].items():
                        add_entry(F, img, a2 * dX + b2, F.neg(F.mul(c1, c2)))
                if m >= 1:
                    for idx, coef in X.vectors[b].items():
                        a1, b1 = divmod(idx, prev_dim)
                        phi_col = X.phi[a * prev_dim + b1]
                        if not phi_col:
                            continue
                        for a3, c3 in Vg[a1].items():
                            t = F.mul(coef, c3)
                            for b3, c4 in phi_col.items():
                                add_entry(F, img, a3 * dX + b3, F.mul(t, c4))
                images.append((a * dX + b, G.mul(ga, X.degrees[b]), img))
        blocks: dict[int, Echelon] = {}
        for _, deg, img in images:
            if img:
                blocks.setdefault(deg, Echelon(F)).add(img)
        vectors, degrees = [], []
        pivots: dict[int, dict[int, int]] = {}
        for deg in sorted(blocks):
            ech = blocks[deg]
            piv = {}
            for c in ech.pivots():
                piv[c] = len(vectors)
                vectors.append(ech.rows[c])
                degrees.append(deg)
            pivots[deg] = piv
        if len(vectors) > self.budget:
            raise CapExceeded(f"adjoint power dimension {len(vectors)} exceeds the budget {self.budget}")
        phi = [dict() for _ in range(dV * dX)]
        for col, deg, img in images:
            piv = pivots.get(deg)
            if piv:
                phi[col] = {piv[c]: v for c, v in img.items() if c in piv}
        # every degree of the new level is (supp V) times a degree of X_m
        return MatrixModule(self, X, vectors, degrees, pivots, phi)


def adjoint_power(
    V: YDModule, W: YDModule, m: int, F: SplittingField, budget: int = DEFAULT_DIM_BUDGET
) -> YDModule:
    """X_m = (ad V)^m(W) as a module (dim 0 for the zero module)."""
    if m < 0:
        raise YDError("m must be non-negative")
    if isinstance(V, InducedModule):
        chain = CHAINS.get(V, W, F, budget)
    else:
        chain = AdjointChain(V, W, F, budget)
    return chain.level(m)


def vanishing_degree(V: YDModule, W: YDModule, F: SplittingField, cap: int = DEFAULT_ADJOINT_CAP):
    """Largest m <= cap with X_m != 0 provided X_{m+1} = 0, else EXCEEDS_CAP."""
    for m in range(1, cap + 2):
        try:
            X = adjoint_power(V, W, m, F)
        except CapExceeded:
            return EXCEEDS_CAP
        if X.dim == 0:
            return m - 1
    return EXCEEDS_CAP


# ---------------------------------------------------------------------------
# Absolute simplicity and conversion to induced form


def to_induced(X: YDModule, F: SplittingField) -> InducedModule:
    """Identify an absolutely simple module with some M(g, chi)."""
    if isinstance(X, InducedModule):
        return X.canonical()
    if X.dim == 0:
        raise NotAbsolutelySimple("zero module")
    G = X.group
    g0 = X.degrees[0]
    cls = conjugacy_class(G, g0)
    supp = X.support()
    if supp != set(cls):
        raise NotAbsolutelySimple("support is not a single conjugacy class")
    if X.dim != len(cls):
        raise UnsupportedModule(
            "homogeneous components of dimension > 1 "
            "(higher-dimensional centralizer representation or not simple)"
        )
    H = centralizer(G, g0)
    values = {}
    for h in H.generators:
        col = X.action(h, F)[0]
        if set(col) != {0}:
            raise DataCorruption("centralizer does not preserve the homogeneous component")
        q = F.log(col[0])
        if q is None:
            raise DataCorruption("centralizer scalar is not a root of unity of the conductor")
        values[h] = q
    return InducedModule(G, g0, LinearCharacter.from_generators(H, values)).canonical()


def is_absolutely_simple(X: YDModule, F: SplittingField) -> bool:
    try:
        to_induced(X, F)
    except (NotAbsolutelySimple, UnsupportedModule):
        return False
    return True


def dual(V: InducedModule) -> InducedModule:
    """M(g, rho)* = M(g^-1, rho*) with rho*(x) = rho(x^-1)."""
    if not isinstance(V, InducedModule):
        raise UnsupportedModule("dual is implemented for induced modules only")
    G = V.group
    gi = G.inv(V.g)
    H = centralizer(G, gi)
    chi = LinearCharacter(H, {x: V.chi(x).inverse() for x in H.elements}, check=False)
    return InducedModule(G, gi, chi).canonical()


# ---------------------------------------------------------------------------
# Braiding


def braiding(V: YDModule, W: YDModule, F: SplittingField) -> dict[tuple[int, int], dict[tuple[int, int], tuple]]:
    """c(v_i (x) w_j) = g_i w_j (x) v_i, as a map (i, j) -> {(j', i): coefficient}."""
    out = {}
    for i, gi in enumerate(V.degrees):
        act = W.action(gi, F)
        for j in range(W.dim):
            out[(i, j)] = {(j2, i): c for j2, c in act[j].items()}
        # the image lies in W (x) V
    return out


def squared_braiding_is_identity(V: InducedModule, W: InducedModule) -> bool:
    """Whether c_{W,V} c_{V,W} = id on V (x) W (monomial computation)."""
    for i, gi in enumerate(V.degrees):
        monoW = W.mono(gi)
        for j in range(W.dim):
            j2, lam = monoW[j]
            i2, mu = V.mono(W.degrees[j2])[i]
            if i2 != i or j2 != j or not (lam * mu).is_one():
                return False
    return True


# ---------------------------------------------------------------------------
# Tuples


def _exponent_prime_to(G: FiniteGroup, char: int) -> int:
    """Exponent of G with the char-part removed."""
    cache = G.__dict__.setdefault("_exponent_cache", {})
    if char in cache:
        return cache[char]
    n = 1
    for x in range(G.order):
        k = G.element_order(x)
        while char and k % char == 0:
            k //= char
        n = n * k // math.gcd(n, k)
    cache[char] = n
    return n


class YDTuple:
    """An ordered family of induced modules over one group."""

    def __init__(
        self,
        group: FiniteGroup,
        modules: list[InducedModule],
        char: int = 0,
        conductor: int | None = None,
    ) -> None:
        check_char(char)
        if not modules:
            raise YDError("a tuple needs at least one module")
        for M in modules:
            if not isinstance(M, InducedModule):
                raise UnsupportedModule("tuple entries must be induced modules")
            if M.group is not group:
                raise YDError("all modules must be over the same group")
        self.group = group
        self.modules = [M.canonical() for M in modules]
        self.char = char
        # every eigenvalue of a group element must have a discrete log, so the
        # field always contains the roots of unity of order dividing exp(G)
        n = _exponent_prime_to(group, char)
        for M in self.modules:
            for q in M.scalar_values():
                if not q.valid_in(char):
                    raise YDError(f"scalar {q.literal()} is not valid in characteristic {char}")
                n = n * q.order // math.gcd(n, q.order)
        if conductor is None:
            conductor = n
        elif conductor % n:
            raise DataCorruption(
                f"character values of order dividing {n} escape the conductor {conductor}"
            )
        self.conductor = conductor

    @property
    def theta(self) -> int:
        return len(self.modules)

    @property
    def field(self) -> SplittingField:
        return splitting_field(self.char, self.conductor)

    def __getitem__(self, i: int) -> InducedModule:
        return self.modules[i]

    def __iter__(self):
        return iter(self.modules)

    def __len__(self) -> int:
        return len(self.modules)

    def replace(self, modules: list[InducedModule]) -> YDTuple:
        return YDTuple(self.group, modules, self.char, self.conductor)

    def support(self) -> set[int]:
        out: set[int] = set()
        for M in self.modules:
            out |= M.support()
        return out

    def support_generates(self) -> bool:
        return subgroup_generated(self.group, sorted(self.support())).order == self.group.order

    def __repr__(self) -> str:
        return f"YDTuple({self.modules!r}, char={self.char})"


def iso_fingerprint(M: YDTuple | InducedModule) -> bytes:
    if isinstance(M, InducedModule):
        return repr(M.key).encode()
    return repr((M.char, tuple(N.key for N in M.modules))).encode()


def cartan_entry(M: YDTuple, i: int, j: int, cap: int = DEFAULT_ADJOINT_CAP):
    """a_ij of the tuple: -m* or EXCEEDS_CAP; a_ii = 2."""
    if i == j:
        return 2
    m = vanishing_degree(M[i], M[j], M.field, cap)
    return m if m == EXCEEDS_CAP else -m


def cartan_matrix(M: YDTuple, cap: int = DEFAULT_ADJOINT_CAP):
    """The generalized Cartan matrix of the tuple, or EXCEEDS_CAP."""
    th = M.theta
    A = [[2 if i == j else 0 for j in range(th)] for i in range(th)]
    for i in range(th):
        for j in range(th):
            if i != j:
                a = cartan_entry(M, i, j, cap)
                if a == EXCEEDS_CAP:
                    return EXCEEDS_CAP
                A[i][j] = a
    for i in range(th):
        for j in range(th):
            if (A[i][j] == 0) != (A[j][i] == 0):
                raise DataCorruption(f"a_{i + 1}{j + 1} = 0 but a_{j + 1}{i + 1} != 0")
    return tuple(tuple(row) for row in A)


def reflect(M: YDTuple, i: int, cap: int = DEFAULT_ADJOINT_CAP) -> YDTuple:
    """R_i(M): dual at i, (ad M_i)^{-a_ij}(M_j) elsewhere."""
    F = M.field
    new = []
    for j, N in enumerate(M.modules):
        if j == i:
            new.append(dual(N))
            continue
        m = vanishing_degree(M[i], N, F, cap)
        if m == EXCEEDS_CAP:
            raise CapExceeded(f"a_{i + 1}{j + 1} exceeds the adjoint cap {cap}")
        X = adjoint_power(M[i], N, m, F)
        try:
            new.append(to_induced(X, F))
        except (NotAbsolutelySimple, UnsupportedModule) as exc:
            raise NotAbsolutelySimple(
                f"reflection R_{i + 1} produced a non-simple entry {j + 1}: {exc}"
            ) from exc
    return M.replace(new)


def is_braid_indecomposable(M: YDTuple) -> bool:
    th = M.theta
    adj = {i: set() for i in range(th)}
    for i in range(th):
        for j in range(i + 1, th):
            if not squared_braiding_is_identity(M[i], M[j]):
                adj[i].add(j)
                adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == th


def restrict(M: YDTuple, H: Subgroup) -> YDTuple:
    """Restriction to a subgroup containing the support, as a tuple over H."""
    G = M.group
    if not M.support() <= set(H.elements):
        raise YDError("support not contained in the subgroup")
    K, emb = H.as_group()
    pos = {x: i for i, x in enumerate(emb)}
    modules = []
    for N in M.modules:
        g = N.g
        cls_H = {G.conj(x, g) for x in H.elements}
        if cls_H != N.support():
            raise NotAbsolutelySimple("support splits into several classes of the subgroup")
        HK = centralizer(K, pos[g])
        chi = LinearCharacter(HK, {x: N.chi(emb[x]) for x in HK.elements})
        modules.append(InducedModule(K, pos[g], chi))
    return YDTuple(K, modules, M.char, M.conductor)


# ---------------------------------------------------------------------------
# Pair classes


@dataclass(frozen=True)
class PairClass:
    tag: str
    n: int | None = None

    def __str__(self) -> str:
        return f"{self.tag}({self.n})" if self.n is not None else self.tag


@dataclass
class PairData21:
    """Data (s, t, eps, r, sigma, tau) of a pair with supports of size 2 and 1."""

    group: FiniteGroup
    s: int
    t: int
    eps: int
    r: int
    sigma: LinearCharacter
    tau: LinearCharacter


def pair_data_21(V: InducedModule, W: InducedModule) -> PairData21:
    G = V.group
    if V.dim != 2 or W.dim != 1:
        raise UnsupportedModule("expected supports of sizes 2 and 1")
    s = V.g
    s2 = V.degrees[1]
    eps = G.mul(s2, G.inv(s))
    r = V.transversal[1]
    return PairData21(G, s, W.g, eps, r, V.chi, W.chi)


def _ev(chi: LinearCharacter, x: int) -> RootOfUnity:
    if x not in chi.domain:
        raise UnsupportedModule("element outside the centralizer needed by the criterion")
    return chi(x)


def pair_class_rows(d: PairData21, char: int) -> dict[int, bool]:
    """Evaluate the nine rows of the table of pair classes literally."""
    G = d.group
    s, t, e = d.s, d.t, d.eps
    sig = lambda *xs: _ev(d.sigma, G.mul(*xs))  # noqa: E731
    tau = lambda *xs: _ev(d.tau, G.mul(*xs))  # noqa: E731
    m1 = minus_one(char)
    q = sig(t) * tau(s)
    e2 = sig(e, e).is_one()
    rows = {
        0: q.is_one(),
        1: e2 and sig(s) == m1 and (sig(t) * tau(s, t)).is_one() and not tau(t).is_one(),
        2: e2 and sig(s) == m1 and tau(t) == m1 and q_number(3, q, char) and not q.is_one(),
        3: e2 and sig(s) == m1 and q_number(3, q, char) and tau(t) == m1 * q and not q.is_one(),
        4: e2
        and q_number(3, sig(s), char)
        and (sig(s, t) * tau(s)).is_one()
        and tau(t) == m1
        and not sig(s).is_one(),
        5: not e2
        and sig(s) == m1
        and (sig(e, e, t, t) * tau(s, s)).is_one()
        and (sig(t) * tau(s, t)).is_one(),
        6: not e2 and sig(s) == m1 and (sig(e, e, t, t) * tau(s, s)).is_one() and tau(t) == m1,
        7: not e2
        and sig(e, e, s, s).is_one()
        and (sig(s, t) * tau(s)).is_one()
        and (sig(t) * tau(s, t)).is_one(),
        8: not e2 and sig(e, e, s, s).is_one() and (sig(s, t) * tau(s)).is_one() and tau(t) == m1,
    }
    return rows


def classify_pair(V: InducedModule, W: InducedModule, char: int = 0) -> PairClass:
    """Pair class for supports of sizes (2, 1) or (2, 2)."""
    V, W = V.canonical(), W.canonical()
    G = V.group
    if V.dim == 2 and W.dim == 1:
        d = pair_data_21(V, W)
        rows = pair_class_rows(d, char)
        hits = [i for i in range(9) if rows[i]]
        if not hits:
            return PairClass("none")
        i = hits[0]
        if i == 1:
            return PairClass("wp1", _ev(d.tau, d.t).order)
        return PairClass(f"wp{i}")
    if V.dim == 2 and W.dim == 2:
        if squared_braiding_is_identity(V, W):
            return PairClass("wp22_0")
        s, t = V.g, W.g
        if G.commutes(s, t):
            # pick the other element of supp W to get a non-commuting pair
            t = W.degrees[1]
            if G.commutes(s, t):
                return PairClass("none")
        return _wp22_1(V, W, s, t, char)
    raise UnsupportedModule("classify_pair expects supports of sizes (2,1) or (2,2)")


def _char_at(N: InducedModule, g: int) -> LinearCharacter:
    """The character of the centralizer of g describing N at the degree g."""
    G = N.group
    i = N.degrees.index(g)
    x = N.transversal[i]
    chi = N.chi.transport(x)
    return LinearCharacter(centralizer(G, g), chi.values, check=False)


def _wp22_1(V, W, s, t, char) -> PairClass:
    G = V.group
    sigma = _char_at(V, s)
    tau = _char_at(W, t)
    e = G.mul(s, t, G.inv(s), G.inv(t))  # st = e ts
    m1 = minus_one(char)
    try:
        ok = (
            (_ev(sigma, G.mul(e, t, t)) * _ev(tau, G.mul(e, s, s))).is_one()
            and sigma(s) == m1
            and tau(t) == m1
        )
    except UnsupportedModule:
        return PairClass("none")
    return PairClass("wp22_1") if ok else PairClass("none")


# ---------------------------------------------------------------------------
# Closed-form predictions


@dataclass
class LevelPrediction:
    """Predicted shape of one adjoint power X_m."""

    m: int
    zero: bool
    simple: bool | None = None
    degree: int | None = None
    character: LinearCharacter | None = None

    def module(self, group: FiniteGroup) -> InducedModule:
        if self.zero or not self.simple or self.degree is None or self.character is None:
            raise YDError("prediction does not describe a simple module")
        return InducedModule(group, self.degree, self.character).canonical()


@dataclass
class PairPrediction:
    setting: str
    levels: dict[int, LevelPrediction] = field(default_factory=dict)
    a12: int | str | None = None
    joint_cartan: tuple[int, int] | None = None
    joint_cartan_holds: bool | None = None
    reverse_levels: dict[int, LevelPrediction] = field(default_factory=dict)
    reflection2: tuple | None = None
    notes: list[str] = field(default_factory=list)

    def vanishing_degree(self):
        """Predicted largest nonzero level, if every level up to it is known."""
        m = 1
        while m in self.levels:
            if self.levels[m].zero:
                return m - 1
            m += 1
        return None


def _char_from_rule(G: FiniteGroup, degree: int, assignment: dict[int, RootOfUnity]) -> LinearCharacter:
    H = centralizer(G, degree)
    return LinearCharacter.from_generators(H, assignment)


def _rosso_levels(V: InducedModule, W: InducedModule, char: int, max_level: int) -> dict[int, LevelPrediction]:
    """Generalized Rosso criterion: V central of degree r, W = M(s, sigma)."""
    G = V.group
    r, rho = V.g, V.chi
    s, sigma = W.g, W.chi
    out: dict[int, LevelPrediction] = {}
    qr = rho(r)
    sr = _ev(sigma, r)
    zero_from = None
    for m in range(1, max_level + 1):
        if zero_from is None:
            ok = q_factorial_nonzero(m, qr, char) and all(
                not (rho(G.mul(G.power(r, i), s)) * sr).is_one() for i in range(m)
            )
            if not ok:
                zero_from = m
        if zero_from is not None:
            out[m] = LevelPrediction(m, True)
            continue
        deg = G.mul(G.power(r, m), s)
        H = centralizer(G, deg)
        chi = LinearCharacter(H, {h: rho(h) ** m * sigma(h) for h in H.elements})
        out[m] = LevelPrediction(m, False, True, deg, chi)
    return out


def _two_one_levels(V: InducedModule, W: InducedModule, char: int) -> tuple[dict, list[str]]:
    d = pair_data_21(V, W)
    G = d.group
    s, t, e, r = d.s, d.t, d.eps, d.r
    sig = lambda *xs: _ev(d.sigma, G.mul(*xs))  # noqa: E731
    tau = lambda *xs: _ev(d.tau, G.mul(*xs))  # noqa: E731
    m1 = minus_one(char)
    out: dict[int, LevelPrediction] = {}
    notes: list[str] = []
    Gs = centralizer(G, s)
    if (sig(t) * tau(s)).is_one():
        for m in range(1, 6):
            out[m] = LevelPrediction(m, True)
        return out, notes
    deg1 = G.mul(s, t)
    chi1 = LinearCharacter(centralizer(G, deg1), {h: d.sigma(h) * d.tau(h) for h in Gs.elements})
    out[1] = LevelPrediction(1, False, True, deg1, chi1)
    e2 = sig(e, e).is_one()
    case1 = e2 and (sig(s) == m1 or (sig(s, t) * tau(s)).is_one())
    case2 = sig(s) == m1 and (sig(e, e, t, t) * tau(s, s)).is_one()
    case3 = (sig(s, t) * tau(s)).is_one() and sig(e, e, s, s).is_one()
    if case1:
        lam = m1 * sig(e)
    elif case2:
        lam = sig(e, t) * tau(s)
    elif case3:
        lam = sig(e, s)
    else:
        out[2] = LevelPrediction(2, False, False)
        return out, notes
    ri = G.inv(r)
    deg2 = G.mul(e, s, s, t)
    assign = {g: d.sigma(G.mul(g, ri, g, r)) * d.tau(g) for g in Gs.elements}
    assign[r] = lam * d.sigma(G.mul(r, r)) * d.tau(r)
    out[2] = LevelPrediction(2, False, True, deg2, _char_from_rule(G, deg2, assign))
    if sig(s) == m1 or not e2:
        for m in range(3, 6):
            out[m] = LevelPrediction(m, True)
        return out, notes
    deg3 = G.mul(e, s, s, s, t)
    assign3 = {g: d.sigma(G.mul(g, g, ri, g, r)) * d.tau(g) for g in Gs.elements}
    H3 = centralizer(G, deg3)
    out[3] = LevelPrediction(3, False, True, deg3, LinearCharacter.from_generators(H3, assign3))
    if not q_number(3, sig(s), char):
        out[4] = LevelPrediction(4, False, False)
        return out, notes
    deg4 = G.mul(e, e, s, s, s, s, t)
    assign4 = {g: d.sigma(G.mul(g, g, ri, g, r, ri, g, r)) * d.tau(g) for g in Gs.elements}
    assign4[r] = d.sigma(G.power(r, 4)) * d.tau(r)
    out[4] = LevelPrediction(4, False, True, deg4, _char_from_rule(G, deg4, assign4))
    out[5] = LevelPrediction(5, True)
    return out, notes


def _gamma2_levels(V: InducedModule, W: InducedModule, char: int, max_level: int) -> dict:
    G = V.group
    g, h = V.g, W.g
    if G.commutes(g, h):
        h = W.degrees[1]
        W = _reanchor(W, h)
    rho, sigma = V.chi, W.chi
    e = G.mul(g, h, G.inv(g), G.inv(h))  # gh = e hg
    m1 = minus_one(char)
    out: dict[int, LevelPrediction] = {}
    inter = [z for z in centralizer(G, g).elements if z in centralizer(G, h)]
    hyp = (_ev(rho, G.mul(e, h, h)) * _ev(sigma, G.mul(e, g, g))).is_one()
    if not hyp:
        out[1] = LevelPrediction(1, False, False)
        return out
    deg1 = G.mul(g, h)
    assign = {z: rho(z) * sigma(z) for z in inter}
    assign[deg1] = m1 * rho(g) * sigma(h)
    out[1] = LevelPrediction(1, False, True, deg1, _char_from_rule(G, deg1, assign))
    if rho(g) == m1:
        for m in range(2, max_level + 1):
            out[m] = LevelPrediction(m, True)
        return out
    if not (rho(g).is_one() and char != 2):
        out[2] = LevelPrediction(2, False, False)
        return out
    for n in range(2, max_level + 1):
        if n >= 3 and 0 < char <= n:
            out[n] = LevelPrediction(n, True)
            continue
        deg = G.mul(G.power(g, n), h)
        assign = {z: rho(z) ** n * sigma(z) for z in inter}
        assign[deg] = (m1**n) * sigma(h)
        out[n] = LevelPrediction(n, False, True, deg, _char_from_rule(G, deg, assign))
    return out


def _reanchor(N: InducedModule, g: int) -> InducedModule:
    """The same module presented as M(g, chi_g) for another support element g."""
    return InducedModule(N.group, g, _char_at(N, g))


def predict_pair(V: InducedModule, W: InducedModule, char: int = 0, max_level: int = DEFAULT_ADJOINT_CAP + 1) -> PairPrediction:
    """Closed-form predictions for X_m^{V,W} in the settings with known formulas.

    Settings: V of degree central (Rosso and its generalization), supports
    (2, 1), non-commuting supports (2, 2), and the joint Cartan criteria for
    supports (1, 3) and (2, 3).  No adjoint recursion is run here.
    """
    V, W = V.canonical(), W.canonical()
    G = V.group
    m1 = minus_one(char)
    if V.dim == 1:
        setting = "diagonal" if W.dim == 1 else "generalized-rosso"
        pred = PairPrediction(setting, _rosso_levels(V, W, char, max_level))
        pred.a12 = pred.vanishing_degree()
        if pred.a12 is not None:
            pred.a12 = -pred.a12
        if W.dim == 3:
            pred.setting = "one-three"
            s, sigma = V.g, V.chi
            t, tau = W.g, W.chi
            eps = G.mul(W.degrees[1], G.inv(t))
            if G.element_order(eps) != 3 or G.mul(t, eps) != G.mul(G.inv(eps), t):
                raise NoClosedForm("support of size 3 is not of the expected shape")
            q = sigma(t) * tau(s)
            cond = (
                tau(t) == m1
                and q_number(3, m1 * q, char)
                and (sigma(s) == m1 or (sigma(G.mul(s, t)) * tau(s)).is_one())
            )
            pred.joint_cartan = (-1, -2)
            pred.joint_cartan_holds = cond
            if tau(t) == m1 and q_number(3, m1 * q, char) and (sigma(G.mul(s, t)) * tau(s)).is_one():
                s2 = G.mul(eps, s, t, t)
                inter = [h for h in centralizer(G, t).elements if h in centralizer(G, eps)]
                assign = {h: tau(h) ** 2 * sigma(h) for h in inter}
                assign[eps] = q**2
                chi_u = _char_from_rule(G, s2, assign)
                V2 = dual(W)
                pred.reflection2 = (InducedModule(G, s2, chi_u).canonical(), V2)
        return pred
    if V.dim == 2 and W.dim == 1:
        levels, notes = _two_one_levels(V, W, char)
        pred = PairPrediction("two-one", levels, notes=notes)
        vd = pred.vanishing_degree()
        if vd is not None and all(levels[m].simple for m in range(1, vd + 1)):
            pred.a12 = -vd
        return pred
    if V.dim == 2 and W.dim == 2:
        g = V.g
        h = W.g if not G.commutes(g, W.g) else W.degrees[1]
        if G.commutes(g, h):
            raise NoClosedForm("supports of size 2 commute")
        e = G.mul(g, h, G.inv(g), G.inv(h))
        if set(V.degrees) != {g, G.mul(e, g)} or set(W.degrees) != {h, G.mul(e, h)}:
            raise NoClosedForm("supports are not of the form {g, eg}, {h, eh}")
        levels = _gamma2_levels(V, W, char, max_level)
        pred = PairPrediction("gamma2", levels)
        vd = pred.vanishing_degree()
        if vd is not None and all(levels[m].simple for m in range(1, vd + 1)):
            pred.a12 = -vd
        return pred
    if V.dim == 2 and W.dim == 3:
        s, sigma = V.g, V.chi
        eps = G.mul(V.degrees[1], G.inv(s))
        t = next((x for x in W.degrees if not G.commutes(s, x)), None)
        if t is None:
            raise NoClosedForm("supports commute")
        Wt = _reanchor(W, t)
        tau = Wt.chi
        if G.mul(t, s) != G.mul(eps, s, t):
            # choose the other element of supp V so that ts = eps st
            raise NoClosedForm("unexpected commutation in the (2,3) setting")
        pred = PairPrediction("two-three")
        cond = (
            (_ev(sigma, G.mul(eps, t, t)) * _ev(tau, G.mul(eps, s, s))).is_one()
            and sigma(s) == m1
            and tau(t) == m1
        )
        pred.joint_cartan = (-1, -2)
        pred.joint_cartan_holds = cond
        if cond and q_number(3, sigma(eps), char):
            ei = G.inv(eps)
            inter = [h for h in centralizer(G, s).elements if h in centralizer(G, t)]
            deg1 = G.mul(ei, s, t)
            a1 = {h: sigma(h) * tau(h) for h in inter}
            a1[t] = _ev(tau, G.mul(eps, G.inv(s))) * sigma(eps)
            pred.levels[1] = LevelPrediction(1, False, True, deg1, _char_from_rule(G, deg1, a1))
            pred.levels[2] = LevelPrediction(2, True)
            deg2 = G.mul(ei, t, t, s)
            a2 = {h: tau(h) ** 2 * sigma(h) for h in inter}
            a2[eps] = ONE
            a2[t] = m1 * _ev(tau, G.mul(eps, G.inv(s))) * sigma(eps)
            pred.reverse_levels[2] = LevelPrediction(2, False, True, deg2, _char_from_rule(G, deg2, a2))
            pred.reverse_levels[3] = LevelPrediction(3, True)
            pred.a12 = -1
        return pred
    raise NoClosedForm(f"no closed form for supports of sizes ({V.dim}, {W.dim})")


def commuting_triple_vanishes(q12: RootOfUnity, q21: RootOfUnity, q13: RootOfUnity, q31: RootOfUnity,
                    q23: RootOfUnity, q32: RootOfUnity) -> bool:
    """Closed form: (ad v1)(ad v2)(v3) = 0 for pairwise commuting diagonal degrees."""
    return (q23 * q32).is_one() or ((q13 * q31).is_one() and (q12 * q21).is_one())


def realize_pair_class(index: int, char: int = 0) -> tuple[InducedModule, InducedModule]:
    """First pair (V, W) with supports of sizes 2 and 1 lying in the class wp<index>.

    Classes 0..4 are searched over G(2) x C_6 and classes 5..8 over G(3) x C_6,
    where G(n) is the quotient of Gamma_n with a^2 = b^6 = 1; V has degree b and
    W has degree the generator t of C_6.
    """
    from .groups import direct_product, linear_characters, make_cyclic, make_gamma_quotient

    if not 0 <= index <= 8:
        raise YDError("pair classes are numbered 0..8")
    G = direct_product(make_gamma_quotient(2 if index <= 4 else 3, 2, 6), make_cyclic(6, "t"))
    b, t = G.gen("b"), G.gen("t")
    taus = linear_characters(centralizer(G, t), char)
    for sigma in linear_characters(centralizer(G, b), char):
        V = InducedModule(G, b, sigma)
        for tau in taus:
            W = InducedModule(G, t, tau)
            if classify_pair(V, W, char).tag == f"wp{index}":
                return V, W
    raise YDError(f"no pair in class wp{index} in characteristic {char}")


__all__ = [
    "AdjointChain",
    "CapExceeded",
    "DataCorruption",
    "EXCEEDS_CAP",
    "InducedModule",
    "LevelPrediction",
    "MatrixModule",
    "NoClosedForm",
    "NotAbsolutelySimple",
    "PairClass",
    "PairPrediction",
    "UnsupportedModule",
    "YDError",
    "YDModule",
    "YDTuple",
    "adjoint_power",
    "braiding",
    "cartan_entry",
    "cartan_matrix",
    "classify_pair",
    "commuting_triple_vanishes",
    "dual",
    "induce",
    "induce_from_values",
    "is_absolutely_simple",
    "is_braid_indecomposable",
    "iso_fingerprint",
    "pair_class_rows",
    "predict_pair",
    "realize_pair_class",
    "reflect",
    "restrict",
    "to_induced",
    "vanishing_degree",
]

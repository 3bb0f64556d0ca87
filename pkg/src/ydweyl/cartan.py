"""Generalized Cartan matrices, Cartan graphs, real roots and Weyl groupoids."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Hashable

from .ydmod import (
    EXCEEDS_CAP,
    CapExceeded,
    NotAbsolutelySimple,
    UnsupportedModule,
    YDTuple,
    cartan_matrix,
    iso_fingerprint,
    reflect,
)

DEFAULT_MAX_OBJECTS = 1024
DEFAULT_MAX_ROOTS = 10000
DEFAULT_ADJOINT_CAP = 8


class CartanError(ValueError):
    """Invalid matrix or graph input."""


# ---------------------------------------------------------------------------
# Matrices


class GeneralizedCartanMatrix:
    """An integer matrix with a_ii = 2, a_ij <= 0 and a_ij = 0 iff a_ji = 0."""

    __slots__ = ("rows",)

    def __init__(self, rows) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise CartanError("a Cartan matrix must be square and non-empty")
        for i in range(n):
            if rows[i][i] != 2:
                raise CartanError(f"diagonal entry a_{i + 1}{i + 1} must be 2")
            for j in range(n):
                if i != j:
                    if rows[i][j] > 0:
                        raise CartanError(f"off-diagonal entry a_{i + 1}{j + 1} is positive")
                    if (rows[i][j] == 0) != (rows[j][i] == 0):
                        raise CartanError(f"a_{i + 1}{j + 1} = 0 must match a_{j + 1}{i + 1} = 0")
        self.rows = rows

    @property
    def theta(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if isinstance(other, GeneralizedCartanMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def transpose(self) -> GeneralizedCartanMatrix:
        n = self.theta
        return GeneralizedCartanMatrix([[self.rows[j][i] for j in range(n)] for i in range(n)])

    def permuted(self, perm) -> GeneralizedCartanMatrix:
        """The matrix B with B[i][j] = A[perm[i]][perm[j]]."""
        n = self.theta
        return GeneralizedCartanMatrix([[self.rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)])

    def submatrix(self, idx) -> GeneralizedCartanMatrix:
        return GeneralizedCartanMatrix([[self.rows[i][j] for j in idx] for i in idx])

    def __repr__(self) -> str:
        return f"GCM({[list(r) for r in self.rows]})"

    def format(self) -> str:
        return "\n".join(" ".join(f"{x:>3d}" for x in row) for row in self.rows)


def as_gcm(A) -> GeneralizedCartanMatrix:
    return A if isinstance(A, GeneralizedCartanMatrix) else GeneralizedCartanMatrix(A)


class GCMType(Enum):
    FIN = "Fin"
    AFF = "Aff"
    IND = "Ind"

    def __str__(self) -> str:
        return self.value


def components(A) -> list[list[int]]:
    """Connected components of the off-diagonal support graph."""
    A = as_gcm(A)
    n = A.theta
    seen: set[int] = set()
    out = []
    for start in range(n):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in range(n):
                if y not in seen and A[x, y] != 0:
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_indecomposable(A) -> bool:
    return len(components(A)) == 1


def symmetrizer(A) -> list[Fraction] | None:
    """Positive rationals d with d_i a_ij = d_j a_ji, or None if none exists."""
    A = as_gcm(A)
    n = A.theta
    d: list[Fraction | None] = [None] * n
    for comp in components(A):
        d[comp[0]] = Fraction(1)
        queue = deque([comp[0]])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if i != j and A[i, j] != 0:
                    val = d[i] * A[i, j] / A[j, i]
                    if d[j] is None:
                        d[j] = val
                        queue.append(j)
                    elif d[j] != val:
                        return None
    return d  # type: ignore[return-value]


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [list(map(Fraction, row)) for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                for k in range(c, n):
                    M[r][k] -= f * M[c][k]
    return det


def _charpoly(M: list[list[int]]) -> list[Fraction]:
    """Coefficients of det(xI - M), highest degree first (Faddeev-LeVerrier)."""
    n = len(M)
    Mf = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M (M_{k-1} + c_{k-1} I)
        prev = [[Mk[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(Mf[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(Mk[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def _poly_eval(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and any(a):
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def _roots_above(p: list[Fraction], x0: Fraction) -> int:
    """Number of distinct real roots of p in (x0, infinity), via a Sturm sequence."""
    # divide out roots at x0 so that the sign count at x0 is well defined
    while _poly_eval(p, x0) == 0:
        q, acc = [], Fraction(0)
        for c in p[:-1]:
            acc = acc * x0 + c
            q.append(acc)
        p = q
    deriv = [c * (len(p) - 1 - i) for i, c in enumerate(p[:-1])]
    seq = [p, deriv]
    while len(seq[-1]) > 1:
        r = _poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(vals):
        vals = [v for v in vals if v != 0]
        return sum(1 for a, b in zip(vals, vals[1:]) if (a > 0) != (b > 0))

    at_x0 = changes([_poly_eval(q, x0) for q in seq])
    at_inf = changes([q[0] for q in seq])
    return at_x0 - at_inf


def classify_gcm(A) -> GCMType:
    """Finite, affine or indefinite type of an indecomposable GCM.

    Symmetrizable matrices use the leading principal minors of the
    symmetrized matrix.  Otherwise the type is read off the Perron root rho of
    the irreducible non-negative matrix 2I - A (Fin: rho < 2, Aff: rho = 2,
    Ind: rho > 2), located exactly by a Sturm sequence.
    """
    A = as_gcm(A)
    if not is_indecomposable(A):
        raise CartanError("classify_gcm needs an indecomposable matrix")
    n = A.theta
    d = symmetrizer(A)
    if d is not None:
        S = [[d[i] * A[i, j] for j in range(n)] for i in range(n)]
        minors = [_det([row[:k] for row in S[:k]]) for k in range(1, n + 1)]
        fin = all(m > 0 for m in minors)
        aff = all(m > 0 for m in minors[:-1]) and minors[-1] == 0
    else:
        B = [[(2 if i == j else 0) - A[i, j] for j in range(n)] for i in range(n)]
        p = _charpoly(B)
        above = _roots_above(p, Fraction(2))
        fin = above == 0 and _poly_eval(p, Fraction(2)) != 0
        aff = above == 0 and _poly_eval(p, Fraction(2)) == 0
    if fin and aff:
        raise AssertionError("trichotomy violated: both finite and affine")
    if fin:
        return GCMType.FIN
    if aff:
        return GCMType.AFF
    return GCMType.IND


# -- finite type names --------------------------------------------------------


def _path(n: int) -> list[list[int]]:
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        A[i][i + 1] = A[i + 1][i] = -1
    return A


def finite_type_matrix(letter: str, n: int) -> GeneralizedCartanMatrix:
    """Standard Cartan matrix; C_n has a_{n-1,n} = -2 and B_n has a_{n,n-1} = -2."""
    if letter == "A" and n >= 1:
        A = _path(n)
    elif letter == "B" and n >= 2:
        A = _path(n)
        A[n - 1][n - 2] = -2
    elif letter == "C" and n >= 3:
        A = _path(n)
        A[n - 2][n - 1] = -2
    elif letter == "D" and n >= 4:
        A = _path(n)
        A[n - 2][n - 1] = A[n - 1][n - 2] = 0
        A[n - 3][n - 1] = A[n - 1][n - 3] = -1
    elif letter == "E" and n in (6, 7, 8):
        # chain 1-3-4-5-...-n with 2 attached to 4 (Bourbaki numbering)
        A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (2, 3), (1, 3)] + [(k, k + 1) for k in range(3, n - 1)]
        for i, j in edges:
            A[i][j] = A[j][i] = -1
    elif letter == "F" and n == 4:
        A = _path(4)
        A[2][1] = -2
    elif letter == "G" and n == 2:
        A = [[2, -1], [-3, 2]]
    else:
        raise CartanError(f"no finite type {letter}{n}")
    return GeneralizedCartanMatrix(A)


def _catalog(n: int):
    out = []
    for letter in "ABCDEFG":
        try:
            out.append((f"{letter}{n}", finite_type_matrix(letter, n)))
        except CartanError:
            pass
    return out


def find_permutation(A, B) -> tuple[int, ...] | None:
    """A permutation p with A[p[i]][p[j]] = B[i][j], found by backtracking."""
    A, B = as_gcm(A), as_gcm(B)
    n = A.theta
    if B.theta != n:
        return None
    perm: list[int] = []
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        for c in range(n):
            if used[c]:
                continue
            if all(A[perm[t], c] == B[t, k] and A[c, perm[t]] == B[k, t] for t in range(k)):
                perm.append(c)
                used[c] = True
                if extend(k + 1):
                    return True
                perm.pop()
                used[c] = False
        return False

    return tuple(perm) if extend(0) else None


def finite_type_name(A) -> str | None:
    """Name of an indecomposable finite type matrix up to permutation, else None."""
    A = as_gcm(A)
    for name, B in _catalog(A.theta):
        if find_permutation(A, B) is not None:
            return name
    return None


def is_finite_type(A) -> tuple[bool, str | None]:
    """Finite type test with a name; decomposable matrices get names joined by '+'."""
    A = as_gcm(A)
    names = []
    for comp in components(A):
        sub = A.submatrix(comp)
        if classify_gcm(sub) is not GCMType.FIN:
            return False, None
        name = finite_type_name(sub)
        if name is None:
            raise AssertionError(f"finite type matrix {sub!r} missing from the catalog")
        names.append(name)
    return True, "+".join(names)


def simple_reflection_matrix(A, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of s_i (columns are images of alpha_j): alpha_j -> alpha_j - a_ij alpha_i."""
    A = as_gcm(A)
    n = A.theta
    M = [[int(r == c) for c in range(n)] for r in range(n)]
    for j in range(n):
        M[i][j] -= A[i, j]
    out = tuple(tuple(row) for row in M)
    sq = mat_mul(out, out)
    if sq != identity(n):
        raise AssertionError("simple reflection is not an involution")
    return out


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(r == c) for c in range(n)) for r in range(n))


def mat_mul(X, Y) -> tuple[tuple[int, ...], ...]:
    n = len(X)
    return tuple(
        tuple(sum(X[r][k] * Y[k][c] for k in range(n)) for c in range(len(Y[0]))) for r in range(n)
    )


def mat_vec(X, v) -> tuple[int, ...]:
    return tuple(sum(X[r][k] * v[k] for k in range(len(v))) for r in range(len(X)))


def reflect_vector(A, i: int, v) -> tuple[int, ...]:
    """s_i(v) = v - (sum_j a_ij v_j) alpha_i; only coordinate i changes."""
    A = as_gcm(A)
    out = list(v)
    out[i] = v[i] - sum(A[i, j] * v[j] for j in range(len(v)))
    return tuple(out)


def unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


def is_positive(v) -> bool:
    return all(x >= 0 for x in v) and any(v)


def is_negative(v) -> bool:
    return all(x <= 0 for x in v) and any(v)


# ---------------------------------------------------------------------------
# Graphs


@dataclass
class GraphObject:
    label: Hashable
    matrix: GeneralizedCartanMatrix
    tuple: YDTuple | None = None


@dataclass
class SemiCartanGraph:
    """Objects with per-object matrices and the involutive edges r_i."""

    theta: int
    objects: list[GraphObject] = field(default_factory=list)
    index: dict = field(default_factory=dict)  # label -> object id
    r: list[list[int | None]] = field(default_factory=list)

    def add(self, label, matrix: GeneralizedCartanMatrix, tup: YDTuple | None = None) -> int:
        oid = len(self.objects)
        self.objects.append(GraphObject(label, matrix, tup))
        self.index[label] = oid
        self.r.append([None] * self.theta)
        return oid

    def matrix(self, x: int) -> GeneralizedCartanMatrix:
        return self.objects[x].matrix

    def __len__(self) -> int:
        return len(self.objects)

    def matrices(self) -> list[GeneralizedCartanMatrix]:
        return [o.matrix for o in self.objects]

    def is_complete(self) -> bool:
        return all(y is not None for row in self.r for y in row)

    def check_involutive(self) -> list[str]:
        problems = []
        for x, row in enumerate(self.r):
            for i, y in enumerate(row):
                if y is not None and self.r[y][i] is not None and self.r[y][i] != x:
                    problems.append(f"r_{i + 1}^2 != id at object {x}")
        return problems

    def check_row_compatibility(self) -> list[str]:
        """a_ij^X = a_ij^{r_i(X)} for all j."""
        problems = []
        for x, row in enumerate(self.r):
            for i, y in enumerate(row):
                if y is None:
                    continue
                A, B = self.matrix(x), self.matrix(y)
                if A.rows[i] != B.rows[i]:
                    problems.append(f"row {i + 1} differs between object {x} and r_{i + 1}")
        return problems

    def quotient(self) -> tuple[SemiCartanGraph, list[int]]:
        """Coarsest identification of objects compatible with matrices and edges.

        Partition refinement: start from classes of equal matrices and split
        until r_i maps classes to classes.  The quotient is again a
        semi-Cartan graph with the same roots at corresponding objects.
        """
        n = len(self.objects)
        keys = {}
        cls = []
        for x in range(n):
            cls.append(keys.setdefault(self.matrix(x).rows, len(keys)))
        while True:
            sig = {}
            new = []
            for x in range(n):
                key = (cls[x],) + tuple(cls[y] for y in self.r[x])
                new.append(sig.setdefault(key, len(sig)))
            if len(sig) == len(set(cls)):
                cls = new
                break
            cls = new
        # renumber by first appearance
        order: dict[int, int] = {}
        for c in cls:
            order.setdefault(c, len(order))
        cls = [order[c] for c in cls]
        Q = SemiCartanGraph(self.theta)
        for x in range(n):
            if cls[x] == len(Q.objects):
                Q.add(("class", cls[x]), self.matrix(x), self.objects[x].tuple)
        for x in range(n):
            for i, y in enumerate(self.r[x]):
                Q.r[cls[x]][i] = cls[y]
        return Q, cls


@dataclass(frozen=True)
class GroupoidElement:
    """A morphism source -> target given by its integer matrix."""

    source: int
    target: int
    matrix: tuple

    def __call__(self, v) -> tuple[int, ...]:
        return mat_vec(self.matrix, v)

    def compose(self, other: GroupoidElement) -> GroupoidElement:
        """self after other."""
        if other.target != self.source:
            raise CartanError("morphisms are not composable")
        return GroupoidElement(other.source, self.target, mat_mul(self.matrix, other.matrix))


def word_element(C: SemiCartanGraph, X: int, word) -> GroupoidElement:
    """id_X s_{i1} s_{i2} ... s_{ik}: a morphism into X."""
    n = C.theta
    M = identity(n)
    Y = X
    for i in word:
        M = mat_mul(M, simple_reflection_matrix(C.matrix(Y), i))
        Y = C.r[Y][i]
    return GroupoidElement(Y, X, M)


@dataclass
class RootSet:
    obj: int
    positive: frozenset

    @property
    def all(self) -> frozenset:
        return self.positive | frozenset(tuple(-x for x in v) for v in self.positive)

    def sorted_positive(self) -> list[tuple[int, ...]]:
        return sorted(self.positive, key=lambda v: (sum(v), v))


@dataclass
class ExploreFlags:
    is_finite: bool = False
    is_cartan_graph: bool = False
    is_standard: bool = False
    is_indecomposable: bool = False
    admits_all_reflections_up_to_cap: bool = False


@dataclass
class ExploreResult:
    graph: SemiCartanGraph
    reduced: SemiCartanGraph
    classes: list[int]
    roots: dict[int, RootSet]  # keyed by reduced object id
    flags: ExploreFlags
    status: str  # "ok" or "inconclusive"
    diagnostics: list[str] = field(default_factory=list)

    def roots_of(self, x: int) -> RootSet:
        """Roots at object x of the full graph."""
        rs = self.roots[self.classes[x]]
        return RootSet(x, rs.positive)


@dataclass
class AbstractSeed:
    """A semi-Cartan graph given by rules instead of modules."""

    start: Hashable
    matrix_of: Callable[[Hashable], object]
    reflect_rule: Callable[[Hashable, int], Hashable]
    theta: int


def standard_seed(A) -> AbstractSeed:
    A = as_gcm(A)
    return AbstractSeed(0, lambda _x: A, lambda x, _i: x, A.theta)


def explore(
    seed,
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_roots: int = DEFAULT_MAX_ROOTS,
    adjoint_cap: int = DEFAULT_ADJOINT_CAP,
) -> ExploreResult:
    """Breadth-first closure of a tuple (or abstract seed) under all reflections."""
    diags: list[str] = []
    inconclusive = False
    admits = True
    if isinstance(seed, YDTuple):
        theta = seed.theta

        def key_of(T):
            return iso_fingerprint(T)

        def matrix_of(T):
            A = cartan_matrix(T, adjoint_cap)
            if A == EXCEEDS_CAP:
                raise CapExceeded(f"a Cartan entry exceeds the adjoint cap {adjoint_cap}")
            return GeneralizedCartanMatrix(A)

        def step(T, i):
            return reflect(T, i, adjoint_cap)

        start = seed
    else:
        theta = seed.theta
        key_of = lambda x: x  # noqa: E731
        matrix_of = lambda x: as_gcm(seed.matrix_of(x))  # noqa: E731
        step = seed.reflect_rule
        start = seed.start
    if theta < 1:
        raise CartanError("rank must be at least 1")
    C = SemiCartanGraph(theta)
    payload = {}
    try:
        A0 = matrix_of(start)
    except CapExceeded as exc:
        return _inconclusive(C, [str(exc)], admits=False)
    C.add(key_of(start), A0, start if isinstance(start, YDTuple) else None)
    payload[0] = start
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for i in range(theta):
            if C.r[x][i] is not None:
                continue
            try:
                Y = step(payload[x], i)
            except CapExceeded as exc:
                diags.append(f"object {x}, r_{i + 1}: {exc}")
                inconclusive = True
                admits = False
                continue
            except UnsupportedModule as exc:
                diags.append(f"object {x}, r_{i + 1}: {exc}")
                inconclusive = True
                admits = False
                continue
            except NotAbsolutelySimple as exc:
                diags.append(f"object {x}, r_{i + 1}: {exc}")
                admits = False
                continue
            k = key_of(Y)
            y = C.index.get(k)
            if y is None:
                if len(C) >= max_objects:
                    diags.append(f"object cap {max_objects} reached")
                    inconclusive = True
                    queue.clear()
                    break
                try:
                    AY = matrix_of(Y)
                except CapExceeded as exc:
                    diags.append(f"object {len(C)}: {exc}")
                    inconclusive = True
                    admits = False
                    continue
                y = C.add(k, AY, Y if isinstance(Y, YDTuple) else None)
                payload[y] = Y
                queue.append(y)
            C.r[x][i] = y
    if not C.is_complete():
        res = _inconclusive(C, diags, admits=admits)
        if not inconclusive:
            res.status = "ok"
        return res
    diags += C.check_involutive() + C.check_row_compatibility()
    semi_ok = not C.check_involutive() and not C.check_row_compatibility()
    Q, cls = C.quotient()
    roots, root_diag, finite = compute_roots(Q, max_roots)
    diags += root_diag
    flags = ExploreFlags()
    flags.admits_all_reflections_up_to_cap = admits
    flags.is_standard = len({A.rows for A in C.matrices()}) == 1
    flags.is_indecomposable = all(is_indecomposable(A) for A in C.matrices())
    if finite:
        problems = check_root_axioms(Q, roots)
        problems += check_cartan_axiom(C, {x: roots[cls[x]] for x in range(len(C))})
        diags += problems
        flags.is_finite = not problems and semi_ok
        flags.is_cartan_graph = flags.is_finite
    else:
        inconclusive = True
    status = "inconclusive" if inconclusive else "ok"
    return ExploreResult(C, Q, cls, roots, flags, status, diags)


def _inconclusive(C, diags, admits) -> ExploreResult:
    flags = ExploreFlags(admits_all_reflections_up_to_cap=admits)
    if len(C):
        flags.is_standard = len({A.rows for A in C.matrices()}) == 1
        flags.is_indecomposable = all(is_indecomposable(A) for A in C.matrices())
    return ExploreResult(C, C, list(range(len(C))), {}, flags, "inconclusive", diags)


def compute_roots(C: SemiCartanGraph, max_roots: int = DEFAULT_MAX_ROOTS):
    """Real roots at every object: the closure of the simple roots under all s_i.

    Returns (roots, diagnostics, finished).  s_i^X maps roots at X to roots at
    r_i(X); the closure is a fixed point of this propagation.
    """
    n = C.theta
    sets: list[set] = [set() for _ in C.objects]
    work = deque()
    for x in range(len(C)):
        for i in range(n):
            sets[x].add(unit(n, i))
            work.append((x, unit(n, i)))
    diags = []
    while work:
        x, v = work.popleft()
        A = C.matrix(x)
        for i in range(n):
            y = C.r[x][i]
            w = reflect_vector(A, i, v)
            for u in (w, tuple(-c for c in w)):
                if is_positive(u) and u not in sets[y]:
                    sets[y].add(u)
                    work.append((y, u))
            if len(sets[y]) > max_roots:
                diags.append(f"root cap {max_roots} exceeded at object {y}")
                roots = {k: RootSet(k, frozenset(s)) for k, s in enumerate(sets)}
                return roots, diags, False
    roots = {k: RootSet(k, frozenset(s)) for k, s in enumerate(sets)}
    return roots, diags, True


def check_root_axioms(C: SemiCartanGraph, roots: dict[int, RootSet]) -> list[str]:
    """Positivity, multiples of simple roots and s_i-compatibility."""
    problems = []
    n = C.theta
    for x in range(len(C)):
        pos = roots[x].positive
        allr = roots[x].all
        for v in pos:
            if not is_positive(v):
                problems.append(f"root {v} at {x} is neither positive nor negative")
        for i in range(n):
            mult = [v for v in pos if all(v[k] == 0 for k in range(n) if k != i)]
            if mult != [unit(n, i)]:
                problems.append(f"multiples of alpha_{i + 1} at {x}: {sorted(mult)}")
            y = C.r[x][i]
            image = {reflect_vector(C.matrix(x), i, v) for v in allr}
            if image != set(roots[y].all):
                problems.append(f"s_{i + 1} does not map the roots of {x} onto those of r_{i + 1}")
            # s_i permutes the positive roots other than alpha_i
            moved = {reflect_vector(C.matrix(x), i, v) for v in pos if v != unit(n, i)}
            if moved != set(roots[y].positive) - {unit(n, i)}:
                problems.append(f"s_{i + 1} at {x} does not permute the positive roots")
    return problems


def rank_two_count(roots: RootSet, i: int, j: int) -> int:
    return sum(1 for v in roots.positive if all(c == 0 for k, c in enumerate(v) if k not in (i, j)))


def check_cartan_axiom(C: SemiCartanGraph, roots: dict[int, RootSet]) -> list[str]:
    """(r_i r_j)^{m_ij}(X) = X with m_ij the number of positive roots in the i,j-plane."""
    problems = []
    n = C.theta
    for x in range(len(C)):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                m = rank_two_count(roots[x], i, j)
                y = x
                for _ in range(m):
                    y = C.r[C.r[y][j]][i]
                if y != x:
                    problems.append(f"(r_{i + 1} r_{j + 1})^{m} moves object {x}")
    return problems


# ---------------------------------------------------------------------------
# Derived data on finite graphs


def finite_type_witness(result: ExploreResult) -> int:
    """An object whose matrix is of finite type."""
    f = result.flags
    if not (f.is_finite and f.is_cartan_graph and f.is_indecomposable):
        raise CartanError("witness needs a finite indecomposable Cartan graph")
    for x, obj in enumerate(result.graph.objects):
        if classify_gcm(obj.matrix) is GCMType.FIN:
            return x
    raise AssertionError(
        "falsification: finite indecomposable Cartan graph without a finite type object"
    )


def longest_word(result: ExploreResult, X: int = 0) -> tuple[int, ...]:
    """Greedy reduced word of a longest element ending at X (0-based indices)."""
    if not result.flags.is_finite:
        raise CartanError("longest word needs a finite Cartan graph")
    C = result.graph
    n = C.theta
    M = identity(n)
    Y = X
    word: list[int] = []
    limit = len(result.roots_of(X).positive)
    while True:
        for i in range(n):
            col = tuple(M[r][i] for r in range(n))
            if is_positive(col):
                M = mat_mul(M, simple_reflection_matrix(C.matrix(Y), i))
                Y = C.r[Y][i]
                word.append(i)
                break
        else:
            break
        if len(word) > limit:
            raise AssertionError("greedy word exceeds the number of positive roots")
    if len(word) != limit:
        raise AssertionError("longest word length differs from the number of positive roots")
    return tuple(word)


def beta_sequence(result: ExploreResult, X: int, word) -> list[tuple[int, ...]]:
    """beta_m = id_X s_{i1} ... s_{i(m-1)} alpha_{im}, checked to be distinct and positive."""
    C = result.graph
    n = C.theta
    M = identity(n)
    Y = X
    out = []
    for i in word:
        beta = tuple(M[r][i] for r in range(n))
        if not is_positive(beta) or beta in out:
            raise CartanError("word is not reduced")
        out.append(beta)
        M = mat_mul(M, simple_reflection_matrix(C.matrix(Y), i))
        Y = C.r[Y][i]
    return out


def weyl_orbits(result: ExploreResult, X: int = 0, reduced: bool = True) -> list[list[tuple[int, ...]]]:
    """Orbits of the roots at X under the automorphisms of X in the groupoid.

    By default the identified (quotient) graph is used, where objects with
    identical matrix data along all paths are one point.
    """
    if reduced:
        C = result.reduced
        X = result.classes[X]
        roots = result.roots[X].all
    else:
        C = result.graph
        roots = result.roots_of(X).all
    seen_global: set = set()
    orbits = []
    for v in sorted(roots, key=lambda v: (-all(c >= 0 for c in v), sum(map(abs, v)), v)):
        if (X, v) in seen_global:
            continue
        seen = {(X, v)}
        queue = deque([(X, v)])
        while queue:
            y, w = queue.popleft()
            A = C.matrix(y)
            for i in range(C.theta):
                z = C.r[y][i]
                u = reflect_vector(A, i, w)
                if (z, u) not in seen:
                    seen.add((z, u))
                    queue.append((z, u))
        orbit = sorted(w for (y, w) in seen if y == X)
        seen_global |= {(X, w) for w in orbit}
        orbits.append(orbit)
    return orbits


# -- rank three catalog -------------------------------------------------------

RANK3_CASES = {
    "case3": [
        [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
        [[2, -1, 0], [-2, 2, -2], [0, -1, 2]],
    ],
    "case4": [
        [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
        [[2, -1, 0], [-2, 2, -1], [0, -2, 2]],
    ],
    "case5": [
        [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
        [[2, -1, 0], [-1, 2, -1], [0, -4, 2]],
        [[2, -1, 0], [-1, 2, -2], [0, -2, 2]],
        [[2, -1, -1], [-1, 2, -1], [-1, -2, 2]],
        [[2, 0, -1], [0, 2, -1], [-1, -2, 2]],
        [[2, 0, -1], [0, 2, -1], [-1, -3, 2]],
    ],
    "case6": [
        [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
        [[2, -1, 0], [-1, 2, -1], [0, -3, 2]],
        [[2, -1, 0], [-1, 2, -2], [0, -2, 2]],
        [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
        [[2, -1, 0], [-2, 2, -3], [0, -1, 2]],
        [[2, -1, 0], [-2, 2, -2], [0, -1, 2]],
    ],
}


def column_property_violations(C: SemiCartanGraph) -> list[str]:
    """Objects with a column holding two entries below -1."""
    out = []
    for x, obj in enumerate(C.objects):
        A = obj.matrix
        for j in range(C.theta):
            if sum(1 for i in range(C.theta) if A[i, j] < -1) > 1:
                out.append(f"object {x}, column {j + 1}")
    return out


def rank3_catalog_match(result: ExploreResult) -> str:
    C = result.graph
    if C.theta != 3:
        raise CartanError("catalog matching needs rank 3")
    f = result.flags
    if not (f.is_finite and f.is_indecomposable):
        raise CartanError("catalog matching needs a finite indecomposable graph")
    mats = {A.rows for A in C.matrices()}
    if any(finite_type_name(A) == "A3" for A in C.matrices()):
        return "A3-point-present"
    if len(mats) == 1:
        name = finite_type_name(next(iter(C.matrices())))
        if name == "C3":
            return "std-C3"
        if name == "B3":
            return "std-B3"
    for case, listed in RANK3_CASES.items():
        allowed = {tuple(map(tuple, m)) for m in listed}
        for perm in itertools.permutations(range(3)):
            if all(GeneralizedCartanMatrix(m).permuted(perm).rows in allowed for m in mats):
                return case
    return "none"


__all__ = [
    "AbstractSeed",
    "CartanError",
    "ExploreFlags",
    "ExploreResult",
    "GCMType",
    "GeneralizedCartanMatrix",
    "GroupoidElement",
    "RootSet",
    "SemiCartanGraph",
    "beta_sequence",
    "classify_gcm",
    "column_property_violations",
    "compute_roots",
    "explore",
    "finite_type_matrix",
    "finite_type_name",
    "finite_type_witness",
    "is_finite_type",
    "is_indecomposable",
    "longest_word",
    "rank3_catalog_match",
    "simple_reflection_matrix",
    "standard_seed",
    "weyl_orbits",
    "word_element",
]

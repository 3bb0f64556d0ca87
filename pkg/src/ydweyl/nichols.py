"""Hilbert series and dimensions of Nichols algebras.

Two independent routes are provided.

* The root-product route: for a tuple with a finite Cartan graph the Hilbert
  series is the product over positive roots beta of the rank-one series of
  the root module, evaluated at t^beta.  Rank-one series come from the
  factorization  S_n = (S_{n-1} (x) id)(1 + s_{n-1} + s_{n-1}s_{n-2} + ...),
  which computes B^n as a quotient of B^{n-1} (x) V degree by degree.
* The symmetrizer oracle: B^n(V) is the image of the full quantum symmetrizer
  sum_{w in S_n} T_w on V^{(x) n}, computed by brute force over S_n with
  Matsumoto lifts.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field

from ._linalg import Echelon, add_entry
from .cartan import ExploreResult, beta_sequence, explore, longest_word
from .scalars import INFINITY, height
from .ydmod import InducedModule, YDTuple

SYMMETRIZER_BUDGET = 200_000
DEFAULT_ORACLE_DEGREE = 4
RANK_ONE_MAX_DEGREE = 64


class NicholsError(ValueError):
    """Generic failure of a Hilbert series computation."""


class BudgetExceeded(NicholsError):
    """A symmetrizer computation would exceed (dim V)^n <= budget."""


class InfiniteDimensional(NicholsError):
    """A rank-one Nichols algebra does not terminate within the degree limit."""


# ---------------------------------------------------------------------------
# Braided vector spaces from induced modules


class _Letters:
    """Global basis of V = M_1 + ... + M_k with the monomial braiding."""

    def __init__(self, modules: list[InducedModule]) -> None:
        self.modules = modules
        self.group = modules[0].group
        self.index = []  # letter -> (module, local basis index)
        for k, M in enumerate(modules):
            for b in range(M.dim):
                self.index.append((k, b))
        self.offsets = []
        off = 0
        for M in modules:
            self.offsets.append(off)
            off += M.dim
        self.dim = off
        self.degree = [modules[k].degrees[b] for k, b in self.index]
        self._braid: dict[tuple[int, int], tuple[int, int, object]] = {}

    def braid(self, x: int, y: int):
        """c(x (x) y) = q * (y' (x) x): returns (y', x, q)."""
        key = (x, y)
        out = self._braid.get(key)
        if out is None:
            k, b = self.index[y]
            j, q = self.modules[k].mono(self.degree[x])[b]
            out = (self.offsets[k] + j, x, q)
            self._braid[key] = out
        return out

    def grading(self, word) -> tuple[int, ...]:
        vec = [0] * len(self.modules)
        for x in word:
            vec[self.index[x][0]] += 1
        return tuple(vec)

    def group_degree(self, word) -> int:
        G = self.group
        g = G.identity
        for x in word:
            g = G.mul(g, self.degree[x])
        return g


def _check_budget(d: int, n: int, budget: int) -> None:
    if d**n > budget:
        raise BudgetExceeded(f"(dim V)^n = {d}^{n} exceeds the symmetrizer budget {budget}")


def _words(d: int, n: int):
    if n == 0:
        yield ()
        return
    for w in _words(d, n - 1):
        for x in range(d):
            yield w + (x,)


# ---------------------------------------------------------------------------
# The root-product route: degree-by-degree quotient


class _QuotientTower:
    """B^n(V) as coordinates: P_n(e_w) in a basis of B^n, for every word w.

    P_n is obtained from P_{n-1} by echelonizing the images of
    (P_{n-1} (x) id) T_n, where T_n = sum_k s_{n-1} ... s_k.
    """

    def __init__(self, L: _Letters, F, budget: int) -> None:
        self.L = L
        self.F = F
        self.budget = budget
        self.levels: list[dict] = [{(): {0: F.one}}]
        self.dims = [1]
        self.graded: list[dict] = [{(0,) * len(L.modules): 1}]

    def _cycle_images(self, word):
        """T_n e_w as (scalar, word) pairs; s_k acts first and drags letter k to the end."""
        F, L = self.F, self.L
        n = len(word)
        out = [(F.one, word)]
        for k in range(n - 1, 0, -1):
            scal = F.one
            w = list(word)
            for pos in range(k - 1, n - 1):
                y2, x2, q = L.braid(w[pos], w[pos + 1])
                w[pos], w[pos + 1] = y2, x2
                scal = F.mul(scal, F.root(q))
            out.append((scal, tuple(w)))
        return out

    def extend(self) -> int:
        F, L = self.F, self.L
        n = len(self.levels)
        _check_budget(L.dim, n, self.budget)
        prev = self.levels[-1]
        images = {}
        blocks: dict = {}
        for w in _words(L.dim, n):
            img: dict = {}
            for scal, u in self._cycle_images(w):
                p = prev.get(u[:-1])
                if not p:
                    continue
                last = u[-1]
                for c, v in p.items():
                    add_entry(F, img, c * L.dim + last, F.mul(scal, v))
            key = (L.grading(w), L.group_degree(w))
            images[w] = (key, img)
            if img:
                blocks.setdefault(key, Echelon(F)).add(img)
        index = {}
        total = 0
        for key in sorted(blocks, key=repr):
            for c in blocks[key].pivots():
                index[(key, c)] = total
                total += 1
        level = {}
        for w, (key, img) in images.items():
            coords = {index[(key, c)]: v for c, v in img.items() if (key, c) in index}
            if coords:
                level[w] = coords
        self.levels.append(level)
        self.dims.append(total)
        gd: dict = defaultdict(int)
        for key, ech in blocks.items():
            gd[key[0]] += ech.rank
        self.graded.append({k: v for k, v in gd.items() if v})
        return total


def _field_for(modules: list[InducedModule], char: int):
    return YDTuple(modules[0].group, modules, char).field


def rank_one_dims(M: InducedModule, char: int, budget: int = SYMMETRIZER_BUDGET,
                  max_degree: int = RANK_ONE_MAX_DEGREE) -> list[int]:
    """Graded dimensions (1, dim M, ...) of B(M) for one module, up to the top degree."""
    if M.dim == 1:
        h = height(M.chi(M.g), char)
        if h is INFINITY:
            raise InfiniteDimensional("rank-one diagonal braiding with q = 1 in characteristic 0")
        return [1] * h
    F = _field_for([M], char)
    tower = _QuotientTower(_Letters([M]), F, budget)
    while tower.dims[-1] != 0:
        if len(tower.dims) > max_degree:
            raise InfiniteDimensional(f"rank-one Nichols algebra nonzero beyond degree {max_degree}")
        tower.extend()
    return tower.dims[:-1]


def graded_dims_quotient(modules: list[InducedModule], char: int, max_degree: int,
                         budget: int = SYMMETRIZER_BUDGET) -> list[dict]:
    """N^theta-graded dimensions of B(V) up to max_degree via the quotient tower."""
    F = _field_for(modules, char)
    tower = _QuotientTower(_Letters(modules), F, budget)
    for _ in range(max_degree):
        tower.extend()
    return tower.graded


# ---------------------------------------------------------------------------
# The symmetrizer oracle


def _permutation_lifts(n: int) -> list[list[int]]:
    """For every permutation of S_n a reduced word in the generators s_0..s_{n-2}."""
    start = tuple(range(n))
    words = {start: []}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for k in range(n - 1):
            q = list(p)
            q[k], q[k + 1] = q[k + 1], q[k]
            q = tuple(q)
            if q not in words:
                words[q] = words[p] + [k]
                queue.append(q)
    return list(words.values())


def symmetrizer_graded_dim(modules: list[InducedModule], char: int, n: int,
                           budget: int = SYMMETRIZER_BUDGET) -> dict[tuple[int, ...], int]:
    """dim B^n(V) per N^theta-degree as the rank of the full quantum symmetrizer.

    Words are grouped into blocks by N^theta-degree and total group degree,
    both preserved by the braiding; the rank is computed block by block.
    """
    L = _Letters(modules)
    _check_budget(L.dim, n, budget)
    F = _field_for(modules, char)
    if n == 0:
        return {(0,) * len(modules): 1}
    lifts = _permutation_lifts(n)
    blocks: dict = {}
    for w in _words(L.dim, n):
        vec: dict = {}
        for red in lifts:
            scal = F.one
            u = list(w)
            # T_{s_{k1} ... s_{kl}} applies s_{kl} first
            for k in reversed(red):
                y2, x2, q = L.braid(u[k], u[k + 1])
                u[k], u[k + 1] = y2, x2
                scal = F.mul(scal, F.root(q))
            add_entry(F, vec, _word_index(u, L.dim), scal)
        if vec:
            key = (L.grading(w), L.group_degree(w))
            blocks.setdefault(key, Echelon(F)).add(vec)
    out: dict = defaultdict(int)
    for key, ech in blocks.items():
        if ech.rank:
            out[key[0]] += ech.rank
    return dict(out)


def _word_index(u, d: int) -> int:
    idx = 0
    for x in u:
        idx = idx * d + x
    return idx


# ---------------------------------------------------------------------------
# Hilbert series


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_exact(a: list[int], b: list[int]) -> list[int] | None:
    a = list(a)
    if len(b) > len(a):
        return None
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(a[i + len(b) - 1], b[-1])
        if r:
            return None
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        return None
    return q


def q_number_poly(n: int) -> list[int]:
    return [1] * n


def factor_q_numbers(poly: list[int]) -> list[tuple[int, int]] | None:
    """Write poly as a product of (n)_t factors, largest n first, or return None."""
    rest = list(poly)
    out = []
    n = len(rest)
    while len(rest) > 1 and n >= 2:
        q = _poly_divmod_exact(rest, q_number_poly(n))
        if q is not None:
            rest = q
            if out and out[-1][0] == n:
                out[-1] = (n, out[-1][1] + 1)
            else:
                out.append((n, 1))
        else:
            n -= 1
    if rest != [1]:
        return None
    return sorted(out)


@dataclass
class HilbertFactor:
    """Rank-one series of a root module, evaluated at t^beta."""

    beta: tuple[int, ...]
    dims: list[int]

    @property
    def dimension(self) -> int:
        return sum(self.dims)


def _monomial(beta, names) -> str:
    parts = []
    for k, e in enumerate(beta):
        if e == 1:
            parts.append(names[k])
        elif e:
            parts.append(f"{names[k]}^{e}")
    return " ".join(parts)


@dataclass
class HilbertSeries:
    """Product of rank-one series over the positive roots."""

    theta: int
    factors: list[HilbertFactor] = field(default_factory=list)

    def dimension(self) -> int:
        return math.prod(f.dimension for f in self.factors)

    def multivariate(self, max_total_degree: int | None = None) -> dict[tuple[int, ...], int]:
        """Coefficients of t^gamma (optionally truncated by total degree)."""
        poly = {(0,) * self.theta: 1}
        for f in self.factors:
            new: dict = defaultdict(int)
            for mono, c in poly.items():
                for k, dk in enumerate(f.dims):
                    if not dk:
                        continue
                    m2 = tuple(a + k * b for a, b in zip(mono, f.beta))
                    if max_total_degree is not None and sum(m2) > max_total_degree:
                        continue
                    new[m2] += c * dk
            poly = dict(new)
        return poly

    def single_t(self) -> list[int]:
        out = [1]
        for f in self.factors:
            h = sum(f.beta)
            p = [0] * ((len(f.dims) - 1) * h + 1)
            for k, dk in enumerate(f.dims):
                p[k * h] = dk
            out = _poly_mul(out, p)
        return out

    def format(self, single: bool = False) -> str:
        """Factored form, e.g. (2)_{t1}^2 (2)_{t1 t2}^2."""
        names = ["t"] * self.theta if single else [f"t{k + 1}" for k in range(self.theta)]
        grouped: dict[tuple, int] = defaultdict(int)
        order: list[tuple] = []
        for f in self.factors:
            var = (sum(f.beta),) if single else f.beta
            fac = factor_q_numbers(f.dims)
            if fac is None:
                key = (var, ("raw", tuple(f.dims)))
                if key not in grouped:
                    order.append(key)
                grouped[key] += 1
                continue
            for n, mult in fac:
                key = (var, n)
                if key not in grouped:
                    order.append(key)
                grouped[key] += mult
        order.sort(key=lambda k: (sum(k[0]), tuple(-x for x in k[0]), str(k[1])))
        parts = []
        for key in order:
            var, n = key
            mono = f"t^{var[0]}" if single and var[0] != 1 else ("t" if single else _monomial(var, names))
            exp = grouped[key]
            if isinstance(n, tuple):
                body = f"[{' '.join(map(str, n[1]))}]_{{{mono}}}"
            else:
                body = f"({n})_{{{mono}}}"
            parts.append(body + (f"^{exp}" if exp > 1 else ""))
        return " ".join(parts)


def rank_one_hilbert(M: InducedModule, char: int, budget: int = SYMMETRIZER_BUDGET) -> list[int]:
    return rank_one_dims(M, char, budget)


@dataclass
class NicholsResult:
    status: str  # "ok", "infinite", "inconclusive"
    series: HilbertSeries | None
    exploration: ExploreResult | None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def dimension(self) -> int | None:
        return self.series.dimension() if self.series else None


def root_modules(result: ExploreResult, X: int = 0):
    """Pairs (beta_m, root module) along a greedy longest word at X."""
    C = result.graph
    word = longest_word(result, X)
    betas = beta_sequence(result, X, word)
    out = []
    y = X
    for i, beta in zip(word, betas):
        T = C.objects[y].tuple
        if T is None:
            raise NicholsError("root modules need a module-backed graph")
        out.append((beta, T[i]))
        y = C.r[y][i]
    return out


def hilbert_series(M: YDTuple, max_objects: int = 1024, max_roots: int = 10000,
                   adjoint_cap: int = 8, budget: int = SYMMETRIZER_BUDGET) -> NicholsResult:
    """Root-product Hilbert series of B(M) when the Cartan graph is finite."""
    res = explore(M, max_objects, max_roots, adjoint_cap)
    if res.status != "ok":
        return NicholsResult("inconclusive", None, res, list(res.diagnostics))
    if not res.flags.admits_all_reflections_up_to_cap:
        return NicholsResult("infinite", None, res,
                             ["some reflection is not a tuple of absolutely simple modules"])
    if not res.flags.is_finite:
        return NicholsResult("inconclusive", None, res, list(res.diagnostics))
    series = HilbertSeries(M.theta)
    try:
        for beta, N in root_modules(res, 0):
            series.factors.append(HilbertFactor(beta, rank_one_dims(N, M.char, budget)))
    except InfiniteDimensional as exc:
        return NicholsResult("infinite", None, res, [str(exc)])
    except BudgetExceeded as exc:
        return NicholsResult("inconclusive", None, res, [str(exc)])
    return NicholsResult("ok", series, res, [])


def nichols_dimension(M: YDTuple, **caps) -> int | None:
    out = hilbert_series(M, **caps)
    return out.dimension if out.status == "ok" else None


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def format_factorization(n: int) -> str:
    if n == 1:
        return "1"
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factorize(n).items()))


@dataclass
class CrosscheckReport:
    max_degree: int
    agree: bool
    mismatches: list[tuple] = field(default_factory=list)
    checked: int = 0


def hilbert_oracle_crosscheck(M: YDTuple, series: HilbertSeries, max_degree: int = DEFAULT_ORACLE_DEGREE,
                              budget: int = SYMMETRIZER_BUDGET) -> CrosscheckReport:
    """Compare the product formula with brute-force symmetrizer ranks up to max_degree."""
    predicted = series.multivariate(max_degree)
    report = CrosscheckReport(max_degree, True)
    for n in range(max_degree + 1):
        got = symmetrizer_graded_dim(list(M.modules), M.char, n, budget)
        keys = set(got) | {k for k in predicted if sum(k) == n}
        for k in sorted(keys):
            report.checked += 1
            if got.get(k, 0) != predicted.get(k, 0):
                report.agree = False
                report.mismatches.append((k, predicted.get(k, 0), got.get(k, 0)))
    return report


__all__ = [
    "BudgetExceeded",
    "CrosscheckReport",
    "HilbertFactor",
    "HilbertSeries",
    "InfiniteDimensional",
    "NicholsError",
    "NicholsResult",
    "factor_q_numbers",
    "factorize",
    "format_factorization",
    "graded_dims_quotient",
    "hilbert_oracle_crosscheck",
    "hilbert_series",
    "nichols_dimension",
    "rank_one_dims",
    "rank_one_hilbert",
    "root_modules",
    "symmetrizer_graded_dim",
]
